#include <clonelab/cli/checks.hh>
#include <clonelab/cli/commands.hh>
#include <clonelab/cli/problem_file.hh>
#include <clonelab/errors.hh>
#include <clonelab/galois.hh>
#include <clonelab/partial.hh>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <optional>

using namespace clonelab;
using namespace clonelab::cli;

using json = nlohmann::ordered_json;

namespace
{
    struct Common
    {
        std::string file;
        bool json_output = false;
        std::string dot;
        std::uint64_t seed = 0;
        std::size_t budget = default_budget;
    };

    auto add_common(CLI::App * sub, Common & c) -> void
    {
        sub->add_option("--file", c.file, "problem file");
        sub->add_flag("--json", c.json_output, "JSON report");
        sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
        sub->add_option("--budget", c.budget, "largest fragment or relation to build")->capture_default_str();
    }

    auto need_file(const Common & c) -> ProblemFile
    {
        if (c.file.empty())
            throw InvalidArgument{"this command needs --file"};
        return load_problem(c.file);
    }

    auto read_domains(const std::string & path, unsigned arity) -> std::vector<std::vector<Tuple>>
    {
        std::ifstream in{path};
        if (! in)
            throw InvalidArgument{"cannot open domains file " + path};
        auto doc = nlohmann::json::parse(in);
        if (doc.is_object() && doc.contains("domains"))
            doc = doc["domains"];
        if (! doc.is_array())
            throw InvalidArgument{path + ": expected a list of domains"};
        std::vector<std::vector<Tuple>> domains;
        for (auto & d : doc) {
            std::vector<Tuple> domain;
            for (auto & t : d) {
                auto tuple = t.is_array() ? t.get<Tuple>() : Tuple{t.get<Element>()};
                if (tuple.size() != arity)
                    throw ArityMismatch{path + ": tuple " + format_tuple(tuple) + " does not have arity " + std::to_string(arity)};
                domain.push_back(std::move(tuple));
            }
            std::sort(domain.begin(), domain.end());
            domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
            domains.push_back(std::move(domain));
        }
        return domains;
    }

    auto fragment_listing(const std::string & command, const FragmentSet & f, const Common & c, std::ostream & out) -> void
    {
        if (c.json_output) {
            json tables = json::array();
            for (auto & t : f.tables())
                tables.push_back(table_json(t));
            out << json{{"command", command}, {"universe", f.universe().size()}, {"arity", f.arity()}, {"count", f.size()},
                       {"tables", tables}}
                       .dump(2)
                << "\n";
            return;
        }
        out << f.size() << " tables of arity " << f.arity() << " over {0.." << f.universe().max() << "}\n";
        for (auto & t : f.tables())
            out << "  " << format_table(t) << "\n";
    }

    auto report_local(const LocalVerdict & v, const Operation & g, const Common & c, std::ostream & out) -> int
    {
        bool yes = v.kind == LocalVerdict::Kind::YesUpTo;
        if (c.json_output) {
            json report{{"command", "local-member"}, {"result", yes ? "YES" : "NO"}, {"domains_tested", v.domains_tested}};
            if (! yes) {
                json domain = json::array();
                for (auto & t : v.witness_domain)
                    domain.push_back(table_json(t));
                report["certificate"] = json{{"arity", g.arity()}, {"domain", domain}, {"values", table_json(v.witness_values)},
                    {"window_truncated", v.window_truncated}};
            }
            out << report.dump(2) << "\n";
        }
        else if (yes)
            out << "YES up to tested domains (" << v.domains_tested << " domains)\n";
        else {
            out << "NO: on domain " << format_domain(v.witness_domain) << " the operation takes " << format_table(v.witness_values)
                << ", which no member does\n";
            if (v.window_truncated)
                out << "  note: generator values outside the window were dropped\n";
        }
        return yes ? exit_pass : exit_fail;
    }
}

auto clonelab::cli::run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int
{
    CLI::App app{"Clones, polymorphisms and invariant relations on finite universes", "clonelab"};
    app.require_subcommand(1);
    Common common;

    std::string rels, gens, op, from, domains_path, check_name;
    unsigned arity = 0;
    CheckOptions options;

    auto pol_cmd = app.add_subcommand("pol", "polymorphisms of relations at one arity");
    add_common(pol_cmd, common);
    pol_cmd->add_option("--rels", rels, "comma-separated relation names")->required();
    pol_cmd->add_option("--arity", arity, "arity")->required()->check(CLI::PositiveNumber);

    auto inv_cmd = app.add_subcommand("inv", "least invariant relation containing a relation");
    add_common(inv_cmd, common);
    inv_cmd->add_option("--gens", gens, "comma-separated operation or opset names")->required();
    inv_cmd->add_option("--from", from, "seed relation name")->required();

    auto close_cmd = app.add_subcommand("close", "n-ary fragment of a generated clone");
    add_common(close_cmd, common);
    close_cmd->add_option("--gens", gens, "comma-separated operation or opset names")->required();
    close_cmd->add_option("--arity", arity, "arity")->required()->check(CLI::PositiveNumber);

    auto member_cmd = app.add_subcommand("member", "membership of an operation in a generated clone");
    add_common(member_cmd, common);
    member_cmd->add_option("--op", op, "operation name")->required();
    member_cmd->add_option("--gens", gens, "comma-separated operation or opset names")->required();
    member_cmd->add_option("--domains", domains_path, "JSON list of domains; switches to the interpolation test");

    auto local_cmd = app.add_subcommand("local-member", "interpolation test on finite domains");
    add_common(local_cmd, common);
    local_cmd->add_option("--op", op, "operation name")->required();
    local_cmd->add_option("--gens", gens, "comma-separated operation or opset names")->required();
    local_cmd->add_option("--domains", domains_path, "JSON list of domains (default: all sets of at most 2 tuples)");

    auto check_cmd = app.add_subcommand("check", "run one of the verification checks");
    add_common(check_cmd, common);
    check_cmd->add_option("name", check_name, "check name")->required()->check(CLI::IsMember(check_names()));
    check_cmd->add_option("--dot", common.dot, "write the Hasse diagram of the compared clones here");
    check_cmd->add_option("--gens", options.gens, "pol-inv: generators from --file");
    check_cmd->add_option("--arity", options.arity, "pol-inv: a single arity (default 1 and 2)");
    check_cmd->add_option("--random", options.random, "pol-inv: number of random generator sets")->capture_default_str();
    check_cmd->add_option("--group", options.group, "translation-lattice: finite group from --file");
    check_cmd->add_option("--modulus", options.modulus, "translation-lattice: Z_n when no group is given")->capture_default_str();
    check_cmd->add_option("--subset", options.subset, "covering: the subset A")->delimiter(',');
    check_cmd->add_option("--universe", options.universe, "covering: universe size")->capture_default_str();
    check_cmd->add_option("--cap", options.cap, "covering: largest arity")->capture_default_str();
    check_cmd->add_option("--samples", options.samples, "covering: outside samples")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::ParseError & e) {
        auto code = app.exit(e, out, err);
        return code == 0 ? exit_pass : exit_usage;
    }

    try {
        if (pol_cmd->parsed()) {
            auto file = need_file(common);
            auto u = file.universe();
            fragment_listing("pol", pol(file.relations(rels), arity, u, common.budget), common, out);
            return exit_pass;
        }
        if (close_cmd->parsed()) {
            auto file = need_file(common);
            fragment_listing("close", clone_fragment(file.operations(gens), arity, file.universe(), common.budget), common, out);
            return exit_pass;
        }
        if (inv_cmd->parsed()) {
            auto file = need_file(common);
            auto & seed = file.relation(from);
            auto rho = inv_generate(file.operations(gens), seed.rows(), file.universe(), common.budget);
            if (common.json_output) {
                json rows = json::array();
                for (auto & t : rho.rows())
                    rows.push_back(table_json(t));
                out << json{{"command", "inv"}, {"universe", rho.universe().size()}, {"arity", rho.arity()}, {"count", rho.size()},
                           {"tuples", rows}}
                           .dump(2)
                    << "\n";
            }
            else {
                out << rho.size() << " tuples of arity " << rho.arity() << "\n";
                for (auto & t : rho.rows())
                    out << "  " << format_tuple(t) << "\n";
            }
            return exit_pass;
        }
        if (member_cmd->parsed() || local_cmd->parsed()) {
            auto file = need_file(common);
            auto & g = file.operation(op);
            auto generators = file.operations(gens);
            auto & u = file.universe();
            if (member_cmd->parsed() && domains_path.empty()) {
                auto fragment = clone_fragment(generators, g.arity(), u, common.budget);
                bool yes = fragment.contains(g);
                if (common.json_output) {
                    json report{{"command", "member"}, {"result", yes ? "YES" : "NO"}, {"arity", g.arity()},
                        {"fragment_size", fragment.size()}};
                    if (! yes)
                        report["certificate"] = json{{"arity", g.arity()}, {"table", table_json(tabulate(g, u).entries())}};
                    out << report.dump(2) << "\n";
                }
                else
                    out << (yes ? "YES" : "NO") << ": " << fragment.size() << " tables in the fragment of arity " << g.arity() << "\n";
                return yes ? exit_pass : exit_fail;
            }
            auto domains = domains_path.empty() ? small_domains(u, g.arity(), 2) : read_domains(domains_path, g.arity());
            return report_local(local_member(g, generators, domains, u, common.budget), g, common, out);
        }

        std::optional<ProblemFile> file;
        if (! common.file.empty())
            file = load_problem(common.file);
        options.file = file ? &*file : nullptr;
        options.seed = common.seed;
        options.budget = common.budget;
        auto report = run_check(check_name, options);
        if (common.json_output)
            out << report.to_json().dump(2) << "\n";
        else
            out << report.to_text();
        if (! common.dot.empty()) {
            if (! report.dot)
                err << "check " << check_name << " compares no clones; no DOT written\n";
            else {
                std::ofstream dot{common.dot};
                if (! dot)
                    throw InvalidArgument{"cannot write " + common.dot};
                dot << *report.dot;
            }
        }
        return report.pass ? exit_pass : exit_fail;
    }
    catch (const BudgetExceeded & e) {
        err << "budget exceeded: " << e.what() << "\n";
        return exit_budget;
    }
    catch (const AlgebraError & e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const nlohmann::json::exception & e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
}
