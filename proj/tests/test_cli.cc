#include "helpers.hh"

#include <clonelab/cli/checks.hh>
#include <clonelab/cli/commands.hh>
#include <clonelab/cli/problem_file.hh>
#include <clonelab/errors.hh>
#include <clonelab/lattice.hh>

#include <doctest.h>
#include <json.hpp>

#include <fstream>
#include <sstream>

using namespace clonelab;
using namespace clonelab::cli;
using namespace testing;

namespace
{
    const std::string data = CLONELAB_TEST_DATA;

    struct Outcome
    {
        int code;
        std::string out, err;
    };

    auto invoke(const std::vector<std::string> & args) -> Outcome
    {
        std::ostringstream out, err;
        auto code = run(args, out, err);
        return {code, out.str(), err.str()};
    }

    auto parse(const std::string & text) -> ProblemFile
    {
        std::istringstream in{text};
        return parse_problem(in, "t.alg");
    }

    auto parse_error_line(const std::string & text) -> std::size_t
    {
        try {
            (void)parse(text);
        }
        catch (const ParseError & e) {
            return e.line();
        }
        return 0;
    }

    auto table_lines(const std::string & out) -> std::set<std::vector<Element>>
    {
        std::set<std::vector<Element>> tables;
        std::istringstream in{out};
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            auto j = nlohmann::json::parse(line);
            tables.insert(j.get<std::vector<Element>>());
        }
        return tables;
    }
}

TEST_CASE("split_list")
{
    CHECK(split_list("a, b,,c") == std::vector<std::string>{"a", "b", "c"});
    CHECK(split_list("(1,0),(2, 3)") == std::vector<std::string>{"(1,0)", "(2,3)"});
    CHECK(split_list("[A,B],C") == std::vector<std::string>{"[A,B]", "C"});
    CHECK(split_list("").empty());
}

TEST_CASE("problem files")
{
    auto file = load_problem(data + "/boolean.alg");
    CHECK(file.universe().size() == 2);
    CHECK(file.operation("AND").entries() == std::vector<Element>{0, 0, 0, 1});
    CHECK(equal_on(file.operation("NAND"), Operation::table(Universe{2}, 2, {1, 1, 1, 0}), Universe{2}));
    CHECK(file.relation("LE").rows() == std::vector<Tuple>{{0, 0}, {0, 1}, {1, 1}});
    CHECK(file.relation("ONE").rows() == std::vector<Tuple>{{1}});
    CHECK(file.operations("AND,OR").size() == 2);
    CHECK(file.operation_names() == std::vector<std::string>{"NOT", "AND", "OR", "P2", "ZERO", "NAND"});

    SUBCASE("groups and opsets")
    {
        auto z = load_problem(data + "/z12.alg");
        CHECK(z.universe().size() == 12);
        CHECK(z.subgroup("H").elements().size() == 3);
        CHECK(z.operations("C_H").size() == 3);
        CHECK(z.operations("C_H,T6").size() == 4);
        CHECK(evaluate(z.operation("T4"), Tuple{10}) == 2);

        auto mixed = parse("group G z-rank=1 torsion=[2] window=[3]\nop F translation a=(1,2) group=G\n");
        CHECK(mixed.universe().size() == 6);
        // (0,0) is code 0 and (1,2) code 5
        CHECK(evaluate(mixed.operation("F"), Tuple{0}) == 5);
    }

    SUBCASE("symbolic constructors")
    {
        auto f = parse("universe 5\nop I indicator A=[2,3] a=0 b=1\nop C const 4 arity=2\nop P proj 3 2\nop S patch I A=[0,1]\n");
        CHECK(tabulate(f.operation("I"), Universe{5}).entries() == std::vector<Element>{1, 1, 0, 0, 1});
        CHECK(evaluate(f.operation("C"), Tuple{0, 1}) == 4);
        CHECK(evaluate(f.operation("P"), Tuple{7, 8, 9}) == 8);
        CHECK(f.operation("S").arity() == 2);
        CHECK(evaluate(f.operation("S"), Tuple{1, 3}) == 3);
        CHECK(evaluate(f.operation("S"), Tuple{2, 3}) == 0);
    }

    SUBCASE("errors cite the line")
    {
        CHECK(parse_error_line("universe 2\nop A arity=2 table=[0,1,1]\n") == 2);
        CHECK(parse_error_line("universe 2\nop A arity=1 table=[0,1]\n\nrel A arity=1 tuples=[(0)]\n") == 4);
        CHECK(parse_error_line("universe 2\nop F compose G [G]\n") == 2);
        CHECK(parse_error_line("# comment\nfrobnicate X\n") == 2);
        CHECK(parse_error_line("universe two\n") == 1);
        CHECK(parse_error_line("op A arity=1 table=[0,1]\n") == 1);
        CHECK(parse_error_line("universe 2\nrel R arity=2 tuples=[(0,1),(1)]\n") == 2);
        CHECK(parse_error_line("universe 2\nrel R arity=1 tuples=[(2)]\n") == 2);
        CHECK(parse_error_line("universe 2\nop A arity=1 table=[0,1] colour=red\n") == 2);
        CHECK(parse_error_line("universe 2\nuniverse 2\n") == 2);
        CHECK(parse_error_line("group G torsion=[4]\nuniverse 5\n") == 2);
        CHECK(parse_error_line("group G torsion=[4]\nop F translation a=(1,1) group=G\n") == 2);
        CHECK(parse_error_line("universe 2\nop P proj 2 3\n") == 2);
        CHECK(parse_error_line("universe 2\nopset S [A]\n") == 2);
        CHECK_THROWS_AS((void)load_problem(data + "/missing.alg"), ParseError);
        CHECK_THROWS_AS((void)parse("universe 2\n").operation("A"), InvalidArgument);
    }
}

TEST_CASE("close")
{
    auto r = invoke({"close", "--file", data + "/boolean.alg", "--gens", "NOT", "--arity", "1"});
    CHECK(r.code == exit_pass);
    CHECK(r.out.rfind("2 tables of arity 1", 0) == 0);
    auto expected = oracle::naive_closure({raw(boolean_not())}, {oracle::projection(2, 1, 0)}, 2);
    CHECK(table_lines(r.out) == expected);

    auto both = invoke({"close", "--file", data + "/boolean.alg", "--gens", "AND,OR", "--arity", "2", "--json"});
    CHECK(both.code == exit_pass);
    auto j = nlohmann::json::parse(both.out);
    CHECK(j["count"] == 4);
    std::set<std::vector<Element>> got;
    for (auto & t : j["tables"])
        got.insert(t.get<std::vector<Element>>());
    CHECK(got == oracle::naive_closure(raw_all({boolean_and(), boolean_or()}), {oracle::projection(2, 2, 0), oracle::projection(2, 2, 1)}, 2));
}

TEST_CASE("pol and inv")
{
    auto r = invoke({"pol", "--file", data + "/boolean.alg", "--rels", "LE", "--arity", "2"});
    CHECK(r.code == exit_pass);
    std::set<std::vector<Element>> monotone;
    for (auto & t : oracle::all_tables(2, 2))
        if (oracle::is_monotone(t, 2, 2))
            monotone.insert(t);
    CHECK(table_lines(r.out) == monotone);

    auto inv = invoke({"inv", "--file", data + "/boolean.alg", "--gens", "NOT", "--from", "ONE", "--json"});
    CHECK(inv.code == exit_pass);
    auto j = nlohmann::json::parse(inv.out);
    CHECK(j["tuples"] == nlohmann::json::parse("[[0],[1]]"));
}

TEST_CASE("member")
{
    auto yes = invoke({"member", "--file", data + "/translations.alg", "--op", "F5", "--gens", "F_H", "--domains", data + "/domains.json"});
    CHECK(yes.code == exit_pass);
    CHECK(yes.out.rfind("YES up to tested domains", 0) == 0);

    auto no = invoke({"member", "--file", data + "/translations.alg", "--op", "F1", "--gens", "F_H", "--domains", data + "/domains.json",
        "--json"});
    CHECK(no.code == exit_fail);
    auto certificate = nlohmann::json::parse(no.out)["certificate"];
    CHECK(certificate["domain"] == nlohmann::json::parse("[[0]]"));
    CHECK(certificate["values"] == nlohmann::json::parse("[1]"));

    auto exact = invoke({"member", "--file", data + "/boolean.alg", "--op", "NAND", "--gens", "AND,NOT"});
    CHECK(exact.code == exit_pass);
    auto outside = invoke({"member", "--file", data + "/boolean.alg", "--op", "NAND", "--gens", "AND,OR", "--json"});
    CHECK(outside.code == exit_fail);
    // the certificate table is not produced by close over the same generators
    auto table = nlohmann::json::parse(outside.out)["certificate"]["table"].get<std::vector<Element>>();
    auto listing = invoke({"close", "--file", data + "/boolean.alg", "--gens", "AND,OR", "--arity", "2"});
    CHECK_FALSE(table_lines(listing.out).count(table));

    auto local = invoke({"local-member", "--file", data + "/z12.alg", "--op", "T4", "--gens", "C_H"});
    CHECK(local.code == exit_pass);
    // every set of at most two points in {0..11}
    CHECK(local.out == "YES up to tested domains (78 domains)\n");
    CHECK(invoke({"local-member", "--file", data + "/z12.alg", "--op", "T6", "--gens", "C_H"}).code == exit_fail);
}

TEST_CASE("exit codes")
{
    CHECK(invoke({}).code == exit_usage);
    CHECK(invoke({"frobnicate"}).code == exit_usage);
    CHECK(invoke({"check", "no-such-check"}).code == exit_usage);
    CHECK(invoke({"close", "--gens", "NOT", "--arity", "1"}).code == exit_usage);
    CHECK(invoke({"close", "--file", data + "/boolean.alg", "--gens", "NOPE", "--arity", "1"}).code == exit_usage);

    std::string bad = "/tmp/clonelab_test_bad.alg";
    std::ofstream{bad} << "universe 2\nop A arity=2 table=[0,1,1]\n";
    auto parse_failure = invoke({"close", "--file", bad, "--gens", "A", "--arity", "1"});
    CHECK(parse_failure.code == exit_usage);
    CHECK(parse_failure.err.find(":2:") != std::string::npos);

    auto budget = invoke({"close", "--file", data + "/boolean.alg", "--gens", "NOT,AND", "--arity", "3", "--budget", "100"});
    CHECK(budget.code == exit_budget);
    CHECK(invoke({"--help"}).code == exit_pass);
}

TEST_CASE("checks")
{
    CHECK(check_names().size() == 8);
    CHECK_THROWS_AS((void)run_check("nothing", {}), InvalidArgument);

    auto pol_inv = invoke({"check", "pol-inv", "--file", data + "/boolean.alg", "--gens", "AND,OR", "--arity", "2"});
    CHECK(pol_inv.code == exit_pass);
    CHECK(pol_inv.out.rfind("check pol-inv: PASS\n", 0) == 0);

    auto meet = invoke({"check", "antichain-meet", "--json"});
    CHECK(meet.code == exit_pass);
    auto j = nlohmann::ordered_json::parse(meet.out);
    CHECK(j.begin().key() == "check");
    CHECK(j["result"] == "PASS");
    CHECK(j["details"]["antichain"]["pairs_checked"] == 21);

    SUBCASE("a failing check carries a re-checkable certificate")
    {
        auto fail = invoke({"check", "covering", "--subset", "0", "--universe", "2", "--cap", "1", "--samples", "3", "--json"});
        CHECK(fail.code == exit_fail);
        auto report = nlohmann::json::parse(fail.out);
        CHECK(report["result"] == "FAIL");
        auto c = report["certificate"];
        auto f = Operation::table(Universe{2}, c["arity"].get<unsigned>(), c["table"].get<std::vector<Element>>());
        CHECK_FALSE(covering_check_samples({0}, 1, Universe{2}, {f}).pass);
    }

    SUBCASE("dot output")
    {
        std::string path = "/tmp/clonelab_test.dot";
        CHECK(invoke({"check", "sigma-join", "--dot", path}).code == exit_pass);
        std::ifstream in{path};
        std::stringstream dot;
        dot << in.rdbuf();
        CHECK(dot.str().rfind("digraph clones {", 0) == 0);
        CHECK(dot.str().find("n2 -> n4;") != std::string::npos);
        auto none = invoke({"check", "compactness-witness", "--dot", path});
        CHECK(none.code == exit_pass);
        CHECK_FALSE(none.err.empty());
    }

    SUBCASE("reports depend on the seed only")
    {
        auto a = invoke({"check", "compactness-witness", "--seed", "5", "--json"});
        auto b = invoke({"check", "compactness-witness", "--seed", "5", "--json"});
        auto c = invoke({"check", "compactness-witness", "--seed", "6", "--json"});
        CHECK(a.out == b.out);
        CHECK(a.out != c.out);
    }

    SUBCASE("translation lattice of another finite group")
    {
        auto z4 = invoke({"check", "translation-lattice", "--modulus", "4", "--json"});
        CHECK(z4.code == exit_pass);
        CHECK(nlohmann::json::parse(z4.out)["details"]["subgroups"].size() == 3);
        std::string path = "/tmp/clonelab_klein.alg";
        std::ofstream{path} << "group V torsion=[2,2]\n";
        auto klein = invoke({"check", "translation-lattice", "--file", path, "--group", "V", "--json"});
        CHECK(klein.code == exit_pass);
        // the trivial group, three of order two, and V
        CHECK(nlohmann::json::parse(klein.out)["details"]["subgroups"].size() == 5);
        std::ofstream{path} << "group Z z-rank=1 window=[4]\n";
        CHECK(invoke({"check", "translation-lattice", "--file", path, "--group", "Z"}).code == exit_usage);
    }
}
