#include <clonelab/cli/checks.hh>
#include <clonelab/constructions.hh>
#include <clonelab/errors.hh>
#include <clonelab/galois.hh>
#include <clonelab/lattice.hh>
#include <clonelab/partial.hh>

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

using namespace clonelab;
using namespace clonelab::cli;

using json = nlohmann::ordered_json;

auto clonelab::cli::table_json(const std::vector<Element> & entries) -> json
{
    json result = json::array();
    for (auto v : entries)
        result.push_back(v);
    return result;
}

auto clonelab::cli::format_table(const std::vector<Element> & entries) -> std::string
{
    std::string result = "[";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i != 0)
            result += ",";
        result += std::to_string(entries[i]);
    }
    return result + "]";
}

auto clonelab::cli::format_domain(const std::vector<Tuple> & domain) -> std::string
{
    std::string result = "[";
    for (std::size_t i = 0; i < domain.size(); ++i) {
        if (i != 0)
            result += ",";
        result += format_tuple(domain[i]);
    }
    return result + "]";
}

auto CheckReport::to_json() const -> json
{
    json result;
    result["check"] = name;
    result["result"] = pass ? "PASS" : "FAIL";
    result["details"] = details;
    if (! pass)
        result["certificate"] = certificate;
    return result;
}

auto CheckReport::to_text() const -> std::string
{
    std::string result = "check " + name + ": " + (pass ? "PASS" : "FAIL") + "\n";
    for (auto & line : lines)
        result += "  " + line + "\n";
    if (! pass)
        result += "  certificate: " + certificate.dump() + "\n";
    return result;
}

namespace
{
    const Universe bits{2};

    auto boolean_table(unsigned arity, std::vector<Element> entries) -> Operation { return Operation::table(bits, arity, std::move(entries)); }

    auto tuples_json(const std::vector<Tuple> & tuples) -> json
    {
        json result = json::array();
        for (auto & t : tuples)
            result.push_back(table_json(t));
        return result;
    }

    auto partial_json(const PartialOperation & p) -> json
    {
        json values = json::array();
        for (auto & [x, v] : p.values())
            values.push_back(json::array({table_json(x), v}));
        json result;
        result["arity"] = p.arity();
        result["values"] = values;
        return result;
    }

    auto ops_json(const std::vector<Operation> & ops, const Universe & u) -> json
    {
        json result = json::array();
        for (auto & f : ops)
            result.push_back(table_json(tabulate(f, u).entries()));
        return result;
    }

    /// Records a batch of trials; the first failure becomes the certificate.
    class Tally
    {
    public:
        Tally(CheckReport & report, std::string key, std::string label) :
            _report(report),
            _key(std::move(key)),
            _label(std::move(label)),
            _line(report.lines.size())
        {
            // reserve the slots so reports list tallies in construction order
            _report.details[_key] = nullptr;
            _report.lines.emplace_back();
        }

        auto record(bool ok, const std::function<json()> & certificate) -> void
        {
            ++_trials;
            if (ok)
                return;
            ++_failures;
            if (_report.certificate.is_null()) {
                _report.certificate = certificate();
                _report.certificate["claim"] = _key;
            }
        }

        ~Tally()
        {
            _report.details[_key] = json{{"trials", _trials}, {"failures", _failures}};
            _report.lines[_line] = _label + ": " + std::to_string(_trials) + (_trials == 1 ? " trial, " : " trials, ") + std::to_string(_failures) + (_failures == 1 ? " failure" : " failures");
            if (_failures != 0)
                _report.pass = false;
        }

        Tally(const Tally &) = delete;
        auto operator=(const Tally &) -> Tally & = delete;

    private:
        CheckReport & _report;
        std::string _key, _label;
        std::size_t _line;
        std::size_t _trials = 0, _failures = 0;
    };

    auto uniform(std::mt19937_64 & rng, unsigned lo, unsigned hi) -> unsigned { return std::uniform_int_distribution<unsigned>(lo, hi)(rng); }

    auto random_tuple_set(const Universe & u, unsigned arity, std::size_t max_size, std::mt19937_64 & rng) -> std::vector<Tuple>
    {
        auto all = u.all_tuples(arity);
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(std::uniform_int_distribution<std::size_t>(1, std::min(max_size, all.size()))(rng));
        std::sort(all.begin(), all.end());
        return all;
    }

    auto five_boolean_clones(std::size_t budget) -> std::vector<CloneHandle>
    {
        auto conj = boolean_table(2, {0, 0, 0, 1}), disj = boolean_table(2, {0, 1, 1, 1});
        return {
            CloneHandle{"projections", bits, {}, budget},
            CloneHandle{"not", bits, {boolean_table(1, {1, 0})}, budget},
            CloneHandle{"and", bits, {conj}, budget},
            CloneHandle{"or", bits, {disj}, budget},
            CloneHandle{"and-or", bits, {conj, disj}, budget},
        };
    }

    auto check_compactness(const CheckOptions & o) -> CheckReport
    {
        CheckReport r;
        r.name = "compactness-witness";
        const Universe w{10};
        const Element a = 3;
        std::mt19937_64 rng{o.seed};
        r.details["window"] = w.size();
        r.details["a"] = a;
        r.details["seed"] = o.seed;

        auto composition_certificate = [&](const Operation & f, const std::vector<Operation> & gs) {
            return [&, f, gs] { return json{{"outer", table_json(f.entries())}, {"inner", ops_json(gs, w)}}; };
        };

        {
            Tally t{r, "bounded_composition", "compositions of C_3 members in C_3"};
            for (int trial = 0; trial < 200; ++trial) {
                auto k = uniform(rng, 1, 2), n = uniform(rng, 1, 2);
                auto f = random_family_member(WitnessFamily::Bounded, a, k, w, rng);
                std::vector<Operation> gs;
                for (unsigned i = 0; i < k; ++i)
                    gs.push_back(random_family_member(WitnessFamily::Bounded, a, n, w, rng));
                t.record(bounded_or_growth_member(compose(f, gs), a, WitnessFamily::Bounded, w), composition_certificate(f, gs));
            }
        }
        {
            Tally t{r, "growing_composition", "essential cores of compositions of D_3 members in D_3"};
            for (int trial = 0; trial < 200; ++trial) {
                auto k = uniform(rng, 1, 2), n = uniform(rng, 1, 3);
                auto f = random_family_member(WitnessFamily::Growing, a, k, w, rng);
                std::vector<Operation> gs;
                for (unsigned i = 0; i < k; ++i) {
                    if (std::bernoulli_distribution(0.3)(rng))
                        gs.push_back(Operation::projection(n, uniform(rng, 1, n)));
                    else
                        gs.push_back(random_family_member(WitnessFamily::Growing, a, n, w, rng));
                }
                auto core = essential_core(tabulate(compose(f, gs), w));
                t.record(bounded_or_growth_member(core, a, WitnessFamily::Growing, w), composition_certificate(f, gs));
            }
        }
        {
            Tally bounded{r, "bounded_interpolant", "interpolants in C agreeing on A"};
            Tally growing{r, "growing_interpolant", "interpolants in D agreeing on A"};
            for (int trial = 0; trial < 50; ++trial) {
                auto n = uniform(rng, 1, 2);
                auto g = random_table(n, w, rng);
                // coordinates below 9 keep the growing bound inside the window
                auto domain = random_tuple_set(Universe{9}, n, 5, rng);
                for (auto family : {WitnessFamily::Bounded, WitnessFamily::Growing}) {
                    auto result = interpolant(g, domain, family, w);
                    bool ok = bounded_or_growth_member(result.op, result.bound, family, w) && agree_on(result.op, g, domain);
                    (family == WitnessFamily::Bounded ? bounded : growing).record(ok, [&] {
                        return json{{"g", table_json(g.entries())}, {"domain", tuples_json(domain)}, {"interpolant", table_json(result.op.entries())},
                            {"bound", result.bound}};
                    });
                }
            }
        }
        {
            Tally above{r, "value_above_bound", "operations taking a value above 3 outside C_3"};
            Tally low_range{r, "range_below_bound", "operations with range in [0,B], B < a, outside D_a"};
            for (int trial = 0; trial < 50; ++trial) {
                auto n = uniform(rng, 1, 2);
                auto entries = random_family_member(WitnessFamily::Bounded, a, n, w, rng).entries();
                entries[std::uniform_int_distribution<std::size_t>(0, entries.size() - 1)(rng)] =
                    std::uniform_int_distribution<Element>(a + 1, w.max())(rng);
                above.record(! bounded_or_growth_member(Operation::table(w, n, entries), a, WitnessFamily::Bounded, w),
                    [&] { return json{{"f", table_json(entries)}, {"a", a}}; });

                auto range = std::uniform_int_distribution<Element>(0, 5)(rng);
                auto bound = std::uniform_int_distribution<Element>(range + 1, w.max())(rng);
                auto low = Operation::from_function(w, n, [&](auto) { return std::uniform_int_distribution<Element>(0, range)(rng); });
                low_range.record(! bounded_or_growth_member(low, bound, WitnessFamily::Growing, w),
                    [&] { return json{{"f", table_json(low.entries())}, {"a", bound}}; });
            }
        }
        return r;
    }

    auto check_finite_embed(const CheckOptions & o) -> CheckReport
    {
        CheckReport r;
        r.name = "finite-embed";
        const Universe u{3};
        const std::vector<Element> subset{0, 1};
        r.details["universe"] = u.size();
        r.details["subset"] = table_json(subset);
        r.details["seed"] = o.seed;

        auto conj = boolean_table(2, {0, 0, 0, 1}), disj = boolean_table(2, {0, 1, 1, 1});
        std::vector<CloneHandle> clones{
            CloneHandle{"and", bits, {conj}, o.budget},
            CloneHandle{"monotone", bits, {conj, disj, boolean_table(1, {0, 0}), boolean_table(1, {1, 1})}, o.budget},
            CloneHandle{"all", bits, {conj, boolean_table(1, {1, 0})}, o.budget},
        };

        // every unary and binary table over u, with its sigma-membership per clone
        std::vector<Operation> samples;
        for (unsigned n = 1; n <= 2; ++n)
            for (auto & f : all_operations(n, u, o.budget).operations())
                samples.push_back(f);
        std::vector<std::vector<bool>> in_sigma(clones.size());
        for (std::size_t i = 0; i < clones.size(); ++i) {
            auto on_subset = [&](const Operation & f) { return clones[i].fragment(f.arity()).contains(f); };
            for (auto & g : samples)
                in_sigma[i].push_back(finite_embed_member(g, subset, on_subset));
        }
        r.details["samples"] = samples.size();

        json separators = json::array();
        {
            Tally order{r, "order_preserving", "sigma order-preserving and order-reflecting on ordered pairs"};
            Tally injective{r, "injective", "sigma separates distinct clones"};
            for (std::size_t i = 0; i < clones.size(); ++i)
                for (std::size_t j = 0; j < clones.size(); ++j) {
                    if (i == j)
                        continue;
                    auto below = leq(clones[i], clones[j], 2);
                    std::optional<std::size_t> outside;
                    for (std::size_t s = 0; s < samples.size() && ! outside; ++s)
                        if (in_sigma[i][s] && ! in_sigma[j][s])
                            outside = s;
                    order.record(below == ! outside, [&] {
                        return json{{"lower", clones[i].label()}, {"upper", clones[j].label()}, {"leq", below},
                            {"witness", outside ? table_json(samples[*outside].entries()) : json{}}};
                    });
                    if (i < j) {
                        std::optional<std::size_t> separator;
                        for (std::size_t s = 0; s < samples.size() && ! separator; ++s)
                            if (in_sigma[i][s] != in_sigma[j][s])
                                separator = s;
                        injective.record(separator.has_value(), [&] { return json{{"left", clones[i].label()}, {"right", clones[j].label()}}; });
                        if (separator)
                            separators.push_back(json{{"left", clones[i].label()}, {"right", clones[j].label()},
                                {"arity", samples[*separator].arity()}, {"table", table_json(samples[*separator].entries())},
                                {"in", in_sigma[i][*separator] ? clones[i].label() : clones[j].label()}});
                    }
                }
        }
        r.details["separators"] = separators;

        {
            Tally t{r, "patch_identity", "f = s(x, f'(x)) for f' agreeing with f on A^m"};
            std::mt19937_64 rng{o.seed};
            for (int trial = 0; trial < 20; ++trial) {
                auto m = uniform(rng, 1, 2);
                auto f = random_table(m, u, rng);
                auto f_prime = Operation::from_function(u, m, [&](auto x) -> Element {
                    bool inside = std::all_of(x.begin(), x.end(), [](auto v) { return v < 2; });
                    return inside ? f.entries()[u.index_of(x)] : std::uniform_int_distribution<Element>(0, u.max())(rng);
                });
                auto s = patch_op(f, subset);
                auto inner = projection_tables(m, u);
                inner.push_back(f_prime);
                bool ok = equal_on(compose(s, inner), f, u);
                for (auto & x : Universe{2}.all_tuples(m + 1))
                    ok = ok && evaluate(s, x) == x.back();
                t.record(ok, [&] { return json{{"f", table_json(f.entries())}, {"f_prime", table_json(f_prime.entries())}}; });
            }
        }
        r.dot = export_dot(clones, leq_matrix(clones, 2));
        return r;
    }

    auto check_translation_lattice(const CheckOptions & o) -> CheckReport
    {
        CheckReport r;
        r.name = "translation-lattice";
        std::shared_ptr<const GroupWindow> window;
        if (! o.group.empty()) {
            if (! o.file)
                throw InvalidArgument{"--group needs --file"};
            window = o.file->group(o.group);
            if (window->group().rank() != 0)
                throw InvalidArgument{"translation-lattice needs a finite group, " + window->group().describe() + " is infinite"};
        }
        else {
            if (o.modulus < 1)
                throw InvalidArgument{"--modulus must be at least 1"};
            window = std::make_shared<const GroupWindow>(GroupWindow::full(AbelianGroup{0, {o.modulus}}));
        }
        const auto & group = window->group();
        auto u = window->universe();
        r.details["group"] = group.describe();

        // cyclic subgroups, then joins until nothing new turns up
        std::vector<SubgroupHandle> subgroups;
        std::set<std::vector<GroupElement>> seen;
        auto adjoin = [&](std::vector<GroupElement> gens) {
            SubgroupHandle h{window, std::move(gens)};
            if (seen.insert(h.elements()).second)
                subgroups.push_back(std::move(h));
        };
        for (Element code = 0; code < u.size(); ++code)
            adjoin({window->decode(code)});
        for (std::size_t i = 0; i < subgroups.size(); ++i)
            for (std::size_t j = 0; j < i; ++j) {
                auto gens = subgroups[i].generators();
                gens.insert(gens.end(), subgroups[j].generators().begin(), subgroups[j].generators().end());
                adjoin(gens);
            }
        std::stable_sort(subgroups.begin(), subgroups.end(), [](auto & x, auto & y) {
            return std::pair{x.elements().size(), x.elements()} < std::pair{y.elements().size(), y.elements()};
        });

        auto label = [](const SubgroupHandle & h) {
            std::string s = "C<";
            for (std::size_t i = 0; i < h.generators().size(); ++i)
                s += (i ? "," : "") + format_group_element(h.generators()[i]);
            return s + ">";
        };
        auto translations_by = [&](const std::vector<GroupElement> & elements) {
            std::set<std::vector<Element>> tables;
            for (auto & e : elements)
                tables.insert(tabulate(translation_op(window, e), u).entries());
            return tables;
        };
        auto as_set = [](const std::vector<std::vector<Element>> & v) { return std::set<std::vector<Element>>(v.begin(), v.end()); };
        auto elements_json = [](const std::vector<GroupElement> & elements) {
            json result = json::array();
            for (auto & e : elements)
                result.push_back(format_group_element(e));
            return result;
        };

        std::vector<CloneHandle> clones;
        json listed = json::array();
        for (auto & h : subgroups) {
            clones.emplace_back(label(h), u, h.translations(), o.budget);
            listed.push_back(json{{"clone", clones.back().label()}, {"elements", elements_json(h.elements())}});
        }
        r.details["subgroups"] = listed;
        r.lines.push_back(std::to_string(subgroups.size()) + " subgroups of " + group.describe());

        {
            Tally t{r, "unary_fragments", "unary fragment of C_H is the translations by H"};
            for (std::size_t i = 0; i < subgroups.size(); ++i)
                t.record(as_set(clones[i].fragment(1).tables()) == translations_by(subgroups[i].elements()),
                    [&] { return json{{"clone", clones[i].label()}}; });
        }

        {
            Tally leq_tally{r, "leq", "leq matches subgroup inclusion"};
            Tally meet_tally{r, "meet", "meet matches subgroup intersection"};
            Tally join_tally{r, "join", "join matches subgroup join"};
            std::size_t pairs = 0;
            for (std::size_t i = 0; i < subgroups.size(); ++i)
                for (std::size_t j = i + 1; j < subgroups.size(); ++j) {
                    ++pairs;
                    auto & x = subgroups[i].elements();
                    auto & y = subgroups[j].elements();
                    auto pair_json = [&] { return json{{"left", clones[i].label()}, {"right", clones[j].label()}}; };

                    auto x_in_y = std::includes(y.begin(), y.end(), x.begin(), x.end());
                    auto y_in_x = std::includes(x.begin(), x.end(), y.begin(), y.end());
                    leq_tally.record(leq(clones[i], clones[j], 1) == x_in_y && leq(clones[j], clones[i], 1) == y_in_x, pair_json);

                    std::vector<GroupElement> common;
                    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
                    meet_tally.record(as_set(meet_fragments(clones[i], clones[j], 1)[0].tables()) == translations_by(common), pair_json);

                    // the least listed subgroup containing both
                    std::optional<std::size_t> least;
                    for (std::size_t k = 0; k < subgroups.size(); ++k) {
                        auto & z = subgroups[k].elements();
                        if (std::includes(z.begin(), z.end(), x.begin(), x.end()) && std::includes(z.begin(), z.end(), y.begin(), y.end()) &&
                            (! least || z.size() < subgroups[*least].elements().size()))
                            least = k;
                    }
                    join_tally.record(least && as_set(join(clones[i], clones[j]).fragment(1).tables()) ==
                                                   translations_by(subgroups[*least].elements()),
                        pair_json);
                }
            r.details["pairs"] = pairs;
        }

        {
            Tally t{r, "two_point_membership", "translation_clone_member on all 2-point partial functions"};
            std::size_t accepted = 0;
            for (auto & h : subgroups) {
                auto & elements = h.elements();
                for (Element x = 0; x < u.size(); ++x)
                    for (Element y = x + 1; y < u.size(); ++y)
                        for (Element vx = 0; vx < u.size(); ++vx)
                            for (Element vy = 0; vy < u.size(); ++vy) {
                                PartialOperation p{1, {{{x}, vx}, {{y}, vy}}};
                                auto dx = group.subtract(window->decode(vx), window->decode(x));
                                auto dy = group.subtract(window->decode(vy), window->decode(y));
                                bool expected = dx == dy && std::binary_search(elements.begin(), elements.end(), dx);
                                bool got = translation_clone_member(p, h);
                                accepted += got;
                                t.record(got == expected, [&] {
                                    return json{{"subgroup", label(h)}, {"partial", partial_json(p)}, {"expected", expected}};
                                });
                            }
            }
            r.details["two_point_accepted"] = accepted;
        }
        r.dot = export_dot(clones, leq_matrix(clones, 1));
        return r;
    }

    auto covering_into(CheckReport & r, const std::vector<Element> & subset, unsigned cap, const Universe & u, std::size_t samples,
        std::uint64_t seed) -> void
    {
        auto c = covering_check(subset, cap, u, samples, seed);
        r.details["covering"] = json{{"subset", table_json(subset)}, {"universe", u.size()}, {"cap", cap}, {"tested", c.tested},
            {"skipped", c.skipped}, {"pass", c.pass}};
        r.lines.push_back("covering of Pol({" + format_table(subset).substr(1, format_table(subset).size() - 2) + "}) at cap " +
            std::to_string(cap) + ": " + std::to_string(c.tested) + " outside samples, " + std::to_string(c.skipped) + " skipped, " +
            (c.pass ? "all generate O" : "FAIL"));
        if (! c.pass) {
            r.pass = false;
            if (r.certificate.is_null() && c.failing)
                r.certificate = json{{"claim", "covering"}, {"arity", c.failing->arity()},
                    {"table", table_json(tabulate(*c.failing, u).entries())}};
        }
    }

    auto antichain_into(CheckReport & r, const std::vector<CloneHandle> & handles, unsigned cap, AntichainMode mode,
        const CloneHandle & reference) -> void
    {
        auto a = antichain_check(handles, cap, mode, reference);
        json failing = json::array();
        for (std::size_t k = 0; k < a.failing_pairs.size(); ++k)
            failing.push_back(json{{"left", handles[a.failing_pairs[k].first].label()}, {"right", handles[a.failing_pairs[k].second].label()},
                {"arity", a.failing_arities[k]}});
        r.details["antichain"] =
            json{{"mode", mode == AntichainMode::JoinTop ? "join-top" : "meet-bottom"}, {"reference", reference.label()}, {"cap", cap},
                {"pairs_checked", a.pairs_checked}, {"failing_pairs", failing}};
        r.lines.push_back(std::string{mode == AntichainMode::JoinTop ? "pairwise joins equal " : "pairwise meets equal "} + reference.label() +
            " up to arity " + std::to_string(cap) + ": " + std::to_string(a.pairs_checked) + " pairs, " +
            std::to_string(a.failing_pairs.size()) + " failing");
        if (! a.pass) {
            r.pass = false;
            if (r.certificate.is_null()) {
                r.certificate = failing.front();
                r.certificate["claim"] = "antichain";
            }
        }
    }

    auto check_antichain_join(const CheckOptions & o) -> CheckReport
    {
        CheckReport r;
        r.name = "antichain-join";
        const Universe u{3};
        std::vector<CloneHandle> handles{
            CloneHandle::polymorphisms("Pol({0})", u, {Relation::unary(u, {0})}, 2, o.budget),
            CloneHandle::polymorphisms("Pol({1})", u, {Relation::unary(u, {1})}, 2, o.budget),
            CloneHandle::polymorphisms("Pol({0,1})", u, {Relation::unary(u, {0, 1})}, 2, o.budget),
        };
        auto top = CloneHandle::polymorphisms("O", u, {}, 2, o.budget);
        r.details["universe"] = u.size();
        r.details["top_sizes"] = json::array({top.fragment(1).size(), top.fragment(2).size()});
        antichain_into(r, handles, 2, AntichainMode::JoinTop, top);
        covering_into(r, {0, 1}, 2, u, 50, o.seed);

        auto nodes = handles;
        nodes.push_back(top);
        r.dot = export_dot(nodes, leq_matrix(nodes, 2));
        return r;
    }

    auto check_antichain_meet(const CheckOptions & o) -> CheckReport
    {
        CheckReport r;
        r.name = "antichain-meet";
        const Universe u{5};
        const Element a = 0, b = 1;
        r.details["window"] = u.size();
        r.details["a"] = a;
        r.details["b"] = b;

        std::vector<CloneHandle> handles;
        {
            Tally t{r, "unary_fragment", "unary fragment of cll({f_B}) is {id, f_B, c_b}"};
            for (unsigned mask = 1; mask < 8; ++mask) {
                std::vector<Element> set;
                for (Element e = 0; e < 3; ++e)
                    if (mask & (1u << e))
                        set.push_back(e + 2);
                auto name = "f_{" + format_table(set).substr(1, format_table(set).size() - 2) + "}";
                handles.emplace_back(name, u, std::vector<Operation>{Operation::indicator(set, a, b)}, o.budget);

                std::vector<Element> identity, indicator, constant(u.size(), b);
                for (Element x = 0; x < u.size(); ++x) {
                    identity.push_back(x);
                    indicator.push_back(std::binary_search(set.begin(), set.end(), x) ? a : b);
                }
                auto & got = handles.back().fragment(1).tables();
                std::set<std::vector<Element>> expected{identity, indicator, constant};
                t.record(std::set<std::vector<Element>>(got.begin(), got.end()) == expected, [&] {
                    json tables = json::array();
                    for (auto & g : got)
                        tables.push_back(table_json(g));
                    return json{{"clone", name}, {"unary_fragment", tables}};
                });
            }
        }
        CloneHandle bottom{"cll({c_1})", u, {Operation::constant(b, 1)}, o.budget};
        antichain_into(r, handles, 2, AntichainMode::MeetBottom, bottom);

        auto nodes = handles;
        nodes.insert(nodes.begin(), bottom);
        r.dot = export_dot(nodes, leq_matrix(nodes, 2));
        return r;
    }

    auto check_sigma_join(const CheckOptions & o) -> CheckReport
    {
        CheckReport r;
        r.name = "sigma-join";
        auto clones = five_boolean_clones(o.budget);
        auto binary = small_domains(bits, 2, 4);
        auto domains = small_domains(bits, 1, 2);
        domains.insert(domains.end(), binary.begin(), binary.end());
        r.details["domains"] = domains.size();

        json witnesses = json::array();
        {
            Tally t{r, "separation", "separating partial operations for pairs of boolean clones"};
            auto extends_into = [](const PartialOperation & p, const CloneHandle & c) {
                for (auto & f : c.fragment(p.arity()).operations())
                    if (p.extended_by(f))
                        return true;
                return false;
            };
            for (std::size_t i = 0; i < clones.size(); ++i)
                for (std::size_t j = i + 1; j < clones.size(); ++j) {
                    auto s = separate(clones[i], clones[j], domains);
                    bool ok = false;
                    if (s.witness) {
                        auto & from = s.side == Separation::Side::Left ? clones[i] : clones[j];
                        auto & other = s.side == Separation::Side::Left ? clones[j] : clones[i];
                        ok = s.witness->size() <= 4 && extends_into(*s.witness, from) && ! extends_into(*s.witness, other);
                        witnesses.push_back(json{{"left", clones[i].label()}, {"right", clones[j].label()}, {"in", from.label()},
                            {"witness", partial_json(*s.witness)}});
                    }
                    t.record(ok, [&] { return json{{"left", clones[i].label()}, {"right", clones[j].label()}}; });
                }
        }
        r.details["witnesses"] = witnesses;

        {
            Tally t{r, "sigma_join", "partial join of and, or equals the restricted join on domains in {0,1}^2"};
            auto report = sigma_join_report(clones[2], clones[3], binary, o.budget);
            t.record(report.pass, [&] { return report.mismatch ? json{{"mismatch", partial_json(*report.mismatch)}} : json::object(); });
        }
        {
            Tally t{r, "extension", "closures of restricted clones extend to total members"};
            for (auto & c : clones) {
                auto closure = partial_closure(restrict_clone(c, domains).members(), o.budget);
                auto lonely = find_unextendable(closure, c);
                t.record(! lonely, [&] { return json{{"clone", c.label()}, {"partial", partial_json(*lonely)}}; });
            }
        }
        r.dot = export_dot(clones, leq_matrix(clones, 2));
        return r;
    }

    auto check_pol_inv(const CheckOptions & o) -> CheckReport
    {
        CheckReport r;
        r.name = "pol-inv";
        struct Case
        {
            Universe universe;
            std::vector<Operation> gens;
        };
        std::vector<Case> cases;
        if (! o.gens.empty()) {
            if (! o.file)
                throw InvalidArgument{"--gens needs --file"};
            cases.push_back(Case{o.file->universe(), o.file->operations(o.gens)});
        }
        else {
            std::mt19937_64 rng{o.seed};
            for (std::size_t s = 0; s < o.random; ++s) {
                Universe u{uniform(rng, 2, 3)};
                std::vector<Operation> gens;
                auto count = uniform(rng, 1, 2);
                for (unsigned g = 0; g < count; ++g)
                    gens.push_back(random_table(uniform(rng, 1, 2), u, rng));
                cases.push_back(Case{u, gens});
            }
            r.details["seed"] = o.seed;
        }
        std::vector<unsigned> arities = o.arity ? std::vector<unsigned>{o.arity} : std::vector<unsigned>{1, 2};

        json sets = json::array();
        std::size_t failures = 0;
        for (std::size_t s = 0; s < cases.size(); ++s) {
            auto & [u, gens] = cases[s];
            json results = json::array();
            std::string line = "set " + std::to_string(s) + " over " + std::to_string(u.size()) + " elements:";
            for (auto n : arities) {
                auto rep = free_fragment_report(gens, n, u, o.budget);
                bool ok = rep.equal && rep.pol_route_equal.value_or(true);
                json entry{{"arity", n}, {"equal", rep.equal}, {"relation_rows", rep.relation_rows}, {"fragment_size", rep.fragment_size},
                    {"pol_route_equal", rep.pol_route_equal ? json(*rep.pol_route_equal) : json{}}};
                results.push_back(entry);
                line += " n=" + std::to_string(n) + " " + std::to_string(rep.relation_rows) + (rep.equal ? " = " : " != ") +
                    std::to_string(rep.fragment_size);
                if (! ok) {
                    ++failures;
                    if (r.certificate.is_null()) {
                        r.certificate = json{{"claim", "pol-inv"}, {"set", s}, {"universe", u.size()}, {"arity", n},
                            {"generators", ops_json(gens, u)}, {"difference", rep.difference ? table_json(*rep.difference) : json{}}};
                    }
                }
            }
            sets.push_back(json{{"universe", u.size()}, {"generators", ops_json(gens, u)}, {"arities", results}});
            r.lines.push_back(line);
        }
        r.details["sets"] = sets;
        r.lines.push_back(std::to_string(cases.size()) + " generator sets, " + std::to_string(failures) + " failures");
        r.pass = failures == 0;
        return r;
    }

    auto check_covering(const CheckOptions & o) -> CheckReport
    {
        CheckReport r;
        r.name = "covering";
        Universe u{o.universe};
        r.details["seed"] = o.seed;
        covering_into(r, o.subset, o.cap, u, o.samples, o.seed);
        return r;
    }
}

auto clonelab::cli::check_names() -> const std::vector<std::string> &
{
    static const std::vector<std::string> names{"compactness-witness", "finite-embed", "translation-lattice", "antichain-join",
        "antichain-meet", "sigma-join", "pol-inv", "covering"};
    return names;
}

auto clonelab::cli::run_check(const std::string & name, const CheckOptions & options) -> CheckReport
{
    if (name == "compactness-witness")
        return check_compactness(options);
    if (name == "finite-embed")
        return check_finite_embed(options);
    if (name == "translation-lattice")
        return check_translation_lattice(options);
    if (name == "antichain-join")
        return check_antichain_join(options);
    if (name == "antichain-meet")
        return check_antichain_meet(options);
    if (name == "sigma-join")
        return check_sigma_join(options);
    if (name == "pol-inv")
        return check_pol_inv(options);
    if (name == "covering")
        return check_covering(options);
    throw InvalidArgument{"unknown check '" + name + "'"};
}
