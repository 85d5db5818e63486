#include "helpers.hh"

#include <clonelab/errors.hh>
#include <clonelab/galois.hh>

#include <doctest.h>

#include <random>

using namespace clonelab;
using namespace testing;

namespace
{
    auto random_generators(std::mt19937_64 & rng, const Universe & u, std::size_t max_count, unsigned max_arity)
        -> std::vector<Operation>
    {
        std::vector<Operation> gens;
        auto count = std::uniform_int_distribution<std::size_t>(0, max_count)(rng);
        for (std::size_t i = 0; i < count; ++i)
            gens.push_back(random_table(std::uniform_int_distribution<unsigned>(1, max_arity)(rng), u, rng));
        return gens;
    }

    auto projection_set(const Universe & u, unsigned n) -> std::set<std::vector<Element>>
    {
        std::set<std::vector<Element>> result;
        for (unsigned k = 0; k < n; ++k)
            result.insert(oracle::projection(u.size(), n, k));
        return result;
    }
}

TEST_CASE("clone_fragment examples")
{
    Universe b{2};

    SUBCASE("negation")
    {
        auto fragment = clone_fragment({boolean_not()}, 1, b);
        CHECK(fragment.size() == 2);
        CHECK(as_set(fragment.tables()) == oracle::term_enumeration({raw(boolean_not())}, 1, 2, 3));
    }

    SUBCASE("no generators")
    {
        for (unsigned n = 1; n <= 3; ++n)
            CHECK(as_set(clone_fragment({}, n, Universe{3}).tables()) == projection_set(Universe{3}, n));
    }

    SUBCASE("monotone binary tables")
    {
        auto fragment = clone_fragment({boolean_and(), boolean_or(), boolean_constant(0), boolean_constant(1)}, 2, b);
        std::set<std::vector<Element>> monotone;
        for (auto & t : oracle::all_tables(2, 2))
            if (oracle::is_monotone(t, 2, 2))
                monotone.insert(t);
        CHECK(monotone.size() == 6);
        CHECK(as_set(fragment.tables()) == monotone);
    }

    SUBCASE("budget")
    {
        CHECK_THROWS_AS((void)clone_fragment({boolean_and(), boolean_not()}, 2, b, 5), BudgetExceeded);
        CHECK(clone_fragment({boolean_and(), boolean_not()}, 2, b).size() == 16);
    }

    SUBCASE("symbolic generators that leave the universe")
    {
        auto window = integers(4);
        CHECK_THROWS_AS((void)clone_fragment({Operation::translation(window, {1})}, 1, Universe{4}), ValueEscapesWindow);
    }
}

TEST_CASE("clone_fragment agrees with naive fixpoint and term enumeration")
{
    std::mt19937_64 rng{23};
    for (int trial = 0; trial < 20; ++trial) {
        Universe u{std::uniform_int_distribution<std::size_t>(2, 3)(rng)};
        auto gens = random_generators(rng, u, 2, 2);
        for (unsigned n = 1; n <= 2; ++n) {
            auto fragment = clone_fragment(gens, n, u);
            // the naive oracle is quadratic per round, so it only runs on small fragments
            if (fragment.size() <= 150)
                CHECK(as_set(fragment.tables()) == oracle::naive_closure(raw_all(gens), projection_set(u, n), u.size()));
            // every term of bounded depth is a member
            auto terms = oracle::term_enumeration(raw_all(gens), n, u.size(), 2);
            for (auto & t : terms)
                CHECK(fragment.contains(t));
        }
    }
}

TEST_CASE("restriction_fragment")
{
    SUBCASE("no generators gives restricted projections")
    {
        std::vector<Tuple> domain{{0, 1}, {2, 2}, {1, 0}};
        auto r = restriction_fragment({}, domain, Universe{3});
        CHECK(as_set(r.functions) == std::set<std::vector<Element>>{{0, 2, 1}, {1, 2, 0}});
    }

    SUBCASE("translations by 2 and 3 at the origin")
    {
        auto window = integers(31);
        auto r = restriction_fragment({Operation::translation(window, {2}), Operation::translation(window, {3})}, {{0}},
            window->universe());
        std::set<std::vector<Element>> expected{{0}};
        for (auto c : oracle::numerical_semigroup({2, 3}, 31))
            expected.insert({static_cast<Element>(c)});
        CHECK(as_set(r.functions) == expected);
        CHECK(r.truncated);
    }

    SUBCASE("a constant")
    {
        auto c = Operation::constant(2, 1);
        for (Element x = 0; x < 4; ++x) {
            auto r = restriction_fragment({c}, {{x}}, Universe{4});
            CHECK(as_set(r.functions) == std::set<std::vector<Element>>{{x}, {2}});
        }
    }

    SUBCASE("equals restrictions of the fragment")
    {
        std::mt19937_64 rng{29};
        for (int trial = 0; trial < 40; ++trial) {
            Universe u{std::uniform_int_distribution<std::size_t>(2, 3)(rng)};
            auto gens = random_generators(rng, u, 2, u.size() == 2 ? 2 : 1);
            unsigned n = std::uniform_int_distribution<unsigned>(1, 2)(rng);
            auto points = u.all_tuples(n);
            std::shuffle(points.begin(), points.end(), rng);
            points.resize(std::uniform_int_distribution<std::size_t>(1, points.size())(rng));

            std::set<std::vector<Element>> expected;
            for (auto & h : clone_fragment(gens, n, u).operations())
                expected.insert(restrict_to(h, points));
            CHECK(as_set(restriction_fragment(gens, points, u).functions) == expected);
        }
    }

    SUBCASE("errors")
    {
        CHECK_THROWS_AS((void)restriction_fragment({}, {}, Universe{2}), InvalidArgument);
        CHECK_THROWS_AS((void)restriction_fragment({}, {{0}, {0, 1}}, Universe{2}), ArityMismatch);
        CHECK_THROWS_AS((void)restriction_fragment({}, {{3}}, Universe{2}), ValueEscapesWindow);
    }
}

TEST_CASE("local_member")
{
    SUBCASE("five is two plus three")
    {
        auto window = integers(20);
        std::vector<Operation> gens{Operation::translation(window, {2}), Operation::translation(window, {3})};
        std::vector<std::vector<Tuple>> domains{{{0}}, {{0}, {4}}, {{1}, {7}, {9}}};
        auto verdict = local_member(Operation::translation(window, {5}), gens, domains, window->universe());
        CHECK(verdict.kind == LocalVerdict::Kind::YesUpTo);
        CHECK(verdict.domains_tested == 3);
    }

    SUBCASE("generators interpolate themselves")
    {
        std::mt19937_64 rng{31};
        Universe u{3};
        for (int trial = 0; trial < 20; ++trial) {
            auto gens = random_generators(rng, u, 2, 2);
            if (gens.empty())
                continue;
            auto & f = gens.front();
            std::vector<std::vector<Tuple>> domains{u.all_tuples(f.arity())};
            CHECK(local_member(f, gens, domains, u).kind == LocalVerdict::Kind::YesUpTo);
        }
    }

    SUBCASE("a table disagreeing with every translation on {0, b}")
    {
        auto window = cyclic(12);
        std::vector<Operation> gens;
        for (std::int64_t a : {0, 4, 8})
            gens.push_back(Operation::translation(window, {a}));
        // g(0) = 4 but g(2) = 7 instead of 6
        auto g = Operation::from_function(Universe{12}, 1, [](auto x) { return x[0] == 2 ? 7 : (x[0] + 4) % 12; });
        std::vector<std::vector<Tuple>> domains{{{0}}, {{0}, {2}}};
        auto verdict = local_member(g, gens, domains, Universe{12});
        REQUIRE(verdict.kind == LocalVerdict::Kind::No);
        CHECK(verdict.witness_domain == std::vector<Tuple>{{0}, {2}});
        CHECK(verdict.witness_values == std::vector<Element>{4, 7});
        CHECK(verdict.domains_tested == 2);

        // the certificate is re-checkable against the generated fragment
        for (auto & h : clone_fragment(gens, 1, Universe{12}).operations())
            CHECK(restrict_to(h, verdict.witness_domain) != verdict.witness_values);
    }

    SUBCASE("No verdicts are certified by the fragment")
    {
        std::mt19937_64 rng{37};
        Universe u{3};
        for (int trial = 0; trial < 40; ++trial) {
            auto gens = random_generators(rng, u, 2, 1);
            auto g = random_table(2, u, rng);
            std::vector<std::vector<Tuple>> domains{{{0, 1}}, {{0, 1}, {1, 2}}, u.all_tuples(2)};
            auto verdict = local_member(g, gens, domains, u);
            auto fragment = clone_fragment(gens, 2, u);
            CHECK((verdict.kind == LocalVerdict::Kind::YesUpTo) == fragment.contains(g));
            if (verdict.kind == LocalVerdict::Kind::No)
                for (auto & h : fragment.operations())
                    CHECK(restrict_to(h, verdict.witness_domain) != verdict.witness_values);
        }
    }
}

TEST_CASE("pol")
{
    Universe b{2};

    SUBCASE("order on two elements")
    {
        auto p = pol({less_equal(b)}, 2, b);
        std::size_t expected = 0;
        for (auto & t : oracle::all_tables(2, 2))
            expected += oracle::preserves(t, 2, 2, less_equal(b).rows());
        CHECK(expected == 6);
        CHECK(p.size() == 6);
    }

    SUBCASE("nothing to preserve")
    {
        CHECK(pol({}, 1, b).size() == 4);
        CHECK(pol({}, 1, b) == all_operations(1, b));
    }

    SUBCASE("the unary relation {0} on three elements")
    {
        auto p = pol({Relation::unary(Universe{3}, {0})}, 1, Universe{3});
        CHECK(p.size() == 9);
        for (auto & t : p.tables())
            CHECK(t[0] == 0);
    }

    SUBCASE("agrees with brute force")
    {
        std::mt19937_64 rng{41};
        for (int trial = 0; trial < 30; ++trial) {
            Universe u{std::uniform_int_distribution<std::size_t>(2, 3)(rng)};
            unsigned n = std::uniform_int_distribution<unsigned>(1, 2)(rng);
            std::vector<Relation> rels{random_relation(u, 2, rng), random_relation(u, 1, rng, 0.6)};
            std::set<std::vector<Element>> expected;
            for (auto & t : oracle::all_tables(u.size(), n)) {
                bool ok = true;
                for (auto & r : rels)
                    ok = ok && oracle::preserves(t, n, u.size(), r.rows());
                if (ok)
                    expected.insert(t);
            }
            CHECK(as_set(pol(rels, n, u).tables()) == expected);
        }
    }

    SUBCASE("Galois monotonicity in the relations")
    {
        std::mt19937_64 rng{43};
        for (int trial = 0; trial < 20; ++trial) {
            Universe u{3};
            std::vector<Relation> small{random_relation(u, 2, rng, 0.6)};
            auto large = small;
            large.push_back(random_relation(u, 1, rng, 0.6));
            CHECK(pol(large, 2, u).is_subset_of(pol(small, 2, u)));
        }
    }

    SUBCASE("budget")
    {
        CHECK_THROWS_AS((void)pol({}, 2, Universe{3}, 100), BudgetExceeded);
    }
}

TEST_CASE("inv_generate")
{
    Universe b{2};
    CHECK(inv_generate({}, {{1, 0}, {0, 0}}, b).rows() == std::vector<Tuple>{{0, 0}, {1, 0}});
    CHECK(inv_generate({boolean_not()}, {{0, 1}}, b).rows() == std::vector<Tuple>{{0, 1}, {1, 0}});
    auto r = inv_generate({boolean_and()}, {{0, 1}, {1, 0}}, b);
    CHECK(as_set(r.rows()) == oracle::naive_closure({raw(boolean_and())}, {{0, 1}, {1, 0}}, 2));
    CHECK(r.rows() == std::vector<Tuple>{{0, 0}, {0, 1}, {1, 0}});
    CHECK_THROWS_AS((void)inv_generate({}, {}, b), InvalidArgument);

    SUBCASE("monotone in the generators and invariant under them")
    {
        std::mt19937_64 rng{47};
        for (int trial = 0; trial < 30; ++trial) {
            Universe u{3};
            auto small = random_generators(rng, u, 1, 2);
            auto large = small;
            large.push_back(random_table(2, u, rng));
            std::vector<Tuple> seed{u.tuple_at(std::uniform_int_distribution<std::size_t>(0, 8)(rng), 2)};
            auto a = inv_generate(small, seed, u);
            auto c = inv_generate(large, seed, u);
            CHECK(std::includes(c.rows().begin(), c.rows().end(), a.rows().begin(), a.rows().end()));
            for (auto & f : large)
                CHECK(preserves(f, c));
        }
    }
}

TEST_CASE("fragments lie inside Pol of sampled invariants")
{
    std::mt19937_64 rng{53};
    for (int trial = 0; trial < 20; ++trial) {
        Universe u{std::uniform_int_distribution<std::size_t>(2, 3)(rng)};
        auto gens = random_generators(rng, u, 2, 2);
        std::vector<Relation> invariants;
        for (int i = 0; i < 2; ++i) {
            std::vector<Tuple> seed{u.tuple_at(std::uniform_int_distribution<std::size_t>(0, u.power(2) - 1)(rng), 2)};
            invariants.push_back(inv_generate(gens, seed, u));
        }
        for (unsigned n = 1; n <= 2; ++n)
            CHECK(clone_fragment(gens, n, u).is_subset_of(pol(invariants, n, u)));
    }
}

TEST_CASE("free_fragment_check")
{
    Universe b{2};
    CHECK(free_fragment_check({}, 2, b));
    CHECK(free_fragment_check({}, 2, Universe{3}));

    auto report = free_fragment_report({boolean_not()}, 1, b);
    CHECK(report.equal);
    CHECK(report.relation_rows == 2);
    CHECK(report.fragment_size == 2);
    CHECK(report.pol_route_equal == std::optional<bool>{true});

    auto lattice = free_fragment_report({boolean_and(), boolean_or()}, 2, b);
    CHECK(lattice.equal);
    CHECK(lattice.fragment_size == 4);

    SUBCASE("exact over small universes")
    {
        std::mt19937_64 rng{59};
        for (int trial = 0; trial < 30; ++trial) {
            Universe u{std::uniform_int_distribution<std::size_t>(1, 3)(rng)};
            auto gens = random_generators(rng, u, 2, 2);
            for (unsigned n = 1; n <= 2; ++n)
                CHECK(free_fragment_check(gens, n, u));
        }
    }
}

TEST_CASE("FragmentSet")
{
    Universe b{2};
    FragmentSet f{1, b, {{1, 0}, {0, 1}, {1, 0}}};
    CHECK(f.size() == 2);
    CHECK(f.contains(boolean_not()));
    CHECK_FALSE(f.contains(boolean_and()));
    CHECK(f.contains(Operation::projection(1, 1)));
    FragmentSet g{1, b, {{0, 1}}};
    CHECK(g.is_subset_of(f));
    CHECK(intersect(f, g) == g);
    CHECK_THROWS_AS((void)intersect(f, FragmentSet{2, b, {}}), UniverseMismatch);
    CHECK(all_operations(2, Universe{3}).size() == 19683);
    CHECK_THROWS_AS((void)all_operations(3, Universe{3}), BudgetExceeded);
}
