#include "helpers.hh"

#include <clonelab/errors.hh>
#include <clonelab/operation.hh>
#include <clonelab/relation.hh>

#include <doctest.h>

#include <memory>
#include <random>

using namespace clonelab;

using namespace testing;

TEST_CASE("universe basics")
{
    CHECK_THROWS_AS(Universe{0}, InvalidArgument);
    Universe u{3};
    CHECK(u.max() == 2);
    CHECK(u.power(2) == 9);
    CHECK(u.index_of(Tuple{2, 1}) == 7);
    CHECK(u.tuple_at(7, 2) == Tuple{2, 1});
    CHECK(u.all_tuples(2).size() == 9);
    CHECK_THROWS_AS((void)u.power(100), BudgetExceeded);
}

TEST_CASE("row-major index round-trips through evaluate")
{
    std::mt19937_64 rng{7};
    for (std::size_t m = 1; m <= 4; ++m)
        for (unsigned n = 1; n <= 3; ++n) {
            Universe u{m};
            auto f = random_table(n, u, rng);
            for (std::size_t i = 0; i < u.power(n); ++i) {
                auto x = u.tuple_at(i, n);
                std::size_t expected = 0;
                for (unsigned k = 0; k < n; ++k)
                    expected += x[k] * oracle::power(m, n - 1 - k);
                CHECK(u.index_of(x) == expected);
                CHECK(evaluate(f, x) == f.entries()[i]);
            }
        }
}

TEST_CASE("evaluate symbolic kinds")
{
    CHECK(evaluate(Operation::projection(3, 2), Tuple{4, 7, 1}) == 7);

    auto window = integers(10);
    auto f2 = Operation::translation(window, {2});
    CHECK(evaluate(f2, Tuple{5}) == 7);
    CHECK_THROWS_AS((void)evaluate(f2, Tuple{8}), ValueEscapesWindow);

    auto indicator = Operation::indicator({1, 2}, 5, 6);
    CHECK(evaluate(indicator, Tuple{3}) == 6);
    CHECK(evaluate(indicator, Tuple{1}) == 5);

    CHECK(evaluate(Operation::constant(4, 3), Tuple{0, 1, 2}) == 4);
    CHECK_THROWS_AS((void)evaluate(Operation::projection(2, 1), Tuple{1}), ArityMismatch);
    CHECK_THROWS_AS((void)Operation::projection(2, 3), InvalidArgument);
    CHECK_THROWS_AS((void)Operation::projection(2, 0), InvalidArgument);
    CHECK_THROWS_AS((void)Operation::table(Universe{2}, 1, {0, 2}), ValueEscapesWindow);
    CHECK_THROWS_AS((void)Operation::table(Universe{2}, 2, {0, 1}), InvalidArgument);
    CHECK_THROWS_AS((void)evaluate(boolean_not(), Tuple{2}), ValueEscapesWindow);
}

TEST_CASE("patch behaves like the last projection on A^m")
{
    Universe u{3};
    auto f = Operation::table(u, 1, {2, 2, 0});
    auto s = Operation::patch(f, {0, 1});
    CHECK(s.arity() == 2);
    for (Element x = 0; x < 3; ++x)
        for (Element y = 0; y < 3; ++y)
            CHECK(evaluate(s, Tuple{x, y}) == (x <= 1 ? y : evaluate(f, Tuple{x})));
}

TEST_CASE("compose")
{
    SUBCASE("negation after the first binary projection")
    {
        auto h = compose(boolean_not(), {tabulate(Operation::projection(2, 1), Universe{2})});
        REQUIRE(h.is_table());
        CHECK(h.entries() == std::vector<Element>{1, 1, 0, 0});
    }

    SUBCASE("translations add their shifts")
    {
        auto window = integers(10);
        auto h = compose(Operation::translation(window, {2}), {Operation::translation(window, {3})});
        CHECK_FALSE(h.is_table());
        auto f5 = Operation::translation(window, {5});
        for (Element x = 0; x + 5 < 10; ++x)
            CHECK(evaluate(h, Tuple{x}) == evaluate(f5, Tuple{x}));
        CHECK_THROWS_AS((void)evaluate(h, Tuple{6}), ValueEscapesWindow);
    }

    SUBCASE("unary identity is neutral")
    {
        std::mt19937_64 rng{3};
        Universe u{3};
        for (unsigned n = 1; n <= 3; ++n) {
            auto f = random_table(n, u, rng);
            CHECK(equal_on(compose(Operation::projection(1, 1), {f}), f, u));
        }
    }

    SUBCASE("errors")
    {
        auto p = Operation::projection(2, 1);
        CHECK_THROWS_AS((void)compose(p, {p}), ArityMismatch);
        CHECK_THROWS_AS((void)compose(p, {p, Operation::projection(3, 1)}), ArityMismatch);
        auto a = Operation::table(Universe{2}, 1, {0, 1});
        auto b = Operation::table(Universe{3}, 1, {0, 1, 2});
        CHECK_THROWS_AS((void)compose(a, {b}), UniverseMismatch);
    }
}

TEST_CASE("composition properties over random tables")
{
    std::mt19937_64 rng{11};
    for (int trial = 0; trial < 50; ++trial) {
        Universe u{std::uniform_int_distribution<std::size_t>(1, 4)(rng)};
        unsigned n = std::uniform_int_distribution<unsigned>(1, 3)(rng);
        unsigned k = std::uniform_int_distribution<unsigned>(1, 2)(rng);
        auto f = random_table(k, u, rng);
        std::vector<Operation> gs, hs;
        for (unsigned i = 0; i < k; ++i)
            gs.push_back(random_table(2, u, rng));
        for (unsigned i = 0; i < 2; ++i)
            hs.push_back(random_table(n, u, rng));

        // associativity against flat pointwise evaluation
        std::vector<Operation> middle;
        for (auto & g : gs)
            middle.push_back(compose(g, hs));
        auto nested = compose(f, middle);
        for (auto & x : u.all_tuples(n)) {
            Tuple h_values{evaluate(hs[0], x), evaluate(hs[1], x)};
            Tuple g_values;
            for (auto & g : gs)
                g_values.push_back(evaluate(g, h_values));
            CHECK(evaluate(nested, x) == evaluate(f, g_values));
        }

        // composing with the projections gives f back
        CHECK(equal_on(compose(f, projection_tables(k, u)), f, u));
        // symbolic and tabulated compositions agree
        std::vector<Operation> symbolic;
        for (unsigned i = 1; i <= k; ++i)
            symbolic.push_back(Operation::projection(k, i));
        CHECK(equal_on(compose(f, symbolic), f, u));
    }
}

TEST_CASE("tabulate")
{
    CHECK(tabulate(Operation::projection(1, 1), Universe{2}).entries() == std::vector<Element>{0, 1});
    CHECK(tabulate(Operation::constant(1, 2), Universe{2}).entries() == std::vector<Element>{1, 1, 1, 1});

    auto window = integers(5);
    try {
        (void)tabulate(Operation::translation(window, {3}), Universe{5});
        FAIL("expected ValueEscapesWindow");
    }
    catch (const ValueEscapesWindow & e) {
        CHECK(e.arguments() == Tuple{2});
    }

    CHECK_THROWS_AS((void)tabulate(Operation::constant(5, 1), Universe{2}), ValueEscapesWindow);
    auto t = Operation::table(Universe{2}, 1, {1, 0});
    CHECK(tabulate(t, Universe{2}).entries() == t.entries());
}

TEST_CASE("agree_on")
{
    std::mt19937_64 rng{5};
    Universe u{4};
    auto f = random_table(2, u, rng);
    CHECK(agree_on(f, f, u.all_tuples(2)));

    auto window = integers(10);
    CHECK_FALSE(agree_on(Operation::translation(window, {2}), Operation::translation(window, {3}), {{0}}));

    auto z12 = std::make_shared<const GroupWindow>(GroupWindow::full(AbelianGroup{0, {12}}));
    for (int trial = 0; trial < 20; ++trial) {
        auto g = random_table(1, Universe{12}, rng);
        auto fa = Operation::translation(z12, {static_cast<std::int64_t>(evaluate(g, Tuple{0}))});
        CHECK(agree_on(g, fa, {{0}}));
    }
    CHECK_THROWS_AS((void)agree_on(f, Operation::projection(1, 1), {{0}}), ArityMismatch);
}

TEST_CASE("preserves")
{
    SUBCASE("projections preserve every relation")
    {
        std::mt19937_64 rng{13};
        for (int trial = 0; trial < 40; ++trial) {
            Universe u{std::uniform_int_distribution<std::size_t>(1, 3)(rng)};
            auto rho = random_relation(u, std::uniform_int_distribution<unsigned>(1, 3)(rng), rng);
            for (unsigned n = 1; n <= 3; ++n)
                for (unsigned k = 1; k <= n; ++k)
                    CHECK(preserves(Operation::projection(n, k), rho));
        }
    }

    SUBCASE("min on {0,1,2} and the relation {(0,1),(1,2)}")
    {
        Relation rho{Universe{3}, 2, {{0, 1}, {1, 2}}};
        auto expected = oracle::preserves(min3().entries(), 2, 3, rho.rows());
        CHECK(expected);
        CHECK(preserves(min3(), rho) == expected);
    }

    SUBCASE("translations and unary relations")
    {
        auto window = std::make_shared<const GroupWindow>(GroupWindow::full(AbelianGroup{0, {12}}));
        std::vector<std::vector<Element>> subsets = {{0}, {0, 6}, {0, 4, 8}, {0, 3, 6, 9}, {1, 2}, {0, 2, 4, 6, 8, 10}};
        for (auto & h : subsets)
            for (std::int64_t a = 0; a < 12; ++a) {
                bool shifted_inside = true;
                for (auto x : h)
                    shifted_inside = shifted_inside && std::count(h.begin(), h.end(), static_cast<Element>((x + a) % 12));
                auto rho = Relation::unary(Universe{12}, h);
                CHECK(preserves(Operation::translation(window, {a}), rho) == shifted_inside);
            }
    }

    SUBCASE("agrees with the brute-force oracle on random tables")
    {
        std::mt19937_64 rng{17};
        for (int trial = 0; trial < 60; ++trial) {
            Universe u{std::uniform_int_distribution<std::size_t>(2, 3)(rng)};
            unsigned n = std::uniform_int_distribution<unsigned>(1, 2)(rng);
            auto f = random_table(n, u, rng);
            auto rho = random_relation(u, 2, rng);
            CHECK(preserves(f, rho) == oracle::preserves(f.entries(), n, u.size(), rho.rows()));
        }
    }
}

TEST_CASE("relation validation")
{
    CHECK_THROWS_AS((Relation{Universe{2}, 2, {{0, 1, 1}}}), ArityMismatch);
    CHECK_THROWS_AS((Relation{Universe{2}, 1, {{2}}}), ValueEscapesWindow);
    Relation r{Universe{2}, 1, {{1}, {0}, {1}}};
    CHECK(r.size() == 2);
    CHECK(r.contains({0}));
}

TEST_CASE("fictitious coordinates and essential core")
{
    Universe u{3};
    // f(x, y, z) = max(x, z)
    auto f = Operation::from_function(u, 3, [](auto x) { return std::max(x[0], x[2]); });
    auto fictitious = fictitious_coordinates(f);
    CHECK(fictitious == std::vector<bool>{false, true, false});
    auto core = essential_core(f);
    CHECK(core.arity() == 2);
    CHECK(equal_on(core, Operation::from_function(u, 2, [](auto x) { return std::max(x[0], x[1]); }), u));

    auto c = essential_core(tabulate(Operation::constant(2, 2), u));
    CHECK(c.arity() == 1);
    CHECK(c.entries() == std::vector<Element>{2, 2, 2});
}

TEST_CASE("abelian groups")
{
    AbelianGroup g{1, {4}};
    CHECK(g.dimension() == 2);
    CHECK(g.normalize({-1, 3}) == GroupElement{3, 3});
    std::mt19937_64 rng{19};
    for (int trial = 0; trial < 30; ++trial) {
        GroupElement a{std::uniform_int_distribution<std::int64_t>(-10, 10)(rng), std::uniform_int_distribution<std::int64_t>(-10, 10)(rng)};
        CHECK(g.add(g.normalize(a), g.negate(a)) == g.zero());
    }
    CHECK_THROWS_AS((void)g.normalize({1}), InvalidArgument);

    // Z4 + Z, window of extent 5 on the free coordinate
    auto window = std::make_shared<const GroupWindow>(g, std::vector<std::int64_t>{5});
    CHECK(window->universe().size() == 20);
    for (Element code = 0; code < 20; ++code)
        CHECK(window->encode(window->decode(code)) == code);

    auto step = Operation::translation(window, {1, 0});
    auto four = compose(step, {compose(step, {compose(step, {step})})});
    CHECK(equal_on(four, Operation::translation(window, {0, 0}), window->universe()));
    CHECK(equal_on(Operation::translation(window, {4, 0}), Operation::projection(1, 1), window->universe()));
}
