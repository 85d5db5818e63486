#pragma once

#include "oracles.hh"

#include <clonelab/group.hh>
#include <clonelab/operation.hh>
#include <clonelab/relation.hh>

#include <algorithm>
#include <memory>
#include <random>
#include <vector>

namespace testing
{
    using namespace clonelab;

    inline auto integers(std::int64_t extent) -> std::shared_ptr<const GroupWindow>
    {
        return std::make_shared<const GroupWindow>(AbelianGroup{1, {}}, std::vector<std::int64_t>{extent});
    }

    inline auto cyclic(std::int64_t n) -> std::shared_ptr<const GroupWindow>
    {
        return std::make_shared<const GroupWindow>(GroupWindow::full(AbelianGroup{0, {n}}));
    }

    inline auto boolean_not() -> Operation { return Operation::table(Universe{2}, 1, {1, 0}); }
    inline auto boolean_and() -> Operation { return Operation::table(Universe{2}, 2, {0, 0, 0, 1}); }
    inline auto boolean_or() -> Operation { return Operation::table(Universe{2}, 2, {0, 1, 1, 1}); }
    inline auto boolean_constant(Element b) -> Operation { return Operation::table(Universe{2}, 1, {b, b}); }

    inline auto min3() -> Operation
    {
        return Operation::from_function(Universe{3}, 2, [](auto x) { return std::min(x[0], x[1]); });
    }

    inline auto less_equal(const Universe & u) -> Relation
    {
        std::vector<Tuple> rows;
        for (auto & t : u.all_tuples(2))
            if (t[0] <= t[1])
                rows.push_back(t);
        return Relation{u, 2, rows};
    }

    inline auto random_relation(const Universe & u, unsigned arity, std::mt19937_64 & rng, double density = 0.4) -> Relation
    {
        std::vector<Tuple> rows;
        std::bernoulli_distribution keep(density);
        for (auto & t : u.all_tuples(arity))
            if (keep(rng))
                rows.push_back(t);
        return Relation{u, arity, rows};
    }

    inline auto raw(const Operation & table) -> oracle::RawOp { return {table.arity(), table.entries()}; }

    inline auto raw_all(const std::vector<Operation> & tables) -> std::vector<oracle::RawOp>
    {
        std::vector<oracle::RawOp> result;
        for (auto & t : tables)
            result.push_back(raw(t));
        return result;
    }

    inline auto as_set(const std::vector<std::vector<Element>> & v) -> std::set<std::vector<Element>>
    {
        return {v.begin(), v.end()};
    }
}
