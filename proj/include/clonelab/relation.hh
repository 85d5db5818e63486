#pragma once

#include <clonelab/operation.hh>
#include <clonelab/universe.hh>

#include <vector>

namespace clonelab
{
    /// A finite m-ary relation over a universe; rows kept sorted and unique.
    class Relation
    {
    public:
        Relation(Universe universe, unsigned arity, std::vector<Tuple> rows);

        /// A subset viewed as a unary relation.
        static auto unary(Universe universe, const std::vector<Element> & subset) -> Relation;

        [[nodiscard]] auto universe() const -> const Universe & { return _universe; }
        [[nodiscard]] auto arity() const -> unsigned { return _arity; }
        [[nodiscard]] auto rows() const -> const std::vector<Tuple> & { return _rows; }
        [[nodiscard]] auto size() const -> std::size_t { return _rows.size(); }
        [[nodiscard]] auto contains(const Tuple & row) const -> bool;

        auto operator==(const Relation &) const -> bool = default;

    private:
        Universe _universe;
        unsigned _arity;
        std::vector<Tuple> _rows;
    };

    /// True iff the componentwise image of every n-tuple of rows is again a row.
    [[nodiscard]] auto preserves(const Operation & f, const Relation & rho) -> bool;
}
