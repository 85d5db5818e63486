#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace clonelab
{
    using Element = std::uint32_t;
    using Tuple = std::vector<Element>;

    /// Default cap on the number of tables in a fragment or tuples in a relation.
    inline constexpr std::size_t default_budget = 1'000'000;

    /// A finite window {0, ..., size-1} of the base set, ordered naturally.
    class Universe
    {
    public:
        explicit Universe(std::size_t size);

        [[nodiscard]] auto size() const -> std::size_t { return _size; }
        [[nodiscard]] auto max() const -> Element { return static_cast<Element>(_size - 1); }
        [[nodiscard]] auto contains(Element x) const -> bool { return x < _size; }

        /// size^n; throws BudgetExceeded when it does not fit in size_t or exceeds limit.
        [[nodiscard]] auto power(unsigned n, std::size_t limit = SIZE_MAX) const -> std::size_t;

        /// Row-major index: the tuple (x_1..x_n) sits at sum x_i * size^(n-i).
        [[nodiscard]] auto index_of(std::span<const Element> tuple) const -> std::size_t;
        [[nodiscard]] auto tuple_at(std::size_t index, unsigned arity) const -> Tuple;

        /// Every n-tuple over the universe in row-major order.
        [[nodiscard]] auto all_tuples(unsigned arity) const -> std::vector<Tuple>;

        auto operator<=>(const Universe &) const = default;

    private:
        std::size_t _size;
    };

    /// Advances a tuple to its row-major successor; false after the last tuple.
    auto next_tuple(Tuple & t, std::size_t size) -> bool;
}
