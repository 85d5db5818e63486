#pragma once

#include <clonelab/universe.hh>

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace clonelab::detail
{
    struct TupleHash
    {
        auto operator()(const std::vector<Element> & v) const noexcept -> std::size_t
        {
            std::size_t h = 1469598103934665603ULL;
            for (auto x : v) {
                h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
                h *= 1099511628211ULL;
            }
            return h;
        }
    };

    /// base^exponent, or nullopt on overflow.
    inline auto checked_power(std::size_t base, std::size_t exponent) -> std::optional<std::size_t>
    {
        std::size_t result = 1;
        for (std::size_t i = 0; i < exponent; ++i) {
            if (base != 0 && result > SIZE_MAX / base)
                return std::nullopt;
            result *= base;
        }
        return result;
    }

    /// Calls fn on every k-tuple of indices in [0, top] having at least one entry
    /// equal to top. Over top = 0, 1, 2, ... this visits each tuple exactly once,
    /// which is what a semi-naive fixpoint over a growing list needs. fn returns
    /// false to stop early; the function then returns false too.
    template <typename Fn>
    auto for_each_tuple_with_max(unsigned k, std::size_t top, Fn && fn) -> bool
    {
        std::vector<std::size_t> idx(k);
        for (unsigned first = 0; first < k; ++first) {
            // positions before first range over [0, top), first is top, later ones over [0, top]
            if (first > 0 && top == 0)
                break;
            for (unsigned p = 0; p < k; ++p)
                idx[p] = (p == first) ? top : 0;
            while (true) {
                if (! fn(std::span<const std::size_t>{idx}))
                    return false;
                unsigned p = k;
                bool advanced = false;
                while (p-- > 0) {
                    if (p == first)
                        continue;
                    std::size_t bound = (p < first) ? top : top + 1;
                    if (++idx[p] < bound) {
                        advanced = true;
                        break;
                    }
                    idx[p] = 0;
                }
                if (! advanced)
                    break;
            }
        }
        return true;
    }

    /// A generator as a lookup table; escaped marks arguments whose value leaves
    /// the window.
    inline constexpr Element escaped = static_cast<Element>(-1);

    struct LookupTable
    {
        unsigned arity;
        std::vector<Element> entries;
    };

    struct ComponentwiseClosure
    {
        std::vector<std::vector<Element>> members; // discovery order
        bool truncated = false;
    };

    /// Least superset of seeds closed under applying each generator
    /// componentwise to tuples of members. Applications touching an escaped
    /// entry are dropped and flag truncation.
    auto close_componentwise(std::size_t universe_size, const std::vector<LookupTable> & gens,
        std::vector<std::vector<Element>> seeds, std::size_t budget, const char * what) -> ComponentwiseClosure;
}
