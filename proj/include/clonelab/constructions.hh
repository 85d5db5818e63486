#pragma once

#include <clonelab/galois.hh>
#include <clonelab/group.hh>
#include <clonelab/operation.hh>
#include <clonelab/partial.hh>

#include <functional>
#include <memory>
#include <random>
#include <vector>

namespace clonelab
{
    /// A subgroup given by generators, enumerated inside a group window by
    /// closing under + and - and keeping what stays in the window.
    class SubgroupHandle
    {
    public:
        SubgroupHandle(std::shared_ptr<const GroupWindow> window, std::vector<GroupElement> generators);

        [[nodiscard]] auto window() const -> const std::shared_ptr<const GroupWindow> & { return _window; }
        [[nodiscard]] auto generators() const -> const std::vector<GroupElement> & { return _generators; }
        /// In-window elements, sorted.
        [[nodiscard]] auto elements() const -> const std::vector<GroupElement> & { return _elements; }
        [[nodiscard]] auto contains(const GroupElement & a) const -> bool;
        [[nodiscard]] auto translations() const -> std::vector<Operation>;

    private:
        std::shared_ptr<const GroupWindow> _window;
        std::vector<GroupElement> _generators;
        std::vector<GroupElement> _elements;
    };

    [[nodiscard]] auto translation_op(std::shared_ptr<const GroupWindow> window, GroupElement shift) -> Operation;

    struct SemigroupClosure
    {
        std::vector<GroupElement> elements; // sorted
        bool complete;                      // false when the budget stopped the search
    };

    /// Breadth-first closure of generators under +.
    [[nodiscard]] auto subsemigroup(const AbelianGroup & group, const std::vector<GroupElement> & generators, std::size_t budget)
        -> SemigroupClosure;

    /// p(x) - x is one constant a over dom p, and a lies in h.
    [[nodiscard]] auto translation_clone_member(const PartialOperation & p, const SubgroupHandle & h) -> bool;

    enum class WitnessFamily
    {
        Bounded, // C_a: f(x) <= a everywhere
        Growing  // D_a: max(x) >= a implies f(x) >= max(x)
    };

    [[nodiscard]] auto bounded_or_growth_member(const Operation & f, Element a, WitnessFamily family, const Universe & u) -> bool;

    struct Interpolant
    {
        Element bound;
        Operation op;
    };

    /// A member of C_a or D_a that agrees with g on the domain. Bounded: a is
    /// the largest value of g on the domain, the filler 0. Growing: a is one
    /// more than the largest coordinate in the domain, the filler max(x).
    [[nodiscard]] auto interpolant(const Operation & g, const std::vector<Tuple> & domain, WitnessFamily family, const Universe & u)
        -> Interpolant;

    /// Decides membership of operations on a finite set (tables over {0..k-1}).
    using CloneOracle = std::function<bool(const Operation &)>;

    /// g restricted to subset^n, relabelled onto {0..|subset|-1} in sorted
    /// order; nullopt if g leaves the subset.
    [[nodiscard]] auto restrict_to_subset(const Operation & g, const std::vector<Element> & subset) -> std::optional<Operation>;

    /// g is in S_f for some f of the clone on the subset.
    [[nodiscard]] auto finite_embed_member(const Operation & g, const std::vector<Element> & subset, const CloneOracle & on_subset) -> bool;

    /// s(x_1..x_m, y) = y on subset^m, f(x) off it.
    [[nodiscard]] auto patch_op(const Operation & f, const std::vector<Element> & subset) -> Operation;

    /// f maps subset^n into subset.
    [[nodiscard]] auto unary_pol_member(const Operation & f, const std::vector<Element> & subset) -> bool;

    /// clone_fragment({f_B}) with f_B(x) = a on B and b elsewhere.
    [[nodiscard]] auto indicator_clone_fragments(const std::vector<Element> & b_set, Element a, Element b, const Universe & u,
        unsigned arity, std::size_t budget = default_budget) -> FragmentSet;

    /// Uniform over C_a (values in [0, a]) or D_a (values in [max(x), top] where
    /// max(x) >= a, unconstrained elsewhere).
    [[nodiscard]] auto random_family_member(WitnessFamily family, Element a, unsigned arity, const Universe & u, std::mt19937_64 & rng)
        -> Operation;
}
