#pragma once

#include <clonelab/operation.hh>
#include <clonelab/relation.hh>
#include <clonelab/universe.hh>

#include <optional>
#include <vector>

namespace clonelab
{
    /// A set of n-ary tables over a universe, kept sorted by entry vector.
    class FragmentSet
    {
    public:
        FragmentSet(unsigned arity, Universe universe, std::vector<std::vector<Element>> tables, bool complete = true);

        [[nodiscard]] auto arity() const -> unsigned { return _arity; }
        [[nodiscard]] auto universe() const -> const Universe & { return _universe; }
        [[nodiscard]] auto tables() const -> const std::vector<std::vector<Element>> & { return _tables; }
        [[nodiscard]] auto size() const -> std::size_t { return _tables.size(); }
        [[nodiscard]] auto complete() const -> bool { return _complete; }

        [[nodiscard]] auto contains(const std::vector<Element> & entries) const -> bool;
        /// Tabulates f over the fragment's universe first; false on arity mismatch
        /// or if f escapes the window.
        [[nodiscard]] auto contains(const Operation & f) const -> bool;
        [[nodiscard]] auto operations() const -> std::vector<Operation>;

        [[nodiscard]] auto is_subset_of(const FragmentSet & other) const -> bool;

        auto operator==(const FragmentSet & other) const -> bool;

    private:
        unsigned _arity;
        Universe _universe;
        std::vector<std::vector<Element>> _tables;
        bool _complete;
    };

    [[nodiscard]] auto intersect(const FragmentSet & a, const FragmentSet & b) -> FragmentSet;

    /// Every n-ary table over u.
    [[nodiscard]] auto all_operations(unsigned arity, const Universe & u, std::size_t budget = default_budget) -> FragmentSet;

    /// The n-ary fragment of the clone generated by gens over u: least fixpoint
    /// of the projections under f(h_1, ..., h_k) for generators f. Throws
    /// BudgetExceeded when more than budget tables turn up.
    [[nodiscard]] auto clone_fragment(const std::vector<Operation> & gens, unsigned arity, const Universe & u,
        std::size_t budget = default_budget) -> FragmentSet;

    /// Restrictions to a finite domain of the members of a clone.
    struct RestrictionSet
    {
        std::vector<Tuple> domain;
        std::vector<std::vector<Element>> functions; // values along domain, sorted
        /// Some generator application left the window and was dropped, so the
        /// set is only the part of the clone visible inside the window.
        bool truncated = false;

        [[nodiscard]] auto contains(const std::vector<Element> & values) const -> bool;
    };

    /// g's values along the domain tuples.
    [[nodiscard]] auto restrict_to(const Operation & g, const std::vector<Tuple> & domain) -> std::vector<Element>;

    [[nodiscard]] auto restriction_fragment(const std::vector<Operation> & gens, const std::vector<Tuple> & domain,
        const Universe & u, std::size_t budget = default_budget) -> RestrictionSet;

    struct LocalVerdict
    {
        enum class Kind
        {
            No,
            YesUpTo
        };

        Kind kind;
        /// For No: the domain on which g interpolates no member, and g's values there.
        std::vector<Tuple> witness_domain;
        std::vector<Element> witness_values;
        /// For No: the restriction set behind the witness was window-truncated.
        bool window_truncated = false;
        std::size_t domains_tested = 0;
    };

    /// Interpolation test: No(A) if g|A is not the restriction of any member on
    /// some listed A, else YesUpTo (membership relative to the listed domains).
    [[nodiscard]] auto local_member(const Operation & g, const std::vector<Operation> & gens,
        const std::vector<std::vector<Tuple>> & domains, const Universe & u, std::size_t budget = default_budget) -> LocalVerdict;

    /// All n-ary tables over u preserving every relation, by backtracking with
    /// partial-preservation pruning.
    [[nodiscard]] auto pol(const std::vector<Relation> & relations, unsigned arity, const Universe & u,
        std::size_t budget = default_budget) -> FragmentSet;

    /// The smallest relation containing seed that is invariant under gens.
    [[nodiscard]] auto inv_generate(const std::vector<Operation> & gens, const std::vector<Tuple> & seed, const Universe & u,
        std::size_t budget = default_budget) -> Relation;

    struct FreeFragmentReport
    {
        bool equal;
        std::size_t relation_rows;
        std::size_t fragment_size;
        /// Pol of the generated relation, when small enough to enumerate, agrees
        /// with its rows read as tables.
        std::optional<bool> pol_route_equal;
        /// A table in exactly one of the two sets, when they differ.
        std::optional<std::vector<Element>> difference;
    };

    /// Generates the invariant relation from the n coordinate tuples of u^n and
    /// compares its rows, read as n-ary tables, with clone_fragment.
    [[nodiscard]] auto free_fragment_report(const std::vector<Operation> & gens, unsigned arity, const Universe & u,
        std::size_t budget = default_budget) -> FreeFragmentReport;

    [[nodiscard]] auto free_fragment_check(const std::vector<Operation> & gens, unsigned arity, const Universe & u,
        std::size_t budget = default_budget) -> bool;
}
