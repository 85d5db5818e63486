#pragma once

#include <clonelab/lattice.hh>
#include <clonelab/operation.hh>

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace clonelab
{
    /// An n-ary operation defined on a finite set of n-tuples. Two partial
    /// operations are equal iff they have equal arity, domain and values; in
    /// particular there is one empty operation per arity.
    class PartialOperation
    {
    public:
        PartialOperation(unsigned arity, std::map<Tuple, Element> values);

        static auto restriction(const Operation & f, const std::vector<Tuple> & domain) -> PartialOperation;
        static auto projection(unsigned arity, unsigned coordinate, const std::vector<Tuple> & domain) -> PartialOperation;

        [[nodiscard]] auto arity() const -> unsigned { return _arity; }
        [[nodiscard]] auto values() const -> const std::map<Tuple, Element> & { return _values; }
        [[nodiscard]] auto domain() const -> std::vector<Tuple>;
        [[nodiscard]] auto size() const -> std::size_t { return _values.size(); }
        [[nodiscard]] auto at(const Tuple & x) const -> std::optional<Element>;

        /// True iff f agrees with this operation on its domain.
        [[nodiscard]] auto extended_by(const Operation & f) const -> bool;

        [[nodiscard]] auto describe() const -> std::string;

        auto operator<=>(const PartialOperation &) const = default;

    private:
        unsigned _arity;
        std::map<Tuple, Element> _values;
    };

    /// Defined at x iff every g_i is and (g_1(x), ..., g_n(x)) is in dom f.
    [[nodiscard]] auto partial_compose(const PartialOperation & f, const std::vector<PartialOperation> & gs) -> PartialOperation;

    /// A set of partial operations with the generators it came from.
    class PartialClone
    {
    public:
        PartialClone(std::vector<PartialOperation> generators, std::vector<PartialOperation> members);

        [[nodiscard]] auto generators() const -> const std::vector<PartialOperation> & { return _generators; }
        [[nodiscard]] auto members() const -> const std::vector<PartialOperation> & { return _members; }
        [[nodiscard]] auto size() const -> std::size_t { return _members.size(); }
        [[nodiscard]] auto contains(const PartialOperation & p) const -> bool;

        /// Members whose domain is exactly the given tuple set.
        [[nodiscard]] auto members_on(const std::vector<Tuple> & domain) const -> std::vector<PartialOperation>;

    private:
        std::vector<PartialOperation> _generators;
        std::vector<PartialOperation> _members; // sorted
    };

    /// Closure of the generators under partial_compose. Restricted projections
    /// are adjoined on every domain that occurs among the members, not on all
    /// finite domains, so the result is relative to the domains it reaches.
    [[nodiscard]] auto partial_closure(const std::vector<PartialOperation> & generators, std::size_t budget = default_budget)
        -> PartialClone;

    /// All restrictions of the clone's members to each listed domain.
    [[nodiscard]] auto restrict_clone(const CloneHandle & c, const std::vector<std::vector<Tuple>> & domains) -> PartialClone;

    struct Separation
    {
        enum class Side
        {
            Left,
            Right
        };

        /// Absent means not separated on the tested domains.
        std::optional<PartialOperation> witness;
        Side side = Side::Left;
    };

    /// A restriction of a member of c to a listed domain that no member of d
    /// has (side Left), or the other way round (side Right).
    [[nodiscard]] auto separate(const CloneHandle & c, const CloneHandle & d, const std::vector<std::vector<Tuple>> & domains)
        -> Separation;

    struct SigmaJoinReport
    {
        bool pass = true;
        /// A partial operation on a listed domain present on one side only.
        std::optional<PartialOperation> mismatch;
    };

    [[nodiscard]] auto sigma_join_report(const CloneHandle & c, const CloneHandle & d, const std::vector<std::vector<Tuple>> & domains,
        std::size_t budget = default_budget) -> SigmaJoinReport;

    /// partial_closure(restrict_clone(c) + restrict_clone(d)) equals
    /// restrict_clone(join(c, d)) on every listed domain.
    [[nodiscard]] auto sigma_join_check(const CloneHandle & c, const CloneHandle & d, const std::vector<std::vector<Tuple>> & domains,
        std::size_t budget = default_budget) -> bool;

    /// A member of the partial clone with no total extension in c's fragment of
    /// its arity, if any.
    [[nodiscard]] auto find_unextendable(const PartialClone & closure, const CloneHandle & c) -> std::optional<PartialOperation>;

    /// Every nonempty subset of u^arity with at most max_size tuples, in
    /// increasing size then lexicographic order.
    [[nodiscard]] auto small_domains(const Universe & u, unsigned arity, std::size_t max_size) -> std::vector<std::vector<Tuple>>;
}
