#pragma once

#include <clonelab/galois.hh>
#include <clonelab/operation.hh>
#include <clonelab/relation.hh>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace clonelab
{
    /// A finitely generated clone over a finite universe. Fragments are computed
    /// on first use and cached; copies of a handle share the cache.
    class CloneHandle
    {
    public:
        CloneHandle(std::string label, Universe universe, std::vector<Operation> generators, std::size_t budget = default_budget);

        /// Pol(relations) on arities up to cap: the clone generated by its cap-ary
        /// fragment, through a greedily chosen generating subset of it. The
        /// fragments of arity <= cap are seeded with pol() directly, since every
        /// lower-arity polymorphism is a variable identification of a cap-ary one.
        static auto polymorphisms(std::string label, Universe universe, const std::vector<Relation> & relations, unsigned cap,
            std::size_t budget = default_budget) -> CloneHandle;

        /// The clone of projections.
        static auto projections(Universe universe) -> CloneHandle;

        [[nodiscard]] auto label() const -> const std::string & { return _label; }
        [[nodiscard]] auto universe() const -> const Universe & { return _universe; }
        [[nodiscard]] auto generators() const -> const std::vector<Operation> & { return _generators; }
        [[nodiscard]] auto budget() const -> std::size_t { return _budget; }

        /// clone_fragment(generators, arity, universe), cached.
        [[nodiscard]] auto fragment(unsigned arity) const -> const FragmentSet &;

    private:
        struct Cache
        {
            std::mutex mutex;
            std::map<unsigned, FragmentSet> fragments;
        };

        std::string _label;
        Universe _universe;
        std::vector<Operation> _generators;
        std::size_t _budget;
        std::shared_ptr<Cache> _cache;
    };

    /// Every generator of c of arity <= cap lies in d's fragment of that arity.
    [[nodiscard]] auto leq(const CloneHandle & c, const CloneHandle & d, unsigned cap) -> bool;

    [[nodiscard]] auto join(const CloneHandle & c, const CloneHandle & d) -> CloneHandle;

    /// Arity-wise intersections for arities 1..cap. Meets of finitely generated
    /// clones need not be finitely generated, so there is no meet handle.
    [[nodiscard]] auto meet_fragments(const CloneHandle & c, const CloneHandle & d, unsigned cap) -> std::vector<FragmentSet>;

    [[nodiscard]] auto same_fragments(const CloneHandle & c, const CloneHandle & d, unsigned cap) -> bool;

    enum class AntichainMode
    {
        JoinTop,
        MeetBottom
    };

    struct AntichainReport
    {
        bool pass = true;
        std::size_t pairs_checked = 0;
        /// Indices into the handle list, with the first arity where it failed.
        std::vector<std::pair<std::size_t, std::size_t>> failing_pairs;
        std::vector<unsigned> failing_arities;
    };

    /// JoinTop: every pairwise join has the reference's fragments up to cap.
    /// MeetBottom: every pairwise meet does.
    [[nodiscard]] auto antichain_check(const std::vector<CloneHandle> & handles, unsigned cap, AntichainMode mode,
        const CloneHandle & reference) -> AntichainReport;

    struct CoveringReport
    {
        bool pass = true;
        std::size_t tested = 0;
        std::size_t skipped = 0; // samples that were already in Pol({A})
        std::optional<Operation> failing;
    };

    /// Finite-universe analogue of Pol({A}) being covered by all operations:
    /// for each sample f outside Pol({A}), Pol({A}) joined with f has every
    /// table as a member at arities 1..cap.
    [[nodiscard]] auto covering_check_samples(const std::vector<Element> & subset, unsigned cap, const Universe & u,
        const std::vector<Operation> & samples) -> CoveringReport;

    /// Draws random tables of arity 1..cap until trials of them fall outside
    /// Pol({A}); the ones inside are skipped.
    [[nodiscard]] auto covering_check(const std::vector<Element> & subset, unsigned cap, const Universe & u, std::size_t trials,
        std::uint64_t seed) -> CoveringReport;

    using LeqMatrix = std::vector<std::vector<bool>>;

    [[nodiscard]] auto leq_matrix(const std::vector<CloneHandle> & nodes, unsigned cap) -> LeqMatrix;

    /// Graphviz digraph of the Hasse diagram of the computed order, edges
    /// pointing upward. Nodes with equal fragments get no edge between them.
    [[nodiscard]] auto export_dot(const std::vector<CloneHandle> & nodes, const LeqMatrix & order) -> std::string;
}
