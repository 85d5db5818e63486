#include <clonelab/errors.hh>
#include <clonelab/lattice.hh>

#include <algorithm>
#include <random>
#include <sstream>

using namespace clonelab;

CloneHandle::CloneHandle(std::string label, Universe universe, std::vector<Operation> generators, std::size_t budget) :
    _label(std::move(label)),
    _universe(universe),
    _generators(std::move(generators)),
    _budget(budget),
    _cache(std::make_shared<Cache>())
{
}

auto CloneHandle::polymorphisms(std::string label, Universe universe, const std::vector<Relation> & relations, unsigned cap,
    std::size_t budget) -> CloneHandle
{
    auto top = pol(relations, cap, universe, budget);

    // Greedy generating subset of the cap-ary fragment, visited in a fixed
    // shuffled order: random tables tend to generate a lot, so few are kept.
    std::vector<std::size_t> order(top.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::mt19937_64 rng{0};
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<Operation> generators;
    auto reached = clone_fragment({}, cap, universe, budget);
    for (auto i : order) {
        if (reached.size() == top.size())
            break;
        const auto & table = top.tables()[i];
        if (reached.contains(table))
            continue;
        generators.push_back(Operation::table(universe, cap, table));
        reached = clone_fragment(generators, cap, universe, budget);
    }

    CloneHandle handle{std::move(label), universe, std::move(generators), budget};
    handle._cache->fragments.emplace(cap, std::move(top));
    for (unsigned n = 1; n < cap; ++n)
        handle._cache->fragments.emplace(n, pol(relations, n, universe, budget));
    return handle;
}

auto CloneHandle::projections(Universe universe) -> CloneHandle
{
    return CloneHandle{"projections", universe, {}};
}

auto CloneHandle::fragment(unsigned arity) const -> const FragmentSet &
{
    std::lock_guard<std::mutex> guard{_cache->mutex};
    auto it = _cache->fragments.find(arity);
    if (it == _cache->fragments.end())
        it = _cache->fragments.emplace(arity, clone_fragment(_generators, arity, _universe, _budget)).first;
    return it->second;
}

namespace
{
    auto require_same_universe(const CloneHandle & c, const CloneHandle & d) -> void
    {
        if (c.universe() != d.universe())
            throw UniverseMismatch{"clones " + c.label() + " and " + d.label() + " live on different universes"};
    }
}

auto clonelab::leq(const CloneHandle & c, const CloneHandle & d, unsigned cap) -> bool
{
    require_same_universe(c, d);
    for (auto & g : c.generators())
        if (g.arity() <= cap && ! d.fragment(g.arity()).contains(g))
            return false;
    return true;
}

auto clonelab::join(const CloneHandle & c, const CloneHandle & d) -> CloneHandle
{
    require_same_universe(c, d);
    auto generators = c.generators();
    generators.insert(generators.end(), d.generators().begin(), d.generators().end());
    return CloneHandle{"(" + c.label() + " v " + d.label() + ")", c.universe(), std::move(generators), std::max(c.budget(), d.budget())};
}

auto clonelab::meet_fragments(const CloneHandle & c, const CloneHandle & d, unsigned cap) -> std::vector<FragmentSet>
{
    require_same_universe(c, d);
    std::vector<FragmentSet> result;
    for (unsigned n = 1; n <= cap; ++n)
        result.push_back(intersect(c.fragment(n), d.fragment(n)));
    return result;
}

auto clonelab::same_fragments(const CloneHandle & c, const CloneHandle & d, unsigned cap) -> bool
{
    require_same_universe(c, d);
    for (unsigned n = 1; n <= cap; ++n)
        if (c.fragment(n) != d.fragment(n))
            return false;
    return true;
}

auto clonelab::antichain_check(const std::vector<CloneHandle> & handles, unsigned cap, AntichainMode mode,
    const CloneHandle & reference) -> AntichainReport
{
    if (handles.size() < 2)
        throw InvalidArgument{"antichain check needs at least two clones"};
    AntichainReport report;
    for (std::size_t i = 0; i < handles.size(); ++i)
        for (std::size_t j = i + 1; j < handles.size(); ++j) {
            ++report.pairs_checked;
            std::optional<CloneHandle> joined;
            if (mode == AntichainMode::JoinTop)
                joined = join(handles[i], handles[j]);
            for (unsigned n = 1; n <= cap; ++n) {
                bool ok = (mode == AntichainMode::JoinTop)
                    ? joined->fragment(n) == reference.fragment(n)
                    : intersect(handles[i].fragment(n), handles[j].fragment(n)) == reference.fragment(n);
                if (! ok) {
                    report.pass = false;
                    report.failing_pairs.emplace_back(i, j);
                    report.failing_arities.push_back(n);
                    break;
                }
            }
        }
    return report;
}

namespace
{
    auto is_proper_subset(const std::vector<Element> & subset, const Universe & u) -> bool
    {
        std::vector<bool> seen(u.size(), false);
        std::size_t distinct = 0;
        for (auto x : subset) {
            if (! u.contains(x))
                return false;
            if (! seen[x]) {
                seen[x] = true;
                ++distinct;
            }
        }
        return distinct > 0 && distinct < u.size();
    }
}

auto clonelab::covering_check_samples(const std::vector<Element> & subset, unsigned cap, const Universe & u,
    const std::vector<Operation> & samples) -> CoveringReport
{
    if (! is_proper_subset(subset, u))
        throw InvalidArgument{"covering check needs a nonempty proper subset of the universe"};
    auto unary = Relation::unary(u, subset);
    auto preserving = CloneHandle::polymorphisms("Pol(A)", u, {unary}, cap);

    CoveringReport report;
    for (auto & f : samples) {
        if (f.arity() > cap)
            throw InvalidArgument{"covering sample of arity above the cap"};
        if (preserves(f, unary)) {
            ++report.skipped;
            continue;
        }
        ++report.tested;
        auto generators = preserving.generators();
        generators.push_back(f);
        CloneHandle extended{"Pol(A) v f", u, std::move(generators)};
        for (unsigned n = 1; n <= cap; ++n) {
            auto everything = u.power(static_cast<unsigned>(u.power(n)));
            if (extended.fragment(n).size() != everything) {
                report.pass = false;
                report.failing = f;
                return report;
            }
        }
    }
    return report;
}

auto clonelab::covering_check(const std::vector<Element> & subset, unsigned cap, const Universe & u, std::size_t trials,
    std::uint64_t seed) -> CoveringReport
{
    if (! is_proper_subset(subset, u))
        throw InvalidArgument{"covering check needs a nonempty proper subset of the universe"};
    auto unary = Relation::unary(u, subset);
    std::mt19937_64 rng{seed};
    std::uniform_int_distribution<unsigned> arity(1, cap);

    std::vector<Operation> samples;
    std::size_t outside = 0;
    while (outside < trials) {
        auto f = random_table(arity(rng), u, rng);
        if (! preserves(f, unary))
            ++outside;
        samples.push_back(std::move(f));
    }
    return covering_check_samples(subset, cap, u, samples);
}

auto clonelab::leq_matrix(const std::vector<CloneHandle> & nodes, unsigned cap) -> LeqMatrix
{
    LeqMatrix m(nodes.size(), std::vector<bool>(nodes.size(), false));
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = 0; j < nodes.size(); ++j)
            m[i][j] = (i == j) || leq(nodes[i], nodes[j], cap);
    return m;
}

auto clonelab::export_dot(const std::vector<CloneHandle> & nodes, const LeqMatrix & order) -> std::string
{
    auto below = [&](std::size_t i, std::size_t j) { return i != j && order[i][j] && ! order[j][i]; };
    auto escape = [](const std::string & s) {
        std::string out;
        for (char c : s) {
            if (c == '"' || c == '\\')
                out += '\\';
            out += c;
        }
        return out;
    };

    std::ostringstream dot;
    dot << "digraph clones {\n  rankdir=BT;\n";
    for (std::size_t i = 0; i < nodes.size(); ++i)
        dot << "  n" << i << " [label=\"" << escape(nodes[i].label()) << "\"];\n";
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (! below(i, j))
                continue;
            bool covered = true;
            for (std::size_t k = 0; k < nodes.size() && covered; ++k)
                if (below(i, k) && below(k, j))
                    covered = false;
            if (covered)
                dot << "  n" << i << " -> n" << j << ";\n";
        }
    dot << "}\n";
    return dot.str();
}
