#include <clonelab/constructions.hh>
#include <clonelab/errors.hh>

#include <algorithm>
#include <deque>
#include <set>
#include <string>

using namespace clonelab;

namespace
{
    auto sorted_unique(std::vector<Element> set) -> std::vector<Element>
    {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        return set;
    }

    auto max_of(const Tuple & x) -> Element
    {
        return *std::max_element(x.begin(), x.end());
    }
}

SubgroupHandle::SubgroupHandle(std::shared_ptr<const GroupWindow> window, std::vector<GroupElement> generators) :
    _window(std::move(window))
{
    if (! _window)
        throw InvalidArgument{"subgroup needs a group window"};
    const auto & group = _window->group();
    for (auto & g : generators)
        _generators.push_back(group.normalize(g));

    std::set<GroupElement> found;
    std::vector<GroupElement> order;
    auto add = [&](GroupElement a) {
        if (_window->in_window(a) && found.insert(a).second)
            order.push_back(std::move(a));
    };
    add(group.zero());
    for (auto & g : _generators) {
        add(g);
        add(group.negate(g));
    }
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            auto x = order[i], y = order[j];
            add(group.add(x, y));
            add(group.subtract(x, y));
            add(group.subtract(y, x));
        }
    _elements.assign(found.begin(), found.end());
}

auto SubgroupHandle::contains(const GroupElement & a) const -> bool
{
    auto normal = _window->group().normalize(a);
    return std::binary_search(_elements.begin(), _elements.end(), normal);
}

auto SubgroupHandle::translations() const -> std::vector<Operation>
{
    std::vector<Operation> result;
    for (auto & a : _elements)
        result.push_back(translation_op(_window, a));
    return result;
}

auto clonelab::translation_op(std::shared_ptr<const GroupWindow> window, GroupElement shift) -> Operation
{
    return Operation::translation(std::move(window), std::move(shift));
}

auto clonelab::subsemigroup(const AbelianGroup & group, const std::vector<GroupElement> & generators, std::size_t budget)
    -> SemigroupClosure
{
    if (generators.empty())
        throw InvalidArgument{"subsemigroup needs at least one generator"};
    std::vector<GroupElement> normal;
    for (auto & g : generators)
        normal.push_back(group.normalize(g));

    std::set<GroupElement> found;
    std::deque<GroupElement> queue;
    for (auto & g : normal)
        if (found.insert(g).second)
            queue.push_back(g);

    while (! queue.empty()) {
        auto x = queue.front();
        queue.pop_front();
        for (auto & s : normal) {
            auto y = group.add(x, s);
            if (found.count(y))
                continue;
            if (found.size() >= budget)
                return SemigroupClosure{{found.begin(), found.end()}, false};
            found.insert(y);
            queue.push_back(std::move(y));
        }
    }
    return SemigroupClosure{{found.begin(), found.end()}, true};
}

auto clonelab::translation_clone_member(const PartialOperation & p, const SubgroupHandle & h) -> bool
{
    if (p.arity() != 1 || p.size() == 0)
        return false;
    const auto & window = *h.window();
    auto u = window.universe();
    std::optional<GroupElement> shift;
    for (auto & [x, v] : p.values()) {
        if (! u.contains(x[0]) || ! u.contains(v))
            return false;
        auto difference = window.group().subtract(window.decode(v), window.decode(x[0]));
        if (shift && *shift != difference)
            return false;
        shift = std::move(difference);
    }
    return h.contains(*shift);
}

auto clonelab::bounded_or_growth_member(const Operation & f, Element a, WitnessFamily family, const Universe & u) -> bool
{
    auto table = tabulate(f, u);
    Tuple x(f.arity(), 0);
    std::size_t index = 0;
    do {
        auto value = table.entries()[index++];
        if (family == WitnessFamily::Bounded) {
            if (value > a)
                return false;
        }
        else {
            auto top = max_of(x);
            if (top >= a && value < top)
                return false;
        }
    } while (next_tuple(x, u.size()));
    return true;
}

auto clonelab::interpolant(const Operation & g, const std::vector<Tuple> & domain, WitnessFamily family, const Universe & u)
    -> Interpolant
{
    std::map<std::size_t, Element> prescribed;
    Element bound = 0;
    for (auto & x : domain) {
        if (x.size() != g.arity())
            throw ArityMismatch{"interpolation tuple " + format_tuple(x) + " does not match arity " + std::to_string(g.arity())};
        for (auto v : x)
            if (! u.contains(v))
                throw ValueEscapesWindow{x, "interpolation tuple outside window"};
        auto value = evaluate(g, x);
        if (! u.contains(value))
            throw ValueEscapesWindow{x, "value " + std::to_string(value) + " outside window"};
        prescribed[u.index_of(x)] = value;
        bound = (family == WitnessFamily::Bounded) ? std::max(bound, value) : std::max<Element>(bound, max_of(x) + 1);
    }
    if (family == WitnessFamily::Growing && domain.empty())
        bound = 0;
    if (bound > u.max())
        throw WindowTooSmall{bound, u};

    std::size_t index = 0;
    auto op = Operation::from_function(u, g.arity(), [&](std::span<const Element> x) -> Element {
        auto it = prescribed.find(index++);
        if (it != prescribed.end())
            return it->second;
        return family == WitnessFamily::Bounded ? 0 : *std::max_element(x.begin(), x.end());
    });
    return Interpolant{bound, std::move(op)};
}

auto clonelab::restrict_to_subset(const Operation & g, const std::vector<Element> & subset) -> std::optional<Operation>
{
    auto set = sorted_unique(subset);
    if (set.empty())
        throw InvalidArgument{"restriction to an empty subset"};
    Universe small{set.size()};
    std::vector<Element> entries;
    Tuple y(g.arity(), 0), x(g.arity());
    do {
        for (std::size_t i = 0; i < y.size(); ++i)
            x[i] = set[y[i]];
        auto value = evaluate(g, x);
        auto it = std::lower_bound(set.begin(), set.end(), value);
        if (it == set.end() || *it != value)
            return std::nullopt;
        entries.push_back(static_cast<Element>(it - set.begin()));
    } while (next_tuple(y, small.size()));
    return Operation::table(small, g.arity(), std::move(entries));
}

auto clonelab::finite_embed_member(const Operation & g, const std::vector<Element> & subset, const CloneOracle & on_subset) -> bool
{
    auto restricted = restrict_to_subset(g, subset);
    return restricted && on_subset(*restricted);
}

auto clonelab::patch_op(const Operation & f, const std::vector<Element> & subset) -> Operation
{
    return Operation::patch(f, subset);
}

auto clonelab::unary_pol_member(const Operation & f, const std::vector<Element> & subset) -> bool
{
    auto set = sorted_unique(subset);
    if (set.empty())
        return true;
    Tuple y(f.arity(), 0), x(f.arity());
    do {
        for (std::size_t i = 0; i < y.size(); ++i)
            x[i] = set[y[i]];
        if (! std::binary_search(set.begin(), set.end(), evaluate(f, x)))
            return false;
    } while (next_tuple(y, set.size()));
    return true;
}

auto clonelab::indicator_clone_fragments(const std::vector<Element> & b_set, Element a, Element b, const Universe & u, unsigned arity,
    std::size_t budget) -> FragmentSet
{
    auto set = sorted_unique(b_set);
    if (a == b)
        throw InvalidArgument{"indicator values must differ"};
    if (! u.contains(a) || ! u.contains(b))
        throw InvalidArgument{"indicator values must lie in the universe"};
    if (set.empty())
        throw InvalidArgument{"indicator set must be nonempty"};
    for (auto x : set)
        if (x == a || x == b || ! u.contains(x))
            throw InvalidArgument{"indicator set must avoid both values and lie in the universe"};
    return clone_fragment({Operation::indicator(set, a, b)}, arity, u, budget);
}

auto clonelab::random_family_member(WitnessFamily family, Element a, unsigned arity, const Universe & u, std::mt19937_64 & rng)
    -> Operation
{
    return Operation::from_function(u, arity, [&](std::span<const Element> x) -> Element {
        if (family == WitnessFamily::Bounded)
            return std::uniform_int_distribution<Element>(0, std::min(a, u.max()))(rng);
        auto top = *std::max_element(x.begin(), x.end());
        if (top >= a)
            return std::uniform_int_distribution<Element>(top, u.max())(rng);
        return std::uniform_int_distribution<Element>(0, u.max())(rng);
    });
}
