#include <clonelab/errors.hh>
#include <clonelab/partial.hh>

#include <algorithm>
#include <set>
#include <string>

using namespace clonelab;

PartialOperation::PartialOperation(unsigned arity, std::map<Tuple, Element> values) :
    _arity(arity),
    _values(std::move(values))
{
    if (arity == 0)
        throw InvalidArgument{"partial operations must have arity at least 1"};
    for (auto & [x, v] : _values)
        if (x.size() != arity)
            throw ArityMismatch{"domain tuple " + format_tuple(x) + " in a partial operation of arity " + std::to_string(arity)};
}

auto PartialOperation::restriction(const Operation & f, const std::vector<Tuple> & domain) -> PartialOperation
{
    std::map<Tuple, Element> values;
    for (auto & x : domain)
        values.emplace(x, evaluate(f, x));
    return PartialOperation{f.arity(), std::move(values)};
}

auto PartialOperation::projection(unsigned arity, unsigned coordinate, const std::vector<Tuple> & domain) -> PartialOperation
{
    if (coordinate < 1 || coordinate > arity)
        throw InvalidArgument{"projection coordinate outside 1.." + std::to_string(arity)};
    std::map<Tuple, Element> values;
    for (auto & x : domain) {
        if (x.size() != arity)
            throw ArityMismatch{"domain tuple " + format_tuple(x) + " for a projection of arity " + std::to_string(arity)};
        values.emplace(x, x[coordinate - 1]);
    }
    return PartialOperation{arity, std::move(values)};
}

auto PartialOperation::domain() const -> std::vector<Tuple>
{
    std::vector<Tuple> result;
    result.reserve(_values.size());
    for (auto & [x, v] : _values)
        result.push_back(x);
    return result;
}

auto PartialOperation::at(const Tuple & x) const -> std::optional<Element>
{
    auto it = _values.find(x);
    if (it == _values.end())
        return std::nullopt;
    return it->second;
}

auto PartialOperation::extended_by(const Operation & f) const -> bool
{
    if (f.arity() != _arity)
        return false;
    try {
        for (auto & [x, v] : _values)
            if (evaluate(f, x) != v)
                return false;
    }
    catch (const ValueEscapesWindow &) {
        return false;
    }
    return true;
}

auto PartialOperation::describe() const -> std::string
{
    std::string result = "{";
    bool first = true;
    for (auto & [x, v] : _values) {
        result += (first ? "" : ", ") + format_tuple(x) + "->" + std::to_string(v);
        first = false;
    }
    return result + "}";
}

auto clonelab::partial_compose(const PartialOperation & f, const std::vector<PartialOperation> & gs) -> PartialOperation
{
    if (gs.size() != f.arity())
        throw ArityMismatch{"partial operation of arity " + std::to_string(f.arity()) + " given " + std::to_string(gs.size()) +
            " inner operations"};
    auto arity = gs.front().arity();
    for (auto & g : gs)
        if (g.arity() != arity)
            throw ArityMismatch{"inner partial operations must share one arity"};

    std::map<Tuple, Element> values;
    Tuple image(gs.size());
    for (auto & [x, first_value] : gs.front().values()) {
        bool defined = true;
        image[0] = first_value;
        for (std::size_t i = 1; i < gs.size() && defined; ++i) {
            auto v = gs[i].at(x);
            if (v)
                image[i] = *v;
            else
                defined = false;
        }
        if (! defined)
            continue;
        if (auto v = f.at(image))
            values.emplace(x, *v);
    }
    return PartialOperation{arity, std::move(values)};
}

PartialClone::PartialClone(std::vector<PartialOperation> generators, std::vector<PartialOperation> members) :
    _generators(std::move(generators)),
    _members(std::move(members))
{
    std::sort(_members.begin(), _members.end());
    _members.erase(std::unique(_members.begin(), _members.end()), _members.end());
}

auto PartialClone::contains(const PartialOperation & p) const -> bool
{
    return std::binary_search(_members.begin(), _members.end(), p);
}

auto PartialClone::members_on(const std::vector<Tuple> & domain) const -> std::vector<PartialOperation>
{
    auto sorted = domain;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<PartialOperation> result;
    for (auto & p : _members)
        if (! sorted.empty() && p.arity() == sorted.front().size() && p.domain() == sorted)
            result.push_back(p);
    return result;
}

auto clonelab::partial_closure(const std::vector<PartialOperation> & generators, std::size_t budget) -> PartialClone
{
    std::vector<PartialOperation> members;
    std::set<PartialOperation> seen;
    std::set<std::pair<unsigned, std::vector<Tuple>>> domains;
    std::map<unsigned, std::vector<std::size_t>> by_arity;

    auto insert = [&](PartialOperation p) {
        if (! seen.insert(p).second)
            return;
        by_arity[p.arity()].push_back(members.size());
        members.push_back(std::move(p));
        if (members.size() > budget)
            throw BudgetExceeded{"partial clone", budget};
    };
    auto add = [&](const PartialOperation & p) {
        insert(p);
        auto domain = p.domain();
        if (domains.emplace(p.arity(), domain).second)
            for (unsigned k = 1; k <= p.arity(); ++k)
                insert(PartialOperation::projection(p.arity(), k, domain));
    };
    for (auto & g : generators)
        add(g);

    // Semi-naive: a composition is formed when its largest member index is processed.
    std::vector<PartialOperation> inners;
    for (std::size_t top = 0; top < members.size(); ++top) {
        auto current = members[top];

        // current as the outer operation, inners of any one arity up to top
        auto groups = by_arity;
        for (auto & [m, indices] : groups) {
            std::vector<std::size_t> eligible;
            for (auto i : indices)
                if (i <= top)
                    eligible.push_back(i);
            if (eligible.empty())
                continue;
            std::vector<std::size_t> pick(current.arity(), 0);
            while (true) {
                inners.clear();
                for (auto p : pick)
                    inners.push_back(members[eligible[p]]);
                add(partial_compose(current, inners));
                std::size_t pos = pick.size();
                bool advanced = false;
                while (pos-- > 0) {
                    if (++pick[pos] < eligible.size()) {
                        advanced = true;
                        break;
                    }
                    pick[pos] = 0;
                }
                if (! advanced)
                    break;
            }
        }

        // current among the inners, under an earlier outer
        std::vector<std::size_t> eligible;
        for (auto i : by_arity[current.arity()])
            if (i <= top)
                eligible.push_back(i);
        for (std::size_t outer = 0; outer < top; ++outer) {
            auto f = members[outer];
            std::vector<std::size_t> pick(f.arity());
            auto last = eligible.size() - 1; // position of top itself
            for (unsigned first = 0; first < f.arity(); ++first) {
                if (first > 0 && last == 0)
                    break;
                for (unsigned p = 0; p < f.arity(); ++p)
                    pick[p] = (p == first) ? last : 0;
                while (true) {
                    inners.clear();
                    for (auto p : pick)
                        inners.push_back(members[eligible[p]]);
                    add(partial_compose(f, inners));
                    std::size_t pos = pick.size();
                    bool advanced = false;
                    while (pos-- > 0) {
                        if (pos == first)
                            continue;
                        auto bound = (pos < first) ? last : last + 1;
                        if (++pick[pos] < bound) {
                            advanced = true;
                            break;
                        }
                        pick[pos] = 0;
                    }
                    if (! advanced)
                        break;
                }
            }
        }
    }

    return PartialClone{generators, std::move(members)};
}

namespace
{
    auto domain_arity(const std::vector<Tuple> & domain) -> unsigned
    {
        if (domain.empty() || domain.front().empty())
            throw InvalidArgument{"domains must be nonempty sets of nonempty tuples"};
        for (auto & x : domain)
            if (x.size() != domain.front().size())
                throw ArityMismatch{"domain mixes tuple lengths"};
        return static_cast<unsigned>(domain.front().size());
    }

    auto restrictions_on(const CloneHandle & c, const std::vector<Tuple> & domain) -> std::vector<PartialOperation>
    {
        auto arity = domain_arity(domain);
        const auto & fragment = c.fragment(arity);
        const auto & u = fragment.universe();
        std::vector<std::size_t> positions;
        for (auto & x : domain) {
            for (auto v : x)
                if (! u.contains(v))
                    throw ValueEscapesWindow{x, "domain tuple outside universe"};
            positions.push_back(u.index_of(x));
        }
        std::set<PartialOperation> result;
        for (auto & table : fragment.tables()) {
            std::map<Tuple, Element> values;
            for (std::size_t i = 0; i < domain.size(); ++i)
                values.emplace(domain[i], table[positions[i]]);
            result.emplace(arity, std::move(values));
        }
        return {result.begin(), result.end()};
    }
}

auto clonelab::restrict_clone(const CloneHandle & c, const std::vector<std::vector<Tuple>> & domains) -> PartialClone
{
    std::vector<PartialOperation> members;
    for (auto & domain : domains) {
        auto on_domain = restrictions_on(c, domain);
        members.insert(members.end(), on_domain.begin(), on_domain.end());
    }
    PartialClone result{{}, members};
    return PartialClone{result.members(), result.members()};
}

auto clonelab::separate(const CloneHandle & c, const CloneHandle & d, const std::vector<std::vector<Tuple>> & domains) -> Separation
{
    if (c.universe() != d.universe())
        throw UniverseMismatch{"separating clones on different universes"};
    for (auto & domain : domains) {
        auto left = restrictions_on(c, domain);
        auto right = restrictions_on(d, domain);
        std::vector<PartialOperation> only;
        std::set_difference(left.begin(), left.end(), right.begin(), right.end(), std::back_inserter(only));
        if (! only.empty())
            return Separation{only.front(), Separation::Side::Left};
        std::set_difference(right.begin(), right.end(), left.begin(), left.end(), std::back_inserter(only));
        if (! only.empty())
            return Separation{only.front(), Separation::Side::Right};
    }
    return Separation{};
}

auto clonelab::sigma_join_report(const CloneHandle & c, const CloneHandle & d, const std::vector<std::vector<Tuple>> & domains,
    std::size_t budget) -> SigmaJoinReport
{
    auto generators = restrict_clone(c, domains).members();
    auto right = restrict_clone(d, domains).members();
    generators.insert(generators.end(), right.begin(), right.end());
    auto joined_partial = partial_closure(generators, budget);
    auto restricted_join = restrict_clone(join(c, d), domains);

    SigmaJoinReport report;
    for (auto & domain : domains) {
        auto lhs = joined_partial.members_on(domain);
        auto rhs = restricted_join.members_on(domain);
        if (lhs == rhs)
            continue;
        std::vector<PartialOperation> diff;
        std::set_symmetric_difference(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(), std::back_inserter(diff));
        report.pass = false;
        report.mismatch = diff.front();
        return report;
    }
    return report;
}

auto clonelab::sigma_join_check(const CloneHandle & c, const CloneHandle & d, const std::vector<std::vector<Tuple>> & domains,
    std::size_t budget) -> bool
{
    return sigma_join_report(c, d, domains, budget).pass;
}

auto clonelab::find_unextendable(const PartialClone & closure, const CloneHandle & c) -> std::optional<PartialOperation>
{
    for (auto & p : closure.members()) {
        const auto & fragment = c.fragment(p.arity());
        const auto & u = fragment.universe();
        bool extended = std::any_of(fragment.tables().begin(), fragment.tables().end(), [&](const std::vector<Element> & table) {
            for (auto & [x, v] : p.values())
                if (table[u.index_of(x)] != v)
                    return false;
            return true;
        });
        if (! extended)
            return p;
    }
    return std::nullopt;
}

auto clonelab::small_domains(const Universe & u, unsigned arity, std::size_t max_size) -> std::vector<std::vector<Tuple>>
{
    auto tuples = u.all_tuples(arity);
    std::vector<std::vector<Tuple>> result;
    for (std::size_t size = 1; size <= std::min(max_size, tuples.size()); ++size) {
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i)
            pick[i] = i;
        while (true) {
            std::vector<Tuple> domain;
            for (auto i : pick)
                domain.push_back(tuples[i]);
            result.push_back(std::move(domain));
            std::size_t pos = size;
            while (pos-- > 0 && pick[pos] == tuples.size() - size + pos)
                ;
            if (pos == static_cast<std::size_t>(-1))
                break;
            ++pick[pos];
            for (auto q = pos + 1; q < size; ++q)
                pick[q] = pick[q - 1] + 1;
        }
    }
    return result;
}
