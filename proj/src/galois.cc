#include "detail.hh"

#include <clonelab/errors.hh>
#include <clonelab/galois.hh>

#include <algorithm>
#include <string>
#include <unordered_set>

using namespace clonelab;
using namespace clonelab::detail;

namespace
{
    auto sort_unique(std::vector<std::vector<Element>> v) -> std::vector<std::vector<Element>>
    {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    }

    /// Generator tables for the componentwise engine. Strict mode throws when a
    /// value leaves the window; otherwise such entries become escaped.
    auto lookup_tables(const std::vector<Operation> & gens, const Universe & u, bool strict) -> std::vector<LookupTable>
    {
        std::vector<LookupTable> tables;
        for (auto & g : gens) {
            if (strict) {
                tables.push_back({g.arity(), tabulate(g, u).entries()});
                continue;
            }
            LookupTable t{g.arity(), {}};
            t.entries.reserve(u.power(g.arity()));
            Tuple x(g.arity(), 0);
            do {
                Element value = escaped;
                try {
                    value = evaluate(g, x);
                }
                catch (const ValueEscapesWindow &) {
                    value = escaped;
                }
                t.entries.push_back(u.contains(value) ? value : escaped);
            } while (next_tuple(x, u.size()));
            tables.push_back(std::move(t));
        }
        return tables;
    }
}

FragmentSet::FragmentSet(unsigned arity, Universe universe, std::vector<std::vector<Element>> tables, bool complete) :
    _arity(arity),
    _universe(universe),
    _tables(sort_unique(std::move(tables))),
    _complete(complete)
{
}

auto FragmentSet::contains(const std::vector<Element> & entries) const -> bool
{
    return std::binary_search(_tables.begin(), _tables.end(), entries);
}

auto FragmentSet::contains(const Operation & f) const -> bool
{
    if (f.arity() != _arity)
        return false;
    try {
        return contains(tabulate(f, _universe).entries());
    }
    catch (const ValueEscapesWindow &) {
        return false;
    }
}

auto FragmentSet::operations() const -> std::vector<Operation>
{
    std::vector<Operation> result;
    for (auto & t : _tables)
        result.push_back(Operation::table(_universe, _arity, t));
    return result;
}

auto FragmentSet::is_subset_of(const FragmentSet & other) const -> bool
{
    return _arity == other._arity && _universe == other._universe &&
        std::includes(other._tables.begin(), other._tables.end(), _tables.begin(), _tables.end());
}

auto FragmentSet::operator==(const FragmentSet & other) const -> bool
{
    return _arity == other._arity && _universe == other._universe && _tables == other._tables;
}

auto clonelab::intersect(const FragmentSet & a, const FragmentSet & b) -> FragmentSet
{
    if (a.arity() != b.arity() || a.universe() != b.universe())
        throw UniverseMismatch{"intersection of fragments of different arity or universe"};
    std::vector<std::vector<Element>> common;
    std::set_intersection(a.tables().begin(), a.tables().end(), b.tables().begin(), b.tables().end(), std::back_inserter(common));
    return FragmentSet{a.arity(), a.universe(), std::move(common), a.complete() && b.complete()};
}

auto clonelab::all_operations(unsigned arity, const Universe & u, std::size_t budget) -> FragmentSet
{
    auto points = u.power(arity);
    auto count = checked_power(u.size(), points);
    if (! count || *count > budget)
        throw BudgetExceeded{"all " + std::to_string(arity) + "-ary tables", budget};
    std::vector<std::vector<Element>> tables;
    tables.reserve(*count);
    std::vector<Element> t(points, 0);
    do
        tables.push_back(t);
    while (next_tuple(t, u.size()));
    return FragmentSet{arity, u, std::move(tables)};
}

auto clonelab::clone_fragment(const std::vector<Operation> & gens, unsigned arity, const Universe & u, std::size_t budget)
    -> FragmentSet
{
    // A member's table is the column of its values over u^n, and f(h_1..h_k)
    // is f applied componentwise to those columns. Terms are flattened so the
    // outermost symbol is always a generator.
    std::vector<std::vector<Element>> seeds;
    for (auto & p : projection_tables(arity, u))
        seeds.push_back(p.entries());
    auto what = std::to_string(arity) + "-ary clone fragment";
    auto closure = close_componentwise(u.size(), lookup_tables(gens, u, true), std::move(seeds), budget, what.c_str());
    return FragmentSet{arity, u, std::move(closure.members)};
}

auto RestrictionSet::contains(const std::vector<Element> & values) const -> bool
{
    return std::binary_search(functions.begin(), functions.end(), values);
}

auto clonelab::restrict_to(const Operation & g, const std::vector<Tuple> & domain) -> std::vector<Element>
{
    std::vector<Element> values;
    values.reserve(domain.size());
    for (auto & x : domain)
        values.push_back(evaluate(g, x));
    return values;
}

auto clonelab::restriction_fragment(const std::vector<Operation> & gens, const std::vector<Tuple> & domain, const Universe & u,
    std::size_t budget) -> RestrictionSet
{
    if (domain.empty())
        throw InvalidArgument{"restriction domain must be nonempty"};
    auto arity = static_cast<unsigned>(domain.front().size());
    if (arity == 0)
        throw InvalidArgument{"restriction domain tuples must be nonempty"};
    for (auto & x : domain) {
        if (x.size() != arity)
            throw ArityMismatch{"restriction domain mixes tuple lengths"};
        for (auto v : x)
            if (! u.contains(v))
                throw ValueEscapesWindow{x, "domain tuple outside universe"};
    }

    std::vector<std::vector<Element>> seeds;
    for (unsigned k = 0; k < arity; ++k) {
        std::vector<Element> column;
        for (auto & x : domain)
            column.push_back(x[k]);
        seeds.push_back(std::move(column));
    }

    auto closure = close_componentwise(u.size(), lookup_tables(gens, u, false), std::move(seeds), budget, "restriction fragment");
    return RestrictionSet{domain, sort_unique(std::move(closure.members)), closure.truncated};
}

auto clonelab::local_member(const Operation & g, const std::vector<Operation> & gens, const std::vector<std::vector<Tuple>> & domains,
    const Universe & u, std::size_t budget) -> LocalVerdict
{
    LocalVerdict verdict{LocalVerdict::Kind::YesUpTo, {}, {}, false, 0};
    for (auto & domain : domains) {
        for (auto & x : domain)
            if (x.size() != g.arity())
                throw ArityMismatch{"domain tuple " + format_tuple(x) + " does not match arity " + std::to_string(g.arity())};
        auto values = restrict_to(g, domain);
        auto restrictions = restriction_fragment(gens, domain, u, budget);
        ++verdict.domains_tested;
        if (! restrictions.contains(values)) {
            verdict.kind = LocalVerdict::Kind::No;
            verdict.witness_domain = domain;
            verdict.witness_values = std::move(values);
            verdict.window_truncated = restrictions.truncated;
            return verdict;
        }
    }
    return verdict;
}

auto clonelab::pol(const std::vector<Relation> & relations, unsigned arity, const Universe & u, std::size_t budget) -> FragmentSet
{
    constexpr std::size_t max_checks = 50'000'000;
    auto points = u.power(arity);

    // A check asks that the image of one n-tuple of rows lies in its relation;
    // it becomes decidable once the table entry at its largest index is set.
    struct Check
    {
        const Relation * relation;
        std::vector<std::size_t> positions;
    };
    std::vector<std::vector<Check>> checks_at(points);
    std::size_t total_checks = 0;

    for (auto & rho : relations) {
        if (rho.universe() != u)
            throw UniverseMismatch{"relation over a different universe"};
        if (rho.size() == 0)
            continue;
        auto combos = checked_power(rho.size(), arity);
        if (! combos || (total_checks += *combos) > max_checks)
            throw BudgetExceeded{"preservation checks", max_checks};

        Tuple choice(arity, 0), column(arity);
        do {
            Check check{&rho, {}};
            std::size_t last = 0;
            for (unsigned j = 0; j < rho.arity(); ++j) {
                for (unsigned i = 0; i < arity; ++i)
                    column[i] = rho.rows()[choice[i]][j];
                auto position = u.index_of(column);
                check.positions.push_back(position);
                last = std::max(last, position);
            }
            checks_at[last].push_back(std::move(check));
        } while (next_tuple(choice, rho.size()));
    }

    std::vector<std::vector<Element>> found;
    std::vector<Element> table(points, 0);
    Tuple image;

    auto consistent = [&](std::size_t position) {
        for (auto & check : checks_at[position]) {
            image.clear();
            for (auto p : check.positions)
                image.push_back(table[p]);
            if (! check.relation->contains(image))
                return false;
        }
        return true;
    };

    auto search = [&](auto & self, std::size_t position) -> void {
        if (position == points) {
            found.push_back(table);
            if (found.size() > budget)
                throw BudgetExceeded{std::to_string(arity) + "-ary polymorphisms", budget};
            return;
        }
        for (Element v = 0; v < u.size(); ++v) {
            table[position] = v;
            if (consistent(position))
                self(self, position + 1);
        }
    };
    search(search, 0);

    return FragmentSet{arity, u, std::move(found)};
}

auto clonelab::inv_generate(const std::vector<Operation> & gens, const std::vector<Tuple> & seed, const Universe & u,
    std::size_t budget) -> Relation
{
    if (seed.empty())
        throw InvalidArgument{"seed of an invariant relation must be nonempty"};
    auto arity = static_cast<unsigned>(seed.front().size());
    // Validates rows against the universe and arity.
    Relation seed_relation{u, arity, seed};
    auto closure = close_componentwise(u.size(), lookup_tables(gens, u, true), seed_relation.rows(), budget, "invariant relation");
    return Relation{u, arity, std::move(closure.members)};
}

auto clonelab::free_fragment_report(const std::vector<Operation> & gens, unsigned arity, const Universe & u, std::size_t budget)
    -> FreeFragmentReport
{
    auto points = u.power(arity, budget);
    std::vector<Tuple> coordinates;
    for (auto & p : projection_tables(arity, u))
        coordinates.push_back(p.entries());

    auto gamma = inv_generate(gens, coordinates, u, budget);
    FragmentSet rows_as_tables{arity, u, gamma.rows()};
    auto fragment = clone_fragment(gens, arity, u, budget);

    FreeFragmentReport report{rows_as_tables == fragment, gamma.size(), fragment.size(), std::nullopt, std::nullopt};
    if (! report.equal) {
        std::vector<std::vector<Element>> diff;
        std::set_symmetric_difference(rows_as_tables.tables().begin(), rows_as_tables.tables().end(), fragment.tables().begin(),
            fragment.tables().end(), std::back_inserter(diff));
        if (! diff.empty())
            report.difference = diff.front();
    }

    constexpr std::size_t pol_route_limit = 20'000;
    auto combos = checked_power(gamma.size(), arity);
    if (combos && *combos * points <= pol_route_limit)
        report.pol_route_equal = pol({gamma}, arity, u, budget) == rows_as_tables;
    return report;
}

auto clonelab::free_fragment_check(const std::vector<Operation> & gens, unsigned arity, const Universe & u, std::size_t budget) -> bool
{
    auto report = free_fragment_report(gens, arity, u, budget);
    return report.equal && report.pol_route_equal.value_or(true);
}
