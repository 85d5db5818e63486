#include <clonelab/errors.hh>
#include <clonelab/relation.hh>

#include <algorithm>
#include <string>

using namespace clonelab;

Relation::Relation(Universe universe, unsigned arity, std::vector<Tuple> rows) :
    _universe(universe),
    _arity(arity),
    _rows(std::move(rows))
{
    if (arity == 0)
        throw InvalidArgument{"relations must have arity at least 1"};
    for (auto & r : _rows) {
        if (r.size() != arity)
            throw ArityMismatch{"row " + format_tuple(r) + " in a relation of arity " + std::to_string(arity)};
        for (auto x : r)
            if (! universe.contains(x))
                throw ValueEscapesWindow{r, "relation row outside universe"};
    }
    std::sort(_rows.begin(), _rows.end());
    _rows.erase(std::unique(_rows.begin(), _rows.end()), _rows.end());
}

auto Relation::unary(Universe universe, const std::vector<Element> & subset) -> Relation
{
    std::vector<Tuple> rows;
    for (auto x : subset)
        rows.push_back({x});
    return Relation{universe, 1, std::move(rows)};
}

auto Relation::contains(const Tuple & row) const -> bool
{
    return std::binary_search(_rows.begin(), _rows.end(), row);
}

auto clonelab::preserves(const Operation & f, const Relation & rho) -> bool
{
    if (rho.size() == 0)
        return true;
    // choice[i] picks the row fed to argument i
    Tuple choice(f.arity(), 0), image(rho.arity()), args(f.arity());
    do {
        for (unsigned j = 0; j < rho.arity(); ++j) {
            for (unsigned i = 0; i < f.arity(); ++i)
                args[i] = rho.rows()[choice[i]][j];
            image[j] = evaluate(f, args);
        }
        if (! rho.contains(image))
            return false;
    } while (next_tuple(choice, rho.size()));
    return true;
}
