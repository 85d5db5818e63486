#include <clonelab/errors.hh>
#include <clonelab/universe.hh>

#include <string>

using namespace clonelab;

Universe::Universe(std::size_t size) :
    _size(size)
{
    if (size == 0)
        throw InvalidArgument{"universe must have at least one element"};
}

auto Universe::power(unsigned n, std::size_t limit) const -> std::size_t
{
    std::size_t result = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (result > limit / _size)
            throw BudgetExceeded{std::to_string(_size) + "^" + std::to_string(n), limit};
        result *= _size;
    }
    return result;
}

auto Universe::index_of(std::span<const Element> tuple) const -> std::size_t
{
    std::size_t index = 0;
    for (auto x : tuple)
        index = index * _size + x;
    return index;
}

auto Universe::tuple_at(std::size_t index, unsigned arity) const -> Tuple
{
    Tuple t(arity, 0);
    for (unsigned i = arity; i-- > 0;) {
        t[i] = static_cast<Element>(index % _size);
        index /= _size;
    }
    return t;
}

auto Universe::all_tuples(unsigned arity) const -> std::vector<Tuple>
{
    std::vector<Tuple> result;
    result.reserve(power(arity));
    Tuple t(arity, 0);
    do
        result.push_back(t);
    while (next_tuple(t, _size));
    return result;
}

auto clonelab::next_tuple(Tuple & t, std::size_t size) -> bool
{
    for (std::size_t i = t.size(); i-- > 0;) {
        if (++t[i] < size)
            return true;
        t[i] = 0;
    }
    return false;
}
