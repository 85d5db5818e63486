#include <clonelab/errors.hh>
#include <clonelab/group.hh>

#include <string>

using namespace clonelab;

AbelianGroup::AbelianGroup(unsigned rank, std::vector<std::int64_t> torsion) :
    _rank(rank),
    _torsion(std::move(torsion))
{
    for (auto m : _torsion)
        if (m < 1)
            throw InvalidArgument{"torsion moduli must be positive"};
}

auto AbelianGroup::zero() const -> GroupElement
{
    return GroupElement(dimension(), 0);
}

auto AbelianGroup::normalize(GroupElement a) const -> GroupElement
{
    if (a.size() != dimension())
        throw InvalidArgument{"group element " + format_group_element(a) + " does not belong to " + describe()};
    for (std::size_t i = 0; i < _torsion.size(); ++i)
        a[i] = ((a[i] % _torsion[i]) + _torsion[i]) % _torsion[i];
    return a;
}

auto AbelianGroup::add(const GroupElement & a, const GroupElement & b) const -> GroupElement
{
    if (a.size() != dimension() || b.size() != dimension())
        throw InvalidArgument{"group element length does not match " + describe()};
    GroupElement sum(dimension());
    for (std::size_t i = 0; i < sum.size(); ++i)
        sum[i] = a[i] + b[i];
    return normalize(std::move(sum));
}

auto AbelianGroup::negate(const GroupElement & a) const -> GroupElement
{
    GroupElement result = a;
    for (auto & c : result)
        c = -c;
    return normalize(std::move(result));
}

auto AbelianGroup::subtract(const GroupElement & a, const GroupElement & b) const -> GroupElement
{
    return add(a, negate(b));
}

auto AbelianGroup::describe() const -> std::string
{
    std::string result;
    for (auto m : _torsion)
        result += (result.empty() ? "" : "+") + ("Z" + std::to_string(m));
    for (unsigned i = 0; i < _rank; ++i)
        result += (result.empty() ? "" : "+") + std::string{"Z"};
    return result.empty() ? "0" : result;
}

GroupWindow::GroupWindow(AbelianGroup group, std::vector<std::int64_t> free_extents) :
    _group(std::move(group)),
    _extents(std::move(free_extents)),
    _size(1)
{
    if (_extents.size() != _group.rank())
        throw InvalidArgument{"window needs one extent per free coordinate of " + _group.describe()};
    for (auto m : _group.torsion())
        _radices.push_back(m);
    for (auto e : _extents) {
        if (e < 1)
            throw InvalidArgument{"window extents must be positive"};
        _radices.push_back(e);
    }
    for (auto r : _radices)
        _size *= static_cast<std::size_t>(r);
}

auto GroupWindow::full(AbelianGroup group) -> GroupWindow
{
    if (group.rank() != 0)
        throw InvalidArgument{"group " + group.describe() + " is infinite; give a window"};
    return GroupWindow{std::move(group), {}};
}

auto GroupWindow::in_window(const GroupElement & a) const -> bool
{
    if (a.size() != _radices.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] < 0 || a[i] >= _radices[i])
            return false;
    return true;
}

auto GroupWindow::encode(const GroupElement & a) const -> std::optional<Element>
{
    if (! in_window(a))
        return std::nullopt;
    std::size_t code = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        code = code * static_cast<std::size_t>(_radices[i]) + static_cast<std::size_t>(a[i]);
    return static_cast<Element>(code);
}

auto GroupWindow::decode(Element code) const -> GroupElement
{
    if (code >= _size)
        throw ValueEscapesWindow{{code}, "not a code of the group window"};
    GroupElement a(_radices.size());
    std::size_t rest = code;
    for (std::size_t i = a.size(); i-- > 0;) {
        a[i] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(_radices[i]));
        rest /= static_cast<std::size_t>(_radices[i]);
    }
    return a;
}

auto clonelab::format_group_element(const GroupElement & a) -> std::string
{
    std::string result = "(";
    for (std::size_t i = 0; i < a.size(); ++i)
        result += (i == 0 ? "" : ",") + std::to_string(a[i]);
    return result + ")";
}
