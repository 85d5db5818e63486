#include <clonelab/errors.hh>
#include <clonelab/operation.hh>

#include <algorithm>
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

    auto in_set(const std::vector<Element> & sorted, Element x) -> bool
    {
        return std::binary_search(sorted.begin(), sorted.end(), x);
    }

    auto format_set(const std::vector<Element> & set) -> std::string
    {
        std::string result = "{";
        for (std::size_t i = 0; i < set.size(); ++i)
            result += (i == 0 ? "" : ",") + std::to_string(set[i]);
        return result + "}";
    }

    template <typename... Ts>
    struct Overloaded : Ts...
    {
        using Ts::operator()...;
    };
    template <typename... Ts>
    Overloaded(Ts...) -> Overloaded<Ts...>;
}

Operation::Operation(unsigned arity, std::shared_ptr<const OperationBody> body) :
    _arity(arity),
    _body(std::move(body))
{
    if (arity == 0)
        throw InvalidArgument{"operations must have arity at least 1"};
}

auto Operation::table(Universe universe, unsigned arity, std::vector<Element> entries) -> Operation
{
    if (arity == 0)
        throw InvalidArgument{"operations must have arity at least 1"};
    auto expected = universe.power(arity);
    if (entries.size() != expected)
        throw InvalidArgument{"table of arity " + std::to_string(arity) + " over " + std::to_string(universe.size()) +
            " elements needs " + std::to_string(expected) + " entries, got " + std::to_string(entries.size())};
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (! universe.contains(entries[i]))
            throw ValueEscapesWindow{universe.tuple_at(i, arity), "table entry " + std::to_string(entries[i])};
    return Operation{arity, std::make_shared<const OperationBody>(OperationBody{TableBody{universe, std::move(entries)}})};
}

auto Operation::projection(unsigned arity, unsigned coordinate) -> Operation
{
    if (coordinate < 1 || coordinate > arity)
        throw InvalidArgument{"projection coordinate " + std::to_string(coordinate) + " outside 1.." + std::to_string(arity)};
    return Operation{arity, std::make_shared<const OperationBody>(OperationBody{ProjectionBody{coordinate}})};
}

auto Operation::translation(std::shared_ptr<const GroupWindow> window, GroupElement shift) -> Operation
{
    if (! window)
        throw InvalidArgument{"translation needs a group window"};
    shift = window->group().normalize(std::move(shift));
    return Operation{1, std::make_shared<const OperationBody>(OperationBody{TranslationBody{std::move(window), std::move(shift)}})};
}

auto Operation::indicator(std::vector<Element> set, Element inside, Element outside) -> Operation
{
    return Operation{1, std::make_shared<const OperationBody>(OperationBody{IndicatorBody{sorted_unique(std::move(set)), inside, outside}})};
}

auto Operation::constant(Element value, unsigned arity) -> Operation
{
    return Operation{arity, std::make_shared<const OperationBody>(OperationBody{ConstantBody{value}})};
}

auto Operation::patch(Operation inner, std::vector<Element> set) -> Operation
{
    auto arity = inner.arity() + 1;
    return Operation{arity, std::make_shared<const OperationBody>(OperationBody{PatchBody{std::move(inner), sorted_unique(std::move(set))}})};
}

auto Operation::composed(Operation outer, std::vector<Operation> inners) -> Operation
{
    if (inners.size() != outer.arity())
        throw ArityMismatch{"outer operation of arity " + std::to_string(outer.arity()) + " given " +
            std::to_string(inners.size()) + " inner operations"};
    if (inners.empty())
        throw ArityMismatch{"composition needs inner operations"};
    auto arity = inners.front().arity();
    for (auto & g : inners)
        if (g.arity() != arity)
            throw ArityMismatch{"inner operations of a composition must share one arity"};
    return Operation{arity, std::make_shared<const OperationBody>(OperationBody{ComposedBody{std::move(outer), std::move(inners)}})};
}

auto Operation::is_table() const -> bool
{
    return std::holds_alternative<TableBody>(_body->kind);
}

auto Operation::entries() const -> const std::vector<Element> &
{
    return std::get<TableBody>(_body->kind).entries;
}

auto Operation::table_universe() const -> const Universe &
{
    return std::get<TableBody>(_body->kind).universe;
}

auto Operation::describe() const -> std::string
{
    return std::visit(Overloaded{
        [&](const TableBody & t) {
            std::string result = "table" + std::to_string(_arity) + "[";
            for (std::size_t i = 0; i < t.entries.size(); ++i)
                result += (i == 0 ? "" : ",") + std::to_string(t.entries[i]);
            return result + "]";
        },
        [&](const ProjectionBody & p) { return "proj(" + std::to_string(_arity) + "," + std::to_string(p.coordinate) + ")"; },
        [&](const TranslationBody & t) { return "translation" + format_group_element(t.shift); },
        [&](const IndicatorBody & i) {
            return "indicator(" + format_set(i.set) + ";" + std::to_string(i.inside) + "," + std::to_string(i.outside) + ")";
        },
        [&](const ConstantBody & c) { return "const(" + std::to_string(c.value) + ";" + std::to_string(_arity) + ")"; },
        [&](const PatchBody & p) { return "patch(" + p.inner.describe() + ";" + format_set(p.set) + ")"; },
        [&](const ComposedBody & c) {
            std::string result = c.outer.describe() + "∘[";
            for (std::size_t i = 0; i < c.inners.size(); ++i)
                result += (i == 0 ? "" : ",") + c.inners[i].describe();
            return result + "]";
        }},
        _body->kind);
}

auto clonelab::evaluate(const Operation & f, std::span<const Element> args) -> Element
{
    if (args.size() != f.arity())
        throw ArityMismatch{"operation of arity " + std::to_string(f.arity()) + " applied to " +
            std::to_string(args.size()) + " arguments"};

    return std::visit(Overloaded{
        [&](const TableBody & t) -> Element {
            for (auto x : args)
                if (! t.universe.contains(x))
                    throw ValueEscapesWindow{Tuple(args.begin(), args.end()), "argument outside table universe"};
            return t.entries[t.universe.index_of(args)];
        },
        [&](const ProjectionBody & p) -> Element { return args[p.coordinate - 1]; },
        [&](const TranslationBody & t) -> Element {
            if (! t.window->universe().contains(args[0]))
                throw ValueEscapesWindow{Tuple(args.begin(), args.end()), "argument outside group window"};
            auto image = t.window->group().add(t.shift, t.window->decode(args[0]));
            auto code = t.window->encode(image);
            if (! code)
                throw ValueEscapesWindow{Tuple(args.begin(), args.end()),
                    "translation by " + format_group_element(t.shift) + " gives " + format_group_element(image)};
            return *code;
        },
        [&](const IndicatorBody & i) -> Element { return in_set(i.set, args[0]) ? i.inside : i.outside; },
        [&](const ConstantBody & c) -> Element { return c.value; },
        [&](const PatchBody & p) -> Element {
            auto xs = args.first(args.size() - 1);
            if (std::all_of(xs.begin(), xs.end(), [&](Element x) { return in_set(p.set, x); }))
                return args.back();
            return evaluate(p.inner, xs);
        },
        [&](const ComposedBody & c) -> Element {
            Tuple inner_values;
            inner_values.reserve(c.inners.size());
            for (auto & g : c.inners)
                inner_values.push_back(evaluate(g, args));
            return evaluate(c.outer, inner_values);
        }},
        f.body().kind);
}

auto clonelab::compose(const Operation & f, const std::vector<Operation> & gs) -> Operation
{
    if (gs.size() != f.arity())
        throw ArityMismatch{"outer operation of arity " + std::to_string(f.arity()) + " given " +
            std::to_string(gs.size()) + " inner operations"};
    auto arity = gs.front().arity();
    for (auto & g : gs)
        if (g.arity() != arity)
            throw ArityMismatch{"inner operations of a composition must share one arity"};

    bool all_tables = f.is_table() && std::all_of(gs.begin(), gs.end(), [](const Operation & g) { return g.is_table(); });
    if (! all_tables)
        return Operation::composed(f, gs);

    const auto & u = f.table_universe();
    for (auto & g : gs)
        if (g.table_universe() != u)
            throw UniverseMismatch{"composition of tables over universes of sizes " + std::to_string(u.size()) + " and " +
                std::to_string(g.table_universe().size())};

    const auto & outer = f.entries();
    auto points = u.power(arity);
    std::vector<Element> entries(points);
    for (std::size_t x = 0; x < points; ++x) {
        std::size_t index = 0;
        for (auto & g : gs)
            index = index * u.size() + g.entries()[x];
        entries[x] = outer[index];
    }
    return Operation::table(u, arity, std::move(entries));
}

auto clonelab::tabulate(const Operation & f, const Universe & u) -> Operation
{
    if (f.is_table() && f.table_universe() == u)
        return f;
    std::vector<Element> entries;
    entries.reserve(u.power(f.arity()));
    Tuple x(f.arity(), 0);
    do {
        auto value = evaluate(f, x);
        if (! u.contains(value))
            throw ValueEscapesWindow{x, "value " + std::to_string(value) + " outside window of size " + std::to_string(u.size())};
        entries.push_back(value);
    } while (next_tuple(x, u.size()));
    return Operation::table(u, f.arity(), std::move(entries));
}

auto clonelab::agree_on(const Operation & f, const Operation & g, const std::vector<Tuple> & on) -> bool
{
    if (f.arity() != g.arity())
        throw ArityMismatch{"agree_on needs operations of equal arity"};
    for (auto & x : on) {
        if (x.size() != f.arity())
            throw ArityMismatch{"agreement tuple " + format_tuple(x) + " has the wrong length"};
        if (evaluate(f, x) != evaluate(g, x))
            return false;
    }
    return true;
}

auto clonelab::equal_on(const Operation & f, const Operation & g, const Universe & u) -> bool
{
    return f.arity() == g.arity() && tabulate(f, u).entries() == tabulate(g, u).entries();
}

auto clonelab::fictitious_coordinates(const Operation & table) -> std::vector<bool>
{
    const auto & u = table.table_universe();
    const auto & entries = table.entries();
    std::vector<bool> result(table.arity(), true);
    Tuple x(table.arity(), 0);
    std::size_t index = 0;
    do {
        for (unsigned i = 0; i < table.arity(); ++i) {
            if (! result[i] || x[i] == 0)
                continue;
            auto base = x;
            base[i] = 0;
            if (entries[u.index_of(base)] != entries[index])
                result[i] = false;
        }
        ++index;
    } while (next_tuple(x, u.size()));
    return result;
}

auto clonelab::essential_core(const Operation & table) -> Operation
{
    auto fictitious = fictitious_coordinates(table);
    std::vector<unsigned> keep;
    for (unsigned i = 0; i < table.arity(); ++i)
        if (! fictitious[i])
            keep.push_back(i);
    if (keep.empty())
        keep.push_back(0);

    const auto & u = table.table_universe();
    Tuple full(table.arity(), 0);
    return Operation::from_function(u, static_cast<unsigned>(keep.size()), [&](std::span<const Element> y) {
        for (std::size_t j = 0; j < keep.size(); ++j)
            full[keep[j]] = y[j];
        return table.entries()[u.index_of(full)];
    });
}

auto clonelab::projection_tables(unsigned arity, const Universe & u) -> std::vector<Operation>
{
    std::vector<Operation> result;
    for (unsigned k = 1; k <= arity; ++k)
        result.push_back(tabulate(Operation::projection(arity, k), u));
    return result;
}

auto clonelab::random_table(unsigned arity, const Universe & u, std::mt19937_64 & rng) -> Operation
{
    std::uniform_int_distribution<Element> value(0, u.max());
    std::vector<Element> entries(u.power(arity));
    for (auto & e : entries)
        e = value(rng);
    return Operation::table(u, arity, std::move(entries));
}
