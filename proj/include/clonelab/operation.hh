#pragma once

#include <clonelab/group.hh>
#include <clonelab/universe.hh>

#include <memory>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace clonelab
{
    struct OperationBody;

    /// An n-ary operation (n >= 1), either an explicit table or one of a fixed
    /// set of symbolic kinds. Immutable; copies share the body.
    class Operation
    {
    public:
        static auto table(Universe universe, unsigned arity, std::vector<Element> entries) -> Operation;
        static auto projection(unsigned arity, unsigned coordinate) -> Operation;
        static auto translation(std::shared_ptr<const GroupWindow> window, GroupElement shift) -> Operation;
        static auto indicator(std::vector<Element> set, Element inside, Element outside) -> Operation;
        static auto constant(Element value, unsigned arity) -> Operation;
        static auto patch(Operation inner, std::vector<Element> set) -> Operation;
        static auto composed(Operation outer, std::vector<Operation> inners) -> Operation;

        /// Tabulates fn over every argument tuple of the universe.
        template <typename Fn>
        static auto from_function(Universe universe, unsigned arity, Fn && fn) -> Operation
        {
            std::vector<Element> entries;
            entries.reserve(universe.power(arity));
            Tuple x(arity, 0);
            do
                entries.push_back(static_cast<Element>(fn(std::span<const Element>{x})));
            while (next_tuple(x, universe.size()));
            return table(universe, arity, std::move(entries));
        }

        [[nodiscard]] auto arity() const -> unsigned { return _arity; }
        [[nodiscard]] auto body() const -> const OperationBody & { return *_body; }

        [[nodiscard]] auto is_table() const -> bool;
        /// Only valid when is_table().
        [[nodiscard]] auto entries() const -> const std::vector<Element> &;
        [[nodiscard]] auto table_universe() const -> const Universe &;

        [[nodiscard]] auto describe() const -> std::string;

    private:
        Operation(unsigned arity, std::shared_ptr<const OperationBody> body);

        unsigned _arity;
        std::shared_ptr<const OperationBody> _body;
    };

    struct TableBody
    {
        Universe universe;
        std::vector<Element> entries;
    };

    struct ProjectionBody
    {
        unsigned coordinate; // 1-based
    };

    struct TranslationBody
    {
        std::shared_ptr<const GroupWindow> window;
        GroupElement shift;
    };

    /// Unary: inside on members of set, outside elsewhere.
    struct IndicatorBody
    {
        std::vector<Element> set; // sorted
        Element inside, outside;
    };

    struct ConstantBody
    {
        Element value;
    };

    /// s(x_1..x_m, y) = y if every x_i is in set, inner(x_1..x_m) otherwise.
    struct PatchBody
    {
        Operation inner;
        std::vector<Element> set; // sorted
    };

    struct ComposedBody
    {
        Operation outer;
        std::vector<Operation> inners;
    };

    struct OperationBody
    {
        std::variant<TableBody, ProjectionBody, TranslationBody, IndicatorBody, ConstantBody, PatchBody, ComposedBody> kind;
    };

    /// Evaluates f; throws ArityMismatch or ValueEscapesWindow.
    [[nodiscard]] auto evaluate(const Operation & f, std::span<const Element> args) -> Element;

    /// x -> f(g_1(x), ..., g_n(x)). Eager table when every part is a table over
    /// one universe, otherwise a Composed node.
    [[nodiscard]] auto compose(const Operation & f, const std::vector<Operation> & gs) -> Operation;

    /// Explicit table over u; idempotent on tables over u.
    [[nodiscard]] auto tabulate(const Operation & f, const Universe & u) -> Operation;

    /// True iff f and g take equal values on every tuple of on.
    [[nodiscard]] auto agree_on(const Operation & f, const Operation & g, const std::vector<Tuple> & on) -> bool;

    /// Extensional equality over u.
    [[nodiscard]] auto equal_on(const Operation & f, const Operation & g, const Universe & u) -> bool;

    /// Coordinate i (0-based) is fictitious iff the table is constant along it.
    [[nodiscard]] auto fictitious_coordinates(const Operation & table) -> std::vector<bool>;

    /// The table with all fictitious coordinates deleted. An operation with no
    /// essential coordinate keeps one (constant) coordinate, since arity 0 is
    /// excluded.
    [[nodiscard]] auto essential_core(const Operation & table) -> Operation;

    /// A uniformly random table.
    [[nodiscard]] auto random_table(unsigned arity, const Universe & u, std::mt19937_64 & rng) -> Operation;

    /// The n projections of arity n, as tables over u.
    [[nodiscard]] auto projection_tables(unsigned arity, const Universe & u) -> std::vector<Operation>;
}
