#pragma once

#include <clonelab/constructions.hh>
#include <clonelab/errors.hh>
#include <clonelab/group.hh>
#include <clonelab/operation.hh>
#include <clonelab/relation.hh>

#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace clonelab::cli
{
    class ParseError : public AlgebraError
    {
    public:
        ParseError(const std::string & source, std::size_t line, const std::string & message);

        [[nodiscard]] auto line() const -> std::size_t { return _line; }

    private:
        std::size_t _line;
    };

    /// Declarations from a problem file, one per line:
    ///
    ///     universe 3
    ///     op AND arity=2 table=[0,0,0,1]
    ///     op P proj 3 2
    ///     op F translation a=(1,0) group=G
    ///     op I indicator A=[2,3] a=0 b=1
    ///     op C const 1 arity=2
    ///     op S patch F A=[0,1]
    ///     op H compose F [G,G]
    ///     rel LE arity=2 tuples=[(0,0),(0,1),(1,1)]
    ///     group G z-rank=1 torsion=[4] window=[5]
    ///     subgroup H of=G gens=[(2,0)]
    ///     opset FH translations H
    ///     opset FG [F,G]
    ///
    /// '#' starts a comment. Names are unique across all kinds.
    class ProblemFile
    {
    public:
        /// The declared universe, or the window of the only group if none was
        /// declared.
        [[nodiscard]] auto universe() const -> const Universe &;

        [[nodiscard]] auto operation(const std::string & name) const -> const Operation &;
        [[nodiscard]] auto relation(const std::string & name) const -> const Relation &;
        [[nodiscard]] auto group(const std::string & name) const -> const std::shared_ptr<const GroupWindow> &;
        [[nodiscard]] auto subgroup(const std::string & name) const -> const SubgroupHandle &;

        /// A comma-separated list of operation and opset names, flattened.
        [[nodiscard]] auto operations(const std::string & names) const -> std::vector<Operation>;
        [[nodiscard]] auto relations(const std::string & names) const -> std::vector<Relation>;

        [[nodiscard]] auto operation_names() const -> const std::vector<std::string> & { return _operation_order; }

        friend auto parse_problem(std::istream & in, const std::string & source) -> ProblemFile;

    private:
        auto claim(const std::string & name, std::size_t line) -> void;

        std::string _source;
        std::optional<Universe> _universe;
        std::map<std::string, Operation> _operations;
        std::vector<std::string> _operation_order;
        std::map<std::string, Relation> _relations;
        std::map<std::string, std::shared_ptr<const GroupWindow>> _groups;
        std::map<std::string, SubgroupHandle> _subgroups;
        std::map<std::string, std::vector<Operation>> _opsets;
        std::map<std::string, std::size_t> _declared_at;
    };

    auto parse_problem(std::istream & in, const std::string & source) -> ProblemFile;
    auto load_problem(const std::string & path) -> ProblemFile;

    /// Splits on commas at bracket depth zero; empty parts are dropped.
    auto split_list(const std::string & text) -> std::vector<std::string>;
}
