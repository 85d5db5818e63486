#include <clonelab/cli/problem_file.hh>

#include <charconv>
#include <fstream>
#include <sstream>

using namespace clonelab;
using namespace clonelab::cli;

ParseError::ParseError(const std::string & source, std::size_t line, const std::string & message) :
    AlgebraError(source + ":" + std::to_string(line) + ": " + message),
    _line(line)
{
}

auto clonelab::cli::split_list(const std::string & text) -> std::vector<std::string>
{
    std::vector<std::string> parts;
    std::string current;
    int depth = 0;
    for (char c : text) {
        if (c == '(' || c == '[')
            ++depth;
        else if (c == ')' || c == ']')
            --depth;
        if (c == ',' && depth == 0) {
            if (! current.empty())
                parts.push_back(current);
            current.clear();
        }
        else if (! std::isspace(static_cast<unsigned char>(c)))
            current += c;
    }
    if (! current.empty())
        parts.push_back(current);
    return parts;
}

namespace
{
    /// Whitespace-separated words, except that whitespace inside brackets or
    /// parentheses does not split.
    auto words(const std::string & line) -> std::vector<std::string>
    {
        std::vector<std::string> result;
        std::string current;
        int depth = 0;
        for (char c : line) {
            if (c == '(' || c == '[')
                ++depth;
            else if (c == ')' || c == ']')
                --depth;
            if (std::isspace(static_cast<unsigned char>(c)) && depth <= 0) {
                if (! current.empty())
                    result.push_back(current);
                current.clear();
            }
            else
                current += c;
        }
        if (! current.empty())
            result.push_back(current);
        return result;
    }

    class LineParser
    {
    public:
        LineParser(const std::string & source, std::size_t line) :
            _source(source),
            _line(line)
        {
        }

        [[noreturn]] auto fail(const std::string & message) const -> void { throw ParseError{_source, _line, message}; }

        auto integer(const std::string & text) const -> std::int64_t
        {
            std::int64_t value = 0;
            auto [end, error] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (error != std::errc{} || end != text.data() + text.size())
                fail("expected an integer, got '" + text + "'");
            return value;
        }

        auto element(const std::string & text) const -> Element
        {
            auto v = integer(text);
            if (v < 0 || v > std::int64_t{UINT32_MAX})
                fail("element out of range: " + text);
            return static_cast<Element>(v);
        }

        auto unwrap(const std::string & text, char open, char close) const -> std::string
        {
            if (text.size() < 2 || text.front() != open || text.back() != close)
                fail("expected " + std::string{open} + "..." + std::string{close} + ", got '" + text + "'");
            return text.substr(1, text.size() - 2);
        }

        auto integers(const std::string & text) const -> std::vector<std::int64_t>
        {
            std::vector<std::int64_t> result;
            for (auto & part : split_list(unwrap(text, '[', ']')))
                result.push_back(integer(part));
            return result;
        }

        auto elements(const std::string & text) const -> std::vector<Element>
        {
            std::vector<Element> result;
            for (auto v : integers(text)) {
                if (v < 0)
                    fail("negative element in " + text);
                result.push_back(static_cast<Element>(v));
            }
            return result;
        }

        /// "(1,0)" or a bare integer.
        auto vector(const std::string & text) const -> std::vector<std::int64_t>
        {
            if (! text.empty() && text.front() == '(') {
                std::vector<std::int64_t> result;
                for (auto & part : split_list(unwrap(text, '(', ')')))
                    result.push_back(integer(part));
                return result;
            }
            return {integer(text)};
        }

        auto vectors(const std::string & text) const -> std::vector<std::vector<std::int64_t>>
        {
            std::vector<std::vector<std::int64_t>> result;
            for (auto & part : split_list(unwrap(text, '[', ']')))
                result.push_back(vector(part));
            return result;
        }

        auto tuples(const std::string & text) const -> std::vector<Tuple>
        {
            std::vector<Tuple> result;
            for (auto & v : vectors(text)) {
                Tuple t;
                for (auto x : v) {
                    if (x < 0)
                        fail("negative element in " + text);
                    t.push_back(static_cast<Element>(x));
                }
                result.push_back(std::move(t));
            }
            return result;
        }

        /// key=value pairs from words[from..], each key at most once.
        auto keywords(const std::vector<std::string> & ws, std::size_t from, const std::vector<std::string> & allowed) const
            -> std::map<std::string, std::string>
        {
            std::map<std::string, std::string> result;
            for (auto i = from; i < ws.size(); ++i) {
                auto eq = ws[i].find('=');
                if (eq == std::string::npos)
                    fail("expected key=value, got '" + ws[i] + "'");
                auto key = ws[i].substr(0, eq);
                if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
                    fail("unknown key '" + key + "'");
                if (! result.emplace(key, ws[i].substr(eq + 1)).second)
                    fail("key '" + key + "' given twice");
            }
            return result;
        }

        auto required(const std::map<std::string, std::string> & kv, const std::string & key) const -> const std::string &
        {
            auto it = kv.find(key);
            if (it == kv.end())
                fail("missing " + key + "=");
            return it->second;
        }

    private:
        const std::string & _source;
        std::size_t _line;
    };
}

auto ProblemFile::claim(const std::string & name, std::size_t line) -> void
{
    if (name.empty() || name.find_first_of("=,[]()") != std::string::npos)
        throw ParseError{_source, line, "bad name '" + name + "'"};
    auto [it, fresh] = _declared_at.emplace(name, line);
    if (! fresh)
        throw ParseError{_source, line, "name '" + name + "' already declared on line " + std::to_string(it->second)};
}

auto ProblemFile::universe() const -> const Universe &
{
    if (_universe)
        return *_universe;
    throw InvalidArgument{_source + ": no universe declared"};
}

namespace
{
    template <typename Map>
    auto find_named(const Map & map, const std::string & name, const std::string & kind) -> const typename Map::mapped_type &
    {
        auto it = map.find(name);
        if (it == map.end())
            throw InvalidArgument{"unknown " + kind + " '" + name + "'"};
        return it->second;
    }
}

auto ProblemFile::operation(const std::string & name) const -> const Operation & { return find_named(_operations, name, "operation"); }
auto ProblemFile::relation(const std::string & name) const -> const Relation & { return find_named(_relations, name, "relation"); }
auto ProblemFile::group(const std::string & name) const -> const std::shared_ptr<const GroupWindow> &
{
    return find_named(_groups, name, "group");
}
auto ProblemFile::subgroup(const std::string & name) const -> const SubgroupHandle & { return find_named(_subgroups, name, "subgroup"); }

auto ProblemFile::operations(const std::string & names) const -> std::vector<Operation>
{
    std::vector<Operation> result;
    for (auto & name : split_list(names)) {
        if (auto it = _opsets.find(name); it != _opsets.end())
            result.insert(result.end(), it->second.begin(), it->second.end());
        else
            result.push_back(operation(name));
    }
    return result;
}

auto ProblemFile::relations(const std::string & names) const -> std::vector<Relation>
{
    std::vector<Relation> result;
    for (auto & name : split_list(names))
        result.push_back(relation(name));
    return result;
}

auto clonelab::cli::parse_problem(std::istream & in, const std::string & source) -> ProblemFile
{
    ProblemFile file;
    file._source = source;
    bool universe_declared = false;

    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (auto hash = text.find('#'); hash != std::string::npos)
            text.erase(hash);
        auto ws = words(text);
        if (ws.empty())
            continue;
        LineParser p{source, line};

        auto known_universe = [&]() -> const Universe & {
            if (! file._universe)
                p.fail("declare the universe (or a group) before this line");
            return *file._universe;
        };

        try {
            auto & keyword = ws[0];
            if (keyword == "universe") {
                if (ws.size() != 2)
                    p.fail("expected: universe m");
                if (universe_declared)
                    p.fail("universe declared twice");
                auto m = p.integer(ws[1]);
                if (m < 1)
                    p.fail("universe size must be at least 1");
                if (file._universe && file._universe->size() != static_cast<std::size_t>(m))
                    p.fail("universe " + ws[1] + " does not match the group window of size " + std::to_string(file._universe->size()));
                file._universe = Universe{static_cast<std::size_t>(m)};
                universe_declared = true;
                continue;
            }
            if (ws.size() < 3)
                p.fail("expected: " + keyword + " NAME ...");
            auto & name = ws[1];

            if (keyword == "op") {
                auto & kind = ws[2];
                std::optional<Operation> op;
                if (kind == "proj") {
                    if (ws.size() != 5)
                        p.fail("expected: op NAME proj n k");
                    auto n = p.integer(ws[3]), k = p.integer(ws[4]);
                    if (n < 1 || k < 1 || k > n)
                        p.fail("projection needs 1 <= k <= n");
                    op = Operation::projection(static_cast<unsigned>(n), static_cast<unsigned>(k));
                }
                else if (kind == "const") {
                    if (ws.size() < 4)
                        p.fail("expected: op NAME const v arity=n");
                    auto kv = p.keywords(ws, 4, {"arity"});
                    auto arity = kv.count("arity") ? p.integer(kv["arity"]) : 1;
                    if (arity < 1)
                        p.fail("arity must be at least 1");
                    op = Operation::constant(p.element(ws[3]), static_cast<unsigned>(arity));
                }
                else if (kind == "translation") {
                    auto kv = p.keywords(ws, 3, {"a", "group"});
                    auto & window = file.group(p.required(kv, "group"));
                    auto shift = p.vector(p.required(kv, "a"));
                    if (shift.size() != window->group().dimension())
                        p.fail("shift " + p.required(kv, "a") + " has the wrong length for " + window->group().describe());
                    op = Operation::translation(window, window->group().normalize(shift));
                }
                else if (kind == "indicator") {
                    auto kv = p.keywords(ws, 3, {"A", "a", "b"});
                    op = Operation::indicator(p.elements(p.required(kv, "A")), p.element(p.required(kv, "a")), p.element(p.required(kv, "b")));
                }
                else if (kind == "patch") {
                    if (ws.size() != 5)
                        p.fail("expected: op NAME patch F A=[...]");
                    auto kv = p.keywords(ws, 4, {"A"});
                    op = Operation::patch(file.operation(ws[3]), p.elements(p.required(kv, "A")));
                }
                else if (kind == "compose") {
                    if (ws.size() != 5)
                        p.fail("expected: op NAME compose F [G,...]");
                    op = compose(file.operation(ws[3]), file.operations(p.unwrap(ws[4], '[', ']')));
                }
                else if (kind.rfind("arity=", 0) == 0) {
                    auto kv = p.keywords(ws, 2, {"arity", "table"});
                    auto arity = p.integer(p.required(kv, "arity"));
                    if (arity < 1)
                        p.fail("arity must be at least 1");
                    auto & u = known_universe();
                    auto entries = p.elements(p.required(kv, "table"));
                    auto expected = u.power(static_cast<unsigned>(arity));
                    if (entries.size() != expected)
                        p.fail("table has " + std::to_string(entries.size()) + " entries, expected " + std::to_string(expected));
                    op = Operation::table(u, static_cast<unsigned>(arity), std::move(entries));
                }
                else
                    p.fail("unknown operation kind '" + kind + "'");
                file.claim(name, line);
                file._operations.emplace(name, *op);
                file._operation_order.push_back(name);
            }
            else if (keyword == "rel") {
                auto kv = p.keywords(ws, 2, {"arity", "tuples"});
                auto arity = p.integer(p.required(kv, "arity"));
                if (arity < 1)
                    p.fail("arity must be at least 1");
                Relation rho{known_universe(), static_cast<unsigned>(arity), p.tuples(p.required(kv, "tuples"))};
                file.claim(name, line);
                file._relations.emplace(name, std::move(rho));
            }
            else if (keyword == "group") {
                auto kv = p.keywords(ws, 2, {"z-rank", "torsion", "window"});
                auto rank = kv.count("z-rank") ? p.integer(kv["z-rank"]) : 0;
                if (rank < 0)
                    p.fail("z-rank must be nonnegative");
                auto torsion = kv.count("torsion") ? p.integers(kv["torsion"]) : std::vector<std::int64_t>{};
                auto extents = kv.count("window") ? p.integers(kv["window"]) : std::vector<std::int64_t>{};
                auto window = std::make_shared<const GroupWindow>(AbelianGroup{static_cast<unsigned>(rank), torsion}, extents);
                if (file._universe && file._universe->size() != window->universe().size())
                    p.fail("group window has " + std::to_string(window->universe().size()) + " elements but the universe has " +
                        std::to_string(file._universe->size()));
                file._universe = window->universe();
                file.claim(name, line);
                file._groups.emplace(name, std::move(window));
            }
            else if (keyword == "subgroup") {
                auto kv = p.keywords(ws, 2, {"of", "gens"});
                auto & window = file.group(p.required(kv, "of"));
                auto gens = kv.count("gens") ? p.vectors(kv["gens"]) : std::vector<std::vector<std::int64_t>>{};
                for (auto & g : gens)
                    if (g.size() != window->group().dimension())
                        p.fail("generator of the wrong length for " + window->group().describe());
                file.claim(name, line);
                file._subgroups.emplace(name, SubgroupHandle{window, gens});
            }
            else if (keyword == "opset") {
                std::vector<Operation> members;
                if (ws[2] == "translations") {
                    if (ws.size() != 4)
                        p.fail("expected: opset NAME translations H");
                    members = file.subgroup(ws[3]).translations();
                }
                else {
                    if (ws.size() != 3)
                        p.fail("expected: opset NAME [F,...]");
                    members = file.operations(p.unwrap(ws[2], '[', ']'));
                }
                file.claim(name, line);
                file._opsets.emplace(name, std::move(members));
            }
            else
                p.fail("unknown declaration '" + keyword + "'");
        }
        catch (const ParseError &) {
            throw;
        }
        catch (const AlgebraError & e) {
            throw ParseError{source, line, e.what()};
        }
    }
    return file;
}

auto clonelab::cli::load_problem(const std::string & path) -> ProblemFile
{
    std::ifstream in{path};
    if (! in)
        throw ParseError{path, 0, "cannot open file"};
    return parse_problem(in, path);
}
