#include "detail.hh"

#include <clonelab/errors.hh>

#include <algorithm>
#include <unordered_set>

using namespace clonelab;
using namespace clonelab::detail;

namespace
{
    constexpr std::size_t dense_limit = std::size_t{1} << 26;
    constexpr std::size_t chunk_table_limit = std::size_t{1} << 16;
    constexpr std::size_t chunk_tables_total = std::size_t{1} << 22;
    constexpr std::uint32_t escaped_chunk = static_cast<std::uint32_t>(-1);

    auto ipow(std::size_t b, std::size_t e) -> std::size_t
    {
        std::size_t r = 1;
        while (e--)
            r *= b;
        return r;
    }

    /// Generic path: rows kept in a hash set, images computed position by position.
    auto close_hashed(std::size_t m, const std::vector<LookupTable> & gens, std::vector<std::vector<Element>> seeds,
        std::size_t budget, const char * what, ComponentwiseClosure & result)
    {
        auto length = seeds.front().size();
        std::unordered_set<std::vector<Element>, TupleHash> seen;
        auto & members = result.members;
        auto add = [&](const std::vector<Element> & v) {
            if (seen.insert(v).second) {
                members.push_back(v);
                if (members.size() > budget)
                    throw BudgetExceeded{what, budget};
            }
        };
        for (auto & s : seeds)
            add(s);

        std::vector<Element> image(length);
        for (std::size_t top = 0; top < members.size(); ++top)
            for (auto & g : gens)
                for_each_tuple_with_max(g.arity, top, [&](std::span<const std::size_t> idx) {
                    for (std::size_t j = 0; j < length; ++j) {
                        std::size_t index = 0;
                        for (auto i : idx)
                            index = index * m + members[i][j];
                        image[j] = g.entries[index];
                        if (image[j] == escaped) {
                            result.truncated = true;
                            return true;
                        }
                    }
                    if (! seen.count(image))
                        add(image);
                    return true;
                });
    }

    /// Dense path for small tuple spaces. Rows are cut into chunks of w
    /// positions; each generator gets a table from the chunk codes of its
    /// arguments to the chunk code of the image, so one lookup handles w
    /// positions. Members are identified by their row-major code.
    class DenseClosure
    {
    public:
        DenseClosure(std::size_t m, std::size_t length, std::size_t saturation, const std::vector<LookupTable> & gens) :
            _m(m),
            _length(length),
            _saturation(saturation),
            _marks(saturation, 0)
        {
            unsigned max_arity = 1;
            for (auto & g : gens)
                max_arity = std::max(max_arity, g.arity);
            // wider chunks mean fewer lookups per image, but tables grow as m^(w*arity) per generator
            auto per_table = std::min(chunk_table_limit, chunk_tables_total / std::max<std::size_t>(1, 2 * gens.size()));
            _width = 1;
            while (_width < length) {
                auto size = checked_power(m, (_width + 1) * max_arity);
                if (! size || *size > per_table)
                    break;
                ++_width;
            }
            for (std::size_t start = 0; start < length; start += _width) {
                _chunk_widths.push_back(std::min(_width, length - start));
                _radices.push_back(ipow(m, _chunk_widths.back()));
            }
            for (auto & g : gens) {
                std::vector<std::vector<std::uint32_t>> per_width;
                per_width.push_back(chunk_table(g, _width));
                per_width.push_back(chunk_table(g, _chunk_widths.back()));
                _tables.push_back(std::move(per_width));
            }
        }

        [[nodiscard]] auto size() const -> std::size_t { return _codes.size(); }
        [[nodiscard]] auto saturated() const -> bool { return size() == _saturation; }

        auto insert(const std::vector<Element> & row) -> bool
        {
            std::size_t code = 0;
            for (auto v : row)
                code = code * _m + v;
            if (_marks[code])
                return false;
            _marks[code] = 1;
            _codes.push_back(code);
            std::size_t pos = 0;
            for (auto w : _chunk_widths) {
                std::uint32_t c = 0;
                for (std::size_t j = 0; j < w; ++j)
                    c = static_cast<std::uint32_t>(c * _m + row[pos + j]);
                _chunks.push_back(c);
                pos += w;
            }
            return true;
        }

        /// Image code of generator g on the members idx, or nullopt on escape.
        auto apply(std::size_t g, unsigned arity, std::span<const std::size_t> idx) const -> std::optional<std::size_t>
        {
            auto chunks = _chunk_widths.size();
            std::size_t code = 0;
            for (std::size_t q = 0; q < chunks; ++q) {
                auto & table = _tables[g][q + 1 == chunks ? 1 : 0];
                auto radix = _radices[q];
                std::size_t index = 0;
                for (unsigned i = 0; i < arity; ++i)
                    index = index * radix + _chunks[idx[i] * chunks + q];
                auto c = table[index];
                if (c == escaped_chunk)
                    return std::nullopt;
                code = code * radix + c;
            }
            return code;
        }

        /// apply() for a binary generator on members a and b.
        auto apply2(std::size_t g, std::size_t a, std::size_t b) const -> std::optional<std::size_t>
        {
            auto chunks = _chunk_widths.size();
            const std::uint32_t * ca = _chunks.data() + a * chunks;
            const std::uint32_t * cb = _chunks.data() + b * chunks;
            auto & full = _tables[g][0];
            std::size_t code = 0;
            for (std::size_t q = 0; q + 1 < chunks; ++q) {
                auto c = full[ca[q] * _radices[q] + cb[q]];
                if (c == escaped_chunk)
                    return std::nullopt;
                code = code * _radices[q] + c;
            }
            auto last = chunks - 1;
            auto c = _tables[g][1][ca[last] * _radices[last] + cb[last]];
            if (c == escaped_chunk)
                return std::nullopt;
            return code * _radices[last] + c;
        }

        auto insert_code(std::size_t code) -> bool
        {
            if (_marks[code])
                return false;
            std::vector<Element> row(_length);
            for (std::size_t j = _length; j-- > 0;) {
                row[j] = static_cast<Element>(code % _m);
                code /= _m;
            }
            return insert(row);
        }

        auto rows() const -> std::vector<std::vector<Element>>
        {
            std::vector<std::vector<Element>> result;
            result.reserve(_codes.size());
            for (auto code : _codes) {
                std::vector<Element> row(_length);
                for (std::size_t j = _length; j-- > 0;) {
                    row[j] = static_cast<Element>(code % _m);
                    code /= _m;
                }
                result.push_back(std::move(row));
            }
            return result;
        }

    private:
        auto chunk_table(const LookupTable & g, std::size_t w) const -> std::vector<std::uint32_t>
        {
            auto radix = ipow(_m, w);
            std::vector<std::uint32_t> table(ipow(radix, g.arity));
            std::vector<std::size_t> args(g.arity);
            for (std::size_t index = 0; index < table.size(); ++index) {
                auto rest = index;
                for (unsigned i = g.arity; i-- > 0;) {
                    args[i] = rest % radix;
                    rest /= radix;
                }
                std::uint32_t image = 0;
                std::size_t scale = radix;
                for (std::size_t j = 0; j < w && image != escaped_chunk; ++j) {
                    scale /= _m;
                    std::size_t at = 0;
                    for (auto a : args)
                        at = at * _m + (a / scale) % _m;
                    auto v = g.entries[at];
                    image = v == escaped ? escaped_chunk : static_cast<std::uint32_t>(image * _m + v);
                }
                table[index] = image;
            }
            return table;
        }

        std::size_t _m, _length, _saturation, _width = 1;
        std::vector<std::size_t> _chunk_widths, _radices;
        std::vector<std::vector<std::vector<std::uint32_t>>> _tables;
        std::vector<unsigned char> _marks;
        std::vector<std::size_t> _codes;
        std::vector<std::uint32_t> _chunks;
    };
}

auto clonelab::detail::close_componentwise(std::size_t universe_size, const std::vector<LookupTable> & gens,
    std::vector<std::vector<Element>> seeds, std::size_t budget, const char * what) -> ComponentwiseClosure
{
    ComponentwiseClosure result;
    if (seeds.empty())
        return result;
    auto length = seeds.front().size();
    auto saturation = checked_power(universe_size, length);
    if (! saturation || *saturation > dense_limit) {
        close_hashed(universe_size, gens, std::move(seeds), budget, what, result);
        return result;
    }

    DenseClosure dense{universe_size, length, *saturation, gens};
    for (auto & s : seeds)
        if (dense.insert(s) && dense.size() > budget)
            throw BudgetExceeded{what, budget};

    for (std::size_t top = 0; top < dense.size() && ! dense.saturated(); ++top) {
        for (std::size_t g = 0; g < gens.size(); ++g) {
            if (gens[g].arity == 2) {
                // same visiting order as for_each_tuple_with_max
                bool stop = false;
                auto visit = [&](std::size_t a, std::size_t b) {
                    auto code = dense.apply2(g, a, b);
                    if (! code) {
                        result.truncated = true;
                        return;
                    }
                    if (dense.insert_code(*code) && dense.size() > budget)
                        throw BudgetExceeded{what, budget};
                    stop = dense.saturated();
                };
                for (std::size_t j = 0; j <= top && ! stop; ++j)
                    visit(top, j);
                for (std::size_t j = 0; j < top && ! stop; ++j)
                    visit(j, top);
                if (stop)
                    break;
                continue;
            }
            bool keep_going = for_each_tuple_with_max(gens[g].arity, top, [&](std::span<const std::size_t> idx) {
                auto code = dense.apply(g, gens[g].arity, idx);
                if (! code) {
                    result.truncated = true;
                    return true;
                }
                if (dense.insert_code(*code) && dense.size() > budget)
                    throw BudgetExceeded{what, budget};
                return ! dense.saturated();
            });
            if (! keep_going)
                break;
        }
    }
    result.members = dense.rows();
    return result;
}
