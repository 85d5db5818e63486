#pragma once

#include <clonelab/universe.hh>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace clonelab
{
    /// Coordinates of an element of Z_{m_1} + ... + Z_{m_t} + Z^r, torsion
    /// coordinates first.
    using GroupElement = std::vector<std::int64_t>;

    /// A finitely generated abelian group Z_{m_1} + ... + Z_{m_t} + Z^rank.
    class AbelianGroup
    {
    public:
        AbelianGroup(unsigned rank, std::vector<std::int64_t> torsion);

        [[nodiscard]] auto rank() const -> unsigned { return _rank; }
        [[nodiscard]] auto torsion() const -> const std::vector<std::int64_t> & { return _torsion; }
        [[nodiscard]] auto dimension() const -> std::size_t { return _torsion.size() + _rank; }

        [[nodiscard]] auto zero() const -> GroupElement;
        [[nodiscard]] auto add(const GroupElement & a, const GroupElement & b) const -> GroupElement;
        [[nodiscard]] auto negate(const GroupElement & a) const -> GroupElement;
        [[nodiscard]] auto subtract(const GroupElement & a, const GroupElement & b) const -> GroupElement;

        /// Reduces torsion coordinates into [0, m_i); throws on wrong length.
        [[nodiscard]] auto normalize(GroupElement a) const -> GroupElement;

        [[nodiscard]] auto describe() const -> std::string;

        auto operator==(const AbelianGroup &) const -> bool = default;

    private:
        unsigned _rank;
        std::vector<std::int64_t> _torsion;
    };

    /// A finite window of a group, encoded onto a Universe. Torsion coordinates
    /// range over all residues, free coordinate i over [0, extent_i). Codes are
    /// mixed-radix in coordinate order, so Z with extent m and Z_m both encode
    /// an element as its integer value.
    class GroupWindow
    {
    public:
        GroupWindow(AbelianGroup group, std::vector<std::int64_t> free_extents);

        /// The whole of a finite group.
        static auto full(AbelianGroup group) -> GroupWindow;

        [[nodiscard]] auto group() const -> const AbelianGroup & { return _group; }
        [[nodiscard]] auto free_extents() const -> const std::vector<std::int64_t> & { return _extents; }
        [[nodiscard]] auto universe() const -> Universe { return Universe{_size}; }

        [[nodiscard]] auto encode(const GroupElement & a) const -> std::optional<Element>;
        [[nodiscard]] auto decode(Element code) const -> GroupElement;
        [[nodiscard]] auto in_window(const GroupElement & a) const -> bool;

        auto operator==(const GroupWindow &) const -> bool = default;

    private:
        AbelianGroup _group;
        std::vector<std::int64_t> _extents;
        std::vector<std::int64_t> _radices;
        std::size_t _size;
    };

    [[nodiscard]] auto format_group_element(const GroupElement & a) -> std::string;
}
