#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tilejep/multiperm.hpp"

namespace tilejep {

/// Unary-predicate roles a gadget can encode.
enum class Role : std::uint8_t { X, Y, P, O, G, T };

const char* to_string(Role r);
std::optional<Role> role_from_string(const std::string& s);

/// P uses superscripts 0 (grid side) and 1 (tile side); Q adds their mirrors 2 and 3.
enum class Variant : std::uint8_t { P, Q };

/// Grid superscripts are even and tile superscripts odd. Superscripts 0 and 2
/// carry the grid role G, superscripts 1 and 3 the tile-set role T.
inline bool is_grid_superscript(int sup) { return sup % 2 == 0; }

struct AntichainElement {
    MultiPerm shape; // three orders, order 2 is the reverse of order 0
    Role role = Role::P;
    int superscript = 0;

    // Distinguished points, as indices into `shape` (order-0 positions).
    PointId root() const { return 0; }
    PointId last() const { return static_cast<PointId>(shape.size() - 1); }
    PointId lowest() const { return shape.at_rank(1, 0); }
    PointId second_lowest() const { return shape.at_rank(1, 1); }
    PointId highest() const { return shape.at_rank(1, static_cast<Rank>(shape.size() - 1)); }
};

/// The five roles used with one superscript.
std::array<Role, 5> roles_for_superscript(int sup);

class GadgetSet {
public:
    GadgetSet() = default;
    GadgetSet(Variant variant, std::vector<AntichainElement> elements);

    Variant variant() const noexcept { return variant_; }
    std::size_t size() const noexcept { return elements_.size(); }
    std::size_t gadget_size() const { return elements_.empty() ? 0 : elements_.front().shape.size(); }
    const std::vector<AntichainElement>& elements() const noexcept { return elements_; }
    const AntichainElement& operator[](std::size_t i) const { return elements_[i]; }

    /// Index of the element with this role and superscript, if the set has it.
    std::optional<std::size_t> find(Role role, int sup) const;
    std::size_t index(Role role, int sup) const;
    const AntichainElement& element(Role role, int sup) const { return elements_[index(role, sup)]; }

    int max_superscript() const { return variant_ == Variant::P ? 1 : 3; }

private:
    Variant variant_ = Variant::P;
    std::vector<AntichainElement> elements_;
};

/// True when a shape meets the structural requirements on gadgets: at least
/// five points, order 2 reversing order 0, five distinct distinguished points,
/// and the order-0 last point below the root in order 1.
bool qualifies_as_gadget(const MultiPerm& shape);

/// Builds a uniform-size family. Shapes are taken in lexicographic order of
/// their order-1 rank column; a nonzero seed deterministically permutes the
/// candidates first. Every pair is re-verified with the matcher.
GadgetSet build_gadget_family(Variant variant, std::size_t size = 7, std::uint64_t seed = 0);

/// The 3-order shape whose order-1 column is `order1_ranks` and whose order 2
/// reverses order 0.
MultiPerm gadget_shape(const std::vector<Rank>& order1_ranks);

} // namespace tilejep
