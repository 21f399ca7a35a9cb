#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "tilejep/gadgets.hpp"
#include "tilejep/match.hpp"

namespace tilejep {

class TaggedStructure;

struct GadgetCopy {
    std::size_t element = 0;        // index into the GadgetSet
    std::vector<PointId> points;    // image of the element's points, in element order
    PointId root = 0;

    friend bool operator==(const GadgetCopy&, const GadgetCopy&) = default;
    friend auto operator<=>(const GadgetCopy&, const GadgetCopy&) = default;
};

enum class IntervalKind : std::uint8_t { Connector, TileSet };

struct SpecialInterval {
    IntervalKind kind = IntervalKind::Connector;
    std::size_t owner = 0; // copy index
    PointId bottom = 0;
    PointId top = 0;
    int superscript = 0;
};

enum class IntervalRelation : std::uint8_t { Below, Above, Intersect };

const char* to_string(IntervalRelation r);

/// A grid superscript together with the tile superscript that tiles it: (0,1) or (2,3).
struct Pairing {
    int grid = 0;
    int tile = 1;

    friend bool operator==(const Pairing&, const Pairing&) = default;
};

std::vector<Pairing> pairings(Variant v);

using Coord = std::pair<int, int>; // (x, y)

/// (x, y) < (x', y') iff y < y', or y == y' and x < x'.
inline bool antilex_less(const Coord& a, const Coord& b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
}

using CoordPair = std::pair<PointId, PointId>; // coordinatizing path points (x, y)

/// Per-pairing derived facts; interval indices refer to TaggedStructure::intervals().
struct PairingFacts {
    Pairing pairing;
    std::vector<std::size_t> intervals;              // special intervals of this pairing
    std::vector<std::vector<std::size_t>> hpred;     // per interval (same indexing as `intervals`)
    std::vector<std::vector<std::size_t>> vpred;     // positions into `intervals`
    std::vector<std::vector<std::size_t>> hsucc;
    std::vector<std::vector<std::size_t>> vsucc;
    std::vector<char> on_x_axis, on_y_axis, origin;
};

struct WeakCoordinateMap {
    Pairing pairing;
    std::vector<std::size_t> intervals;         // global interval indices
    std::vector<std::vector<Coord>> coords;     // sorted candidate coordinates per interval
    bool non_member = false;                    // some interval got more than one coordinate

    std::optional<Coord> unique(std::size_t position) const {
        if (coords[position].size() == 1)
            return coords[position].front();
        return std::nullopt;
    }
    /// Weak coordinates of a point: union over the intervals it bounds.
    std::map<PointId, std::set<Coord>> point_coords(const TaggedStructure& t) const;
};

struct DetectionOptions {
    std::size_t copy_budget = 100000;
};

/// A structure together with every detected gadget copy and the facts derived
/// from them. All copies count, intended or not.
class TaggedStructure {
public:
    TaggedStructure(MultiPerm base, std::shared_ptr<const GadgetSet> gadgets, DetectionOptions opts = {});

    const MultiPerm& base() const noexcept { return base_; }
    const GadgetSet& gadgets() const noexcept { return *gadgets_; }
    std::shared_ptr<const GadgetSet> gadget_ptr() const noexcept { return gadgets_; }
    const std::vector<GadgetCopy>& copies() const noexcept { return copies_; }
    const std::vector<SpecialInterval>& intervals() const noexcept { return intervals_; }

    Role role(std::size_t copy) const { return gadgets_->elements()[copies_[copy].element].role; }
    int superscript(std::size_t copy) const { return gadgets_->elements()[copies_[copy].element].superscript; }
    const AntichainElement& element_of(std::size_t copy) const { return gadgets_->elements()[copies_[copy].element]; }

    /// The two lowest points of a copy in order 1.
    std::pair<PointId, PointId> lowest_two(std::size_t copy) const;
    PointId highest(std::size_t copy) const;

    /// Copies containing point p.
    const std::vector<std::size_t>& copies_at(PointId p) const { return copies_at_[p]; }

    bool in_P(PointId p, int sup) const { return pred_P_[sup][p]; }
    bool in_O(PointId p, int sup) const { return pred_O_[sup][p]; }
    bool roots_path_element(PointId p, int sup) const { return pred_Pstrict_[sup][p]; }
    bool in_G(PointId p, int sup) const { return pred_G_[sup][p]; }
    bool in_T1(PointId p, int sup) const { return pred_T1_[sup][p]; }
    bool in_T2(PointId p, int sup) const { return pred_T2_[sup][p]; }

    /// Points captured by a copy (any point, in PointId order); empty for tile-set copies.
    const std::vector<PointId>& captured(std::size_t copy) const { return captured_[copy]; }

    /// Coordinate pairs of p with respect to superscript `sup`.
    const std::set<CoordPair>& coordinates(PointId p, int sup) const;

    /// Path successors within superscript `sup`: p -> set of p'.
    const std::set<PointId>& path_successors(PointId p, int sup) const;
    const std::set<PointId>& path_predecessors(PointId p, int sup) const;

    const PairingFacts& facts(const Pairing& p) const;

    IntervalRelation relation(std::size_t i, std::size_t j) const;
    bool intersect(std::size_t i, std::size_t j) const { return relation(i, j) == IntervalRelation::Intersect; }

    /// Every point of copy a precedes every point of copy b in `order`.
    bool copy_before(std::size_t a, std::size_t b, std::size_t order) const;

private:
    void derive();
    PairingFacts derive_pairing(const Pairing& p) const;

    MultiPerm base_;
    std::shared_ptr<const GadgetSet> gadgets_;
    std::vector<GadgetCopy> copies_;
    std::vector<std::vector<std::size_t>> copies_at_;
    std::vector<std::vector<PointId>> captured_;
    std::array<std::vector<char>, 4> pred_P_, pred_O_, pred_Pstrict_, pred_G_, pred_T1_, pred_T2_;
    std::array<std::vector<std::set<CoordPair>>, 4> coords_;
    std::array<std::vector<std::set<PointId>>, 4> succ_, pred_;
    std::vector<SpecialInterval> intervals_;
    std::vector<PairingFacts> facts_;
};

/// Detects every copy of every gadget and derives all facts. Throws
/// BudgetExceeded when the copy count passes the configured cap.
TaggedStructure detect_copies(const MultiPerm& s, std::shared_ptr<const GadgetSet> gadgets,
                              DetectionOptions opts = {});

/// x strictly between the copy's two lowest points in order 1, with the whole
/// copy before x in orders 0 and 2. Tile-set copies never capture.
bool captures(const TaggedStructure& t, std::size_t copy, PointId x);

/// g roots a grid copy that captures the tile point t.
bool tiled_by(const TaggedStructure& t, PointId g, PointId tile);

/// The unique coordinate pair of g (looked up with g's grid or tile superscript).
std::optional<CoordPair> coordinatization(const TaggedStructure& t, PointId g);

struct OriginsAndAxes {
    std::set<PointId> path_origins, grid_origins, tile_origins, on_x_axis, on_y_axis;
};

OriginsAndAxes origins_and_axes(const TaggedStructure& t);

/// Below iff top(I) <= bottom(J) in order 1; Above symmetric; otherwise they intersect.
IntervalRelation interval_relation(const MultiPerm& s, const SpecialInterval& i, const SpecialInterval& j);

WeakCoordinateMap weak_coordinates(const TaggedStructure& t, const Pairing& p);

/// Tile type of a point (1 or 2) under superscript `sup`, with the root of its tile set.
struct TilePoint {
    int type = 1;
    PointId tile_root = 0;
};
std::vector<TilePoint> tile_roles(const TaggedStructure& t, PointId x, int sup);

} // namespace tilejep
