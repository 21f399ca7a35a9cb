#include "tilejep/semantics.hpp"

#include <algorithm>

namespace tilejep {

const char* to_string(IntervalRelation r) {
    switch (r) {
    case IntervalRelation::Below: return "below";
    case IntervalRelation::Above: return "above";
    case IntervalRelation::Intersect: return "intersect";
    }
    return "?";
}

std::vector<Pairing> pairings(Variant v) {
    if (v == Variant::P)
        return {Pairing{0, 1}};
    return {Pairing{0, 1}, Pairing{2, 3}};
}

TaggedStructure detect_copies(const MultiPerm& s, std::shared_ptr<const GadgetSet> gadgets, DetectionOptions opts) {
    return TaggedStructure(s, std::move(gadgets), opts);
}

TaggedStructure::TaggedStructure(MultiPerm base, std::shared_ptr<const GadgetSet> gadgets, DetectionOptions opts)
    : base_(std::move(base)), gadgets_(std::move(gadgets)) {
    if (base_.dims() != 3)
        throw Error(ErrorCode::DimsMismatch, "gadget detection needs exactly three orders");
    for (std::size_t e = 0; e < gadgets_->size(); ++e) {
        const auto& shape = (*gadgets_)[e].shape;
        bool over = false;
        for_each_embedding(shape, base_, [&](const Embedding& emb) {
            if (copies_.size() >= opts.copy_budget) {
                over = true;
                return false;
            }
            copies_.push_back(GadgetCopy{e, emb.map, emb.map.front()});
            return true;
        });
        if (over)
            throw Error(ErrorCode::BudgetExceeded,
                        "more than " + std::to_string(opts.copy_budget) + " gadget copies");
    }
    derive();
}

std::pair<PointId, PointId> TaggedStructure::lowest_two(std::size_t copy) const {
    const auto& el = element_of(copy);
    const auto& pts = copies_[copy].points;
    return {pts[el.lowest()], pts[el.second_lowest()]};
}

PointId TaggedStructure::highest(std::size_t copy) const {
    return copies_[copy].points[element_of(copy).highest()];
}

bool TaggedStructure::copy_before(std::size_t a, std::size_t b, std::size_t order) const {
    Rank max_a = 0;
    for (PointId p : copies_[a].points)
        max_a = std::max(max_a, base_.rank(p, order));
    for (PointId p : copies_[b].points)
        if (base_.rank(p, order) <= max_a)
            return false;
    return true;
}

const std::set<CoordPair>& TaggedStructure::coordinates(PointId p, int sup) const { return coords_[sup][p]; }
const std::set<PointId>& TaggedStructure::path_successors(PointId p, int sup) const { return succ_[sup][p]; }
const std::set<PointId>& TaggedStructure::path_predecessors(PointId p, int sup) const { return pred_[sup][p]; }

const PairingFacts& TaggedStructure::facts(const Pairing& p) const {
    for (const auto& f : facts_)
        if (f.pairing == p)
            return f;
    throw Error(ErrorCode::VariantMismatch, "pairing not present in this gadget set");
}

IntervalRelation interval_relation(const MultiPerm& s, const SpecialInterval& i, const SpecialInterval& j) {
    if (s.rank(i.top, 1) <= s.rank(j.bottom, 1))
        return IntervalRelation::Below;
    if (s.rank(j.top, 1) <= s.rank(i.bottom, 1))
        return IntervalRelation::Above;
    return IntervalRelation::Intersect;
}

IntervalRelation TaggedStructure::relation(std::size_t i, std::size_t j) const {
    return interval_relation(base_, intervals_[i], intervals_[j]);
}

void TaggedStructure::derive() {
    const std::size_t n = base_.size();
    copies_at_.assign(n, {});
    for (std::size_t c = 0; c < copies_.size(); ++c)
        for (PointId p : copies_[c].points)
            copies_at_[p].push_back(c);

    for (int s = 0; s < 4; ++s) {
        pred_P_[s].assign(n, 0);
        pred_O_[s].assign(n, 0);
        pred_Pstrict_[s].assign(n, 0);
        pred_G_[s].assign(n, 0);
        pred_T1_[s].assign(n, 0);
        pred_T2_[s].assign(n, 0);
        coords_[s].assign(n, {});
        succ_[s].assign(n, {});
        pred_[s].assign(n, {});
    }

    captured_.assign(copies_.size(), {});
    for (std::size_t c = 0; c < copies_.size(); ++c) {
        const int s = superscript(c);
        const PointId root = copies_[c].root;
        switch (role(c)) {
        case Role::P: pred_P_[s][root] = pred_Pstrict_[s][root] = 1; break;
        case Role::O: pred_P_[s][root] = pred_O_[s][root] = 1; break;
        case Role::G: pred_G_[s][root] = 1; break;
        case Role::T:
            pred_T1_[s][root] = 1;
            pred_T2_[s][highest(c)] = 1;
            break;
        default: break;
        }
        if (role(c) == Role::T)
            continue;
        auto [lo, hi] = lowest_two(c);
        // Copy points are in order-0 sequence and order 2 reverses it within the copy.
        const Rank max0 = base_.rank(copies_[c].points.back(), 0);
        const Rank max2 = base_.rank(copies_[c].points.front(), 2);
        for (Rank r = base_.rank(lo, 1) + 1; r < base_.rank(hi, 1); ++r) {
            PointId x = base_.at_rank(1, r);
            if (base_.rank(x, 0) > max0 && base_.rank(x, 2) > max2)
                captured_[c].push_back(x);
        }
        std::sort(captured_[c].begin(), captured_[c].end());
    }

    std::array<std::vector<std::set<PointId>>, 4> xs, ys;
    for (int s = 0; s < 4; ++s) {
        xs[s].assign(n, {});
        ys[s].assign(n, {});
    }
    for (std::size_t c = 0; c < copies_.size(); ++c) {
        const int s = superscript(c);
        const PointId root = copies_[c].root;
        for (PointId x : captured_[c]) {
            if (!pred_P_[s][x])
                continue;
            switch (role(c)) {
            case Role::X: xs[s][root].insert(x); break;
            case Role::Y: ys[s][root].insert(x); break;
            case Role::P:
            case Role::O:
                succ_[s][root].insert(x);
                pred_[s][x].insert(root);
                break;
            default: break;
            }
        }
    }
    for (int s = 0; s < 4; ++s)
        for (PointId g = 0; g < n; ++g)
            for (PointId x : xs[s][g])
                for (PointId y : ys[s][g])
                    coords_[s][g].insert({x, y});

    for (std::size_t c = 0; c < copies_.size(); ++c) {
        if (role(c) == Role::G) {
            auto [lo, hi] = lowest_two(c);
            intervals_.push_back(SpecialInterval{IntervalKind::Connector, c, lo, hi, superscript(c)});
        } else if (role(c) == Role::T) {
            intervals_.push_back(
                SpecialInterval{IntervalKind::TileSet, c, copies_[c].root, highest(c), superscript(c)});
        }
    }

    for (const auto& p : pairings(gadgets_->variant()))
        facts_.push_back(derive_pairing(p));
}

PairingFacts TaggedStructure::derive_pairing(const Pairing& pairing) const {
    PairingFacts f;
    f.pairing = pairing;
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        const auto& iv = intervals_[i];
        if ((iv.kind == IntervalKind::Connector && iv.superscript == pairing.grid) ||
            (iv.kind == IntervalKind::TileSet && iv.superscript == pairing.tile))
            f.intervals.push_back(i);
    }
    const std::size_t m = f.intervals.size();
    f.hpred.assign(m, {});
    f.vpred.assign(m, {});
    f.hsucc.assign(m, {});
    f.vsucc.assign(m, {});
    f.on_x_axis.assign(m, 0);
    f.on_y_axis.assign(m, 0);
    f.origin.assign(m, 0);

    auto coords_of = [&](std::size_t pos) -> const std::set<CoordPair>& {
        const auto& iv = intervals_[f.intervals[pos]];
        return coords_[iv.superscript][copies_[iv.owner].root];
    };

    for (std::size_t a = 0; a < m; ++a) {
        const int s = intervals_[f.intervals[a]].superscript;
        for (const auto& [x, y] : coords_of(a)) {
            if (pred_O_[s][y])
                f.on_x_axis[a] = 1;
            if (pred_O_[s][x])
                f.on_y_axis[a] = 1;
            if (x == y && pred_O_[s][x])
                f.origin[a] = 1;
        }
    }
    for (std::size_t a = 0; a < m; ++a) {
        const auto& ia = intervals_[f.intervals[a]];
        for (std::size_t b = 0; b < m; ++b) {
            const auto& ib = intervals_[f.intervals[b]];
            if (ia.kind != ib.kind)
                continue;
            const int s = ia.superscript;
            bool h = false, v = false;
            for (const auto& [x, y] : coords_of(a))
                for (const auto& [x2, y2] : coords_of(b)) {
                    if (y2 == y && succ_[s][x].count(x2))
                        h = true;
                    if (x2 == x && succ_[s][y].count(y2))
                        v = true;
                }
            if (h) {
                f.hsucc[a].push_back(b);
                f.hpred[b].push_back(a);
            }
            if (v) {
                f.vsucc[a].push_back(b);
                f.vpred[b].push_back(a);
            }
        }
    }
    return f;
}

bool captures(const TaggedStructure& t, std::size_t copy, PointId x) {
    if (t.role(copy) == Role::T)
        throw Error(ErrorCode::WrongRole, "tile-set copies never capture");
    const auto& cap = t.captured(copy);
    return std::binary_search(cap.begin(), cap.end(), x);
}

bool tiled_by(const TaggedStructure& t, PointId g, PointId tile) {
    for (std::size_t c : t.copies_at(g)) {
        if (t.role(c) != Role::G || t.copies()[c].root != g)
            continue;
        const int tile_sup = t.superscript(c) + 1;
        if (!(t.in_T1(tile, tile_sup) || t.in_T2(tile, tile_sup)))
            continue;
        if (captures(t, c, tile))
            return true;
    }
    return false;
}

std::optional<CoordPair> coordinatization(const TaggedStructure& t, PointId g) {
    for (int s = 0; s <= t.gadgets().max_superscript(); ++s) {
        const bool eligible = is_grid_superscript(s) ? t.in_G(g, s) : t.in_T1(g, s);
        if (!eligible)
            continue;
        const auto& cs = t.coordinates(g, s);
        if (cs.size() == 1)
            return *cs.begin();
    }
    return std::nullopt;
}

OriginsAndAxes origins_and_axes(const TaggedStructure& t) {
    OriginsAndAxes out;
    const auto n = static_cast<PointId>(t.base().size());
    for (int s = 0; s <= t.gadgets().max_superscript(); ++s)
        for (PointId p = 0; p < n; ++p) {
            if (t.in_O(p, s))
                out.path_origins.insert(p);
            const bool grid = is_grid_superscript(s) && t.in_G(p, s);
            const bool tile = !is_grid_superscript(s) && t.in_T1(p, s);
            if (!grid && !tile)
                continue;
            for (const auto& [x, y] : t.coordinates(p, s)) {
                if (t.in_O(y, s))
                    out.on_x_axis.insert(p);
                if (t.in_O(x, s))
                    out.on_y_axis.insert(p);
                if (x == y && t.in_O(x, s))
                    (grid ? out.grid_origins : out.tile_origins).insert(p);
            }
        }
    return out;
}

WeakCoordinateMap weak_coordinates(const TaggedStructure& t, const Pairing& p) {
    const auto& f = t.facts(p);
    WeakCoordinateMap out;
    out.pairing = p;
    out.intervals = f.intervals;
    const std::size_t m = f.intervals.size();
    out.coords.assign(m, {});
    if (m == 0)
        return out;

    std::vector<std::vector<char>> meets(m, std::vector<char>(m, 0));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            meets[a][b] = t.intersect(f.intervals[a], f.intervals[b]);

    // No coordinate can exceed the interval count.
    const int cap = static_cast<int>(m);
    std::vector<std::set<Coord>> have(m);
    auto has = [&](std::size_t pos, int x, int y) { return have[pos].count({x, y}) > 0; };

    for (int y = 0; y < cap; ++y) {
        bool row_empty = true;
        for (int x = 0; x < cap; ++x) {
            std::vector<char> seed(m, 0);
            for (std::size_t a = 0; a < m; ++a) {
                bool ok = false;
                if (x == 0 && y == 0) {
                    ok = f.origin[a];
                } else if (x == 0) {
                    ok = std::any_of(f.vpred[a].begin(), f.vpred[a].end(),
                                     [&](std::size_t b) { return has(b, 0, y - 1); });
                } else if (y == 0) {
                    ok = std::any_of(f.hpred[a].begin(), f.hpred[a].end(),
                                     [&](std::size_t b) { return has(b, x - 1, 0); });
                } else {
                    ok = std::any_of(f.hpred[a].begin(), f.hpred[a].end(),
                                     [&](std::size_t b) { return has(b, x - 1, y); }) &&
                         std::any_of(f.vpred[a].begin(), f.vpred[a].end(),
                                     [&](std::size_t b) { return has(b, x, y - 1); });
                }
                seed[a] = ok;
            }
            bool any = false;
            for (std::size_t a = 0; a < m; ++a) {
                bool in = false;
                for (std::size_t b = 0; b < m && !in; ++b)
                    in = seed[b] && meets[a][b];
                if (in) {
                    have[a].insert({x, y});
                    any = true;
                }
            }
            if (!any)
                break; // later x in this row need a predecessor here
            row_empty = false;
        }
        if (row_empty)
            break;
    }
    for (std::size_t a = 0; a < m; ++a) {
        out.coords[a].assign(have[a].begin(), have[a].end());
        std::sort(out.coords[a].begin(), out.coords[a].end(),
                  [](const Coord& u, const Coord& v) { return antilex_less(u, v); });
        if (out.coords[a].size() > 1)
            out.non_member = true;
    }
    return out;
}

std::map<PointId, std::set<Coord>> WeakCoordinateMap::point_coords(const TaggedStructure& t) const {
    std::map<PointId, std::set<Coord>> out;
    for (std::size_t a = 0; a < intervals.size(); ++a) {
        const auto& iv = t.intervals()[intervals[a]];
        for (const auto& c : coords[a]) {
            out[iv.bottom].insert(c);
            out[iv.top].insert(c);
        }
    }
    return out;
}

std::vector<TilePoint> tile_roles(const TaggedStructure& t, PointId x, int sup) {
    std::vector<TilePoint> out;
    for (std::size_t c : t.copies_at(x)) {
        if (t.role(c) != Role::T || t.superscript(c) != sup)
            continue;
        if (t.copies()[c].root == x)
            out.push_back({1, x});
        if (t.highest(c) == x)
            out.push_back({2, t.copies()[c].root});
    }
    std::sort(out.begin(), out.end(), [](const TilePoint& a, const TilePoint& b) {
        return std::tie(a.type, a.tile_root) < std::tie(b.type, b.tile_root);
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const TilePoint& a, const TilePoint& b) {
                              return a.type == b.type && a.tile_root == b.tile_root;
                          }),
              out.end());
    return out;
}

} // namespace tilejep
