#include "tilejep/checker.hpp"

#include <algorithm>
#include <map>

namespace tilejep {

std::pair<int, int> constraint_order(const std::string& id) {
    const bool star = !id.empty() && id.back() == '*';
    return {std::stoi(star ? id.substr(0, id.size() - 1) : id), star ? 1 : 0};
}

std::vector<std::string> applicable_constraints(Variant v) {
    if (v == Variant::P)
        return {"1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12"};
    return {"1", "2", "3", "4", "5", "6*", "7", "8", "9", "10", "11", "12", "13"};
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct Witness {
    std::set<std::size_t> copies;
    std::set<PointId> points;

    Witness& add(std::size_t copy) {
        if (copy != kNone)
            copies.insert(copy);
        return *this;
    }
    Witness& add(const Witness& w) {
        copies.insert(w.copies.begin(), w.copies.end());
        points.insert(w.points.begin(), w.points.end());
        return *this;
    }
};

// One tiling fact: grid point g tiled by a tile of `type` whose tile set is rooted at `tile_root`.
struct TiledFact {
    PointId g;
    int type;
    PointId tile_root;
    std::size_t grid_copy;
    std::size_t tile_copy;
};

class Checker {
public:
    Checker(const TaggedStructure& t, const ClassDescriptor& c, const CheckOptions& o) : t_(t), c_(c), o_(o) {}

    Verdict run() {
        if (c_.gadgets->variant() != c_.variant)
            throw Error(ErrorCode::VariantMismatch, "descriptor variant differs from its gadget family");
        for (const auto& p : pairings(c_.variant)) {
            for (int s : {p.grid, p.tile}) {
                if (on("1"))
                    c1(s);
                if (on("2"))
                    c2(s);
                if (on("3"))
                    c3(s);
            }
            const auto& f = t_.facts(p);
            if (on("4"))
                c4(p);
            if (on("5"))
                c5(f);
            if (on("7"))
                c7(f);
            if (on("8"))
                c8(f);
            if (on("9"))
                c9(f);
            if (on("10"))
                c10(f);
            if (on("11"))
                c11(f);
            if (on("12"))
                c12(p);
        }
        if (c_.variant == Variant::P && on("6"))
            c6("6");
        if (c_.variant == Variant::Q) {
            if (on("6*"))
                c6("6*");
            if (on("13"))
                c13();
        }
        std::sort(out_.violations.begin(), out_.violations.end(), [](const Violation& a, const Violation& b) {
            const auto ka = constraint_order(a.constraint), kb = constraint_order(b.constraint);
            return ka != kb ? ka < kb : a.witness < b.witness;
        });
        out_.member = out_.violations.empty() && !out_.truncated;
        return out_;
    }

private:
    bool on(const std::string& id) const { return o_.only.empty() || o_.only.count(id) > 0; }

    void report(const std::string& id, const Witness& w, std::string detail) {
        std::set<PointId> pts = w.points;
        for (std::size_t c : w.copies)
            pts.insert(t_.copies()[c].points.begin(), t_.copies()[c].points.end());
        Violation v{id, std::vector<PointId>(pts.begin(), pts.end()), std::move(detail)};
        auto key = std::make_pair(id, v.witness);
        if (!seen_.insert(key).second)
            return;
        if (++count_[id] > o_.max_per_constraint) {
            out_.truncated = true;
            return;
        }
        out_.violations.push_back(std::move(v));
    }

    static std::string pt(PointId p) { return std::to_string(p); }

    // --- supports -------------------------------------------------------

    std::size_t copy_with(PointId root, int sup, std::initializer_list<Role> roles) const {
        for (std::size_t c : t_.copies_at(root))
            if (t_.copies()[c].root == root && t_.superscript(c) == sup &&
                std::find(roles.begin(), roles.end(), t_.role(c)) != roles.end())
                return c;
        return kNone;
    }
    std::size_t path_copy(PointId p, int sup) const { return copy_with(p, sup, {Role::P, Role::O}); }
    std::size_t origin_copy(PointId p, int sup) const { return copy_with(p, sup, {Role::O}); }

    std::size_t capturing_copy(PointId root, int sup, std::initializer_list<Role> roles, PointId x) const {
        for (std::size_t c : t_.copies_at(root))
            if (t_.copies()[c].root == root && t_.superscript(c) == sup &&
                std::find(roles.begin(), roles.end(), t_.role(c)) != roles.end() && captures(t_, c, x))
                return c;
        return kNone;
    }

    Witness succ_support(PointId p, PointId next, int sup) const {
        Witness w;
        w.add(capturing_copy(p, sup, {Role::P, Role::O}, next)).add(path_copy(next, sup));
        return w;
    }

    Witness coord_support(PointId g, const CoordPair& xy, int sup) const {
        Witness w;
        w.add(capturing_copy(g, sup, {Role::X}, xy.first));
        w.add(capturing_copy(g, sup, {Role::Y}, xy.second));
        w.add(path_copy(xy.first, sup)).add(path_copy(xy.second, sup));
        return w;
    }

    const SpecialInterval& iv(const PairingFacts& f, std::size_t a) const { return t_.intervals()[f.intervals[a]]; }
    PointId root_of(const PairingFacts& f, std::size_t a) const { return t_.copies()[iv(f, a).owner].root; }
    int sup_of(const PairingFacts& f, std::size_t a) const { return iv(f, a).superscript; }
    const std::set<CoordPair>& coords(const PairingFacts& f, std::size_t a) const {
        return t_.coordinates(root_of(f, a), sup_of(f, a));
    }

    Witness owner(const PairingFacts& f, std::size_t a) const {
        Witness w;
        w.add(iv(f, a).owner);
        return w;
    }

    // Witness that interval b is a horizontal (vertical) predecessor of interval a.
    Witness link_support(const PairingFacts& f, std::size_t b, std::size_t a, bool horizontal) const {
        const int s = sup_of(f, a);
        for (const auto& xy : coords(f, b))
            for (const auto& xy2 : coords(f, a)) {
                const bool ok = horizontal ? (xy2.second == xy.second && t_.path_successors(xy.first, s).count(xy2.first))
                                           : (xy2.first == xy.first && t_.path_successors(xy.second, s).count(xy2.second));
                if (!ok)
                    continue;
                Witness w = owner(f, a);
                w.add(owner(f, b));
                w.add(coord_support(root_of(f, b), xy, s)).add(coord_support(root_of(f, a), xy2, s));
                w.add(horizontal ? succ_support(xy.first, xy2.first, s) : succ_support(xy.second, xy2.second, s));
                return w;
            }
        return {};
    }

    // Witness that interval a is on the x-axis (axis 0), y-axis (axis 1), or an origin (axis 2).
    Witness axis_support(const PairingFacts& f, std::size_t a, int axis) const {
        const int s = sup_of(f, a);
        for (const auto& xy : coords(f, a)) {
            const PointId o = axis == 0 ? xy.second : xy.first;
            if (axis == 2 && xy.first != xy.second)
                continue;
            if (!t_.in_O(o, s))
                continue;
            Witness w = owner(f, a);
            w.add(coord_support(root_of(f, a), xy, s)).add(origin_copy(o, s));
            return w;
        }
        return {};
    }

    std::string ivname(const PairingFacts& f, std::size_t a) const {
        const auto& i = iv(f, a);
        return std::string(i.kind == IntervalKind::Connector ? "connector" : "tile set") + " rooted at " +
               pt(root_of(f, a));
    }

    // --- constraints ----------------------------------------------------

    void c1(int s) {
        const auto n = static_cast<PointId>(t_.base().size());
        for (PointId p = 0; p < n; ++p) {
            const auto& succ = t_.path_successors(p, s);
            if (succ.size() >= 2) {
                auto it = succ.begin();
                const PointId a = *it++, b = *it;
                Witness w = succ_support(p, a, s);
                w.add(succ_support(p, b, s));
                report("1", w, "path point " + pt(p) + " has successors " + pt(a) + " and " + pt(b));
            }
            const auto& pred = t_.path_predecessors(p, s);
            if (pred.size() >= 2) {
                auto it = pred.begin();
                const PointId a = *it++, b = *it;
                Witness w = succ_support(a, p, s);
                w.add(succ_support(b, p, s));
                report("1", w, "path point " + pt(p) + " has predecessors " + pt(a) + " and " + pt(b));
            }
        }
    }

    void c2(int s) {
        const auto n = static_cast<PointId>(t_.base().size());
        for (PointId p = 0; p < n; ++p) {
            if (!t_.in_O(p, s))
                continue;
            for (PointId q : t_.path_predecessors(p, s)) {
                Witness w = succ_support(q, p, s);
                w.add(origin_copy(p, s));
                report("2", w, "path origin " + pt(p) + " has predecessor " + pt(q));
            }
        }
    }

    void c3(int s) {
        std::map<std::pair<PointId, Role>, std::size_t> first;
        for (std::size_t c = 0; c < t_.copies().size(); ++c) {
            const Role r = t_.role(c);
            if (t_.superscript(c) != s || (r != Role::X && r != Role::Y))
                continue;
            const PointId root = t_.copies()[c].root;
            auto [it, fresh] = first.insert({{root, r}, c});
            if (!fresh) {
                Witness w;
                w.add(it->second).add(c);
                report("3", w, std::string("two E_") + to_string(r) + " copies rooted at " + pt(root));
            }
            std::vector<PointId> path_pts;
            for (PointId x : t_.captured(c))
                if (t_.in_P(x, s))
                    path_pts.push_back(x);
            if (path_pts.size() >= 2) {
                Witness w;
                w.add(c).add(path_copy(path_pts[0], s)).add(path_copy(path_pts[1], s));
                report("3", w, std::string("E_") + to_string(r) + " copy rooted at " + pt(root) +
                                   " captures path points " + pt(path_pts[0]) + " and " + pt(path_pts[1]));
            }
        }
    }

    void c4(const Pairing& p) {
        const auto& s = t_.base();
        std::vector<std::pair<Rank, std::size_t>> path_max, conn_min;
        for (std::size_t c = 0; c < t_.copies().size(); ++c) {
            const int sup = t_.superscript(c);
            const Role r = t_.role(c);
            Rank lo = static_cast<Rank>(s.size()), hi = 0;
            for (PointId q : t_.copies()[c].points) {
                lo = std::min(lo, s.rank(q, 1));
                hi = std::max(hi, s.rank(q, 1));
            }
            if ((r == Role::P || r == Role::O) && (sup == p.grid || sup == p.tile))
                path_max.push_back({hi, c});
            if ((r == Role::G && sup == p.grid) || (r == Role::T && sup == p.tile))
                conn_min.push_back({lo, c});
        }
        for (const auto& [hi, pc] : path_max)
            for (const auto& [lo, cc] : conn_min)
                if (hi >= lo) {
                    Witness w;
                    w.add(pc).add(cc);
                    report("4", w, "path copy rooted at " + pt(t_.copies()[pc].root) + " reaches above copy rooted at " +
                                       pt(t_.copies()[cc].root));
                }
    }

    void c5(const PairingFacts& f) {
        const std::size_t m = f.intervals.size();
        for (std::size_t a = 0; a < m; ++a)
            for (bool horizontal : {true, false})
                for (std::size_t b : horizontal ? f.hsucc[a] : f.vsucc[a])
                    if (t_.relation(f.intervals[a], f.intervals[b]) != IntervalRelation::Below)
                        report("5", link_support(f, a, b, horizontal),
                               ivname(f, b) + " succeeds " + ivname(f, a) + " but is not above it");
        for (std::size_t a2 = 0; a2 < m; ++a2) {
            if (!f.on_y_axis[a2])
                continue;
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t hp : f.hpred[a]) {
                    if (t_.relation(f.intervals[hp], f.intervals[a2]) != IntervalRelation::Below)
                        continue;
                    if (t_.relation(f.intervals[a], f.intervals[a2]) == IntervalRelation::Below)
                        continue;
                    Witness w = link_support(f, hp, a, true);
                    w.add(axis_support(f, a2, 1));
                    report("5", w, ivname(f, a) + " is not below y-axis " + ivname(f, a2));
                }
        }
    }

    void c6(const std::string& id) {
        const auto n = static_cast<PointId>(t_.base().size());
        for (PointId p = 0; p < n; ++p) {
            const auto& cs = t_.copies_at(p);
            for (std::size_t i = 0; i < cs.size(); ++i)
                for (std::size_t j = i + 1; j < cs.size(); ++j) {
                    const int a = t_.superscript(cs[i]), b = t_.superscript(cs[j]);
                    if (a == b)
                        continue;
                    Witness w;
                    w.add(cs[i]).add(cs[j]);
                    report(id, w, "point " + pt(p) + " lies in copies with superscripts " + std::to_string(a) +
                                      " and " + std::to_string(b));
                }
        }
    }

    void c7(const PairingFacts& f) {
        const std::size_t m = f.intervals.size();
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b) {
                if (!f.origin[a] || !f.origin[b])
                    continue;
                if (!t_.intersect(f.intervals[a], f.intervals[b])) {
                    Witness w = axis_support(f, a, 2);
                    w.add(axis_support(f, b, 2));
                    report("7", w, "origin intervals " + ivname(f, a) + " and " + ivname(f, b) + " do not intersect");
                }
            }
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) {
                if (!f.origin[a] || !f.origin[b] || iv(f, a).kind != IntervalKind::Connector ||
                    iv(f, b).kind != IntervalKind::TileSet)
                    continue;
                if (t_.copy_before(iv(f, a).owner, iv(f, b).owner, 0) &&
                    !t_.copy_before(iv(f, a).owner, iv(f, b).owner, 2)) {
                    Witness w = axis_support(f, a, 2);
                    w.add(axis_support(f, b, 2));
                    report("7", w, "grid origin " + pt(root_of(f, a)) + " precedes tile origin " + pt(root_of(f, b)) +
                                       " in order 0 but not in order 2");
                }
            }
    }

    // Premise cases shared by constraints 8 and 9. Calls visit(case, witness, hp pair, vp pair).
    struct PredPair {
        std::size_t mine = kNone, theirs = kNone;
    };

    bool meets(const PairingFacts& f, std::size_t a, std::size_t b) const {
        return t_.intersect(f.intervals[a], f.intervals[b]);
    }

    void c8(const PairingFacts& f) {
        const std::size_t m = f.intervals.size();
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t a2 = 0; a2 < m; ++a2) {
                if (a == a2)
                    continue;
                auto conclude = [&](const Witness& premise, const std::string& which) {
                    if (!meets(f, a, a2)) {
                        Witness w = premise;
                        w.add(owner(f, a)).add(owner(f, a2));
                        report("8", w, "case " + which + ": predecessors intersect but " + ivname(f, a) + " and " +
                                           ivname(f, a2) + " do not");
                    }
                    if (t_.copy_before(iv(f, a).owner, iv(f, a2).owner, 0) &&
                        !t_.copy_before(iv(f, a).owner, iv(f, a2).owner, 2)) {
                        Witness w = premise;
                        w.add(owner(f, a)).add(owner(f, a2));
                        report("8", w, "case " + which + ": " + ivname(f, a) + " precedes " + ivname(f, a2) +
                                           " in order 0 but not in order 2");
                    }
                };
                // (a) both predecessors on each side.
                if (!f.hpred[a].empty() && !f.vpred[a].empty() && !f.hpred[a2].empty() && !f.vpred[a2].empty()) {
                    auto h = meeting_pair(f, f.hpred[a], f.hpred[a2]);
                    auto v = meeting_pair(f, f.vpred[a], f.vpred[a2]);
                    if (h.mine != kNone && v.mine != kNone) {
                        Witness w = link_support(f, h.mine, a, true);
                        w.add(link_support(f, h.theirs, a2, true));
                        w.add(link_support(f, v.mine, a, false)).add(link_support(f, v.theirs, a2, false));
                        conclude(w, "a");
                    }
                }
                // (b) x-axis, horizontal predecessors.
                if (f.on_x_axis[a] && !f.hpred[a].empty() && !f.hpred[a2].empty()) {
                    auto h = meeting_pair(f, f.hpred[a], f.hpred[a2]);
                    if (h.mine != kNone) {
                        Witness w = link_support(f, h.mine, a, true);
                        w.add(link_support(f, h.theirs, a2, true)).add(axis_support(f, a, 0));
                        conclude(w, "b");
                    }
                }
                // (c) y-axis, vertical predecessors.
                if (f.on_y_axis[a] && !f.vpred[a].empty() && !f.vpred[a2].empty()) {
                    auto v = meeting_pair(f, f.vpred[a], f.vpred[a2]);
                    if (v.mine != kNone) {
                        Witness w = link_support(f, v.mine, a, false);
                        w.add(link_support(f, v.theirs, a2, false)).add(axis_support(f, a, 1));
                        conclude(w, "c");
                    }
                }
            }
    }

    PredPair meeting_pair(const PairingFacts& f, const std::vector<std::size_t>& mine,
                          const std::vector<std::size_t>& theirs) const {
        for (std::size_t x : mine)
            for (std::size_t y : theirs)
                if (meets(f, x, y))
                    return {x, y};
        return {};
    }

    void c9(const PairingFacts& f) {
        const std::size_t m = f.intervals.size();
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t a2 = 0; a2 < m; ++a2) {
                if (!meets(f, a, a2))
                    continue;
                auto require = [&](const std::vector<std::size_t>& mine, const std::vector<std::size_t>& theirs,
                                   bool horizontal, const Witness& extra, const std::string& which) {
                    for (std::size_t x : mine)
                        for (std::size_t y : theirs)
                            if (!meets(f, x, y)) {
                                Witness w = extra;
                                w.add(link_support(f, x, a, horizontal)).add(link_support(f, y, a2, horizontal));
                                report("9", w, "case " + which + ": " + ivname(f, a) + " meets " + ivname(f, a2) +
                                                   " but their " + (horizontal ? "horizontal" : "vertical") +
                                                   " predecessors " + ivname(f, x) + " and " + ivname(f, y) +
                                                   " do not");
                            }
                };
                if (!f.hpred[a].empty() && !f.vpred[a].empty() && !f.hpred[a2].empty() && !f.vpred[a2].empty()) {
                    Witness both;
                    both.add(link_support(f, f.vpred[a].front(), a, false));
                    both.add(link_support(f, f.vpred[a2].front(), a2, false));
                    require(f.hpred[a], f.hpred[a2], true, both, "a");
                    Witness both_h;
                    both_h.add(link_support(f, f.hpred[a].front(), a, true));
                    both_h.add(link_support(f, f.hpred[a2].front(), a2, true));
                    require(f.vpred[a], f.vpred[a2], false, both_h, "a");
                }
                if (f.on_x_axis[a])
                    require(f.hpred[a], f.hpred[a2], true, axis_support(f, a, 0), "b");
                if (f.on_y_axis[a])
                    require(f.vpred[a], f.vpred[a2], false, axis_support(f, a, 1), "c");
            }
    }

    void c10(const PairingFacts& f) {
        const std::size_t m = f.intervals.size();
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b) {
                if (meets(f, a, b))
                    continue;
                for (std::size_t c = 0; c < m; ++c)
                    if (meets(f, a, c) && meets(f, b, c)) {
                        Witness w = owner(f, a);
                        w.add(owner(f, b)).add(owner(f, c));
                        report("10", w, ivname(f, a) + " and " + ivname(f, b) + " both meet " + ivname(f, c) +
                                            " but not each other");
                        break;
                    }
            }
    }

    void c11(const PairingFacts& f) {
        const std::size_t m = f.intervals.size();
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t a2 = 0; a2 < m; ++a2) {
                if (!meets(f, a, a2))
                    continue;
                const int s2 = sup_of(f, a2);
                for (int axis : {0, 1}) {
                    if (!(axis == 0 ? f.on_x_axis[a] : f.on_y_axis[a]))
                        continue;
                    for (const auto& xy : coords(f, a2)) {
                        const PointId c = axis == 0 ? xy.second : xy.first;
                        const std::size_t pc = copy_with(c, s2, {Role::P});
                        if (pc == kNone)
                            continue;
                        Witness w = axis_support(f, a, axis);
                        w.add(owner(f, a2)).add(coord_support(root_of(f, a2), xy, s2)).add(pc);
                        report("11", w, ivname(f, a) + " is on the " + (axis == 0 ? "x" : "y") + "-axis and meets " +
                                            ivname(f, a2) + ", which is off it");
                    }
                }
            }
    }

    // Point-level horizontal/vertical successors among points rooting `role` copies of superscript s.
    std::map<PointId, std::vector<PointId>> point_successors(int s, bool horizontal) const {
        std::map<CoordPair, std::vector<PointId>> at;
        const auto n = static_cast<PointId>(t_.base().size());
        const bool grid = is_grid_superscript(s);
        for (PointId p = 0; p < n; ++p) {
            if (!(grid ? t_.in_G(p, s) : t_.in_T1(p, s)))
                continue;
            for (const auto& xy : t_.coordinates(p, s))
                at[xy].push_back(p);
        }
        std::map<PointId, std::vector<PointId>> out;
        for (const auto& [xy, pts] : at)
            for (PointId p : pts) {
                const PointId moving = horizontal ? xy.first : xy.second;
                for (PointId nxt : t_.path_successors(moving, s)) {
                    CoordPair to = horizontal ? CoordPair{nxt, xy.second} : CoordPair{xy.first, nxt};
                    auto it = at.find(to);
                    if (it == at.end())
                        continue;
                    for (PointId q : it->second)
                        out[p].push_back(q);
                }
            }
        for (auto& [p, v] : out) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
        return out;
    }

    // Support for one successor link p -> q.
    Witness point_link(PointId p, PointId q, int s, bool horizontal) const {
        for (const auto& xy : t_.coordinates(p, s))
            for (const auto& xy2 : t_.coordinates(q, s)) {
                const bool ok = horizontal ? (xy2.second == xy.second && t_.path_successors(xy.first, s).count(xy2.first))
                                           : (xy2.first == xy.first && t_.path_successors(xy.second, s).count(xy2.second));
                if (!ok)
                    continue;
                Witness w = coord_support(p, xy, s);
                w.add(coord_support(q, xy2, s));
                w.add(horizontal ? succ_support(xy.first, xy2.first, s) : succ_support(xy.second, xy2.second, s));
                w.add(copy_with(p, s, {is_grid_superscript(s) ? Role::G : Role::T}));
                w.add(copy_with(q, s, {is_grid_superscript(s) ? Role::G : Role::T}));
                return w;
            }
        return {};
    }

    // All d-step successor chains from `start`, one chain per endpoint.
    std::map<PointId, std::vector<PointId>> chains(const std::map<PointId, std::vector<PointId>>& succ, PointId start,
                                                   int d) const {
        std::map<PointId, std::vector<PointId>> frontier{{start, {start}}};
        for (int step = 0; step < d; ++step) {
            std::map<PointId, std::vector<PointId>> next;
            for (const auto& [p, chain] : frontier) {
                auto it = succ.find(p);
                if (it == succ.end())
                    continue;
                for (PointId q : it->second)
                    if (!next.count(q)) {
                        auto c = chain;
                        c.push_back(q);
                        next.emplace(q, std::move(c));
                    }
            }
            frontier = std::move(next);
        }
        return frontier;
    }

    Witness chain_support(const std::vector<PointId>& chain, int s, bool horizontal) const {
        Witness w;
        for (std::size_t i = 0; i + 1 < chain.size(); ++i)
            w.add(point_link(chain[i], chain[i + 1], s, horizontal));
        return w;
    }

    void c12(const Pairing& p) {
        const auto& prob = c_.problem;
        if (prob.h_forbidden.empty() && prob.v_forbidden.empty())
            return;
        std::vector<TiledFact> facts;
        for (std::size_t c = 0; c < t_.copies().size(); ++c) {
            if (t_.role(c) != Role::G || t_.superscript(c) != p.grid)
                continue;
            for (PointId x : t_.captured(c))
                for (const auto& tp : tile_roles(t_, x, p.tile)) {
                    std::size_t tc = kNone;
                    for (std::size_t d : t_.copies_at(x))
                        if (t_.role(d) == Role::T && t_.superscript(d) == p.tile && t_.copies()[d].root == tp.tile_root &&
                            (tp.type == 1 ? t_.copies()[d].root == x : t_.highest(d) == x)) {
                            tc = d;
                            break;
                        }
                    facts.push_back({t_.copies()[c].root, tp.type, tp.tile_root, c, tc});
                }
        }
        if (facts.empty())
            return;

        auto check = [&](bool horizontal, int i, int j, int d) {
            const auto gs = point_successors(p.grid, horizontal);
            const auto ts = point_successors(p.tile, horizontal);
            for (const auto& fa : facts) {
                if (fa.type != i)
                    continue;
                const auto gch = chains(gs, fa.g, d);
                if (gch.empty())
                    continue;
                const auto tch = chains(ts, fa.tile_root, d);
                for (const auto& fb : facts) {
                    if (fb.type != j)
                        continue;
                    auto git = gch.find(fb.g);
                    auto tit = tch.find(fb.tile_root);
                    if (git == gch.end() || tit == tch.end())
                        continue;
                    Witness w;
                    w.add(fa.grid_copy).add(fa.tile_copy).add(fb.grid_copy).add(fb.tile_copy);
                    w.add(chain_support(git->second, p.grid, horizontal));
                    w.add(chain_support(tit->second, p.tile, horizontal));
                    report("12", w,
                           "grid point " + pt(fa.g) + " tiled by type " + std::to_string(i) + " and its " +
                               (horizontal ? std::to_string(d) + "-fold horizontal" : std::string("vertical")) +
                               " successor " + pt(fb.g) + " tiled by type " + std::to_string(j));
                }
            }
        };
        for (const auto& [i, j, d] : prob.h_forbidden)
            check(true, i, j, d);
        for (const auto& [i, j] : prob.v_forbidden)
            check(false, i, j, 1);
    }

    void c13() {
        const auto& s = t_.base();
        std::vector<std::pair<Rank, std::size_t>> low_max, high_min;
        for (std::size_t c = 0; c < t_.copies().size(); ++c) {
            Rank lo = static_cast<Rank>(s.size()), hi = 0;
            for (PointId q : t_.copies()[c].points) {
                lo = std::min(lo, s.rank(q, 1));
                hi = std::max(hi, s.rank(q, 1));
            }
            if (t_.superscript(c) <= 1)
                low_max.push_back({hi, c});
            else
                high_min.push_back({lo, c});
        }
        for (const auto& [hi, a] : low_max)
            for (const auto& [lo, b] : high_min)
                if (hi >= lo) {
                    Witness w;
                    w.add(a).add(b);
                    report("13", w, "copy rooted at " + pt(t_.copies()[a].root) + " (superscript " +
                                        std::to_string(t_.superscript(a)) + ") reaches above copy rooted at " +
                                        pt(t_.copies()[b].root) + " (superscript " + std::to_string(t_.superscript(b)) +
                                        ")");
                }
    }

    const TaggedStructure& t_;
    const ClassDescriptor& c_;
    const CheckOptions& o_;
    Verdict out_;
    std::set<std::pair<std::string, std::vector<PointId>>> seen_;
    std::map<std::string, std::size_t> count_;
};

} // namespace

Verdict check_membership(const TaggedStructure& t, const ClassDescriptor& c, const CheckOptions& opts) {
    return Checker(t, c, opts).run();
}

Verdict check_membership(const MultiPerm& s, const ClassDescriptor& c, const CheckOptions& opts) {
    if (s.dims() != 3)
        throw Error(ErrorCode::DimsMismatch, "class members have exactly three orders");
    TaggedStructure t(s, c.gadgets, opts.detection);
    return check_membership(t, c, opts);
}

} // namespace tilejep
