#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "random.hpp"
#include "tilejep/canonical.hpp"

using namespace tilejep;

namespace {

const ClassDescriptor& desc_p() {
    static const ClassDescriptor c = ClassDescriptor::make(Variant::P, StringTilingProblem{});
    return c;
}
const ClassDescriptor& desc_q() {
    static const ClassDescriptor c = ClassDescriptor::make(Variant::Q, StringTilingProblem{});
    return c;
}

using CopyKey = std::pair<std::size_t, std::vector<PointId>>;

std::set<CopyKey> ledger_keys(const CanonicalBuild& b, const GadgetSet& g) {
    std::set<CopyKey> out;
    for (const auto& e : b.ledger)
        out.insert({g.index(e.role, e.superscript), e.points});
    return out;
}

std::set<CopyKey> detected_keys(const TaggedStructure& t) {
    std::set<CopyKey> out;
    for (const auto& c : t.copies())
        out.insert({c.element, c.points});
    return out;
}

const LedgerEntry& find_entry(const CanonicalBuild& b, Role r, Coord gi) {
    for (const auto& e : b.ledger)
        if (e.role == r && e.grid == gi)
            return e;
    throw std::runtime_error("missing ledger entry");
}

PointId path_point(const CanonicalBuild& b, int k) {
    for (const auto& e : b.ledger)
        if (e.path_index == k)
            return e.root;
    throw std::runtime_error("missing path point");
}

} // namespace

TEST_CASE("canonical builds contain exactly the placed copies") {
    for (int n = 1; n <= 3; ++n) {
        CAPTURE(n);
        for (auto* build : {&canonical_A, &canonical_B}) {
            auto b = (*build)(n, desc_p(), {});
            CHECK(b.ledger.size() == static_cast<std::size_t>(3 * n * n + n));
            CHECK(b.structure.size() == static_cast<std::size_t>(n * n * 19 + n * 7));
            auto t = detect_copies(b.structure, desc_p().gadgets);
            CHECK(detected_keys(t) == ledger_keys(b, *desc_p().gadgets));
        }
        for (auto* build : {&canonical_Q_A, &canonical_Q_B}) {
            auto b = (*build)(n, desc_q());
            auto t = detect_copies(b.structure, desc_q().gadgets);
            CHECK(detected_keys(t) == ledger_keys(b, *desc_q().gadgets));
        }
    }
}

TEST_CASE("a single element as the host has one copy of itself") {
    const auto& g = *desc_q().gadgets;
    for (std::size_t e = 0; e < g.size(); ++e) {
        auto t = detect_copies(g[e].shape, desc_q().gadgets);
        REQUIRE(t.copies().size() == 1);
        CHECK(t.copies()[0].element == e);
    }
    std::mt19937_64 rng(3);
    // Increasing in both order 0 and order 2: no opposed subset, no copies.
    std::vector<std::vector<Rank>> cols(3, std::vector<Rank>(12));
    for (Rank i = 0; i < 12; ++i)
        cols[0][i] = cols[2][i] = i;
    cols[1] = {3, 1, 4, 0, 5, 9, 2, 6, 8, 7, 11, 10};
    CHECK(detect_copies(MultiPerm::from_columns(cols), desc_q().gadgets).copies().empty());
}

TEST_CASE("n = 1 grid point is a grid-origin") {
    auto b = canonical_A(1, desc_p());
    auto t = detect_copies(b.structure, desc_p().gadgets);
    const PointId g = find_entry(b, Role::G, {0, 0}).root;
    const PointId p0 = path_point(b, 0);
    auto c = coordinatization(t, g);
    REQUIRE(c);
    CHECK(c->first == p0);
    CHECK(c->second == p0);
    auto oa = origins_and_axes(t);
    CHECK(oa.grid_origins.count(g));
    CHECK(oa.on_x_axis.count(g));
    CHECK(oa.on_y_axis.count(g));
    CHECK(oa.path_origins == std::set<PointId>{p0});
}

TEST_CASE("captures and coordinates in canonical_A") {
    const int n = 3;
    auto b = canonical_A(n, desc_p());
    auto t = detect_copies(b.structure, desc_p().gadgets);
    auto copy_index = [&](const LedgerEntry& e) {
        for (std::size_t c = 0; c < t.copies().size(); ++c)
            if (t.copies()[c].points == e.points)
                return c;
        throw std::runtime_error("not detected");
    };
    auto oa = origins_and_axes(t);
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
            const auto& ex = find_entry(b, Role::X, {x, y});
            const auto& ey = find_entry(b, Role::Y, {x, y});
            CHECK(captures(t, copy_index(ex), path_point(b, x)));
            CHECK(captures(t, copy_index(ey), path_point(b, y)));
            CHECK_FALSE(captures(t, copy_index(ex), ex.root));
            const PointId g = ex.root;
            auto c = coordinatization(t, g);
            REQUIRE(c);
            CHECK(c->first == path_point(b, x));
            CHECK(c->second == path_point(b, y));
            CHECK(oa.on_x_axis.count(g) == (y == 0 ? 1u : 0u));
            CHECK(oa.on_y_axis.count(g) == (x == 0 ? 1u : 0u));
            CHECK(oa.grid_origins.count(g) == (x == 0 && y == 0 ? 1u : 0u));
        }
    // Path successors follow the path.
    for (int k = 0; k + 1 < n; ++k)
        CHECK(t.path_successors(path_point(b, k), 0) == std::set<PointId>{path_point(b, k + 1)});
    CHECK(t.path_successors(path_point(b, n - 1), 0).empty());

    // Each copy captures only its intended path point.
    for (std::size_t c = 0; c < t.copies().size(); ++c) {
        if (t.role(c) == Role::G) {
            CHECK(t.captured(c).empty());
            continue;
        }
        CHECK(t.captured(c).size() <= 1);
    }
}

TEST_CASE("tile-set copies never capture") {
    auto b = canonical_B(1, desc_p());
    auto t = detect_copies(b.structure, desc_p().gadgets);
    for (std::size_t c = 0; c < t.copies().size(); ++c)
        if (t.role(c) == Role::T)
            CHECK_THROWS_AS(captures(t, c, 0), Error);
}

TEST_CASE("successor tables on the grid") {
    const int n = 3;
    for (auto* build : {&canonical_A, &canonical_B}) {
        auto b = (*build)(n, desc_p(), {});
        auto t = detect_copies(b.structure, desc_p().gadgets);
        const Pairing pr{0, 1};
        const auto& f = t.facts(pr);
        const Role conn = build == &canonical_A ? Role::G : Role::T;
        auto pos_of = [&](Coord gi) {
            const auto& e = find_entry(b, conn, gi);
            for (std::size_t a = 0; a < f.intervals.size(); ++a)
                if (t.copies()[t.intervals()[f.intervals[a]].owner].points == e.points)
                    return a;
            throw std::runtime_error("interval not found");
        };
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                const auto a = pos_of({x, y});
                std::vector<std::size_t> want_h, want_v;
                if (x + 1 < n)
                    want_h.push_back(pos_of({x + 1, y}));
                if (y + 1 < n)
                    want_v.push_back(pos_of({x, y + 1}));
                CHECK(f.hsucc[a] == want_h);
                CHECK(f.vsucc[a] == want_v);
                CHECK((f.origin[a] != 0) == (x == 0 && y == 0));
            }
    }
}

TEST_CASE("weak coordinates equal grid indices and the saturation oracle") {
    for (int n = 1; n <= 3; ++n)
        for (auto* build : {&canonical_A, &canonical_B}) {
            auto b = (*build)(n, desc_p(), {});
            auto t = detect_copies(b.structure, desc_p().gadgets);
            const Pairing pr{0, 1};
            auto w = weak_coordinates(t, pr);
            auto oracle = tilejep::testing::saturate_weak_coordinates(t, pr);
            CHECK_FALSE(w.non_member);
            REQUIRE(w.intervals.size() == static_cast<std::size_t>(n * n));
            for (std::size_t a = 0; a < w.intervals.size(); ++a) {
                const auto& iv = t.intervals()[w.intervals[a]];
                const auto& owner = t.copies()[iv.owner];
                Coord want{-1, -1};
                for (const auto& e : b.ledger)
                    if (e.points == owner.points)
                        want = *e.grid;
                REQUIRE(w.unique(a));
                CHECK(*w.unique(a) == want);
                CHECK(std::set<Coord>(w.coords[a].begin(), w.coords[a].end()) == oracle[a]);
            }
            // Intervals are pairwise disjoint and increase antilexicographically.
            for (std::size_t a = 0; a < w.intervals.size(); ++a)
                for (std::size_t c = 0; c < w.intervals.size(); ++c) {
                    if (a == c)
                        continue;
                    const auto rel = t.relation(w.intervals[a], w.intervals[c]);
                    CHECK(rel != IntervalRelation::Intersect);
                    CHECK((rel == IntervalRelation::Below) == antilex_less(*w.unique(a), *w.unique(c)));
                }
            // Tile sets: root is tile 1 and lies below the tile-2 point.
            for (const auto& iv : t.intervals())
                if (iv.kind == IntervalKind::TileSet) {
                    CHECK(b.structure.less(1, iv.bottom, iv.top));
                    CHECK(t.in_T1(iv.bottom, 1));
                    CHECK(t.in_T2(iv.top, 1));
                }
        }
}

TEST_CASE("interval trichotomy on random tagged structures") {
    std::mt19937_64 rng(12);
    auto b = canonical_A(2, desc_p());
    auto t = detect_copies(b.structure, desc_p().gadgets);
    for (std::size_t i = 0; i < t.intervals().size(); ++i)
        CHECK(t.relation(i, i) == IntervalRelation::Intersect);
    // Random intervals over random structures.
    for (int trial = 0; trial < 300; ++trial) {
        auto s = tilejep::testing::random_multiperm(rng, 2 + rng() % 10);
        const auto n = static_cast<PointId>(s.size());
        auto make = [&]() {
            PointId a = rng() % n, c = rng() % n;
            while (c == a)
                c = rng() % n;
            if (s.less(1, c, a))
                std::swap(a, c);
            return SpecialInterval{IntervalKind::Connector, 0, a, c, 0};
        };
        auto i = make(), j = make();
        const auto r = interval_relation(s, i, j);
        const bool below = s.rank(i.top, 1) <= s.rank(j.bottom, 1);
        const bool above = s.rank(j.top, 1) <= s.rank(i.bottom, 1);
        const bool meet = s.less(1, i.bottom, j.top) && s.less(1, j.bottom, i.top);
        CHECK(int(below) + int(above) + int(meet) == 1);
        CHECK((r == IntervalRelation::Below) == below);
        CHECK((r == IntervalRelation::Above) == above);
        CHECK((r == IntervalRelation::Intersect) == meet);
        CHECK(interval_relation(s, j, i) ==
              (r == IntervalRelation::Below ? IntervalRelation::Above
                                            : r == IntervalRelation::Above ? IntervalRelation::Below
                                                                           : IntervalRelation::Intersect));
    }
}

TEST_CASE("doubled models") {
    auto qa = canonical_Q_A(1, desc_q());
    auto ta = detect_copies(qa.structure, desc_q().gadgets);
    const auto half = static_cast<PointId>(qa.structure.size() / 2);
    for (const auto& c : ta.copies()) {
        const bool low = std::all_of(c.points.begin(), c.points.end(), [&](PointId p) { return p < half; });
        const bool high = std::all_of(c.points.begin(), c.points.end(), [&](PointId p) { return p >= half; });
        CHECK((low || high));
        const int sup = (*desc_q().gadgets)[c.element].superscript;
        CHECK(low == (sup == 0));
    }
    auto qb = canonical_Q_B(2, desc_q());
    auto tb = detect_copies(qb.structure, desc_q().gadgets);
    Rank max_b1 = 0, min_a2 = static_cast<Rank>(qb.structure.size());
    for (const auto& c : tb.copies()) {
        const int sup = (*desc_q().gadgets)[c.element].superscript;
        for (PointId p : c.points) {
            if (sup == 1)
                max_b1 = std::max(max_b1, qb.structure.rank(p, 1));
            else
                min_a2 = std::min(min_a2, qb.structure.rank(p, 1));
        }
    }
    CHECK(max_b1 < min_a2);
    try {
        canonical_Q_A(1, desc_p());
        FAIL("expected VariantMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::VariantMismatch);
    }
}

TEST_CASE("defect injection adds a predecessor to the path origin") {
    auto b = canonical_A(3, desc_p(), CanonicalOptions{true});
    auto t = detect_copies(b.structure, desc_p().gadgets);
    CHECK(detected_keys(t) == ledger_keys(b, *desc_p().gadgets));
    const PointId p0 = path_point(b, 0);
    CHECK(t.path_predecessors(p0, 0).size() == 1);
}
