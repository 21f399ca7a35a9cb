#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "random.hpp"
#include "tilejep/multiperm.hpp"

using namespace tilejep;
using tilejep::testing::random_multiperm;
using tilejep::testing::random_subset;

namespace {
MultiPerm rows(std::vector<RankRow> r, std::size_t dims = 0) { return MultiPerm::from_rank_rows(r, dims); }
std::vector<PointId> all_points(const MultiPerm& s) {
    std::vector<PointId> v(s.size());
    for (PointId p = 0; p < s.size(); ++p)
        v[p] = p;
    return v;
}
} // namespace

TEST_CASE("from_rank_rows validates") {
    CHECK(rows({{0, 0, 0}}).size() == 1);
    auto two = rows({{0, 1, 1}, {1, 0, 0}});
    CHECK(two.size() == 2);
    CHECK(two.less(1, 1, 0));
    CHECK(two.less(2, 1, 0));
    CHECK_THROWS_AS(rows({{0, 0}, {1, 2, 2}, {2, 1}}, 2), Error);
    try {
        rows({{0, 0}, {1, 2, 2}, {2, 1}}, 2);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ArityMismatch);
    }
    try {
        rows({{0, 0, 0}, {1, 0, 1}});
        FAIL("expected NonBijectiveOrder");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonBijectiveOrder);
    }
    CHECK(rows({}).size() == 0);
}

TEST_CASE("rows given out of order are relisted by order 0") {
    auto s = rows({{1, 0, 0}, {0, 1, 1}});
    CHECK(s == rows({{0, 1, 1}, {1, 0, 0}}));
}

TEST_CASE("induced substructure") {
    auto two = rows({{0, 1, 1}, {1, 0, 0}});
    std::vector<PointId> zero{0};
    CHECK(induced_substructure(two, zero) == rows({{0, 0, 0}}));
    CHECK(induced_substructure(two, {}).size() == 0);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        auto s = random_multiperm(rng, rng() % 9, 3);
        CHECK(canonical_equal(induced_substructure(s, all_points(s)), s));
        auto sub = random_subset(rng, s.size());
        auto got = induced_substructure(s, sub);
        auto want = tilejep::testing::sorted_ranks(s, sub);
        REQUIRE(got.size() == sub.size());
        // Subset is increasing in order 0, so got's point i is sub[i].
        for (std::size_t i = 0; i < sub.size(); ++i)
            for (std::size_t k = 0; k < 3; ++k)
                CHECK(got.rank(static_cast<PointId>(i), k) == want[i][k]);

        // Nested restriction agrees with direct restriction.
        std::vector<PointId> inner_local;
        std::vector<PointId> inner_global;
        for (std::size_t i = 0; i < sub.size(); ++i)
            if (rng() % 2) {
                inner_local.push_back(static_cast<PointId>(i));
                inner_global.push_back(sub[i]);
            }
        CHECK(induced_substructure(got, inner_local) == induced_substructure(s, inner_global));
    }
}

TEST_CASE("canonical_equal") {
    auto one = rows({{0, 0, 0}});
    auto two = rows({{0, 1, 1}, {1, 0, 0}});
    CHECK(canonical_equal(two, two));
    CHECK_FALSE(canonical_equal(one, two));
    CHECK_FALSE(canonical_equal(rows({{0, 0}}, 2), one));
}

TEST_CASE("reduct and expand") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = rng() % 11;
        auto s = random_multiperm(rng, n, 3);
        std::vector<std::size_t> all{0, 1, 2};
        CHECK(reduct(s, all) == s);

        std::vector<Rank> col1(n), rev(n);
        for (PointId p = 0; p < n; ++p) {
            col1[p] = s.rank(p, 0);
            rev[p] = static_cast<Rank>(n - 1 - s.rank(p, 0));
        }
        std::vector<std::vector<Rank>> extra{col1};
        auto e = expand(s, extra);
        CHECK(e.dims() == 4);
        for (PointId p = 0; p < n; ++p)
            CHECK(e.rank(p, 3) == e.rank(p, 0));
        CHECK(reduct(e, all) == s);

        std::vector<std::vector<Rank>> extra_rev{rev};
        auto r = expand(s, extra_rev);
        for (PointId p = 0; p < n; ++p)
            CHECK(r.rank(p, 3) == n - 1 - r.rank(p, 0));
    }
    auto s4 = random_multiperm(rng, 6, 4);
    std::vector<std::size_t> last3{1, 2, 3};
    auto r3 = reduct(s4, last3);
    CHECK(r3.dims() == 3);
    std::vector<std::size_t> bad{5};
    CHECK_THROWS_AS(reduct(s4, bad), Error);
    std::vector<std::vector<Rank>> dup{{0, 0, 1, 2, 3, 4}};
    CHECK_THROWS_AS(expand(s4, dup), Error);
}

TEST_CASE("mperm round trip") {
    const std::string two = R"({"dims":3,"points":[[0,1,1],[1,0,0]]})";
    auto s = parse_mperm(two);
    CHECK(s == rows({{0, 1, 1}, {1, 0, 0}}));
    CHECK(serialize_mperm(s) == two);
    auto spaced = parse_mperm("{ \"dims\": 3, \"points\": [ [0,1,1], [1,0,0] ] }");
    CHECK(serialize_mperm(spaced) == two);

    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        auto r = random_multiperm(rng, rng() % 8, 3);
        CHECK(parse_mperm(serialize_mperm(r)) == r);
    }
}

TEST_CASE("malformed mperm is a parse error") {
    for (const char* bad : {R"({"dims":3,"points":[[0,1]]})", R"({"dims":"3","points":[]})",
                            R"({"dims":3,"points":[[0,0,0],[1,1,x]]})", R"({"dims":3})",
                            R"({"dims":3,"points":[]} trailing)", R"({"dims":3,"points":[],"extra":1})"}) {
        CAPTURE(bad);
        try {
            parse_mperm(bad);
            FAIL("accepted malformed input");
        } catch (const Error& e) {
            CHECK((e.code() == ErrorCode::ParseError || e.code() == ErrorCode::ArityMismatch));
        }
    }
    try {
        parse_mperm(R"({"dims":3,"points":[[0,0,0],[1,1,x]]})");
    } catch (const ParseError& e) {
        CHECK(e.offset() > 20);
    }
}
