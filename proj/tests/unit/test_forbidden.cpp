#include <random>

#include "doctest.h"
#include "random.hpp"
#include "tilejep/canonical.hpp"
#include "tilejep/forbidden.hpp"

using namespace tilejep;

namespace {

ClassDescriptor small_rules(Variant v = Variant::P) {
    StringTilingProblem p;
    p.D = 2;
    p.h_forbidden = {{1, 2, 1}};
    p.v_forbidden = {{1, 2}};
    return ClassDescriptor::make(v, p);
}

std::vector<std::size_t> path_pool(const GadgetSet& g) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i].role == Role::P || g[i].role == Role::O)
            out.push_back(i);
    return out;
}

std::vector<std::size_t> all_elements(const GadgetSet& g) {
    std::vector<std::size_t> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        out[i] = i;
    return out;
}

MultiPerm perturb(std::mt19937_64& rng, const MultiPerm& s, int swaps) {
    std::vector<std::vector<Rank>> cols(3, std::vector<Rank>(s.size()));
    for (std::size_t k = 0; k < 3; ++k)
        for (PointId p = 0; p < s.size(); ++p)
            cols[k][p] = s.rank(p, k);
    for (int i = 0; i < swaps; ++i) {
        const std::size_t k = rng() % 3;
        const Rank r = static_cast<Rank>(rng() % (s.size() - 1));
        std::swap(cols[k][s.at_rank(k, r)], cols[k][s.at_rank(k, r + 1)]);
    }
    return MultiPerm::from_columns(std::move(cols));
}

bool has_constraint(const Verdict& v, const std::string& id) {
    for (const auto& x : v.violations)
        if (x.constraint == id)
            return true;
    return false;
}

} // namespace

TEST_CASE("unsupported constraint ids are refused") {
    auto c = small_rules();
    CHECK_THROWS_AS(enumerate_forbidden(c, {"7"}), Error);
    CHECK_THROWS_AS(enumerate_forbidden(c, {"6*"}), Error);
    CHECK_THROWS_AS(enumerate_forbidden(small_rules(Variant::Q), {"6"}), Error);
}

TEST_CASE("avoidance of nothing is membership") {
    std::mt19937_64 rng(3);
    auto s = testing::random_multiperm(rng, 9);
    CHECK(membership_by_avoidance(s, PatternSet{}).member);
    PatternSet one;
    one.insert(MultiPerm::from_columns({{0}, {0}, {0}}));
    auto v = membership_by_avoidance(s, one);
    CHECK_FALSE(v.member);
    REQUIRE(v.violations.size() == 1);
    CHECK(v.violations[0].constraint == "forbidden");
}

TEST_CASE("budget is enforced") {
    auto c = small_rules();
    ForbiddenOptions o;
    o.max_candidates = 1000;
    CHECK_THROWS_AS(enumerate_forbidden(c, {"2"}, o), Error);
}

TEST_CASE("constraint 2 patterns are two disjoint copies") {
    auto c = small_rules();
    ForbiddenOptions o;
    o.size_cap = 13;
    CHECK(enumerate_forbidden(c, {"2"}, o).empty());
    std::size_t seen = 0;
    o.size_cap = 15;
    for_each_forbidden(c, {"2"}, o, [&](const MultiPerm& s, const std::string& id) {
        CHECK(id == "2");
        CHECK(s.size() == 14);
        CHECK(has_constraint(check_membership(s, c), "2"));
        return ++seen < 300;
    });
    CHECK(seen == 300);
}

TEST_CASE("constraint 2 dual checker agrees on random assemblies") {
    auto c = small_rules();
    const auto forbidden = enumerate_forbidden(c, {"2"});
    CHECK(forbidden.size() == static_cast<std::size_t>(count_forbidden_candidates(c, {"2"})));
    std::mt19937_64 rng(11);
    CheckOptions only2;
    only2.only = {"2"};
    int negatives = 0;
    for (int t = 0; t < 200; ++t) {
        auto s = testing::random_gadget_assembly(rng, *c.gadgets, path_pool(*c.gadgets), 2 + t % 2, 2);
        const bool semantic = check_membership(s, c, only2).member;
        CHECK(membership_by_avoidance(s, forbidden).member == semantic);
        negatives += semantic ? 0 : 1;
    }
    CHECK(negatives >= 20);
}

TEST_CASE("constraint 6 unions start well below twice the gadget size") {
    auto c = small_rules();
    ForbiddenOptions o;
    o.size_cap = 7;
    CHECK(enumerate_forbidden(c, {"6"}, o).empty());
    o.size_cap = 8;
    const auto at8 = enumerate_forbidden(c, {"6"}, o);
    CHECK_FALSE(at8.empty());
    at8.for_each([&](const MultiPerm& s) {
        CHECK(s.size() == 8);
        CHECK(has_constraint(check_membership(s, c), "6"));
        return true;
    });
}

TEST_CASE("constraint 6 dual checker agrees below its natural cap") {
    // Unions of two copies reach 13 points; only small ones can be
    // materialized, so the hosts are small unions with a few order swaps.
    auto c = small_rules();
    ForbiddenOptions o;
    o.size_cap = 10;
    const auto forbidden = enumerate_forbidden(c, {"6"}, o);
    std::vector<MultiPerm> seeds;
    o.size_cap = 9;
    for_each_forbidden(c, {"6"}, o, [&](const MultiPerm& s, const std::string&) {
        seeds.push_back(s);
        return true;
    });
    std::mt19937_64 rng(5);
    CheckOptions only6;
    only6.only = {"6"};
    int negatives = 0, positives = 0;
    for (int t = 0; t < 200; ++t) {
        const auto s = perturb(rng, seeds[rng() % seeds.size()], static_cast<int>(rng() % 4));
        const bool semantic = check_membership(s, c, only6).member;
        CHECK(membership_by_avoidance(s, forbidden).member == semantic);
        (semantic ? positives : negatives) += 1;
    }
    CHECK(negatives > 0);
    CHECK(positives > 0);
}

TEST_CASE("constraints 2 and 6 at full cap exceed the budget") {
    auto c = small_rules();
    ForbiddenOptions o;
    o.max_candidates = 5'000'000; // constraint 2 alone fits
    CHECK_NOTHROW(enumerate_forbidden(c, {"2"}, o));
    CHECK_THROWS_AS(enumerate_forbidden(c, {"2", "6"}, o), Error);
}

TEST_CASE("constraints 1 and 3 stream checker violations") {
    auto c = small_rules();
    for (const std::string id : {"1", "3"}) {
        int seen = 0;
        for_each_forbidden(c, {id}, {}, [&](const MultiPerm& s, const std::string& got) {
            CHECK(got == id);
            CHECK(has_constraint(check_membership(s, c), id));
            return ++seen < 100;
        });
        CHECK(seen == 100);
    }
}

TEST_CASE("constraint 6* on the doubled class") {
    auto c = small_rules(Variant::Q);
    ForbiddenOptions o;
    o.size_cap = 8;
    int seen = 0;
    for_each_forbidden(c, {"6*"}, o, [&](const MultiPerm& s, const std::string&) {
        CHECK(has_constraint(check_membership(s, c), "6*"));
        ++seen;
        return true;
    });
    CHECK(seen > 0);
}
