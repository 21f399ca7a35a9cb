#include <algorithm>
#include <random>

#include "doctest.h"
#include "random.hpp"
#include "tilejep/canonical.hpp"
#include "tilejep/checker.hpp"

using namespace tilejep;

namespace {

StringTilingProblem sample_rules() {
    StringTilingProblem p;
    p.D = 2;
    p.h_forbidden = {{1, 2, 1}, {2, 2, 2}};
    p.v_forbidden = {{1, 2}};
    return p;
}

StringTilingProblem random_rules(std::mt19937_64& rng) {
    StringTilingProblem p;
    p.D = 1 + static_cast<int>(rng() % 3);
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b) {
            for (int d = 1; d <= p.D; ++d)
                if (rng() % 3 == 0)
                    p.h_forbidden.insert({a, b, d});
            if (rng() % 3 == 0)
                p.v_forbidden.insert({a, b});
        }
    return p;
}

// Swaps a few order-adjacent pairs in random orders.
MultiPerm perturb(std::mt19937_64& rng, const MultiPerm& s, int swaps) {
    std::vector<std::vector<Rank>> cols(3, std::vector<Rank>(s.size()));
    for (std::size_t k = 0; k < 3; ++k)
        for (PointId p = 0; p < s.size(); ++p)
            cols[k][p] = s.rank(p, k);
    for (int i = 0; i < swaps; ++i) {
        const std::size_t k = rng() % 3;
        const Rank r = static_cast<Rank>(rng() % (s.size() - 1));
        const PointId a = s.at_rank(k, r), b = s.at_rank(k, r + 1);
        std::swap(cols[k][a], cols[k][b]);
    }
    return MultiPerm::from_columns(std::move(cols));
}

bool has_constraint(const Verdict& v, const std::string& id) {
    return std::any_of(v.violations.begin(), v.violations.end(),
                       [&](const Violation& x) { return x.constraint == id; });
}

std::vector<CanonicalBuild> member_builds(const ClassDescriptor& c, int max_n) {
    std::vector<CanonicalBuild> out;
    for (int n = 1; n <= max_n; ++n) {
        if (c.variant == Variant::P) {
            out.push_back(canonical_A(n, c));
            out.push_back(canonical_B(n, c));
        } else {
            out.push_back(canonical_Q_A(n, c));
            out.push_back(canonical_Q_B(n, c));
        }
    }
    return out;
}

} // namespace

TEST_CASE("constraint ids order numerically") {
    CHECK(constraint_order("2") < constraint_order("10"));
    CHECK(constraint_order("6") < constraint_order("6*"));
    CHECK(constraint_order("6*") < constraint_order("7"));
    CHECK(applicable_constraints(Variant::P).size() == 12);
    const auto q = applicable_constraints(Variant::Q);
    CHECK(std::find(q.begin(), q.end(), "6*") != q.end());
    CHECK(std::find(q.begin(), q.end(), "6") == q.end());
    CHECK(q.back() == "13");
}

TEST_CASE("structures without copies are members") {
    const auto c = ClassDescriptor::make(Variant::P, sample_rules());
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        auto v = check_membership(testing::random_multiperm(rng, rng() % 6), c);
        CHECK(v.member);
    }
    CHECK(check_membership(MultiPerm::from_columns({{}, {}, {}}), c).member);
}

TEST_CASE("canonical models are members") {
    std::mt19937_64 rng(8);
    for (Variant var : {Variant::P, Variant::Q})
        for (int trial = 0; trial < 4; ++trial) {
            const auto rules = trial == 0 ? sample_rules() : random_rules(rng);
            const auto c = ClassDescriptor::make(var, rules);
            for (const auto& b : member_builds(c, 3)) {
                auto v = check_membership(b.structure, c);
                CAPTURE(b.n);
                CHECK(v.member);
                if (!v.violations.empty())
                    MESSAGE(v.violations.front().constraint << ": " << v.violations.front().detail);
            }
        }
}

TEST_CASE("an extra copy capturing the path origin breaks constraint 2") {
    const auto c = ClassDescriptor::make(Variant::P, sample_rules());
    auto b = canonical_A(2, c, CanonicalOptions{true});
    auto v = check_membership(b.structure, c);
    CHECK_FALSE(v.member);
    REQUIRE(has_constraint(v, "2"));
    for (const auto& x : v.violations)
        CHECK(std::is_sorted(x.witness.begin(), x.witness.end()));
    CHECK(std::is_sorted(v.violations.begin(), v.violations.end(), [](const Violation& a, const Violation& b) {
        return constraint_order(a.constraint) < constraint_order(b.constraint);
    }));
    // The restriction keeps only the requested constraint.
    CheckOptions only2;
    only2.only = {"2"};
    auto v2 = check_membership(b.structure, c, only2);
    CHECK_FALSE(v2.member);
    for (const auto& x : v2.violations)
        CHECK(x.constraint == "2");
}

TEST_CASE("membership is hereditary on substructures of members") {
    std::mt19937_64 rng(21);
    const auto cp = ClassDescriptor::make(Variant::P, sample_rules());
    const auto cq = ClassDescriptor::make(Variant::Q, sample_rules());
    std::vector<std::pair<const ClassDescriptor*, MultiPerm>> hosts;
    for (const auto* c : {&cp, &cq})
        for (const auto& b : member_builds(*c, 2))
            hosts.push_back({c, b.structure});
    int checked = 0;
    for (int trial = 0; trial < 240; ++trial) {
        const auto& [c, s] = hosts[trial % hosts.size()];
        auto subset = testing::random_subset(rng, s.size());
        // Bias toward large subsets so copies survive.
        std::vector<PointId> keep;
        for (PointId p = 0; p < s.size(); ++p)
            if (rng() % 8 != 0)
                keep.push_back(p);
        const auto& pick = trial % 2 ? subset : keep;
        auto v = check_membership(induced_substructure(s, pick), *c);
        CHECK(v.member);
        if (!v.member)
            MESSAGE(v.violations.front().constraint << ": " << v.violations.front().detail);
        ++checked;
    }
    CHECK(checked >= 200);
}

TEST_CASE("each witness still violates its constraint") {
    std::mt19937_64 rng(34);
    const auto c = ClassDescriptor::make(Variant::P, sample_rules());
    const auto cq = ClassDescriptor::make(Variant::Q, sample_rules());
    std::set<std::string> seen;
    int witnesses = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const auto& desc = trial % 3 == 2 ? cq : c;
        const int n = 1 + trial % 2;
        MultiPerm host = desc.variant == Variant::P
                             ? (trial % 2 ? canonical_B(n, desc) : canonical_A(n, desc, {trial % 5 == 0})).structure
                             : canonical_Q_A(n, desc).structure;
        host = perturb(rng, host, 1 + static_cast<int>(rng() % 6));
        CheckOptions opts;
        opts.max_per_constraint = 4;
        auto v = check_membership(host, desc, opts);
        for (const auto& x : v.violations) {
            seen.insert(x.constraint);
            CheckOptions one;
            one.only = {x.constraint};
            auto w = check_membership(induced_substructure(host, x.witness), desc, one);
            CAPTURE(x.constraint);
            CAPTURE(x.detail);
            CHECK_FALSE(w.member);
            ++witnesses;
        }
    }
    CHECK(witnesses > 0);
    CHECK(seen.size() >= 4);
}

TEST_CASE("the reporting cap marks truncation") {
    const auto c = ClassDescriptor::make(Variant::P, sample_rules());
    auto b = canonical_A(3, c, CanonicalOptions{true});
    std::mt19937_64 rng(2);
    auto host = perturb(rng, b.structure, 30);
    CheckOptions opts;
    opts.max_per_constraint = 1;
    auto v = check_membership(host, c, opts);
    std::map<std::string, int> per;
    for (const auto& x : v.violations)
        ++per[x.constraint];
    for (const auto& [id, k] : per)
        CHECK(k == 1);
    CHECK_FALSE(v.member);
}
