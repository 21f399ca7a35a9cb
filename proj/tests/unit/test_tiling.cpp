#include <random>

#include "doctest.h"
#include "tilejep/tiling.hpp"

using namespace tilejep;

namespace {

// Tile 2 may not touch any tile horizontally or vertically.
WangProblem isolated_two() {
    WangProblem w;
    w.t = 2;
    w.h_forbidden = {{1, 2}, {2, 1}, {2, 2}};
    w.v_forbidden = {{1, 2}, {2, 1}, {2, 2}};
    return w;
}

StringTilingProblem isolated_two_string() {
    StringTilingProblem p;
    p.D = 1;
    p.h_forbidden = {{1, 2, 1}, {2, 1, 1}, {2, 2, 1}};
    p.v_forbidden = {{1, 2}, {2, 1}, {2, 2}};
    return p;
}

StringTilingProblem no_vertical_extension() {
    StringTilingProblem p;
    p.v_forbidden = {{1, 1}, {2, 2}, {1, 2}, {2, 1}};
    return p;
}

WangProblem random_wang(std::mt19937_64& rng, int t) {
    WangProblem w;
    w.t = t;
    std::bernoulli_distribution coin(0.25);
    for (int i = 1; i <= t; ++i)
        for (int j = 1; j <= t; ++j) {
            if (coin(rng))
                w.h_forbidden.insert({i, j});
            if (coin(rng))
                w.v_forbidden.insert({i, j});
        }
    return w;
}

} // namespace

TEST_CASE("check_tiling on the isolated-two problem") {
    auto p = isolated_two_string();
    CHECK(check_tiling(p, Tiling::window(4, 4)).valid);
    auto t = Tiling::window(4, 4);
    t.set(1, 2, 2);
    auto v = check_tiling(p, t);
    CHECK_FALSE(v.valid);
    REQUIRE(v.violations.size() == 4);
    bool saw_left = false;
    for (const auto& viol : v.violations)
        if (!viol.vertical && viol.x == 0 && viol.y == 2 && viol.x2 == 1)
            saw_left = true;
    CHECK(saw_left);
    CHECK(check_tiling(StringTilingProblem{}, t).valid);

    auto bad = Tiling::window(2, 2, 3);
    CHECK_THROWS_AS(check_tiling(p, bad), Error);
}

TEST_CASE("valid windows are hereditary") {
    std::mt19937_64 rng(4);
    auto w = random_wang(rng, 3);
    for (int trial = 0; trial < 50; ++trial) {
        if (auto sol = solve_window(w, 4, 4)) {
            CHECK(check_tiling(w, *sol).valid);
            CHECK(check_tiling(w, *sol, 2, 3).valid);
        }
        w = random_wang(rng, 3);
    }
}

TEST_CASE("solve_periodic") {
    auto s = solve_periodic(isolated_two_string(), 3);
    REQUIRE(s);
    CHECK(s->width == 1);
    CHECK(s->height == 1);
    CHECK(s->cells == std::vector<std::vector<int>>{{1}});

    auto free = solve_periodic(StringTilingProblem{}, 3);
    REQUIRE(free);
    CHECK(free->cells == std::vector<std::vector<int>>{{1}});

    CHECK_FALSE(solve_periodic(no_vertical_extension(), 4));

    // Alternating columns need period 2.
    StringTilingProblem alt;
    alt.h_forbidden = {{1, 1, 1}, {2, 2, 1}};
    auto a = solve_periodic(alt, 3);
    REQUIRE(a);
    CHECK(a->width == 2);
    CHECK(check_tiling(alt, *a, 2 * a->width, 2 * a->height).valid);

    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 60; ++trial) {
        auto w = random_wang(rng, 1 + rng() % 3);
        if (auto sol = solve_periodic(w, 3))
            CHECK(check_tiling(w, *sol, 2 * sol->width, 2 * sol->height).valid);
    }
}

TEST_CASE("solve_window mirrors the periodic cases") {
    auto s = solve_window(isolated_two_string(), 4, 4);
    REQUIRE(s);
    CHECK(s->cells == Tiling::window(4, 4).cells);
    auto free = solve_window(StringTilingProblem{}, 4, 4);
    REQUIRE(free);
    CHECK(free->cells == Tiling::window(4, 4).cells);
    CHECK_FALSE(solve_window(no_vertical_extension(), 4, 4));
}

TEST_CASE("surjectivity flag") {
    auto t = Tiling::window(2, 1);
    CHECK_FALSE(is_surjective(t, 2));
    t.set(1, 0, 2);
    CHECK(is_surjective(t, 2));
}

TEST_CASE("encoder with one tile and no rules") {
    WangProblem w;
    auto e = encode_wang_as_string(w);
    REQUIRE(e.codec.codewords.size() == 1);
    auto sol = solve_periodic(e.problem, 3);
    REQUIRE(sol);
    auto decoded = decode_string_tiling(e.codec, *sol);
    CHECK(decoded.cells == std::vector<std::vector<int>>{{1}});
    // Any tile 2 with a right neighbor breaks the string rules.
    auto enc = encode_tiling(e.codec, Tiling::window(3, 2));
    CHECK(check_tiling(e.problem, enc).valid);
    enc.set(0, 1, 2);
    CHECK_FALSE(check_tiling(e.problem, enc).valid);
    auto solved = solve_window(e.problem, 4, 4);
    REQUIRE(solved);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x + 1 < 4; ++x)
            CHECK(solved->at(x, y) == 1);
}

TEST_CASE("encoder round trip on the isolated-two problem") {
    auto w = isolated_two();
    auto e = encode_wang_as_string(w);
    auto s = solve_periodic_codewords(e, 2);
    REQUIRE(s);
    auto decoded = decode_string_tiling(e.codec, *s);
    CHECK(check_tiling(w, decoded).valid);
    CHECK(check_tiling(w, decoded, 4, 4).valid);
}

TEST_CASE("decode errors") {
    auto e = encode_wang_as_string(isolated_two());
    const int B = e.codec.block_width;
    CHECK_THROWS_AS(decode_string_tiling(e.codec, Tiling::window(B + 1, 3)), Error);
    try {
        decode_string_tiling(e.codec, Tiling::window(B + 1, 3));
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::MisalignedBlock);
    }
    try {
        decode_string_tiling(e.codec, Tiling::window(B, 3));
        FAIL("all-1 block is not a codeword");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::UnknownCodeword);
    }
}

TEST_CASE("encoder agrees with Wang rules on every 3x3 window") {
    std::mt19937_64 rng(31337);
    int trials = 0;
    for (; trials < 120; ++trials) {
        const int t = 1 + trials % 3;
        auto w = random_wang(rng, t);
        auto e = encode_wang_as_string(w);
        int n = 1;
        for (int i = 0; i < 9; ++i)
            n *= t;
        for (int code = 0; code < n; ++code) {
            auto wt = Tiling::window(3, 3);
            int c = code;
            for (int i = 0; i < 9; ++i) {
                wt.set(i % 3, i / 3, 1 + c % t);
                c /= t;
            }
            auto st = encode_tiling(e.codec, wt);
            const bool wang_ok = check_tiling(w, wt).valid;
            const bool string_ok = check_tiling(e.problem, st).valid;
            if (wang_ok != string_ok) {
                FAIL_CHECK("encoding disagrees, t=" << t << " code=" << code);
                break;
            }
            if (code % 97 == 0)
                CHECK(decode_string_tiling(e.codec, st) == wt);
        }
    }
    CHECK(trials >= 100);
}

TEST_CASE("encoder agrees on sampled 4x4 windows") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        const int t = 1 + trial % 4;
        auto w = random_wang(rng, t);
        auto e = encode_wang_as_string(w);
        for (int sample = 0; sample < 300; ++sample) {
            auto wt = Tiling::window(4, 4);
            for (int y = 0; y < 4; ++y)
                for (int x = 0; x < 4; ++x)
                    wt.set(x, y, 1 + static_cast<int>(rng() % t));
            if (sample == 0)
                if (auto sol = solve_window(w, 4, 4))
                    wt = *sol;
            auto st = encode_tiling(e.codec, wt);
            CHECK(check_tiling(w, wt).valid == check_tiling(e.problem, st).valid);
        }
    }
}
