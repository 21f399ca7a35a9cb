#include <random>

#include "doctest.h"
#include "random.hpp"
#include "tilejep/io.hpp"

using namespace tilejep;
using io::json;

TEST_CASE("mperm json round trip") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
        auto s = testing::random_multiperm(rng, t % 7);
        if (s.empty())
            continue;
        CHECK(io::mperm_from_json(io::to_json(s)) == s);
    }
}

TEST_CASE("problem and tiling documents") {
    auto p = io::string_problem_from_json(
        json::parse(R"({"kind":"string","D":2,"h_forbidden":[[1,2,1],[2,2,1]],"v_forbidden":[[1,2]]})"));
    CHECK(p.D == 2);
    CHECK(p.h_forbidden.size() == 2);
    CHECK(io::string_problem_from_json(io::to_json(p)) == p);
    CHECK_THROWS_AS(io::string_problem_from_json(json::parse(R"({"D":1,"h_forbidden":[[1,3,1]],"v_forbidden":[]})")),
                    Error);
    CHECK_THROWS_AS(io::string_problem_from_json(json::parse(R"({"D":1,"h_forbidden":[],"v_forbidden":[],"x":1})")),
                    ParseError);

    auto w = io::wang_problem_from_json(json::parse(R"({"kind":"wang","t":4,"h_forbidden":[[1,2]],"v_forbidden":[]})"));
    CHECK(w.t == 4);
    CHECK(io::wang_problem_from_json(io::to_json(w)) == w);

    auto per = io::tiling_from_json(json::parse(R"({"kind":"periodic","px":2,"py":1,"table":[[1,2]]})"));
    CHECK(per.is_periodic());
    CHECK(per.at(3, 5) == 2);
    CHECK(io::tiling_from_json(io::to_json(per)) == per);
    auto win = io::tiling_from_json(json::parse(R"({"kind":"window","w":2,"h":2,"rows":[[1,1],[2,1]]})"));
    CHECK(win.at(0, 1) == 2);
    CHECK(io::tiling_from_json(io::to_json(win)) == win);
    CHECK_THROWS_AS(io::tiling_from_json(json::parse(R"({"kind":"window","w":3,"h":1,"rows":[[1,1]]})")), Error);
}

TEST_CASE("class descriptor rebuilds its family") {
    auto j = json::parse(R"({"variant":"Q","gadget_size":7,"gadget_seed":0,
        "problem":{"kind":"string","D":1,"h_forbidden":[],"v_forbidden":[]}})");
    auto c = io::class_from_json(j);
    CHECK(c.variant == Variant::Q);
    CHECK(c.gadgets->size() == 20);
    CHECK(io::to_json(c) == j);
}

TEST_CASE("verdict json") {
    CHECK(io::to_json(Verdict{}).dump() == R"({"member":true})");
    Verdict v;
    v.member = false;
    v.violations.push_back({"2", {0, 3}, "x"});
    auto j = io::to_json(v);
    CHECK(j["violations"][0]["constraint"] == "2");
    CHECK_FALSE(j.contains("truncated"));
}
