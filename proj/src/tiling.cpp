#include "tilejep/tiling.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace tilejep {

namespace {

// Common view of both problem kinds, as dense lookup tables.
struct Rules {
    int tiles = 2;
    int D = 1;
    std::vector<int> active;       // distances carrying at least one rule
    std::vector<char> h_table;     // [d][a][b]
    std::vector<char> v_table;     // [a][b]

    void init(int tile_count, int max_d) {
        tiles = tile_count;
        D = max_d;
        h_table.assign((D + 1) * (tiles + 1) * (tiles + 1), 0);
        v_table.assign((tiles + 1) * (tiles + 1), 0);
    }
    void forbid_h(int a, int b, int d) {
        if (std::find(active.begin(), active.end(), d) == active.end())
            active.push_back(d);
        h_table[(d * (tiles + 1) + a) * (tiles + 1) + b] = 1;
    }
    void forbid_v(int a, int b) { v_table[a * (tiles + 1) + b] = 1; }
    bool h_bad(int a, int b, int d) const { return h_table[(d * (tiles + 1) + a) * (tiles + 1) + b] != 0; }
    bool v_bad(int below, int above) const { return v_table[below * (tiles + 1) + above] != 0; }
};

Rules rules_of(const StringTilingProblem& p) {
    p.validate();
    Rules r;
    r.init(2, p.D);
    for (const auto& [a, b, d] : p.h_forbidden)
        r.forbid_h(a, b, d);
    for (const auto& [a, b] : p.v_forbidden)
        r.forbid_v(a, b);
    std::sort(r.active.begin(), r.active.end());
    return r;
}

Rules rules_of(const WangProblem& p) {
    p.validate();
    Rules r;
    r.init(p.t, 1);
    for (const auto& [a, b] : p.h_forbidden)
        r.forbid_h(a, b, 1);
    for (const auto& [a, b] : p.v_forbidden)
        r.forbid_v(a, b);
    return r;
}

int floor_mod(int a, int m) { return ((a % m) + m) % m; }

void check_cells(const Tiling& t, int tiles) {
    for (const auto& row : t.cells)
        for (int v : row)
            if (v < 1 || v > tiles)
                throw Error(ErrorCode::BadTileId, "tile id " + std::to_string(v) + " outside 1.." + std::to_string(tiles));
}

TilingVerdict check_window(const Rules& r, const Tiling& t, int w, int h) {
    TilingVerdict out;
    auto bad = [&](TilingViolation v) {
        out.valid = false;
        out.violations.push_back(v);
    };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const int a = t.at(x, y);
            for (int d : r.active) {
                if (x + d >= w)
                    break;
                if (r.h_bad(a, t.at(x + d, y), d))
                    bad({x, y, x + d, y, false, d});
            }
            if (y + 1 < h && r.v_bad(a, t.at(x, y + 1)))
                bad({x, y, x, y + 1, true, 1});
        }
    return out;
}

TilingVerdict check_torus(const Rules& r, const Tiling& t) {
    TilingVerdict out;
    for (int y = 0; y < t.height; ++y)
        for (int x = 0; x < t.width; ++x) {
            const int a = t.at(x, y);
            for (int d : r.active)
                if (r.h_bad(a, t.at(x + d, y), d)) {
                    out.valid = false;
                    out.violations.push_back({x, y, x + d, y, false, d});
                }
            if (r.v_bad(a, t.at(x, y + 1))) {
                out.valid = false;
                out.violations.push_back({x, y, x, y + 1, true, 1});
            }
        }
    return out;
}

TilingVerdict check_any(const Rules& r, const Tiling& t) {
    check_cells(t, r.tiles);
    return t.is_periodic() ? check_torus(r, t) : check_window(r, t, t.width, t.height);
}

TilingVerdict check_any(const Rules& r, const Tiling& t, int w, int h) {
    check_cells(t, r.tiles);
    if (!t.is_periodic() && (w > t.width || h > t.height))
        throw Error(ErrorCode::InvalidTiling, "window exceeds the tiling");
    return check_window(r, t, w, h);
}

// Backtracking on a px x py torus, cells in row-major order.
bool fill_torus(const Rules& r, Tiling& t, std::vector<char>& assigned, int cell) {
    const int px = t.width, py = t.height;
    if (cell == px * py)
        return true;
    const int x = cell % px, y = cell / px;
    for (int v = 1; v <= r.tiles; ++v) {
        t.set(x, y, v);
        assigned[cell] = 1;
        bool ok = true;
        for (std::size_t k = 0; k < r.active.size() && ok; ++k) {
            const int d = r.active[k];
            const int lx = floor_mod(x - d, px), rx = floor_mod(x + d, px);
            if (assigned[y * px + lx] && r.h_bad(t.at(lx, y), v, d))
                ok = false;
            if (ok && assigned[y * px + rx] && r.h_bad(v, t.at(rx, y), d))
                ok = false;
        }
        const int by = floor_mod(y - 1, py), ay = floor_mod(y + 1, py);
        if (ok && assigned[by * px + x] && r.v_bad(t.at(x, by), v))
            ok = false;
        if (ok && assigned[ay * px + x] && r.v_bad(v, t.at(x, ay)))
            ok = false;
        if (ok && fill_torus(r, t, assigned, cell + 1))
            return true;
        assigned[cell] = 0;
    }
    return false;
}

std::vector<std::pair<int, int>> period_order(int max_period) {
    std::vector<std::pair<int, int>> out;
    for (int px = 1; px <= max_period; ++px)
        for (int py = 1; py <= max_period; ++py)
            out.push_back({px, py});
    std::stable_sort(out.begin(), out.end(), [](auto a, auto b) {
        return a.first * a.second != b.first * b.second ? a.first * a.second < b.first * b.second : a.first < b.first;
    });
    return out;
}

std::optional<Tiling> periodic_search(const Rules& r, int max_period) {
    for (auto [px, py] : period_order(max_period)) {
        Tiling t = Tiling::periodic(std::vector<std::vector<int>>(py, std::vector<int>(px, 1)));
        std::vector<char> assigned(px * py, 0);
        if (fill_torus(r, t, assigned, 0))
            return t;
    }
    return std::nullopt;
}

bool fill_window(const Rules& r, Tiling& t, int cell) {
    const int w = t.width, h = t.height;
    if (cell == w * h)
        return true;
    const int x = cell % w, y = cell / w;
    for (int v = 1; v <= r.tiles; ++v) {
        bool ok = true;
        for (std::size_t k = 0; k < r.active.size() && ok && r.active[k] <= x; ++k)
            ok = !r.h_bad(t.at(x - r.active[k], y), v, r.active[k]);
        if (ok && y > 0)
            ok = !r.v_bad(t.at(x, y - 1), v);
        if (!ok)
            continue;
        t.set(x, y, v);
        if (fill_window(r, t, cell + 1))
            return true;
    }
    return false;
}

std::optional<Tiling> window_search(const Rules& r, int w, int h) {
    if (w < 0 || h < 0)
        throw Error(ErrorCode::InvalidTiling, "negative window size");
    Tiling t = Tiling::window(w, h);
    if (fill_window(r, t, 0))
        return t;
    return std::nullopt;
}

} // namespace

void StringTilingProblem::validate() const {
    if (D < 1)
        throw Error(ErrorCode::BadTileId, "D must be at least 1");
    for (const auto& [a, b, d] : h_forbidden) {
        if (a < 1 || a > 2 || b < 1 || b > 2)
            throw Error(ErrorCode::BadTileId, "string tiles are 1 or 2");
        if (d < 1 || d > D)
            throw Error(ErrorCode::BadTileId, "rule distance " + std::to_string(d) + " outside 1..D");
    }
    for (const auto& [a, b] : v_forbidden)
        if (a < 1 || a > 2 || b < 1 || b > 2)
            throw Error(ErrorCode::BadTileId, "string tiles are 1 or 2");
}

void WangProblem::validate() const {
    if (t < 1)
        throw Error(ErrorCode::BadTileId, "t must be at least 1");
    for (const auto* rules : {&h_forbidden, &v_forbidden})
        for (const auto& [a, b] : *rules)
            if (a < 1 || a > t || b < 1 || b > t)
                throw Error(ErrorCode::BadTileId, "tile id outside 1.." + std::to_string(t));
}

Tiling Tiling::window(int w, int h, int fill) {
    Tiling t;
    t.kind = Kind::Window;
    t.width = w;
    t.height = h;
    t.cells.assign(h, std::vector<int>(w, fill));
    return t;
}

Tiling Tiling::periodic(std::vector<std::vector<int>> table) {
    if (table.empty() || table.front().empty())
        throw Error(ErrorCode::InvalidTiling, "empty periodic table");
    for (const auto& row : table)
        if (row.size() != table.front().size())
            throw Error(ErrorCode::InvalidTiling, "ragged periodic table");
    Tiling t;
    t.kind = Kind::Periodic;
    t.height = static_cast<int>(table.size());
    t.width = static_cast<int>(table.front().size());
    t.cells = std::move(table);
    return t;
}

int Tiling::at(int x, int y) const {
    if (kind == Kind::Periodic)
        return cells[floor_mod(y, height)][floor_mod(x, width)];
    if (x < 0 || y < 0 || x >= width || y >= height)
        throw Error(ErrorCode::InvalidTiling,
                    "cell (" + std::to_string(x) + "," + std::to_string(y) + ") outside the window");
    return cells[y][x];
}

TilingVerdict check_tiling(const StringTilingProblem& p, const Tiling& t) { return check_any(rules_of(p), t); }
TilingVerdict check_tiling(const WangProblem& p, const Tiling& t) { return check_any(rules_of(p), t); }
TilingVerdict check_tiling(const StringTilingProblem& p, const Tiling& t, int w, int h) {
    return check_any(rules_of(p), t, w, h);
}
TilingVerdict check_tiling(const WangProblem& p, const Tiling& t, int w, int h) {
    return check_any(rules_of(p), t, w, h);
}

bool is_surjective(const Tiling& t, int tile_count) {
    std::vector<char> seen(tile_count + 1, 0);
    for (const auto& row : t.cells)
        for (int v : row)
            if (v >= 1 && v <= tile_count)
                seen[v] = 1;
    return std::all_of(seen.begin() + 1, seen.end(), [](char c) { return c != 0; });
}

std::optional<Tiling> solve_periodic(const StringTilingProblem& p, int max_period) {
    return periodic_search(rules_of(p), max_period);
}
std::optional<Tiling> solve_periodic(const WangProblem& p, int max_period) {
    return periodic_search(rules_of(p), max_period);
}
std::optional<Tiling> solve_window(const StringTilingProblem& p, int w, int h) {
    return window_search(rules_of(p), w, h);
}
std::optional<Tiling> solve_window(const WangProblem& p, int w, int h) { return window_search(rules_of(p), w, h); }

// Block layout, width B and height 3:
//  row 0: column f holds 2 when the tile is the upper tile of the f-th forbidden vertical pair
//  row 2: column f holds 2 when the tile is the lower tile of that pair
//  row 1: two marks at a_i = V + i and b_i = V + c + i*t (V = number of vertical pairs)
// The only vertical string rule is "2 directly above 2", which fires exactly on
// the row-2/row-0 seam of a forbidden vertical pair. A forbidden horizontal pair
// (i, j) forbids two 2s at distance B + b_j - a_i; these distances are pairwise
// distinct and, with the chosen c and B, never occur between other marks of a
// codeword tiling.
EncodedProblem encode_wang_as_string(const WangProblem& w) {
    w.validate();
    const int t = w.t;
    const std::vector<std::pair<int, int>> vpairs(w.v_forbidden.begin(), w.v_forbidden.end());
    const int V = static_cast<int>(vpairs.size());
    const bool marks = t >= 2 || !w.h_forbidden.empty();

    int c = 0, B = std::max(V, 1);
    if (marks) {
        c = std::max(t * t, V + t);
        const int spread = c + t * t - t; // b_{t-1} - a_0
        B = V + 2 * spread + 2;
    }
    auto a_of = [&](int tile) { return V + (tile - 1); };
    auto b_of = [&](int tile) { return V + c + (tile - 1) * t; };

    EncodedProblem out;
    BlockCodec& codec = out.codec;
    codec.tile_count = t;
    codec.block_width = B;
    codec.block_height = 3;
    codec.codewords.assign(t, std::vector<std::vector<int>>(3, std::vector<int>(B, 1)));
    for (int tile = 1; tile <= t; ++tile) {
        auto& cw = codec.codewords[tile - 1];
        for (int f = 0; f < V; ++f) {
            if (vpairs[f].second == tile)
                cw[0][f] = 2;
            if (vpairs[f].first == tile)
                cw[2][f] = 2;
        }
        if (marks) {
            cw[1][a_of(tile)] = 2;
            cw[1][b_of(tile)] = 2;
        }
    }

    StringTilingProblem& sp = out.problem;
    sp.D = 1;
    if (V > 0)
        sp.v_forbidden.insert({2, 2});
    for (const auto& [i, j] : w.h_forbidden) {
        const int d = B + b_of(j) - a_of(i);
        sp.h_forbidden.insert({2, 2, d});
        sp.D = std::max(sp.D, d);
    }
    if (!marks && V == 0) {
        // Codewords are all 1s; no tile 2 may occur anywhere.
        sp.h_forbidden.insert({2, 1, 1});
        sp.h_forbidden.insert({2, 2, 1});
    }
    return out;
}

Tiling encode_tiling(const BlockCodec& codec, const Tiling& wang) {
    check_cells(wang, codec.tile_count);
    const int B = codec.block_width, H = codec.block_height;
    std::vector<std::vector<int>> rows(wang.height * H, std::vector<int>(wang.width * B, 1));
    for (int y = 0; y < wang.height; ++y)
        for (int x = 0; x < wang.width; ++x) {
            const auto& cw = codec.codewords[wang.cells[y][x] - 1];
            for (int r = 0; r < H; ++r)
                for (int col = 0; col < B; ++col)
                    rows[y * H + r][x * B + col] = cw[r][col];
        }
    if (wang.is_periodic())
        return Tiling::periodic(std::move(rows));
    Tiling out = Tiling::window(wang.width * B, wang.height * H);
    out.cells = std::move(rows);
    return out;
}

namespace {

// Tile id of the block with lower-left corner (x0, y0), or 0.
int block_at(const BlockCodec& codec, const Tiling& t, int x0, int y0) {
    for (int tile = 1; tile <= codec.tile_count; ++tile) {
        const auto& cw = codec.codewords[tile - 1];
        bool same = true;
        for (int r = 0; r < codec.block_height && same; ++r)
            for (int col = 0; col < codec.block_width && same; ++col)
                same = t.at(x0 + col, y0 + r) == cw[r][col];
        if (same)
            return tile;
    }
    return 0;
}

} // namespace

Tiling decode_string_tiling(const BlockCodec& codec, const Tiling& t) {
    check_cells(t, 2);
    const int B = codec.block_width, H = codec.block_height;
    if (!t.is_periodic()) {
        if (t.width % B != 0 || t.height % H != 0)
            throw Error(ErrorCode::MisalignedBlock, "window " + std::to_string(t.width) + "x" +
                                                        std::to_string(t.height) + " is not a multiple of the " +
                                                        std::to_string(B) + "x" + std::to_string(H) + " block");
        Tiling out = Tiling::window(t.width / B, t.height / H);
        for (int y = 0; y < out.height; ++y)
            for (int x = 0; x < out.width; ++x) {
                const int tile = block_at(codec, t, x * B, y * H);
                if (tile == 0)
                    throw Error(ErrorCode::UnknownCodeword,
                                "block (" + std::to_string(x) + "," + std::to_string(y) + ") is not a codeword");
                out.set(x, y, tile);
            }
        return out;
    }
    const int W = std::lcm(t.width, B), Hh = std::lcm(t.height, H);
    for (int oy = 0; oy < H; ++oy)
        for (int ox = 0; ox < B; ++ox) {
            std::vector<std::vector<int>> table(Hh / H, std::vector<int>(W / B, 0));
            bool ok = true;
            for (int y = 0; y < Hh / H && ok; ++y)
                for (int x = 0; x < W / B && ok; ++x) {
                    table[y][x] = block_at(codec, t, ox + x * B, oy + y * H);
                    ok = table[y][x] != 0;
                }
            if (ok)
                return Tiling::periodic(std::move(table));
        }
    throw Error(ErrorCode::UnknownCodeword, "no block alignment decodes the periodic tiling");
}

std::optional<Tiling> solve_periodic_codewords(const EncodedProblem& e, int max_period) {
    const int t = e.codec.tile_count;
    for (auto [px, py] : period_order(max_period)) {
        const int n = px * py;
        std::vector<int> digits(n, 1);
        while (true) {
            std::vector<std::vector<int>> table(py, std::vector<int>(px));
            for (int k = 0; k < n; ++k)
                table[k / px][k % px] = digits[k];
            Tiling s = encode_tiling(e.codec, Tiling::periodic(std::move(table)));
            if (check_tiling(e.problem, s).valid)
                return s;
            int k = n - 1;
            while (k >= 0 && digits[k] == t)
                digits[k--] = 1;
            if (k < 0)
                break;
            ++digits[k];
        }
    }
    return std::nullopt;
}

} // namespace tilejep
