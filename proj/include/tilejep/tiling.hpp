#pragma once

#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "tilejep/error.hpp"

namespace tilejep {

/// Two tile types {1, 2}; horizontal rules forbid `right` at distance d in 1..D
/// to the right of `left`, vertical rules forbid `above` directly above `below`.
struct StringTilingProblem {
    int D = 1;
    std::set<std::tuple<int, int, int>> h_forbidden; // (left, right, d)
    std::set<std::pair<int, int>> v_forbidden;       // (below, above)

    void validate() const;
    friend bool operator==(const StringTilingProblem&, const StringTilingProblem&) = default;
};

/// Tiling problem with t tile types; horizontal pairs are (left, right)
/// neighbors and vertical pairs are (below, above).
struct WangProblem {
    int t = 1;
    std::set<std::pair<int, int>> h_forbidden;
    std::set<std::pair<int, int>> v_forbidden;

    void validate() const;
    friend bool operator==(const WangProblem&, const WangProblem&) = default;
};

/// A finite window or a periodic tiling. Cells are stored row by row,
/// cells[y][x], row 0 at the bottom. Periodic tilings repeat cells with
/// periods (width, height).
struct Tiling {
    enum class Kind { Window, Periodic };
    Kind kind = Kind::Window;
    int width = 0;
    int height = 0;
    std::vector<std::vector<int>> cells;

    static Tiling window(int w, int h, int fill = 1);
    static Tiling periodic(std::vector<std::vector<int>> table);

    bool is_periodic() const { return kind == Kind::Periodic; }
    /// Throws InvalidTiling outside a window.
    int at(int x, int y) const;
    void set(int x, int y, int v) { cells[y][x] = v; }

    friend bool operator==(const Tiling&, const Tiling&) = default;
};

struct TilingViolation {
    int x = 0, y = 0;   // left or lower tile
    int x2 = 0, y2 = 0; // right or upper tile
    bool vertical = false;
    int distance = 1;
};

struct TilingVerdict {
    bool valid = true;
    std::vector<TilingViolation> violations;
};

/// Whole window, or one full period for periodic tilings (pairs wrap around).
TilingVerdict check_tiling(const StringTilingProblem& p, const Tiling& t);
TilingVerdict check_tiling(const WangProblem& p, const Tiling& t);
/// Only pairs with both tiles inside [0,w) x [0,h).
TilingVerdict check_tiling(const StringTilingProblem& p, const Tiling& t, int w, int h);
TilingVerdict check_tiling(const WangProblem& p, const Tiling& t, int w, int h);

/// Every tile type 1..tile_count occurs (one period for periodic tilings).
bool is_surjective(const Tiling& t, int tile_count);

/// Periods are tried by increasing px*py, then px; tiles in increasing id order.
std::optional<Tiling> solve_periodic(const StringTilingProblem& p, int max_period);
std::optional<Tiling> solve_periodic(const WangProblem& p, int max_period);

std::optional<Tiling> solve_window(const StringTilingProblem& p, int w, int h);
std::optional<Tiling> solve_window(const WangProblem& p, int w, int h);

/// Maps each Wang tile to a block_width x block_height block of string tiles.
struct BlockCodec {
    int tile_count = 1;
    int block_width = 1;
    int block_height = 3;
    std::vector<std::vector<std::vector<int>>> codewords; // [tile-1][row][col]

    friend bool operator==(const BlockCodec&, const BlockCodec&) = default;
};

struct EncodedProblem {
    StringTilingProblem problem;
    BlockCodec codec;
};

/// On block-aligned tilings made of codewords, the string rules hold exactly
/// when the decoded tiling satisfies the Wang rules. Pairwise string rules
/// cannot force block structure on arbitrary tilings, so the string problem
/// may have further solutions that decode to nothing.
EncodedProblem encode_wang_as_string(const WangProblem& w);

/// Replaces each tile by its codeword; windows grow by the block size in both
/// directions, periodic tables likewise.
Tiling encode_tiling(const BlockCodec& codec, const Tiling& wang);

/// Windows must be block-aligned at the origin (MisalignedBlock otherwise).
/// Periodic tilings are unrolled to a multiple of the block size and decoded
/// at the first alignment offset whose blocks are all codewords.
Tiling decode_string_tiling(const BlockCodec& codec, const Tiling& t);

/// Periodic search restricted to codeword tilings; validity is judged by the
/// string rules only. Returns the string tiling.
std::optional<Tiling> solve_periodic_codewords(const EncodedProblem& e, int max_period);

} // namespace tilejep
