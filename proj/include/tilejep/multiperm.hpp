#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tilejep/error.hpp"

namespace tilejep {

using PointId = std::uint32_t;
using Rank = std::uint32_t;
using RankRow = std::vector<Rank>;

/// A finite structure carrying `dims` labeled linear orders.
///
/// Points are stored in order-0 sequence, so `rank(i, 0) == i` always holds and
/// two structures are isomorphic exactly when their rank tables are equal.
/// Order indices are 0-based throughout the library (order 0 is the first
/// order, the horizontal axis in renderings).
class MultiPerm {
public:
    MultiPerm() = default;
    explicit MultiPerm(std::size_t dims) : dims_(dims) {}

    /// Validates and normalizes. Rows may be given in any order; they are
    /// re-sorted by their order-0 rank.
    static MultiPerm from_rank_rows(std::span<const RankRow> rows, std::size_t dims = 0);

    /// Builds from per-order sort keys (key[k][p] orders point p in order k).
    /// Keys within one order must be distinct.
    static MultiPerm from_columns(std::vector<std::vector<Rank>> columns);

    std::size_t dims() const noexcept { return dims_; }
    std::size_t size() const noexcept { return dims_ == 0 ? 0 : ranks_.size() / dims_; }
    bool empty() const noexcept { return size() == 0; }

    Rank rank(PointId p, std::size_t order) const { return ranks_[p * dims_ + order]; }
    std::span<const Rank> row(PointId p) const { return {ranks_.data() + p * dims_, dims_}; }

    /// Point holding rank `r` in order `order`.
    PointId at_rank(std::size_t order, Rank r) const { return inverse_[order * size() + r]; }

    bool less(std::size_t order, PointId a, PointId b) const { return rank(a, order) < rank(b, order); }

    std::vector<RankRow> rows() const;

    friend bool operator==(const MultiPerm& a, const MultiPerm& b) {
        return a.dims_ == b.dims_ && a.ranks_ == b.ranks_;
    }

private:
    void build_inverse();

    std::size_t dims_ = 3;
    std::vector<Rank> ranks_;
    std::vector<PointId> inverse_;
};

inline bool canonical_equal(const MultiPerm& a, const MultiPerm& b) { return a == b; }

/// Restriction to `subset` with ranks renormalized. Duplicates are ignored.
MultiPerm induced_substructure(const MultiPerm& s, std::span<const PointId> subset);

/// Keeps only the listed orders, in the listed sequence. The first kept order
/// becomes the new order 0, so points may be relisted.
MultiPerm reduct(const MultiPerm& s, std::span<const std::size_t> keep);

/// Appends the given rank columns (each indexed by PointId) as new orders.
MultiPerm expand(const MultiPerm& s, std::span<const std::vector<Rank>> extra);

MultiPerm parse_mperm(std::string_view text);
std::string serialize_mperm(const MultiPerm& s);

} // namespace tilejep
