#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tilejep/checker.hpp"
#include "tilejep/classdesc.hpp"
#include "tilejep/semantics.hpp"
#include "tilejep/tiling.hpp"

namespace tilejep {

/// Node ids of a merge: factor A points first, then factor B points offset by |A|.
using Node = std::uint32_t;

/// Closed interval [lo, hi] of nodes from one factor, in order 1.
struct NodeInterval {
    Node lo = 0;
    Node hi = 0;
};

/// Disjoint union of two factors with order 1 only partially known. Orders 0
/// and 2 are not represented; the merges here always put A before B in both.
class MergeState {
public:
    MergeState(const MultiPerm& a, const MultiPerm& b);

    std::size_t size_a() const noexcept { return na_; }
    std::size_t size_b() const noexcept { return nb_; }
    std::size_t size() const noexcept { return na_ + nb_; }
    Node node_a(PointId p) const { return p; }
    Node node_b(PointId p) const { return static_cast<Node>(na_ + p); }
    bool in_a(Node u) const { return u < na_; }

    /// u is below v in the current partial order (transitively).
    bool less(Node u, Node v) const { return (reach_[u][v >> 6] >> (v & 63)) & 1u; }

    /// Adds u < v. Throws AlignmentInconsistent naming a cycle when v already reaches u.
    void add_less(Node u, Node v);

    /// For every node x of the other factor: x below ib (resp. above) goes below ia (resp.
    /// above), and symmetrically. ia lies in A and ib in B.
    void align(NodeInterval ia, NodeInterval ib);

    /// Both endpoints of each interval already lie strictly inside the other.
    bool forced_intersect(NodeInterval i, NodeInterval j) const { return less(i.lo, j.hi) && less(j.lo, i.hi); }
    bool forced_disjoint(NodeInterval i, NodeInterval j) const {
        return less(i.hi, j.lo) || i.hi == j.lo || less(j.hi, i.lo) || j.hi == i.lo;
    }

    /// Neighbours within the node's own factor chain.
    std::optional<Node> chain_prev(Node u) const;
    std::optional<Node> chain_next(Node u) const;

private:
    std::vector<Node> path(Node from, Node to) const;

    std::size_t na_ = 0, nb_ = 0, words_ = 0;
    std::vector<std::vector<std::uint64_t>> reach_;
    std::vector<std::vector<Node>> out_;
    std::vector<Node> chain_a_, chain_b_; // order-1 sequences as nodes
    std::vector<std::size_t> chain_pos_;
};

/// A linear extension of the state in which no pair of listed intervals from
/// different factors intersects unless the state already forces it.
/// Undecided ties place A nodes first. Throws CompletionFailed.
std::vector<Node> complete_order(const MergeState& m, const std::vector<NodeInterval>& intervals);

/// One-sided joint embedding: A entirely before B in orders 0 and 2, with every
/// A connector at a weak coordinate capturing the B tiles of type theta there.
/// Output points are A's followed by B's.
MultiPerm jep_less1(const MultiPerm& a, const MultiPerm& b, const Tiling& theta, const ClassDescriptor& c);

/// Joint embedding for the doubled class: split each factor at the order-1 cut
/// between the {0,1} and {2,3} copies and merge the halves separately.
MultiPerm jep_Q(const MultiPerm& a, const MultiPerm& b, const Tiling& theta, const ClassDescriptor& c);

enum class BruteMode { Disjoint, Identify };

struct BruteResult {
    std::optional<MultiPerm> witness;
    BruteMode found_in = BruteMode::Disjoint;
    bool identify_consulted = false;
    std::uint64_t candidates = 0;
};

/// Exhaustive search over merges. Disjoint mode tries every triple of
/// order interleavings and falls back to identify mode before reporting
/// absence. Identify mode also tries every order-consistent identification.
/// Throws BudgetExceeded when |A| + |B| > budget.
BruteResult brute_force_jep(const MultiPerm& a, const MultiPerm& b, const ClassDescriptor& c, BruteMode mode,
                            std::size_t budget = 10);

/// Tile type captured by the connectors at each weak coordinate of the window.
/// Type 1 wins when both are captured. Throws UntiledCell.
Tiling extract_tiling(const MultiPerm& joint, const ClassDescriptor& c, int width, int height,
                      Pairing pairing = {0, 1});

} // namespace tilejep
