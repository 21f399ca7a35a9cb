#pragma once

#include <optional>
#include <vector>

#include "tilejep/classdesc.hpp"
#include "tilejep/semantics.hpp"

namespace tilejep {

/// One placed gadget copy. `points[i]` is the image of element point i.
struct LedgerEntry {
    Role role = Role::P;
    int superscript = 0;
    std::vector<PointId> points;
    PointId root = 0;
    std::optional<Coord> grid;      // grid or tile index for X/Y/G/T copies
    std::optional<int> path_index;  // k for the copy rooted at path point k
};

struct CanonicalBuild {
    MultiPerm structure;
    std::vector<LedgerEntry> ledger;
    int n = 0;
};

struct CanonicalOptions {
    /// Adds one extra E_P copy (grid superscript) whose bracket captures the
    /// path origin. Produces a deliberate non-member for testing.
    bool defect_origin_predecessor = false;
};

/// Grid model with superscript 0: a length-n path and an n x n grid of
/// connector copies, laid out so that every detected copy is a placed copy.
CanonicalBuild canonical_A(int n, const ClassDescriptor& c, CanonicalOptions opts = {});
/// Tile-set model with superscript 1.
CanonicalBuild canonical_B(int n, const ClassDescriptor& c, CanonicalOptions opts = {});
/// A_0 followed by B_3 in all three orders (variant Q only).
CanonicalBuild canonical_Q_A(int n, const ClassDescriptor& c);
/// A_2 followed by B_1 in orders 0 and 2, with B_1 below A_2 in order 1 (variant Q only).
CanonicalBuild canonical_Q_B(int n, const ClassDescriptor& c);

/// Single block with an arbitrary superscript: grid superscripts get
/// connector copies, tile superscripts get tile-set copies.
CanonicalBuild canonical_block(int n, const GadgetSet& g, int superscript, CanonicalOptions opts = {});

} // namespace tilejep
