#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tilejep/classdesc.hpp"
#include "tilejep/semantics.hpp"

namespace tilejep {

/// Constraint ids are "1".."12", "6*" and "13".
struct Violation {
    std::string constraint;
    std::vector<PointId> witness; // sorted point set; its induced substructure still violates
    std::string detail;
};

/// Sort key for constraint ids: numeric part, then the starred variant.
std::pair<int, int> constraint_order(const std::string& id);

struct Verdict {
    bool member = true;
    std::vector<Violation> violations; // sorted by constraint id, then witness
    bool truncated = false;            // some constraint produced more than the reporting cap
};

struct CheckOptions {
    /// Restrict to these constraint ids; empty means all applicable ones.
    std::set<std::string> only;
    DetectionOptions detection;
    std::size_t max_per_constraint = 64;
};

/// Constraint ids that apply to a variant, in order.
std::vector<std::string> applicable_constraints(Variant v);

Verdict check_membership(const MultiPerm& s, const ClassDescriptor& c, const CheckOptions& opts = {});
Verdict check_membership(const TaggedStructure& t, const ClassDescriptor& c, const CheckOptions& opts = {});

} // namespace tilejep
