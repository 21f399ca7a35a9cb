#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "tilejep/checker.hpp"
#include "tilejep/classdesc.hpp"
#include "tilejep/match.hpp"

namespace tilejep {

/// Constraint ids with a finite materialization: "1", "2", "3", "6", "6*".
std::vector<std::string> materializable_constraints();

struct ForbiddenOptions {
    std::size_t size_cap = 15;
    /// Cap on raw candidates (identifications times linear extensions of all
    /// three orders) before deduplication. BudgetExceeded past it.
    std::uint64_t max_candidates = 50'000'000;
};

/// Streams every distinct structure of at most size_cap points that is the
/// union of the copies of one violating configuration, with the constraint id
/// it realizes. Stops when the visitor returns false. Throws Unsupported for
/// ids without a materialization, BudgetExceeded past the candidate cap.
void for_each_forbidden(const ClassDescriptor& c, const std::set<std::string>& constraints,
                        const ForbiddenOptions& opts,
                        const std::function<bool(const MultiPerm&, const std::string&)>& visit);

/// The whole stream collected into a pattern set.
PatternSet enumerate_forbidden(const ClassDescriptor& c, const std::set<std::string>& constraints,
                               const ForbiddenOptions& opts = {});

/// Raw candidate count the enumeration would visit, from linear-extension
/// counts without building structures. Ignores max_candidates.
long double count_forbidden_candidates(const ClassDescriptor& c, const std::set<std::string>& constraints,
                                       const ForbiddenOptions& opts = {});

/// Membership as avoidance of an explicit forbidden set. Violations carry the
/// id "forbidden" and the embedded points as witness.
Verdict membership_by_avoidance(const MultiPerm& s, const PatternSet& forbidden);

} // namespace tilejep
