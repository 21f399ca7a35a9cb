#pragma once

#include <optional>
#include <set>
#include <string>

#include "tilejep/semantics.hpp"

namespace tilejep {

struct RenderSpec {
    int scale = 24;        // pixels per rank step
    bool labels = true;    // order-2 rank next to each point
    /// Layers to draw: "copies", "intervals". Unknown names throw Usage.
    std::set<std::string> layers = {"copies", "intervals"};
};

/// Order 0 runs left to right and order 1 bottom to top. Copies are polylines
/// through their points in order-0 sequence, special intervals are braces at
/// the right of the copy that owns them. Deterministic for equal inputs.
std::string render_svg(const MultiPerm& s, const TaggedStructure* tags = nullptr, const RenderSpec& spec = {});

} // namespace tilejep
