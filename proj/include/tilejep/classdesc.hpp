#pragma once

#include <cstdint>
#include <memory>

#include "tilejep/gadgets.hpp"
#include "tilejep/tiling.hpp"

namespace tilejep {

struct ClassDescriptor {
    std::shared_ptr<const GadgetSet> gadgets;
    StringTilingProblem problem;
    Variant variant = Variant::P;
    std::size_t gadget_size = 7;
    std::uint64_t gadget_seed = 0;

    /// Builds the gadget family for the variant; problem is validated.
    static ClassDescriptor make(Variant v, StringTilingProblem problem, std::size_t gadget_size = 7,
                                std::uint64_t seed = 0);
};

} // namespace tilejep
