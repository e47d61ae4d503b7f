// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "upsilon/analytics.hpp"
#include "upsilon/builder.hpp"

namespace upsilon {

/// Everything the analytics need about G0..Gn. The top level is streamed
/// rather than stored, which keeps the largest grammar out of memory: `stored`
/// reaches level n - 1 (level 0 when n is 0).
struct HierarchyProfiles {
    ReductionGrammar stored;
    std::vector<LevelProfiles> levels;           // G0..Gn
    std::vector<std::uint64_t> production_counts; // per level
};

/// Builds levels 0..n-1, streams level n and checks every level as extend()
/// does. Also throws InvariantViolation if the streamed level repeats a
/// right-hand side (detected by structural hash).
HierarchyProfiles build_profiles(std::uint32_t max_level, const BuildOptions& options = {});

} // namespace upsilon
