// SPDX-License-Identifier: Apache-2.0
#include "upsilon/hierarchy.hpp"

#include <algorithm>

namespace upsilon {

HierarchyProfiles build_profiles(std::uint32_t max_level, const BuildOptions& options) {
    HierarchyProfiles out;
    out.stored = seed();
    while (out.stored.level() + 1 < max_level) out.stored = extend(out.stored, options);
    out.levels = hierarchy_profiles(out.stored);
    for (std::uint32_t k = 0; k <= out.stored.level(); ++k) {
        out.production_counts.push_back(out.stored.rules(NonTerminal::G(k)).size());
    }
    if (max_level == 0) return out;

    ProfileTally tally(max_level);
    std::vector<std::size_t> hashes;
    stream_extension(
        out.stored,
        [&](Pattern rhs) {
            tally.add(rhs);
            hashes.push_back(rhs.hash());
        },
        options);
    std::sort(hashes.begin(), hashes.end());
    if (std::adjacent_find(hashes.begin(), hashes.end()) != hashes.end()) {
        throw InvariantViolation("G" + std::to_string(max_level) + " repeats a right-hand side");
    }
    out.levels.push_back(tally.result());
    out.production_counts.push_back(tally.count());
    return out;
}

} // namespace upsilon
