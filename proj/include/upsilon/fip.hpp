// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "upsilon/grammar.hpp"

namespace upsilon {

/// Raised when the intersection algorithm would not terminate: either the
/// grammar fails the conservativeness precondition, or a pattern pair
/// recurs on the active call stack.
class NonConservativeGrammar : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Patterns with pairwise disjoint languages whose union is L(a) n L(b).
using FipResult = std::vector<Pattern>;

struct FipOptions {
    /// Answer T against a term-sorted constructor pattern directly.
    bool t_shortcut = true;
    /// Refuse grammars with non-conservative self-referencing productions
    /// up front. Turning this off leaves only the cycle guard.
    bool precheck = true;
};

/// Finite intersection partitions over one grammar, memoised on pattern
/// pairs. Not thread-safe; use one engine per worker.
class FipEngine {
public:
    explicit FipEngine(const ReductionGrammar& g, FipOptions options = {});

    FipResult fip(Pattern a, Pattern b);

    /// Longest chain of nested calls seen so far.
    std::size_t max_depth() const noexcept { return max_depth_; }

private:
    using Key = std::pair<const void*, const void*>;
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            return std::hash<const void*>{}(k.first) * 0x9e3779b97f4a7c15ULL ^ std::hash<const void*>{}(k.second);
        }
    };

    FipResult compute(Pattern a, Pattern b);
    FipResult expand(NonTerminal x, Pattern b);

    const ReductionGrammar* grammar_;
    FipOptions options_;
    std::unordered_map<Key, FipResult, KeyHash> memo_;
    std::unordered_set<Key, KeyHash> active_;
    std::size_t max_depth_ = 0;
};

/// One-shot convenience wrapper.
FipResult fip(Pattern a, Pattern b, const ReductionGrammar& g, FipOptions options = {});

/// Brute-force audit of a partition: over every ground term of size at most
/// `bound` (of the sort of `a`), each member of L(a) n L(b) lies in exactly
/// one part and no other term lies in any part.
bool fip_check(Pattern a, Pattern b, const FipResult& parts, std::uint64_t bound, const ReductionGrammar& g);

} // namespace upsilon
