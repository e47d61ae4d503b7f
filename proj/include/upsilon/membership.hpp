// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "upsilon/grammar.hpp"

namespace upsilon {

/// Decides t in L(p) for ground t by structural recursion, counting
/// derivations along the way. Counts saturate at `cap`, which is enough to
/// tell "none", "exactly one" and "several" apart.
///
/// Not thread-safe: the memo is owned by the instance. Use one per worker.
class Membership {
public:
    explicit Membership(const ReductionGrammar& g, std::uint64_t cap = 2);

    bool member(Pattern ground, Pattern p);
    bool member(const Term& t, Pattern p) { return member(to_pattern(t), p); }

    /// Number of derivations of `ground` from `p`, saturated at the cap.
    std::uint64_t derivations(Pattern ground, Pattern p);

    /// Number of productions of `x` that derive `ground` (each counted once).
    std::uint64_t matching_productions(Pattern ground, NonTerminal x);

    const ReductionGrammar& grammar() const noexcept { return *grammar_; }

private:
    struct Key {
        const void* term;
        NonTerminal x;
        friend bool operator==(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            return std::hash<const void*>{}(k.term) * 0x9e3779b97f4a7c15ULL ^ std::hash<NonTerminal>{}(k.x);
        }
    };

    static constexpr std::size_t kKinds = 9;
    struct Entry {
        std::uint64_t min_size;
        Pattern rhs;
    };
    using Buckets = std::array<std::vector<Entry>, kKinds>;

    const Buckets& buckets(NonTerminal x);
    std::uint64_t count(Pattern ground, NonTerminal x);
    // Smallest size of a ground instance of `p`; infinite when empty.
    std::uint64_t min_size(Pattern p) const;
    void compute_min_sizes();
    std::uint64_t saturate(std::uint64_t v) const noexcept { return v < cap_ ? v : cap_; }

    const ReductionGrammar* grammar_;
    std::uint64_t cap_;
    std::unordered_map<NonTerminal, Buckets> index_;
    std::unordered_map<NonTerminal, std::uint64_t> min_sizes_;
    std::unordered_map<Key, std::uint64_t, KeyHash> memo_;
};

} // namespace upsilon
