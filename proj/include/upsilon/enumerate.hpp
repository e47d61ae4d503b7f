// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <deque>
#include <mutex>
#include <vector>

#include "upsilon/pattern.hpp"
#include "upsilon/term.hpp"

namespace upsilon {

/// Exhaustive listing of ground terms by exact size and sort. Index-sorted
/// terms are included in the term sort. Order is fixed: by constructor
/// (index, abstraction, application, closure; slash, lift, shift), then by
/// the split of the size among children, then lexicographically.
///
/// Each size is materialised once, both as Term values and as interned
/// ground patterns in the same order. Returned references stay valid for
/// the enumerator's lifetime. Growth is serialised; reads of completed
/// sizes are safe from any thread.
class Enumerator {
public:
    const std::vector<Term>& terms(std::uint64_t n, Sort sort);
    const std::vector<Pattern>& patterns(std::uint64_t n, Sort sort);

    /// Process-wide instance, so repeated checks share the work.
    static Enumerator& shared();

private:
    struct Level {
        std::vector<Term> terms;
        std::vector<Pattern> patterns;
    };

    const Level& level(std::uint64_t n, Sort sort);
    void grow(std::uint64_t n);

    std::mutex mutex_;
    // Deques keep element addresses stable as sizes are added.
    std::deque<Level> term_levels_{Level{}}; // index 0 unused
    std::deque<Level> subst_levels_{Level{}};
    std::deque<Level> index_levels_{Level{}};
};

/// Number of ground terms of size exactly `n`, by the counting recurrence
/// rather than by listing. Saturates at UINT64_MAX.
std::uint64_t term_count(std::uint64_t n, Sort sort);

} // namespace upsilon
