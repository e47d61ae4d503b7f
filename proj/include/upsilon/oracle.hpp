// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "upsilon/analytics.hpp"
#include "upsilon/grammar.hpp"

namespace upsilon {

/// counts[n][k]: terms of size n reaching normal form in exactly k steps.
/// Terms needing more than max_steps land in overflow[n].
struct CensusTable {
    std::uint64_t max_size = 0;
    std::uint64_t max_steps = 0;
    std::vector<std::vector<std::uint64_t>> counts;
    std::vector<std::uint64_t> overflow;

    std::uint64_t at(std::uint64_t n, std::uint64_t k) const;
    /// All terms of size n, overflow included.
    std::uint64_t total(std::uint64_t n) const;

    friend bool operator==(const CensusTable&, const CensusTable&) = default;
};

/// Normalises every term of size 1..max_size. Sizes are split over `jobs`
/// threads; the table does not depend on the split.
CensusTable census(std::uint64_t max_size, std::uint64_t max_steps, unsigned jobs = 1);

/// One level checked against the census and, optionally, its series.
struct LevelReport {
    std::uint32_t level = 0;
    std::vector<std::uint64_t> census;  // by size, index 0 unused
    std::vector<std::uint64_t> members; // terms of that size in L(Gk)
    std::vector<mpz_class> series;      // [z^n]Gk, empty if not supplied
    /// Smallest size where the counts disagree, and a term on which the
    /// grammar and the reducer disagree there.
    std::optional<std::uint64_t> mismatch_size;
    std::optional<std::string> witness;

    bool ok() const noexcept { return !mismatch_size.has_value(); }
};

/// Compares L(Gk) with the census class "k steps" for every size up to
/// max_size, and the series coefficients too when `series` is given
/// (one series per level, as returned by grammar_series).
LevelReport verify_grammar(const ReductionGrammar& g, std::uint32_t k, const CensusTable& table,
                           std::uint64_t max_size, const std::vector<CountSeries>* series = nullptr);

/// All levels of `g` at once, sharing the membership memo.
std::vector<LevelReport> verify_levels(const ReductionGrammar& g, const CensusTable& table, std::uint64_t max_size,
                                       const std::vector<CountSeries>* series = nullptr, unsigned jobs = 1);

struct UnambiguityReport {
    std::uint64_t checked = 0; // terms derivable from the axiom
    std::optional<std::string> witness;

    bool ok() const noexcept { return !witness.has_value(); }
};

/// Every ground term of size at most max_size that the axiom derives must
/// have exactly one derivation.
UnambiguityReport verify_unambiguity(const ReductionGrammar& g, std::uint64_t max_size);
UnambiguityReport verify_unambiguity(const ReductionGrammar& g, NonTerminal axiom, std::uint64_t max_size);

} // namespace upsilon
