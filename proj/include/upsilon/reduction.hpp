// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "upsilon/term.hpp"

namespace upsilon {

/// Raised when normalisation exceeds a caller-supplied step budget.
class StepLimitExceeded : public std::runtime_error {
public:
    explicit StepLimitExceeded(std::uint64_t limit);
    std::uint64_t limit() const noexcept { return limit_; }

private:
    std::uint64_t limit_;
};

/// Rule whose left-hand side matches the root of `t`, if any.
std::optional<RuleTag> redex_rule(const Term& t) noexcept;

/// Contracts a root redex. Precondition: redex_rule(t) == rule.
Term contract(const Term& t, RuleTag rule);

struct Redex {
    std::vector<std::uint8_t> path; // child indices from the root
    RuleTag rule;
};

/// Leftmost-outermost redex: first match in pre-order, children left to
/// right, closure bodies before their substitutions.
std::optional<Redex> find_redex(const Term& t);

struct Step {
    Term result;
    RuleTag rule;
};

/// One normal-order step; empty iff `t` is in normal form.
std::optional<Step> step(const Term& t);

struct TraceEntry {
    Term term; // the term reached by this step
    RuleTag rule;
};

struct Normalization {
    Term normal_form;
    std::uint64_t steps = 0;
    std::vector<TraceEntry> trace; // empty unless requested
};

struct NormalizeOptions {
    std::optional<std::uint64_t> step_limit;
    bool trace = false;
};

/// Iterates `step` to the normal form. Throws StepLimitExceeded when the
/// optional budget runs out.
Normalization normalize(const Term& t, const NormalizeOptions& options = {});

/// Number of normal-order steps to normal form, or empty once `limit` steps
/// have been taken without reaching it.
std::optional<std::uint64_t> count_steps(const Term& t, std::uint64_t limit);

} // namespace upsilon
