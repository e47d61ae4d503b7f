// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "upsilon/fip.hpp"
#include "upsilon/grammar.hpp"

namespace upsilon {

/// Shape of a rule's right-hand side, used to find level-n terms whose
/// one-step predecessor is produced by that rule.
struct Template {
    RuleTag rule;
    Pattern pattern;
    std::size_t width; // closure width of `pattern`
};

/// App: T[S](T[S]), Lambda: \ (T[+(S)]), FVar: T, RVar: N, FVarLift: 0,
/// RVarLift: N[S][^], VarShift: succ N.
Template template_for(RuleTag rule);

/// The template followed by `extra` closures [S].
Pattern padded(const Template& t, std::size_t extra);

/// Called for every intersection computed while building a level; lets tests
/// audit each partition independently.
using FipObserver = std::function<void(Pattern a, Pattern b, const FipResult& parts, const ReductionGrammar& g)>;

struct BuildOptions {
    /// Emit one production 0[Gn/] instead of 0[gamma/] for each Gn -> gamma.
    bool fvar_merge = true;
    /// Worker threads for the intersection step; output order is unaffected.
    unsigned jobs = 1;
    FipObserver fip_observer;
};

/// G0 -> N | \ G0 | G0 G0 on top of the predefined productions.
ReductionGrammar seed();

/// Union over Gn productions of width w >= d of the partitions against the
/// template padded to width w. Empty for FVar, whose scheme needs no match.
std::vector<Pattern> phi_matchings(const ReductionGrammar& g, const Template& tmpl,
                                   const BuildOptions& options = {});

/// Right-hand sides for G(n+1) produced by one rule's scheme.
std::vector<Pattern> apply_scheme(RuleTag rule, const ReductionGrammar& g, const BuildOptions& options = {});

/// Next grammar of the hierarchy. Throws InvariantViolation when the result
/// is not simple, verbose and conservative.
ReductionGrammar extend(const ReductionGrammar& g, const BuildOptions& options = {});

struct StreamSummary {
    std::uint64_t productions = 0;
    /// Potential of the new level nonterminal.
    std::uint64_t potential = 0;
};

/// Produces the right-hand sides of the G(n+1) productions that extend(g)
/// would add, without keeping them. Each pattern passed to `sink` is valid
/// only during the call. Level productions are processed `batch` at a time
/// and the patterns of a batch are released afterwards, so memory stays near
/// that of `g` itself. Productions are checked as in extend(); the order
/// differs from extend() and the fip observer must not keep its patterns.
StreamSummary stream_extension(const ReductionGrammar& g, const std::function<void(Pattern)>& sink,
                               const BuildOptions& options = {}, std::size_t batch = 2048);

/// Grammars of levels 0..max_level.
std::vector<ReductionGrammar> build_hierarchy(std::uint32_t max_level, const BuildOptions& options = {});

} // namespace upsilon
