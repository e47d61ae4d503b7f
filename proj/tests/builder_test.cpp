// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "upsilon/builder.hpp"
#include "upsilon/enumerate.hpp"
#include "upsilon/membership.hpp"
#include "upsilon/reduction.hpp"
#include "upsilon/syntax.hpp"

namespace upsilon {
namespace {

using NT = NonTerminal;

Pattern P(std::string_view text) { return parse_pattern(text); }

const std::vector<ReductionGrammar>& merged() {
    static const std::vector<ReductionGrammar> levels = build_hierarchy(6);
    return levels;
}

const std::vector<ReductionGrammar>& unmerged() {
    static const std::vector<ReductionGrammar> levels = [] {
        BuildOptions options;
        options.fvar_merge = false;
        return build_hierarchy(3, options);
    }();
    return levels;
}

std::set<std::string> rhs_strings(const ReductionGrammar& g, NT x) {
    std::set<std::string> out;
    for (const Production& p : g.rules(x)) out.insert(to_string(p.rhs));
    return out;
}

std::set<std::string> strings(const std::vector<Pattern>& ps) {
    std::set<std::string> out;
    for (Pattern p : ps) out.insert(to_string(p));
    return out;
}

TEST(Seed, HoldsThePredefinedProductionsAndG0) {
    const ReductionGrammar g = seed();
    EXPECT_EQ(g.level(), 0u);
    EXPECT_EQ(rhs_strings(g, NT::G(0)), (std::set<std::string>{"N", "\\ G0", "G0 G0"}));
    EXPECT_EQ(rhs_strings(g, NT::T()), (std::set<std::string>{"N", "\\ T", "T T", "T[S]"}));
    EXPECT_EQ(rhs_strings(g, NT::S()), (std::set<std::string>{"T/", "+(S)", "^"}));
    EXPECT_EQ(rhs_strings(g, NT::N()), (std::set<std::string>{"0", "succ N"}));
    EXPECT_NO_THROW(require_well_formed(g));
}

TEST(Templates, WidthsAndShapes) {
    // Templates describe reducts, the shape of a term right after the rule.
    EXPECT_EQ(template_for(RuleTag::App).pattern, P("T[S] T[S]"));
    EXPECT_EQ(template_for(RuleTag::Lambda).pattern, P("\\ T[+(S)]"));
    EXPECT_EQ(template_for(RuleTag::FVar).pattern, P("T"));
    EXPECT_EQ(template_for(RuleTag::RVar).pattern, P("N"));
    EXPECT_EQ(template_for(RuleTag::FVarLift).pattern, P("0"));
    EXPECT_EQ(template_for(RuleTag::RVarLift).pattern, P("N[S][^]"));
    EXPECT_EQ(template_for(RuleTag::VarShift).pattern, P("succ N"));
    EXPECT_EQ(template_for(RuleTag::RVarLift).width, 2u);
    for (RuleTag r : kAllRules) {
        const Template t = template_for(r);
        EXPECT_EQ(t.rule, r);
        EXPECT_EQ(t.width, closure_width(t.pattern));
        EXPECT_EQ(padded(t, 2), reassemble(t.pattern, std::vector<Pattern>{P("S"), P("S")}));
    }
}

TEST(PhiMatchings, AgainstG0) {
    const ReductionGrammar g = seed();
    EXPECT_EQ(strings(phi_matchings(g, template_for(RuleTag::RVar))), std::set<std::string>{"N"});
    EXPECT_TRUE(phi_matchings(g, template_for(RuleTag::RVarLift)).empty());
    EXPECT_EQ(strings(phi_matchings(g, template_for(RuleTag::VarShift))), std::set<std::string>{"succ N"});
}

TEST(ApplyScheme, FirstLevel) {
    const ReductionGrammar g = seed();
    BuildOptions plain;
    plain.fvar_merge = false;
    EXPECT_EQ(strings(apply_scheme(RuleTag::FVar, g, plain)),
              (std::set<std::string>{"0[N/]", "0[(\\ G0)/]", "0[(G0 G0)/]"}));
    EXPECT_EQ(strings(apply_scheme(RuleTag::FVar, g)), std::set<std::string>{"0[G0/]"});
    EXPECT_EQ(strings(apply_scheme(RuleTag::RVar, g)), std::set<std::string>{"(succ N)[T/]"});
    EXPECT_EQ(strings(apply_scheme(RuleTag::FVarLift, g)), std::set<std::string>{"0[+(S)]"});
    EXPECT_EQ(strings(apply_scheme(RuleTag::VarShift, g)), std::set<std::string>{"N[^]"});
    EXPECT_TRUE(apply_scheme(RuleTag::Lambda, g).empty());
    EXPECT_TRUE(apply_scheme(RuleTag::App, g).empty());
    EXPECT_TRUE(apply_scheme(RuleTag::RVarLift, g).empty());
}

TEST(Extend, FirstLevelUnmergedHasNineProductions) {
    const ReductionGrammar& g1 = unmerged().at(1);
    EXPECT_EQ(rhs_strings(g1, NT::G(1)),
              (std::set<std::string>{"\\ G1", "G0 G1", "G1 G0", "0[(G0 G0)/]", "0[(\\ G0)/]", "0[N/]",
                                     "(succ N)[T/]", "0[+(S)]", "N[^]"}));
}

TEST(Extend, FirstLevelMergedHasSevenProductions) {
    const ReductionGrammar& g1 = merged().at(1);
    EXPECT_EQ(rhs_strings(g1, NT::G(1)), (std::set<std::string>{"\\ G1", "G0 G1", "G1 G0", "0[G0/]",
                                                                 "(succ N)[T/]", "0[+(S)]", "N[^]"}));
}

TEST(Extend, EveryLevelIsWellFormed) {
    for (const ReductionGrammar& g : merged()) {
        EXPECT_TRUE(check_simple(g).ok()) << check_simple(g).describe();
        EXPECT_TRUE(check_verbose(g).ok()) << check_verbose(g).describe();
        EXPECT_TRUE(check_conservative(g).ok()) << check_conservative(g).describe();
    }
}

TEST(Extend, LevelsOnlyGrow) {
    const auto& levels = merged();
    for (std::size_t k = 1; k < levels.size(); ++k) {
        EXPECT_EQ(levels[k].level(), k);
        for (std::uint32_t j = 0; j < k; ++j) {
            EXPECT_EQ(rhs_strings(levels[k], NT::G(j)), rhs_strings(levels[k - 1], NT::G(j)));
        }
    }
}

TEST(Extend, MergedAndUnmergedGenerateTheSameTerms) {
    Enumerator& e = Enumerator::shared();
    for (std::uint32_t k = 1; k <= 3; ++k) {
        Membership a(merged().at(k));
        Membership b(unmerged().at(k));
        for (std::uint64_t n = 1; n <= 10; ++n) {
            for (Pattern t : e.patterns(n, Sort::Term)) {
                for (std::uint32_t j = 0; j <= k; ++j) {
                    const Pattern x = Pattern::nonterminal(NT::G(j));
                    ASSERT_EQ(a.derivations(t, x), b.derivations(t, x)) << to_string(t) << " in G" << j;
                }
            }
        }
    }
}

TEST(Extend, RegularProductionsAreDisjoint) {
    // No term is generated by two non-structural productions, and every
    // term they generate still has a redex.
    const ReductionGrammar& g = merged().at(4);
    Membership m(g);
    Enumerator& e = Enumerator::shared();
    std::vector<Pattern> regular;
    for (const Production& p : g.rules(NT::G(4))) {
        if (!p.self_referencing()) regular.push_back(p.rhs);
    }
    for (std::uint64_t n = 1; n <= 9; ++n) {
        for (const Term& t : e.terms(n, Sort::Term)) {
            const Pattern tp = to_pattern(t);
            std::uint64_t hits = 0;
            for (Pattern rhs : regular) hits += m.derivations(tp, rhs);
            ASSERT_LE(hits, 1u) << to_string(t);
            if (hits == 1) {
                ASSERT_TRUE(find_redex(t)) << to_string(t);
            }
        }
    }
}

TEST(Extend, ClosureWidthStaysWithinTheLevel) {
    // A regular production of Gk has closure width at most k + 1.
    const auto& levels = merged();
    for (std::uint32_t k = 1; k < levels.size(); ++k) {
        std::size_t widest = 0;
        for (const Production& p : levels[k].rules(NT::G(k))) widest = std::max(widest, closure_width(p.rhs));
        EXPECT_LE(widest, k + 1) << "G" << k;
    }
}

TEST(Stream, MatchesTheStoredExtension) {
    const auto& levels = merged();
    for (std::uint32_t k = 0; k + 1 < levels.size(); ++k) {
        std::set<std::string> streamed;
        const StreamSummary summary = stream_extension(levels[k], [&](Pattern rhs) {
            EXPECT_TRUE(streamed.insert(to_string(rhs)).second) << "duplicate " << rhs;
        }, {}, 16);
        EXPECT_EQ(streamed, rhs_strings(levels[k + 1], NT::G(k + 1))) << "G" << k + 1;
        EXPECT_EQ(summary.productions, streamed.size());
        EXPECT_EQ(summary.potential, PotentialTable(levels[k + 1]).of(NT::G(k + 1)));
    }
}

TEST(Stream, UnmergedMatchesToo) {
    std::set<std::string> streamed;
    BuildOptions options;
    options.fvar_merge = false;
    stream_extension(unmerged().at(1), [&](Pattern rhs) { streamed.insert(to_string(rhs)); }, options);
    EXPECT_EQ(streamed, rhs_strings(unmerged().at(2), NT::G(2)));
}

TEST(Extend, ParallelBuildIsIdentical) {
    BuildOptions options;
    options.jobs = 4;
    const ReductionGrammar g = extend(merged().at(4), options);
    EXPECT_EQ(g.productions(), merged().at(5).productions());
}

TEST(BuildHierarchy, SmallCases) {
    const auto zero = build_hierarchy(0);
    ASSERT_EQ(zero.size(), 1u);
    EXPECT_EQ(zero[0].productions(), seed().productions());
    const auto one = build_hierarchy(1);
    ASSERT_EQ(one.size(), 2u);
    EXPECT_EQ(one[1].rules(NT::G(1)).size(), 7u);
}

TEST(Extend, RejectsMalformedInput) {
    ReductionGrammar bad = seed();
    bad.add(NT::G(0), P("G0[S]"));
    EXPECT_THROW(extend(bad), InvariantViolation);
}

} // namespace
} // namespace upsilon
