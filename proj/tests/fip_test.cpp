// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>

#include "upsilon/builder.hpp"
#include "upsilon/enumerate.hpp"
#include "upsilon/fip.hpp"
#include "upsilon/membership.hpp"
#include "upsilon/syntax.hpp"

namespace upsilon {
namespace {

using NT = NonTerminal;

Pattern P(std::string_view text) { return parse_pattern(text); }

const ReductionGrammar& level(std::uint32_t k) {
    static const std::vector<ReductionGrammar> levels = build_hierarchy(4);
    return levels.at(k);
}

std::vector<std::string> strings(const FipResult& parts) {
    std::vector<std::string> out;
    for (Pattern p : parts) out.push_back(to_string(p));
    std::sort(out.begin(), out.end());
    return out;
}

TEST(Fip, Examples) {
    const ReductionGrammar& g2 = level(2);
    EXPECT_EQ(strings(fip(P("0"), P("0"), g2)), std::vector<std::string>{"0"});
    EXPECT_EQ(strings(fip(P("N"), P("succ N"), g2)), std::vector<std::string>{"succ N"});
    EXPECT_TRUE(fip(P("G1"), P("G2"), g2).empty());
    EXPECT_TRUE(fip(P("S"), P("T"), g2).empty());
    EXPECT_EQ(strings(fip(P("T"), P("\\ T[+(S)]"), g2)), std::vector<std::string>{"\\ T[+(S)]"});
    EXPECT_TRUE(fip(P("0"), P("succ N"), g2).empty());
    EXPECT_TRUE(fip(P("\\ T"), P("T T"), g2).empty());
}

TEST(Fip, ExpandsLevelNonterminals) {
    // G0 against an index: only the N production survives.
    EXPECT_EQ(strings(fip(P("G0"), P("succ N"), level(0))), std::vector<std::string>{"succ N"});
    // G1 against a shifted index: exactly N[^].
    EXPECT_EQ(strings(fip(P("G1"), P("N[^]"), level(1))), std::vector<std::string>{"N[^]"});
    EXPECT_TRUE(fip(P("G0"), P("N[^]"), level(1)).empty());
}

TEST(Fip, IsSymmetric) {
    const ReductionGrammar& g = level(2);
    const std::vector<Pattern> ps{P("T"), P("N"), P("G0"), P("G1"), P("G2"), P("\\ T"), P("T T"),
                                  P("T[S]"), P("N[^]"), P("0[T/]"), P("(succ N)[+(S)]"), P("G0 G1")};
    for (Pattern a : ps) {
        for (Pattern b : ps) EXPECT_EQ(strings(fip(a, b, g)), strings(fip(b, a, g))) << a << " / " << b;
    }
}

TEST(Fip, ResultsPartitionTheIntersection) {
    const ReductionGrammar& g = level(2);
    const std::vector<Pattern> ps{P("T"), P("G0"), P("G1"), P("G2"), P("T[S]"), P("\\ T"), P("T T"),
                                  P("(T T)[S]"), P("(\\ T)[S]"), P("N[S]"), P("0[S]")};
    for (Pattern a : ps) {
        for (Pattern b : ps) {
            const FipResult parts = fip(a, b, g);
            EXPECT_TRUE(fip_check(a, b, parts, 8, g)) << a << " / " << b;
        }
    }
}

TEST(FipCheck, DetectsWrongAnswers) {
    const ReductionGrammar& g = level(1);
    EXPECT_TRUE(fip_check(P("N"), P("succ N"), {P("succ N")}, 8, g));
    EXPECT_FALSE(fip_check(P("N"), P("succ N"), {P("N")}, 8, g));  // too large
    EXPECT_FALSE(fip_check(P("N"), P("succ N"), {}, 8, g));        // too small
    EXPECT_FALSE(fip_check(P("N"), P("N"), {P("0"), P("N")}, 8, g)); // overlapping parts
}

TEST(Fip, EngineMemoizesAndBoundsDepth) {
    FipEngine engine(level(3));
    const FipResult a = engine.fip(P("G3"), P("T[S]"));
    const std::size_t depth = engine.max_depth();
    EXPECT_FALSE(a.empty());
    EXPECT_GT(depth, 0u);
    EXPECT_EQ(engine.fip(P("G3"), P("T[S]")), a);
    EXPECT_EQ(engine.max_depth(), depth);
}

TEST(Fip, WithoutTheTShortcutGivesTheSameLanguage) {
    const ReductionGrammar& g = level(1);
    FipOptions slow;
    slow.t_shortcut = false;
    Membership m(g);
    Enumerator& e = Enumerator::shared();
    for (auto [a, b] : {std::pair{P("T"), P("G1")}, std::pair{P("T"), P("(\\ T)[S]")}, std::pair{P("G1"), P("T T")}}) {
        const FipResult fast = fip(a, b, g);
        const FipResult plain = fip(a, b, g, slow);
        for (std::uint64_t n = 1; n <= 8; ++n) {
            for (Pattern t : e.patterns(n, Sort::Term)) {
                std::uint64_t x = 0, y = 0;
                for (Pattern p : fast) x += m.derivations(t, p);
                for (Pattern p : plain) y += m.derivations(t, p);
                ASSERT_EQ(x > 0, y > 0) << to_string(t);
            }
        }
    }
}

// X -> 0 | \ \ X: the self-reference sits under a pattern heavier than X.
ReductionGrammar non_conservative() {
    ReductionGrammar g = seed();
    g.set_level(1);
    g.add(NT::G(1), P("0"));
    g.add(NT::G(1), P("\\ \\ G1"));
    return g;
}

TEST(Fip, RefusesNonConservativeGrammars) {
    const ReductionGrammar g = non_conservative();
    EXPECT_THROW(fip(P("G1"), P("\\ G1"), g), NonConservativeGrammar);
}

TEST(Fip, CycleGuardCatchesDivergence) {
    const ReductionGrammar g = non_conservative();
    FipOptions options;
    options.precheck = false;
    EXPECT_THROW(fip(P("G1"), P("\\ G1"), g, options), NonConservativeGrammar);
}

} // namespace
} // namespace upsilon
