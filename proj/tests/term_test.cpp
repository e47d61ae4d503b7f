// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "upsilon/enumerate.hpp"
#include "upsilon/reduction.hpp"
#include "upsilon/syntax.hpp"
#include "upsilon/term.hpp"

namespace upsilon {
namespace {

Term idx(std::uint32_t n) { return Term::index(n); }
Term K() { return Term::abs(Term::abs(idx(1))); }

// delta(1) = 0[+(^)], delta(n + 1) = 0[delta(n)/]
Term delta(unsigned n) {
    Term t = Term::closure(idx(0), Term::lift(Term::shift()));
    for (unsigned i = 1; i < n; ++i) t = Term::closure(idx(0), Term::slash(t));
    return t;
}

TEST(Size, FollowsConstructorCount) {
    EXPECT_EQ(size(idx(0)), 1u);
    EXPECT_EQ(size(idx(4)), 5u);
    EXPECT_EQ(size(Term::abs(Term::abs(idx(1)))), 4u);
    EXPECT_EQ(size(Term::closure(idx(0), Term::shift())), 3u);
    EXPECT_EQ(size(Term::lift(Term::slash(idx(0)))), 3u);
}

TEST(Sorts, ConstructorsRejectWrongSorts) {
    EXPECT_THROW(Term::closure(idx(0), idx(0)), std::invalid_argument);
    EXPECT_THROW(Term::abs(Term::shift()), std::invalid_argument);
    EXPECT_THROW(Term::lift(idx(0)), std::invalid_argument);
    EXPECT_EQ(idx(3).sort(), Sort::Index);
    EXPECT_EQ(Term::shift().sort(), Sort::Subst);
    EXPECT_TRUE(sort_fits(Sort::Index, Sort::Term));
    EXPECT_FALSE(sort_fits(Sort::Term, Sort::Index));
}

TEST(Syntax, ParsesExamples) {
    EXPECT_EQ(parse_term("0[+(^)]"), Term::closure(idx(0), Term::lift(Term::shift())));
    EXPECT_EQ(parse_term("\\ \\ 1"), K());
    EXPECT_EQ(parse_term("(\\ 0 1)[(\\ \\ 1)/]"),
              Term::closure(Term::abs(Term::app(idx(0), idx(1))), Term::slash(K())));
    EXPECT_EQ(parse_term("0 1 2"), Term::app(Term::app(idx(0), idx(1)), idx(2)));
    EXPECT_EQ(parse_term("0 1[^]"), Term::app(idx(0), Term::closure(idx(1), Term::shift())));
    EXPECT_EQ(parse_term("0[^][^]"), Term::closure(Term::closure(idx(0), Term::shift()), Term::shift()));
    EXPECT_EQ(parse_term("  ((0))  "), idx(0));
}

TEST(Syntax, RejectsMalformedInputWithPosition) {
    try {
        parse_term("0[");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 2u);
    }
    EXPECT_THROW(parse_term(""), ParseError);
    EXPECT_THROW(parse_term("0)"), ParseError);
    EXPECT_THROW(parse_term("\\"), ParseError);
    EXPECT_THROW(parse_term("0[1]"), ParseError); // index where a substitution belongs
    EXPECT_THROW(parse_term("G1"), ParseError);   // nonterminals are pattern-only
}

TEST(Syntax, PrintParseRoundTripOnAllSmallTerms) {
    Enumerator& e = Enumerator::shared();
    for (std::uint64_t n = 1; n <= 8; ++n) {
        for (Sort sort : {Sort::Term, Sort::Subst}) {
            for (const Term& t : e.terms(n, sort)) ASSERT_EQ(parse_term(to_string(t)), t) << to_string(t);
        }
    }
}

TEST(Redex, FindsLeftmostOutermost) {
    const Term sub = Term::lift(Term::slash(K()));
    const Term t = Term::abs(Term::app(Term::closure(idx(0), sub), Term::closure(idx(1), sub)));
    auto r = find_redex(t);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->path, (std::vector<std::uint8_t>{0, 0}));
    EXPECT_EQ(r->rule, RuleTag::FVarLift);

    EXPECT_FALSE(find_redex(idx(5)));

    auto head = find_redex(Term::closure(idx(0), Term::slash(idx(0))));
    ASSERT_TRUE(head);
    EXPECT_TRUE(head->path.empty());
    EXPECT_EQ(head->rule, RuleTag::FVar);
}

TEST(Redex, NestedClosureBodyComesFirst) {
    // (0[^])[(0[^])/]: the root is not a redex, its body is, and the
    // substitution is left alone.
    const Term inner = Term::closure(idx(0), Term::shift());
    auto r = find_redex(Term::closure(inner, Term::slash(inner)));
    ASSERT_TRUE(r);
    EXPECT_EQ(r->path, std::vector<std::uint8_t>{0});
    EXPECT_EQ(r->rule, RuleTag::VarShift);
}

TEST(Redex, SearchesSubstitutions) {
    auto r = find_redex(parse_term("+((0 1)[^]/)"));
    ASSERT_TRUE(r);
    EXPECT_EQ(r->path, (std::vector<std::uint8_t>{0, 0}));
    EXPECT_EQ(r->rule, RuleTag::App);
}

TEST(Step, ContractsEachRule) {
    auto s = step(Term::closure(idx(0), Term::lift(Term::shift())));
    ASSERT_TRUE(s);
    EXPECT_EQ(s->result, idx(0));
    EXPECT_EQ(s->rule, RuleTag::FVarLift);

    s = step(Term::closure(idx(1), Term::shift()));
    ASSERT_TRUE(s);
    EXPECT_EQ(s->result, idx(2));
    EXPECT_EQ(s->rule, RuleTag::VarShift);

    EXPECT_FALSE(step(Term::abs(idx(0))));

    s = step(parse_term("(0 1)[^]"));
    ASSERT_TRUE(s);
    EXPECT_EQ(s->rule, RuleTag::App);
    EXPECT_EQ(s->result, parse_term("0[^] 1[^]"));

    s = step(parse_term("(\\ 0)[^]"));
    ASSERT_TRUE(s);
    EXPECT_EQ(s->rule, RuleTag::Lambda);
    EXPECT_EQ(s->result, parse_term("\\ 0[+(^)]"));

    s = step(parse_term("3[0/]"));
    ASSERT_TRUE(s);
    EXPECT_EQ(s->rule, RuleTag::RVar);
    EXPECT_EQ(s->result, idx(2));

    s = step(parse_term("2[+(^)]"));
    ASSERT_TRUE(s);
    EXPECT_EQ(s->rule, RuleTag::RVarLift);
    EXPECT_EQ(s->result, parse_term("1[^][^]"));
}

TEST(Normalize, WorkedExample) {
    const Term t = parse_term("(\\ 0 1)[(\\ \\ 1)/]");
    Normalization r = normalize(t, {std::nullopt, true});
    EXPECT_EQ(r.normal_form, Term::abs(Term::app(idx(0), K())));
    EXPECT_EQ(r.steps, 10u);
    ASSERT_EQ(r.trace.size(), 10u);
    const RuleTag expected[] = {RuleTag::Lambda,   RuleTag::App,    RuleTag::FVarLift, RuleTag::RVarLift,
                                RuleTag::FVar,     RuleTag::Lambda, RuleTag::Lambda,   RuleTag::RVarLift,
                                RuleTag::FVarLift, RuleTag::VarShift};
    for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(r.trace[i].rule, expected[i]) << "step " << i + 1;
    EXPECT_EQ(r.trace[4].term, parse_term("\\ 0 (\\ \\ 1)[^]"));
}

TEST(Normalize, TrivialCases) {
    Normalization r = normalize(idx(0));
    EXPECT_EQ(r.normal_form, idx(0));
    EXPECT_EQ(r.steps, 0u);
    EXPECT_TRUE(r.trace.empty());
    EXPECT_EQ(normalize(delta(3)).normal_form, idx(0));
    EXPECT_EQ(normalize(delta(3)).steps, 3u);
}

TEST(Normalize, DeltaFamilyTakesExactlyNSteps) {
    for (unsigned n = 1; n <= 50; ++n) EXPECT_EQ(normalize(delta(n)).steps, n) << "n = " << n;
}

TEST(Normalize, StepLimit) {
    EXPECT_THROW(normalize(delta(5), {4, false}), StepLimitExceeded);
    EXPECT_EQ(normalize(delta(5), {5, false}).steps, 5u);
    EXPECT_FALSE(count_steps(delta(5), 4));
    EXPECT_EQ(count_steps(delta(5), 5), 5u);
}

TEST(Normalize, TerminatesWithPureNormalFormsAndIsDeterministic) {
    Enumerator& e = Enumerator::shared();
    for (std::uint64_t n = 1; n <= 9; ++n) {
        for (const Term& t : e.terms(n, Sort::Term)) {
            Normalization a = normalize(t, {1000, true});
            ASSERT_TRUE(a.normal_form.is_pure()) << to_string(t);
            ASSERT_FALSE(find_redex(a.normal_form));
            Normalization b = normalize(t, {1000, true});
            ASSERT_EQ(a.steps, b.steps);
            for (std::size_t i = 0; i < a.trace.size(); ++i) {
                ASSERT_EQ(a.trace[i].term, b.trace[i].term);
                ASSERT_EQ(a.trace[i].rule, b.trace[i].rule);
            }
        }
    }
}

// Size change of a root contraction, from the shape of the redex alone.
std::int64_t expected_delta(const Term& t, RuleTag rule) {
    const auto sub = static_cast<std::int64_t>(size(t.child(1)));
    switch (rule) {
    case RuleTag::App: return 1 + sub;        // (a b)[s] -> a[s] (b[s])
    case RuleTag::Lambda: return 1;           // (\ a)[s] -> \ a[+(s)]
    case RuleTag::FVar: return -3;            // 0[a/] -> a
    case RuleTag::RVar: return -2 - sub;      // (n+1)[a/] -> n
    case RuleTag::FVarLift: return -1 - sub;  // 0[+(s)] -> 0
    case RuleTag::RVarLift: return 0;         // (n+1)[+(s)] -> n[s][^]
    case RuleTag::VarShift: return -1;        // n[^] -> n+1
    }
    return 0;
}

TEST(Reduction, RootContractionsChangeSizeByRuleArithmetic) {
    Enumerator& e = Enumerator::shared();
    std::size_t redexes = 0;
    for (std::uint64_t n = 1; n <= 9; ++n) {
        for (const Term& t : e.terms(n, Sort::Term)) {
            auto rule = redex_rule(t);
            if (!rule) continue;
            ++redexes;
            const Term r = contract(t, *rule);
            ASSERT_EQ(static_cast<std::int64_t>(size(r)) - static_cast<std::int64_t>(size(t)), expected_delta(t, *rule))
                << to_string(t) << " by " << to_string(*rule);
        }
    }
    EXPECT_GT(redexes, 1000u);
}

TEST(RuleTag, NamesRoundTrip) {
    EXPECT_EQ(kAllRules.size(), 7u);
    for (RuleTag r : kAllRules) EXPECT_EQ(rule_from_string(to_string(r)), r);
    EXPECT_FALSE(rule_from_string("Beta"));
}

} // namespace
} // namespace upsilon
