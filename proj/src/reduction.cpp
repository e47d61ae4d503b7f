// SPDX-License-Identifier: Apache-2.0
#include "upsilon/reduction.hpp"

#include <string>

namespace upsilon {

using K = Term::Kind;

StepLimitExceeded::StepLimitExceeded(std::uint64_t limit)
    : std::runtime_error("normalisation exceeded the step limit of " + std::to_string(limit)), limit_(limit) {}

std::optional<RuleTag> redex_rule(const Term& t) noexcept {
    if (t.kind() != K::Closure) return std::nullopt;
    const Term& body = t.child(0);
    const Term& sub = t.child(1);
    switch (body.kind()) {
    case K::App: return RuleTag::App;
    case K::Abs: return RuleTag::Lambda;
    case K::Index: {
        bool zero = body.index_value() == 0;
        switch (sub.kind()) {
        case K::Slash: return zero ? RuleTag::FVar : RuleTag::RVar;
        case K::Lift: return zero ? RuleTag::FVarLift : RuleTag::RVarLift;
        case K::Shift: return RuleTag::VarShift;
        default: return std::nullopt;
        }
    }
    default: return std::nullopt;
    }
}

Term contract(const Term& t, RuleTag rule) {
    const Term& body = t.child(0);
    const Term& sub = t.child(1);
    switch (rule) {
    case RuleTag::App:
        return Term::app(Term::closure(body.child(0), sub), Term::closure(body.child(1), sub));
    case RuleTag::Lambda: return Term::abs(Term::closure(body.child(0), Term::lift(sub)));
    case RuleTag::FVar: return sub.child(0);
    case RuleTag::RVar: return Term::index(body.index_value() - 1);
    case RuleTag::FVarLift: return body;
    case RuleTag::RVarLift:
        return Term::closure(Term::closure(Term::index(body.index_value() - 1), sub.child(0)), Term::shift());
    case RuleTag::VarShift: return Term::index(body.index_value() + 1);
    }
    throw std::logic_error("unknown rule");
}

namespace {

Term with_child(const Term& t, std::size_t i, Term c) {
    switch (t.kind()) {
    case K::Abs: return Term::abs(std::move(c));
    case K::App: return i == 0 ? Term::app(std::move(c), t.child(1)) : Term::app(t.child(0), std::move(c));
    case K::Closure:
        return i == 0 ? Term::closure(std::move(c), t.child(1)) : Term::closure(t.child(0), std::move(c));
    case K::Slash: return Term::slash(std::move(c));
    case K::Lift: return Term::lift(std::move(c));
    default: throw std::logic_error("with_child on a leaf");
    }
}

bool find_into(const Term& t, std::vector<std::uint8_t>& path, RuleTag& rule) {
    if (auto r = redex_rule(t)) {
        rule = *r;
        return true;
    }
    for (std::size_t i = 0; i < t.arity(); ++i) {
        if (t.child(i).is_pure()) continue;
        path.push_back(static_cast<std::uint8_t>(i));
        if (find_into(t.child(i), path, rule)) return true;
        path.pop_back();
    }
    return false;
}

} // namespace

std::optional<Redex> find_redex(const Term& t) {
    Redex redex{{}, RuleTag::App};
    if (find_into(t, redex.path, redex.rule)) return redex;
    return std::nullopt;
}

std::optional<Step> step(const Term& t) {
    if (t.is_pure()) return std::nullopt;
    if (auto rule = redex_rule(t)) return Step{contract(t, *rule), *rule};
    for (std::size_t i = 0; i < t.arity(); ++i) {
        if (auto inner = step(t.child(i))) return Step{with_child(t, i, std::move(inner->result)), inner->rule};
    }
    return std::nullopt;
}

Normalization normalize(const Term& t, const NormalizeOptions& options) {
    Normalization result{t, 0, {}};
    while (auto next = step(result.normal_form)) {
        if (options.step_limit && result.steps == *options.step_limit) throw StepLimitExceeded(*options.step_limit);
        result.normal_form = std::move(next->result);
        ++result.steps;
        if (options.trace) result.trace.push_back({result.normal_form, next->rule});
    }
    return result;
}

std::optional<std::uint64_t> count_steps(const Term& t, std::uint64_t limit) {
    Term current = t;
    std::uint64_t steps = 0;
    while (auto next = step(current)) {
        if (steps == limit) return std::nullopt;
        current = std::move(next->result);
        ++steps;
    }
    return steps;
}

} // namespace upsilon
