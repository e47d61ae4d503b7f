// SPDX-License-Identifier: Apache-2.0
#include "upsilon/grammar.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <sstream>

namespace upsilon {

std::string to_string(const Production& p) { return p.lhs.name() + " -> " + to_string(p.rhs); }

std::ostream& operator<<(std::ostream& os, const Production& p) { return os << to_string(p); }

ReductionGrammar ReductionGrammar::with_predefined(std::uint32_t level) {
    const Pattern t = Pattern::nonterminal(NonTerminal::T());
    const Pattern s = Pattern::nonterminal(NonTerminal::S());
    const Pattern n = Pattern::nonterminal(NonTerminal::N());
    ReductionGrammar g(level);
    g.add(NonTerminal::T(), n);
    g.add(NonTerminal::T(), Pattern::abs(t));
    g.add(NonTerminal::T(), Pattern::app(t, t));
    g.add(NonTerminal::T(), Pattern::closure(t, s));
    g.add(NonTerminal::S(), Pattern::slash(t));
    g.add(NonTerminal::S(), Pattern::lift(s));
    g.add(NonTerminal::S(), Pattern::shift());
    g.add(NonTerminal::N(), Pattern::zero());
    g.add(NonTerminal::N(), Pattern::succ(n));
    return g;
}

bool ReductionGrammar::add(NonTerminal lhs, Pattern rhs) {
    if (!sort_fits(rhs.sort(), lhs.sort())) {
        throw std::invalid_argument("production " + lhs.name() + " -> " + to_string(rhs) + " is not well-sorted");
    }
    Production p{lhs, rhs};
    if (!seen_.insert(p).second) return false;
    rules_[lhs].push_back(p);
    return true;
}

std::span<const Production> ReductionGrammar::rules(NonTerminal x) const noexcept {
    auto it = rules_.find(x);
    if (it == rules_.end()) return {};
    return it->second;
}

std::vector<NonTerminal> ReductionGrammar::nonterminals() const {
    std::vector<NonTerminal> out;
    for (const auto& [x, list] : rules_) {
        if (!list.empty()) out.push_back(x);
    }
    return out;
}

std::vector<Production> ReductionGrammar::productions() const {
    std::vector<Production> out;
    out.reserve(seen_.size());
    for (const auto& [x, list] : rules_) out.insert(out.end(), list.begin(), list.end());
    return out;
}

ReductionGrammar ReductionGrammar::truncated(std::uint32_t k) const {
    ReductionGrammar g(k);
    for (const Production& p : productions()) {
        if (!p.lhs.is_level() || p.lhs.level <= k) g.add(p);
    }
    return g;
}

std::optional<NonTerminal> meet(NonTerminal x, NonTerminal y) noexcept {
    using K = NonTerminal::Kind;
    if (x == y) return x;
    if (x.kind == K::S || y.kind == K::S) return std::nullopt;
    if (x.kind == K::T) return y;
    if (y.kind == K::T) return x;
    // Remaining: N and levels. N sits below G0 only.
    if (x.kind == K::N && y == NonTerminal::G(0)) return x;
    if (y.kind == K::N && x == NonTerminal::G(0)) return y;
    return std::nullopt;
}

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b) throw std::overflow_error("potential overflow");
    return a + b;
}

} // namespace

PotentialTable::PotentialTable(const ReductionGrammar& g) : grammar_(&g) {
    std::vector<NonTerminal> active;
    for (NonTerminal x : {NonTerminal::N(), NonTerminal::T(), NonTerminal::S()}) compute(x, active);
    for (std::uint32_t k = 0; k <= g.level(); ++k) compute(NonTerminal::G(k), active);
}

std::uint64_t PotentialTable::of(NonTerminal x) const {
    auto it = values_.find(x);
    if (it == values_.end()) throw std::out_of_range("no potential for " + x.name());
    return it->second;
}

std::uint64_t PotentialTable::of(Pattern p) const {
    if (p.kind() == Pattern::Kind::NonTerminal) return of(p.nonterminal());
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < p.arity(); ++i) total = checked_add(total, of(p.child(i)));
    return total;
}

std::uint64_t PotentialTable::compute(NonTerminal x, std::vector<NonTerminal>& active) {
    if (auto it = values_.find(x); it != values_.end()) return it->second;
    if (std::find(active.begin(), active.end(), x) != active.end()) {
        throw InvariantViolation("potential of " + x.name() + " depends on itself through regular productions");
    }
    active.push_back(x);
    std::uint64_t best = 0;
    auto scan = [&](NonTerminal lhs) {
        for (const Production& p : grammar_->rules(lhs)) {
            if (!p.self_referencing()) best = std::max(best, compute(p.rhs, active));
        }
    };
    if (x.is_level()) {
        for (std::uint32_t k = 0; k <= x.level; ++k) scan(NonTerminal::G(k));
    } else {
        scan(x);
    }
    active.pop_back();
    std::uint64_t value = checked_add(best, 1);
    values_[x] = value;
    return value;
}

std::uint64_t PotentialTable::compute(Pattern p, std::vector<NonTerminal>& active) {
    if (p.kind() == Pattern::Kind::NonTerminal) return compute(p.nonterminal(), active);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < p.arity(); ++i) total = checked_add(total, compute(p.child(i), active));
    return total;
}

std::uint64_t potential(Pattern p, const ReductionGrammar& g) { return PotentialTable(g).of(p); }

ClosureSplit closure_split(Pattern p) {
    std::vector<Pattern> tail;
    while (p.kind() == Pattern::Kind::Closure) {
        tail.push_back(p.child(1));
        p = p.child(0);
    }
    std::reverse(tail.begin(), tail.end());
    return {p, std::move(tail)};
}

Pattern reassemble(Pattern head, std::span<const Pattern> tail) {
    for (Pattern sub : tail) head = Pattern::closure(head, sub);
    return head;
}

std::size_t closure_width(Pattern p) {
    std::size_t w = 0;
    for (; p.kind() == Pattern::Kind::Closure; p = p.child(0)) ++w;
    return w;
}

std::string CheckReport::describe() const {
    std::ostringstream out;
    for (const Violation& v : violations) out << v.production << ": " << v.reason << '\n';
    return out.str();
}

namespace {

// Builds the reference set on each call rather than caching patterns, so it
// is safe inside a PatternScope; only the nine T, S, N productions get here.
bool is_predefined(const Production& p) {
    const ReductionGrammar base = ReductionGrammar::with_predefined();
    for (const Production& q : base.rules(p.lhs)) {
        if (q == p) return true;
    }
    return false;
}

// Collects every nonterminal leaf of `p`.
void leaves(Pattern p, std::vector<NonTerminal>& out) {
    if (p.is_ground()) return;
    if (p.kind() == Pattern::Kind::NonTerminal) {
        out.push_back(p.nonterminal());
        return;
    }
    for (std::size_t i = 0; i < p.arity(); ++i) leaves(p.child(i), out);
}

} // namespace

std::optional<std::string> simple_violation(const Production& p, std::uint32_t level) {
    if (!p.lhs.is_level()) {
        if (!is_predefined(p)) return "not one of the predefined T, S, N productions";
        return std::nullopt;
    }
    const std::uint32_t k = p.lhs.level;
    if (k > level) return "level above the grammar's axiom";
    const Pattern self = Pattern::nonterminal(p.lhs);
    const Pattern base = Pattern::nonterminal(NonTerminal::G(0));
    if (p.self_referencing()) {
        bool allowed =
            p.rhs == Pattern::abs(self) || p.rhs == Pattern::app(base, self) || p.rhs == Pattern::app(self, base);
        if (!allowed) return "self-reference outside \\ Gk, G0 Gk, Gk G0";
        return std::nullopt;
    }
    std::vector<NonTerminal> used;
    leaves(p.rhs, used);
    for (NonTerminal x : used) {
        if (x.is_level() && x.level >= k) return "mentions " + x.name() + ", which is not a lower level";
    }
    return std::nullopt;
}

CheckReport check_simple(const ReductionGrammar& g) {
    CheckReport report;
    for (const Production& p : g.productions()) {
        if (auto why = simple_violation(p, g.level())) report.violations.push_back({p, *why});
    }
    return report;
}

bool is_simple(const ReductionGrammar& g) { return check_simple(g).ok(); }

std::optional<std::string> verbose_violation(const Production& p) {
    Pattern head = closure_split(p.rhs).head;
    if (head.kind() == Pattern::Kind::NonTerminal && head.nonterminal().is_level()) {
        return "closure head is the level nonterminal " + head.nonterminal().name();
    }
    return std::nullopt;
}

CheckReport check_verbose(const ReductionGrammar& g) {
    CheckReport report;
    for (const Production& p : g.productions()) {
        if (auto why = verbose_violation(p)) report.violations.push_back({p, *why});
    }
    return report;
}

bool is_verbose(const ReductionGrammar& g) { return check_verbose(g).ok(); }

bool is_conservative(const Production& p, const PotentialTable& potentials) {
    const std::uint64_t bound = potentials.of(p.lhs);
    for (std::size_t i = 0; i < p.rhs.arity(); ++i) {
        if (potentials.of(p.rhs.child(i)) > bound) return false;
    }
    return true;
}

bool is_conservative(const Production& p, const ReductionGrammar& g) {
    return is_conservative(p, PotentialTable(g));
}

CheckReport check_conservative(const ReductionGrammar& g) {
    CheckReport report;
    PotentialTable potentials(g);
    for (const Production& p : g.productions()) {
        if (p.lhs == NonTerminal::T() || !p.self_referencing()) continue;
        if (!is_conservative(p, potentials)) {
            report.violations.push_back({p, "self-referencing production is not conservative"});
        }
    }
    return report;
}

void require_well_formed(const ReductionGrammar& g) {
    for (auto check : {&check_simple, &check_verbose, &check_conservative}) {
        CheckReport r = check(g);
        if (!r.ok()) {
            const Violation& v = r.violations.front();
            throw InvariantViolation(to_string(v.production) + ": " + v.reason);
        }
    }
}

} // namespace upsilon
