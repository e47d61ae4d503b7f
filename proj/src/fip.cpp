// SPDX-License-Identifier: Apache-2.0
#include "upsilon/fip.hpp"

#include "upsilon/enumerate.hpp"
#include "upsilon/membership.hpp"

namespace upsilon {

namespace {

// Appends the parts of `extra` not already present in `out`.
void merge_into(FipResult& out, std::unordered_set<Pattern>& seen, const FipResult& extra) {
    for (Pattern p : extra) {
        if (seen.insert(p).second) out.push_back(p);
    }
}

Pattern rebuild(Pattern shape, Pattern x, std::optional<Pattern> y) {
    using K = Pattern::Kind;
    switch (shape.kind()) {
    case K::Succ: return Pattern::succ(x);
    case K::Abs: return Pattern::abs(x);
    case K::App: return Pattern::app(x, *y);
    case K::Closure: return Pattern::closure(x, *y);
    case K::Slash: return Pattern::slash(x);
    case K::Lift: return Pattern::lift(x);
    default: return shape;
    }
}

} // namespace

FipEngine::FipEngine(const ReductionGrammar& g, FipOptions options) : grammar_(&g), options_(options) {
    if (options_.precheck) {
        CheckReport report = check_conservative(g);
        if (!report.ok()) throw NonConservativeGrammar("grammar is not conservative: " + report.describe());
    }
}

FipResult FipEngine::fip(Pattern a, Pattern b) {
    Key key{a.node(), b.node()};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (!active_.insert(key).second) {
        throw NonConservativeGrammar("intersection of " + to_string(a) + " and " + to_string(b) +
                                     " recurs on itself; the grammar is not conservative");
    }
    max_depth_ = std::max(max_depth_, active_.size());
    struct Release {
        std::unordered_set<Key, KeyHash>& set;
        Key key;
        ~Release() { set.erase(key); }
    } release{active_, key};
    FipResult result = compute(a, b);
    memo_.emplace(key, result);
    return result;
}

FipResult FipEngine::compute(Pattern a, Pattern b) {
    using K = Pattern::Kind;
    const bool a_leaf = a.kind() == K::NonTerminal;
    const bool b_leaf = b.kind() == K::NonTerminal;
    if (a_leaf && b_leaf) {
        if (auto m = meet(a.nonterminal(), b.nonterminal())) return {Pattern::nonterminal(*m)};
        return {};
    }
    if (!a_leaf && b_leaf) return fip(b, a);
    if (a_leaf) return expand(a.nonterminal(), b);

    if (a.kind() != b.kind()) return {};
    if (a.arity() == 0) return {a};
    FipResult first = fip(a.child(0), b.child(0));
    if (first.empty()) return {};
    FipResult out;
    std::unordered_set<Pattern> seen;
    if (a.arity() == 1) {
        for (Pattern x : first) merge_into(out, seen, {rebuild(a, x, std::nullopt)});
        return out;
    }
    FipResult second = fip(a.child(1), b.child(1));
    for (Pattern x : first) {
        for (Pattern y : second) merge_into(out, seen, {rebuild(a, x, y)});
    }
    return out;
}

FipResult FipEngine::expand(NonTerminal x, Pattern b) {
    if (!sort_fits(b.sort(), x.sort())) return {};
    if (options_.t_shortcut && x == NonTerminal::T()) return {b};
    FipResult out;
    std::unordered_set<Pattern> seen;
    for (const Production& p : grammar_->rules(x)) merge_into(out, seen, fip(p.rhs, b));
    return out;
}

FipResult fip(Pattern a, Pattern b, const ReductionGrammar& g, FipOptions options) {
    return FipEngine(g, options).fip(a, b);
}

bool fip_check(Pattern a, Pattern b, const FipResult& parts, std::uint64_t bound, const ReductionGrammar& g) {
    Membership m(g);
    Enumerator& terms = Enumerator::shared();
    for (std::uint64_t n = 1; n <= bound; ++n) {
        for (Sort sort : {Sort::Term, Sort::Subst}) {
        for (const Pattern& t : terms.patterns(n, sort)) {
            const bool wanted = m.member(t, a) && m.member(t, b);
            std::size_t hits = 0;
            for (Pattern part : parts) {
                if (m.member(t, part)) ++hits;
            }
            if (hits != (wanted ? 1u : 0u)) return false;
        }
        }
    }
    return true;
}

} // namespace upsilon
