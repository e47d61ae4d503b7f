// SPDX-License-Identifier: Apache-2.0
#include "upsilon/membership.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace upsilon {

namespace {

constexpr std::uint64_t kUnreachable = std::numeric_limits<std::uint64_t>::max() / 4;

} // namespace

Membership::Membership(const ReductionGrammar& g, std::uint64_t cap) : grammar_(&g), cap_(cap < 1 ? 1 : cap) {
    compute_min_sizes();
}

std::uint64_t Membership::min_size(Pattern p) const {
    if (p.is_ground()) return p.symbols();
    if (p.kind() == Pattern::Kind::NonTerminal) {
        auto it = min_sizes_.find(p.nonterminal());
        return it == min_sizes_.end() ? kUnreachable : it->second;
    }
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < p.arity(); ++i) total = std::min(kUnreachable, total + min_size(p.child(i)));
    return total;
}

// Bellman-Ford style relaxation; sizes only decrease, so this terminates.
void Membership::compute_min_sizes() {
    const std::vector<NonTerminal> xs = grammar_->nonterminals();
    for (NonTerminal x : xs) min_sizes_[x] = kUnreachable;
    for (bool changed = true; changed;) {
        changed = false;
        for (NonTerminal x : xs) {
            std::uint64_t best = min_sizes_[x];
            for (const Production& p : grammar_->rules(x)) best = std::min(best, min_size(p.rhs));
            if (best < min_sizes_[x]) {
                min_sizes_[x] = best;
                changed = true;
            }
        }
    }
}

const Membership::Buckets& Membership::buckets(NonTerminal x) {
    auto it = index_.find(x);
    if (it != index_.end()) return it->second;
    Buckets b;
    for (const Production& p : grammar_->rules(x)) {
        b[static_cast<std::size_t>(p.rhs.kind())].push_back({min_size(p.rhs), p.rhs});
    }
    for (auto& bucket : b) {
        std::stable_sort(bucket.begin(), bucket.end(),
                         [](const Entry& l, const Entry& r) { return l.min_size < r.min_size; });
    }
    return index_.emplace(x, std::move(b)).first->second;
}

bool Membership::member(Pattern ground, Pattern p) { return derivations(ground, p) > 0; }

std::uint64_t Membership::derivations(Pattern ground, Pattern p) {
    if (!ground.is_ground()) throw std::invalid_argument("membership needs a ground pattern");
    if (p.kind() == Pattern::Kind::NonTerminal) return count(ground, p.nonterminal());
    if (ground.kind() != p.kind()) return 0;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < p.arity() && total > 0; ++i) {
        std::uint64_t product = 0;
        if (__builtin_mul_overflow(total, derivations(ground.child(i), p.child(i)), &product)) product = cap_;
        total = saturate(product);
    }
    return total;
}

std::uint64_t Membership::count(Pattern ground, NonTerminal x) {
    if (!sort_fits(ground.sort(), x.sort())) return 0;
    Key key{ground.node(), x};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const Buckets& b = buckets(x);
    std::uint64_t total = 0;
    const std::uint64_t size = ground.symbols();
    for (const Entry& e : b[static_cast<std::size_t>(ground.kind())]) {
        if (e.min_size > size) break;
        total = saturate(total + derivations(ground, e.rhs));
        if (total == cap_) break;
    }
    if (total < cap_) {
        for (const Entry& e : b[static_cast<std::size_t>(Pattern::Kind::NonTerminal)]) {
            if (e.min_size > size) break;
            total = saturate(total + count(ground, e.rhs.nonterminal()));
            if (total == cap_) break;
        }
    }
    memo_.emplace(key, total);
    return total;
}

std::uint64_t Membership::matching_productions(Pattern ground, NonTerminal x) {
    std::uint64_t n = 0;
    for (const Production& p : grammar_->rules(x)) {
        if (derivations(ground, p.rhs) > 0) ++n;
    }
    return n;
}

} // namespace upsilon
