// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "upsilon/term.hpp"

namespace upsilon {

/// Nonterminal of a reduction grammar: the predefined T, S, N or a level G_k.
struct NonTerminal {
    enum class Kind : std::uint8_t { T, S, N, G };

    Kind kind = Kind::T;
    std::uint32_t level = 0; // only meaningful for G

    static constexpr NonTerminal T() noexcept { return {Kind::T, 0}; }
    static constexpr NonTerminal S() noexcept { return {Kind::S, 0}; }
    static constexpr NonTerminal N() noexcept { return {Kind::N, 0}; }
    static constexpr NonTerminal G(std::uint32_t k) noexcept { return {Kind::G, k}; }

    constexpr bool is_level() const noexcept { return kind == Kind::G; }
    constexpr Sort sort() const noexcept {
        switch (kind) {
        case Kind::S: return Sort::Subst;
        case Kind::N: return Sort::Index;
        default: return Sort::Term;
        }
    }

    std::string name() const;

    friend constexpr auto operator<=>(const NonTerminal&, const NonTerminal&) = default;
};

/// Parses `T`, `S`, `N` or `G<k>`.
std::optional<NonTerminal> parse_nonterminal(std::string_view text) noexcept;
std::ostream& operator<<(std::ostream& os, NonTerminal x);

namespace detail {
struct PatternNode;
}

/// A tree over the ranked alphabet (0, succ, lambda, application, closure,
/// slash, lift, shift) whose leaves may be nonterminals. Patterns are
/// hash-consed: structurally equal patterns share one node, so equality and
/// hashing are O(1). Ground indices are stored as succ chains over 0.
class Pattern {
public:
    enum class Kind : std::uint8_t { Zero, Succ, Abs, App, Closure, Slash, Lift, Shift, NonTerminal };

    static Pattern zero();
    static Pattern succ(Pattern p);
    static Pattern index(std::uint32_t n);
    static Pattern abs(Pattern body);
    static Pattern app(Pattern left, Pattern right);
    static Pattern closure(Pattern body, Pattern sub);
    static Pattern slash(Pattern body);
    static Pattern lift(Pattern sub);
    static Pattern shift();
    static Pattern nonterminal(NonTerminal x);

    Kind kind() const noexcept;
    Sort sort() const noexcept;
    std::size_t arity() const noexcept;
    Pattern child(std::size_t i) const noexcept;
    NonTerminal nonterminal() const;

    bool is_ground() const noexcept;
    /// Number of constructor occurrences (nonterminal leaves excluded).
    std::uint64_t symbols() const noexcept;
    std::size_t hash() const noexcept;
    const detail::PatternNode* node() const noexcept { return node_; }

    friend bool operator==(Pattern a, Pattern b) noexcept { return a.node_ == b.node_; }

    /// Wraps an interned node; only the arena hands these out.
    explicit Pattern(const detail::PatternNode* node) noexcept : node_(node) {}

private:
    const detail::PatternNode* node_;
};

namespace detail {
struct PatternNode {
    Pattern::Kind kind;
    Sort sort;
    NonTerminal nt;
    const PatternNode* a;
    const PatternNode* b;
    std::size_t hash;
    std::uint64_t symbols;
    bool ground;
};
} // namespace detail

inline Pattern::Kind Pattern::kind() const noexcept { return node_->kind; }
inline Sort Pattern::sort() const noexcept { return node_->sort; }
inline bool Pattern::is_ground() const noexcept { return node_->ground; }
inline std::uint64_t Pattern::symbols() const noexcept { return node_->symbols; }
inline std::size_t Pattern::hash() const noexcept { return node_->hash; }
inline Pattern Pattern::child(std::size_t i) const noexcept { return Pattern(i == 0 ? node_->a : node_->b); }

/// Same constructor (and same nonterminal, for leaves).
bool same_symbol(Pattern a, Pattern b) noexcept;

/// True when `x` occurs somewhere in `p`.
bool mentions(Pattern p, NonTerminal x) noexcept;

/// Ground pattern of a term (indices become succ chains).
Pattern to_pattern(const Term& t);
/// Inverse of to_pattern; empty when `p` is not ground.
std::optional<Term> to_term(Pattern p);

std::string to_string(Pattern p);
std::ostream& operator<<(std::ostream& os, Pattern p);

/// Number of distinct pattern nodes interned so far.
std::size_t interned_pattern_count();

/// Releases, on destruction, every pattern interned during its lifetime.
/// Nothing created inside the scope may be used after it ends, and no other
/// thread may intern patterns across the boundary. Scopes nest.
class PatternScope {
public:
    PatternScope();
    ~PatternScope();
    PatternScope(const PatternScope&) = delete;
    PatternScope& operator=(const PatternScope&) = delete;

private:
    std::size_t mark_;
};

} // namespace upsilon

template <>
struct std::hash<upsilon::Pattern> {
    std::size_t operator()(upsilon::Pattern p) const noexcept { return p.hash(); }
};

template <>
struct std::hash<upsilon::NonTerminal> {
    std::size_t operator()(upsilon::NonTerminal x) const noexcept {
        return (static_cast<std::size_t>(x.kind) << 32) ^ x.level;
    }
};
