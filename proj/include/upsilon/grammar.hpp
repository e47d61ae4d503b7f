// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "upsilon/pattern.hpp"

namespace upsilon {

struct Production {
    NonTerminal lhs;
    Pattern rhs;

    /// True when the left-hand side occurs in the right-hand side.
    bool self_referencing() const noexcept { return mentions(rhs, lhs); }

    friend bool operator==(const Production& a, const Production& b) noexcept {
        return a.lhs == b.lhs && a.rhs == b.rhs;
    }
};

std::string to_string(const Production& p);
std::ostream& operator<<(std::ostream& os, const Production& p);

/// Thrown when a constructed grammar breaks one of its structural invariants.
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A regular tree grammar over the nonterminals T, S, N, G0..Gn. Production
/// lists keep insertion order and never hold structural duplicates.
class ReductionGrammar {
public:
    /// Empty grammar at the given level, without the predefined productions.
    explicit ReductionGrammar(std::uint32_t level = 0) : level_(level) {}

    /// The nine productions of T, S and N that describe all terms:
    /// T -> N | \ T | T T | T[S],  S -> T/ | +(S) | ^,  N -> 0 | succ N.
    static ReductionGrammar with_predefined(std::uint32_t level = 0);

    std::uint32_t level() const noexcept { return level_; }
    void set_level(std::uint32_t level) noexcept { level_ = level; }
    NonTerminal axiom() const noexcept { return NonTerminal::G(level_); }

    /// Adds a production; returns false for a duplicate. Throws
    /// std::invalid_argument when lhs and rhs sorts disagree.
    bool add(NonTerminal lhs, Pattern rhs);
    bool add(const Production& p) { return add(p.lhs, p.rhs); }

    std::span<const Production> rules(NonTerminal x) const noexcept;
    /// Nonterminals with at least one production, in order T, S, N, G0, G1, ...
    std::vector<NonTerminal> nonterminals() const;
    /// All productions, grouped by nonterminal in the order above.
    std::vector<Production> productions() const;
    std::size_t size() const noexcept { return seen_.size(); }

    /// Copy restricted to levels G0..Gk, with level set to k.
    ReductionGrammar truncated(std::uint32_t k) const;

private:
    struct ProductionHash {
        std::size_t operator()(const Production& p) const noexcept {
            return std::hash<Pattern>{}(p.rhs) * 31 + std::hash<NonTerminal>{}(p.lhs);
        }
    };

    std::uint32_t level_;
    std::map<NonTerminal, std::vector<Production>> rules_;
    std::unordered_set<Production, ProductionHash> seen_;
};

/// Greatest lower bound in the sort poset N <= G0 <= T, Gk <= T, S alone.
/// Empty when the two are incomparable, i.e. their languages are disjoint.
std::optional<NonTerminal> meet(NonTerminal x, NonTerminal y) noexcept;

/// Potential of each nonterminal. Regular productions strictly decrease
/// potential, which bounds the recursion depth of the intersection algorithm.
class PotentialTable {
public:
    explicit PotentialTable(const ReductionGrammar& g);

    std::uint64_t of(NonTerminal x) const;
    std::uint64_t of(Pattern p) const;

private:
    std::uint64_t compute(NonTerminal x, std::vector<NonTerminal>& active);
    std::uint64_t compute(Pattern p, std::vector<NonTerminal>& active);

    const ReductionGrammar* grammar_;
    std::map<NonTerminal, std::uint64_t> values_;
};

std::uint64_t potential(Pattern p, const ReductionGrammar& g);

/// Maximal decomposition head[tail_1]...[tail_w] with a non-closure head.
struct ClosureSplit {
    Pattern head;
    std::vector<Pattern> tail;

    std::size_t width() const noexcept { return tail.size(); }
};

ClosureSplit closure_split(Pattern p);
Pattern reassemble(Pattern head, std::span<const Pattern> tail);
std::size_t closure_width(Pattern p);

struct Violation {
    Production production;
    std::string reason;
};

/// Outcome of a structural check; empty `violations` means success.
struct CheckReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    explicit operator bool() const noexcept { return ok(); }
    std::string describe() const;
};

/// Self-referencing productions are only the predefined T, S, N ones or
/// Gk -> \ Gk | G0 Gk | Gk G0; all other Gk productions mention only T, S, N
/// and lower levels; T, S and N carry nothing beyond the predefined nine.
CheckReport check_simple(const ReductionGrammar& g);
/// Why `p` breaks simplicity in a grammar whose axiom is G(level), if it does.
std::optional<std::string> simple_violation(const Production& p, std::uint32_t level);
bool is_simple(const ReductionGrammar& g);

/// No right-hand side has a level nonterminal as its closure head.
CheckReport check_verbose(const ReductionGrammar& g);
std::optional<std::string> verbose_violation(const Production& p);
bool is_verbose(const ReductionGrammar& g);

/// Every argument of the rhs root has potential at most that of the lhs.
bool is_conservative(const Production& p, const ReductionGrammar& g);
bool is_conservative(const Production& p, const PotentialTable& potentials);

/// Conservativeness of all self-referencing productions. T is exempt: the
/// intersection algorithm answers T against any term-sorted pattern directly
/// and never expands T's productions, so T -> T[S] cannot cause divergence.
CheckReport check_conservative(const ReductionGrammar& g);

/// All three checks together; throws InvariantViolation naming the first
/// offending production.
void require_well_formed(const ReductionGrammar& g);

} // namespace upsilon
