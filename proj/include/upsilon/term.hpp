// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace upsilon {

/// The three syntactic sorts of the calculus. Index terms are also terms.
enum class Sort : std::uint8_t { Term, Subst, Index };

/// True when a value of sort `actual` may stand where `expected` is required.
constexpr bool sort_fits(Sort actual, Sort expected) noexcept {
    return actual == expected || (actual == Sort::Index && expected == Sort::Term);
}

std::string_view to_string(Sort sort) noexcept;

/// The seven substitution-resolution rules. Beta is not part of this fragment.
enum class RuleTag : std::uint8_t { App, Lambda, FVar, RVar, FVarLift, RVarLift, VarShift };

inline constexpr std::array<RuleTag, 7> kAllRules{RuleTag::App,      RuleTag::Lambda,   RuleTag::FVar,
                                                  RuleTag::RVar,     RuleTag::FVarLift, RuleTag::RVarLift,
                                                  RuleTag::VarShift};

std::string_view to_string(RuleTag rule) noexcept;
std::optional<RuleTag> rule_from_string(std::string_view name) noexcept;

/// Immutable ground term of the calculus. Covers both syntactic houses:
/// terms (Index, Abs, App, Closure) and substitutions (Slash, Lift, Shift).
/// Copies share structure; equality is structural.
class Term {
public:
    enum class Kind : std::uint8_t { Index, Abs, App, Closure, Slash, Lift, Shift };

    static Term index(std::uint32_t n);
    static Term abs(Term body);
    static Term app(Term left, Term right);
    static Term closure(Term body, Term sub);
    static Term slash(Term body);
    static Term lift(Term sub);
    static Term shift();

    Kind kind() const noexcept;
    Sort sort() const noexcept;
    std::size_t arity() const noexcept;

    /// De Bruijn value of an Index node.
    std::uint32_t index_value() const;

    /// i-th child; for Closure the body is child 0 and the substitution child 1.
    const Term& child(std::size_t i) const;

    /// Constructor count under the natural size notion (|n| = n + 1).
    std::uint64_t size() const noexcept;
    std::size_t hash() const noexcept;

    /// True iff the term contains no Closure.
    bool is_pure() const noexcept;

    friend bool operator==(const Term& a, const Term& b) noexcept;

private:
    struct Node;
    Term() = default;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Term make(Kind kind, std::uint32_t value, const Term* a, const Term* b);

    std::shared_ptr<const Node> node_;
};

struct Term::Node {
    Kind kind;
    std::uint32_t value; // de Bruijn value for Index nodes
    std::uint64_t size;
    std::size_t hash;
    bool pure;
    Term children[2];
};

inline Term::Kind Term::kind() const noexcept { return node_->kind; }
inline std::uint64_t Term::size() const noexcept { return node_->size; }
inline std::size_t Term::hash() const noexcept { return node_->hash; }
inline bool Term::is_pure() const noexcept { return node_->pure; }
inline const Term& Term::child(std::size_t i) const { return node_->children[i]; }

std::string to_string(const Term& t);
std::ostream& operator<<(std::ostream& os, const Term& t);

/// Size of a term or substitution; same as t.size().
inline std::uint64_t size(const Term& t) noexcept { return t.size(); }

} // namespace upsilon

template <>
struct std::hash<upsilon::Term> {
    std::size_t operator()(const upsilon::Term& t) const noexcept { return t.hash(); }
};
