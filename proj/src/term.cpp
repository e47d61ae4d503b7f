// SPDX-License-Identifier: Apache-2.0
#include "upsilon/term.hpp"

#include <stdexcept>

#include "detail/hash.hpp"
#include "detail/print_context.hpp"

namespace upsilon {

std::string_view to_string(Sort sort) noexcept {
    switch (sort) {
    case Sort::Term: return "term";
    case Sort::Subst: return "substitution";
    case Sort::Index: return "index";
    }
    return "?";
}

std::string_view to_string(RuleTag rule) noexcept {
    switch (rule) {
    case RuleTag::App: return "App";
    case RuleTag::Lambda: return "Lambda";
    case RuleTag::FVar: return "FVar";
    case RuleTag::RVar: return "RVar";
    case RuleTag::FVarLift: return "FVarLift";
    case RuleTag::RVarLift: return "RVarLift";
    case RuleTag::VarShift: return "VarShift";
    }
    return "?";
}

std::optional<RuleTag> rule_from_string(std::string_view name) noexcept {
    for (RuleTag rule : kAllRules) {
        if (to_string(rule) == name) return rule;
    }
    return std::nullopt;
}

Term Term::make(Kind kind, std::uint32_t value, const Term* a, const Term* b) {
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->value = value;
    node->size = 1;
    node->pure = kind != Kind::Closure;
    std::size_t h = detail::hash_mix(static_cast<std::size_t>(kind) + 1, value);
    if (kind == Kind::Index) node->size = std::uint64_t{value} + 1;
    for (const Term* c : {a, b}) {
        if (c == nullptr) continue;
        std::size_t slot = (c == a) ? 0 : 1;
        node->children[slot] = *c;
        node->size += c->size();
        node->pure = node->pure && c->is_pure();
        h = detail::hash_mix(h, c->hash());
    }
    node->hash = h;
    return Term(std::move(node));
}

namespace {

void require_sort(const Term& t, Sort expected, const char* what) {
    if (!sort_fits(t.sort(), expected)) {
        throw std::invalid_argument(std::string(what) + ": expected " + std::string(to_string(expected)) +
                                    ", got " + std::string(to_string(t.sort())));
    }
}

} // namespace

Term Term::index(std::uint32_t n) { return make(Kind::Index, n, nullptr, nullptr); }

Term Term::abs(Term body) {
    require_sort(body, Sort::Term, "abstraction body");
    return make(Kind::Abs, 0, &body, nullptr);
}

Term Term::app(Term left, Term right) {
    require_sort(left, Sort::Term, "application operator");
    require_sort(right, Sort::Term, "application operand");
    return make(Kind::App, 0, &left, &right);
}

Term Term::closure(Term body, Term sub) {
    require_sort(body, Sort::Term, "closure body");
    require_sort(sub, Sort::Subst, "closure substitution");
    return make(Kind::Closure, 0, &body, &sub);
}

Term Term::slash(Term body) {
    require_sort(body, Sort::Term, "slash body");
    return make(Kind::Slash, 0, &body, nullptr);
}

Term Term::lift(Term sub) {
    require_sort(sub, Sort::Subst, "lift argument");
    return make(Kind::Lift, 0, &sub, nullptr);
}

Term Term::shift() {
    static const Term instance = make(Kind::Shift, 0, nullptr, nullptr);
    return instance;
}

Sort Term::sort() const noexcept {
    switch (kind()) {
    case Kind::Index: return Sort::Index;
    case Kind::Abs:
    case Kind::App:
    case Kind::Closure: return Sort::Term;
    default: return Sort::Subst;
    }
}

std::size_t Term::arity() const noexcept {
    switch (kind()) {
    case Kind::Index:
    case Kind::Shift: return 0;
    case Kind::App:
    case Kind::Closure: return 2;
    default: return 1;
    }
}

std::uint32_t Term::index_value() const {
    if (kind() != Kind::Index) throw std::logic_error("index_value on a non-index term");
    return node_->value;
}

bool operator==(const Term& a, const Term& b) noexcept {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size()) return false;
    if (a.kind() == Term::Kind::Index) return a.node_->value == b.node_->value;
    for (std::size_t i = 0; i < a.arity(); ++i) {
        if (!(a.child(i) == b.child(i))) return false;
    }
    return true;
}

namespace {

using detail::PrintContext;
using detail::needs_parens;

void print(std::string& out, const Term& t, PrintContext ctx) {
    using K = Term::Kind;
    switch (t.kind()) {
    case K::Index: out += std::to_string(t.index_value()); return;
    case K::Shift: out += '^'; return;
    case K::Lift:
        out += "+(";
        print(out, t.child(0), PrintContext::Top);
        out += ')';
        return;
    case K::Slash:
        print(out, t.child(0), PrintContext::SlashBody);
        out += '/';
        return;
    case K::Closure:
        print(out, t.child(0), PrintContext::ClosureHead);
        out += '[';
        print(out, t.child(1), PrintContext::Top);
        out += ']';
        return;
    case K::Abs: {
        bool parens = needs_parens(detail::Shape::Abs, ctx);
        if (parens) out += '(';
        out += "\\ ";
        print(out, t.child(0), PrintContext::Top);
        if (parens) out += ')';
        return;
    }
    case K::App: {
        bool parens = needs_parens(detail::Shape::App, ctx);
        if (parens) out += '(';
        print(out, t.child(0), PrintContext::AppLeft);
        out += ' ';
        print(out, t.child(1), PrintContext::AppRight);
        if (parens) out += ')';
        return;
    }
    }
}

} // namespace

std::string to_string(const Term& t) {
    std::string out;
    print(out, t, PrintContext::Top);
    return out;
}

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << to_string(t); }

} // namespace upsilon
