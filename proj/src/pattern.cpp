// SPDX-License-Identifier: Apache-2.0
#include "upsilon/pattern.hpp"

#include <charconv>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <unordered_set>

#include "detail/hash.hpp"
#include "detail/print_context.hpp"

namespace upsilon {

std::string NonTerminal::name() const {
    switch (kind) {
    case Kind::T: return "T";
    case Kind::S: return "S";
    case Kind::N: return "N";
    case Kind::G: return "G" + std::to_string(level);
    }
    return "?";
}

std::optional<NonTerminal> parse_nonterminal(std::string_view text) noexcept {
    if (text == "T") return NonTerminal::T();
    if (text == "S") return NonTerminal::S();
    if (text == "N") return NonTerminal::N();
    if (text.size() >= 2 && text[0] == 'G') {
        std::uint32_t k = 0;
        auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), k);
        if (ec == std::errc() && ptr == text.data() + text.size()) return NonTerminal::G(k);
    }
    return std::nullopt;
}

std::ostream& operator<<(std::ostream& os, NonTerminal x) { return os << x.name(); }

namespace {

using detail::PatternNode;

struct NodeHash {
    std::size_t operator()(const PatternNode* n) const noexcept { return n->hash; }
};

struct NodeEq {
    bool operator()(const PatternNode* x, const PatternNode* y) const noexcept {
        return x->kind == y->kind && x->nt == y->nt && x->a == y->a && x->b == y->b;
    }
};

class Arena {
public:
    const PatternNode* intern(const PatternNode& key) {
        std::lock_guard lock(mutex_);
        if (auto it = table_.find(&key); it != table_.end()) return *it;
        const PatternNode* stored = &storage_.emplace_back(key);
        table_.insert(stored);
        return stored;
    }

    std::size_t size() {
        std::lock_guard lock(mutex_);
        return storage_.size();
    }

    void truncate(std::size_t mark) {
        std::lock_guard lock(mutex_);
        while (storage_.size() > mark) {
            table_.erase(&storage_.back());
            storage_.pop_back();
        }
    }

private:
    std::mutex mutex_;
    std::deque<PatternNode> storage_;
    std::unordered_set<const PatternNode*, NodeHash, NodeEq> table_;
};

Arena& arena() {
    static Arena instance;
    return instance;
}

Sort result_sort(Pattern::Kind kind, NonTerminal nt) {
    using K = Pattern::Kind;
    switch (kind) {
    case K::Zero:
    case K::Succ: return Sort::Index;
    case K::Abs:
    case K::App:
    case K::Closure: return Sort::Term;
    case K::Slash:
    case K::Lift:
    case K::Shift: return Sort::Subst;
    case K::NonTerminal: return nt.sort();
    }
    return Sort::Term;
}

void require(const PatternNode* child, Sort expected, const char* what) {
    if (!sort_fits(child->sort, expected)) {
        throw std::invalid_argument(std::string(what) + ": expected " + std::string(to_string(expected)) +
                                    ", got " + std::string(to_string(child->sort)));
    }
}

Pattern make(Pattern::Kind kind, NonTerminal nt, const PatternNode* a, const PatternNode* b) {
    PatternNode key{};
    key.kind = kind;
    key.nt = kind == Pattern::Kind::NonTerminal ? nt : NonTerminal{};
    key.a = a;
    key.b = b;
    key.sort = result_sort(kind, nt);
    std::size_t h = detail::hash_mix(static_cast<std::size_t>(kind) * 0x51ed27ULL + 7,
                                     kind == Pattern::Kind::NonTerminal ? std::hash<NonTerminal>{}(nt) : 0);
    key.ground = kind != Pattern::Kind::NonTerminal;
    key.symbols = kind == Pattern::Kind::NonTerminal ? 0 : 1;
    for (const PatternNode* c : {a, b}) {
        if (c == nullptr) continue;
        h = detail::hash_mix(h, c->hash);
        key.ground = key.ground && c->ground;
        key.symbols += c->symbols;
    }
    key.hash = h;
    return Pattern(arena().intern(key));
}

} // namespace

Pattern Pattern::zero() {
    static const Pattern p = make(Kind::Zero, {}, nullptr, nullptr);
    return p;
}

Pattern Pattern::shift() {
    static const Pattern p = make(Kind::Shift, {}, nullptr, nullptr);
    return p;
}

Pattern Pattern::succ(Pattern p) {
    require(p.node_, Sort::Index, "succ argument");
    return make(Kind::Succ, {}, p.node_, nullptr);
}

Pattern Pattern::index(std::uint32_t n) {
    Pattern p = zero();
    for (std::uint32_t i = 0; i < n; ++i) p = succ(p);
    return p;
}

Pattern Pattern::abs(Pattern body) {
    require(body.node_, Sort::Term, "abstraction body");
    return make(Kind::Abs, {}, body.node_, nullptr);
}

Pattern Pattern::app(Pattern left, Pattern right) {
    require(left.node_, Sort::Term, "application operator");
    require(right.node_, Sort::Term, "application operand");
    return make(Kind::App, {}, left.node_, right.node_);
}

Pattern Pattern::closure(Pattern body, Pattern sub) {
    require(body.node_, Sort::Term, "closure body");
    require(sub.node_, Sort::Subst, "closure substitution");
    return make(Kind::Closure, {}, body.node_, sub.node_);
}

Pattern Pattern::slash(Pattern body) {
    require(body.node_, Sort::Term, "slash body");
    return make(Kind::Slash, {}, body.node_, nullptr);
}

Pattern Pattern::lift(Pattern sub) {
    require(sub.node_, Sort::Subst, "lift argument");
    return make(Kind::Lift, {}, sub.node_, nullptr);
}

Pattern Pattern::nonterminal(NonTerminal x) { return make(Kind::NonTerminal, x, nullptr, nullptr); }

std::size_t Pattern::arity() const noexcept {
    switch (kind()) {
    case Kind::App:
    case Kind::Closure: return 2;
    case Kind::Succ:
    case Kind::Abs:
    case Kind::Slash:
    case Kind::Lift: return 1;
    default: return 0;
    }
}

NonTerminal Pattern::nonterminal() const {
    if (kind() != Kind::NonTerminal) throw std::logic_error("nonterminal() on a constructor pattern");
    return node_->nt;
}

bool same_symbol(Pattern a, Pattern b) noexcept {
    if (a.kind() != b.kind()) return false;
    return a.kind() != Pattern::Kind::NonTerminal || a.nonterminal() == b.nonterminal();
}

bool mentions(Pattern p, NonTerminal x) noexcept {
    if (p.is_ground()) return false;
    if (p.kind() == Pattern::Kind::NonTerminal) return p.nonterminal() == x;
    for (std::size_t i = 0; i < p.arity(); ++i) {
        if (mentions(p.child(i), x)) return true;
    }
    return false;
}

Pattern to_pattern(const Term& t) {
    using TK = Term::Kind;
    switch (t.kind()) {
    case TK::Index: return Pattern::index(t.index_value());
    case TK::Abs: return Pattern::abs(to_pattern(t.child(0)));
    case TK::App: return Pattern::app(to_pattern(t.child(0)), to_pattern(t.child(1)));
    case TK::Closure: return Pattern::closure(to_pattern(t.child(0)), to_pattern(t.child(1)));
    case TK::Slash: return Pattern::slash(to_pattern(t.child(0)));
    case TK::Lift: return Pattern::lift(to_pattern(t.child(0)));
    case TK::Shift: return Pattern::shift();
    }
    throw std::logic_error("unknown term kind");
}

std::optional<Term> to_term(Pattern p) {
    if (!p.is_ground()) return std::nullopt;
    using K = Pattern::Kind;
    switch (p.kind()) {
    case K::Zero: return Term::index(0);
    case K::Succ: return Term::index(to_term(p.child(0))->index_value() + 1);
    case K::Abs: return Term::abs(*to_term(p.child(0)));
    case K::App: return Term::app(*to_term(p.child(0)), *to_term(p.child(1)));
    case K::Closure: return Term::closure(*to_term(p.child(0)), *to_term(p.child(1)));
    case K::Slash: return Term::slash(*to_term(p.child(0)));
    case K::Lift: return Term::lift(*to_term(p.child(0)));
    case K::Shift: return Term::shift();
    case K::NonTerminal: break;
    }
    return std::nullopt;
}

namespace {

using detail::needs_parens;
using detail::PrintContext;
using detail::Shape;

void print(std::string& out, Pattern p, PrintContext ctx) {
    using K = Pattern::Kind;
    switch (p.kind()) {
    case K::NonTerminal: out += p.nonterminal().name(); return;
    case K::Zero: out += '0'; return;
    case K::Shift: out += '^'; return;
    case K::Succ: {
        std::uint32_t depth = 0;
        Pattern base = p;
        while (base.kind() == K::Succ) {
            base = base.child(0);
            ++depth;
        }
        if (base.kind() == K::Zero) {
            out += std::to_string(depth);
            return;
        }
        bool parens = needs_parens(Shape::Succ, ctx);
        if (parens) out += '(';
        out += "succ ";
        print(out, p.child(0), PrintContext::SuccArg);
        if (parens) out += ')';
        return;
    }
    case K::Lift:
        out += "+(";
        print(out, p.child(0), PrintContext::Top);
        out += ')';
        return;
    case K::Slash:
        print(out, p.child(0), PrintContext::SlashBody);
        out += '/';
        return;
    case K::Closure:
        print(out, p.child(0), PrintContext::ClosureHead);
        out += '[';
        print(out, p.child(1), PrintContext::Top);
        out += ']';
        return;
    case K::Abs: {
        bool parens = needs_parens(Shape::Abs, ctx);
        if (parens) out += '(';
        out += "\\ ";
        print(out, p.child(0), PrintContext::Top);
        if (parens) out += ')';
        return;
    }
    case K::App: {
        bool parens = needs_parens(Shape::App, ctx);
        if (parens) out += '(';
        print(out, p.child(0), PrintContext::AppLeft);
        out += ' ';
        print(out, p.child(1), PrintContext::AppRight);
        if (parens) out += ')';
        return;
    }
    }
}

} // namespace

std::string to_string(Pattern p) {
    std::string out;
    print(out, p, PrintContext::Top);
    return out;
}

std::ostream& operator<<(std::ostream& os, Pattern p) { return os << to_string(p); }

std::size_t interned_pattern_count() { return arena().size(); }

PatternScope::PatternScope() : mark_(arena().size()) {}

PatternScope::~PatternScope() { arena().truncate(mark_); }

} // namespace upsilon
