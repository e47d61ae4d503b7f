// SPDX-License-Identifier: Apache-2.0
#include "upsilon/syntax.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <optional>

namespace upsilon {

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)), position_(position) {}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Pattern parse_all() {
        Pattern p = expression();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool starts_operand() {
        char c = peek();
        return c == '\\' || c == '(' || c == '^' || c == '+' || std::isdigit(static_cast<unsigned char>(c)) ||
               std::isalpha(static_cast<unsigned char>(c));
    }

    // Wraps a factory call so sort errors surface as positioned parse errors.
    template <typename F>
    Pattern build(std::size_t at, F&& f) {
        try {
            return f();
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), at);
        }
    }

    Pattern expression() {
        if (!starts_operand()) fail("expected a term");
        Pattern acc = operand();
        while (starts_operand()) {
            std::size_t right_at = pos_;
            Pattern right = operand();
            acc = build(right_at, [&] { return Pattern::app(acc, right); });
        }
        return acc;
    }

    Pattern operand() {
        if (peek() == '\\') {
            std::size_t at = pos_++;
            Pattern body = expression();
            return build(at, [&] { return Pattern::abs(body); });
        }
        return postfix();
    }

    Pattern postfix() {
        Pattern p = primary();
        for (;;) {
            char c = peek();
            std::size_t at = pos_;
            if (c == '[') {
                ++pos_;
                Pattern sub = expression();
                expect(']');
                p = build(at, [&] { return Pattern::closure(p, sub); });
            } else if (c == '/') {
                ++pos_;
                p = build(at, [&] { return Pattern::slash(p); });
            } else {
                return p;
            }
        }
    }

    std::string_view word() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return text_.substr(start, pos_ - start);
    }

    Pattern primary() {
        char c = peek();
        std::size_t at = pos_;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::uint32_t n = 0;
            auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), n);
            if (ec != std::errc()) fail("index out of range");
            pos_ = static_cast<std::size_t>(ptr - text_.data());
            return Pattern::index(n);
        }
        if (c == '^') {
            ++pos_;
            return Pattern::shift();
        }
        if (c == '+') {
            ++pos_;
            expect('(');
            Pattern sub = expression();
            expect(')');
            return build(at, [&] { return Pattern::lift(sub); });
        }
        if (c == '(') {
            ++pos_;
            Pattern inner = expression();
            expect(')');
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string_view w = word();
            if (w == "succ") {
                Pattern arg = primary();
                return build(at, [&] { return Pattern::succ(arg); });
            }
            if (auto x = parse_nonterminal(w)) return Pattern::nonterminal(*x);
            pos_ = at;
            fail("unknown identifier '" + std::string(w) + "'");
        }
        if (c == '\0') fail("unexpected end of input");
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::optional<std::size_t> first_nonterminal(std::string_view text) {
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (std::isalpha(static_cast<unsigned char>(text[i])) && text.substr(i, 4) != "succ") return i;
        if (text.substr(i, 4) == "succ") i += 3;
    }
    return std::nullopt;
}

} // namespace

Pattern parse_pattern(std::string_view text) { return Parser(text).parse_all(); }

Term parse_term(std::string_view text) {
    Pattern p = parse_pattern(text);
    if (auto t = to_term(p)) return *t;
    throw ParseError("nonterminals are not allowed in a term", first_nonterminal(text).value_or(0));
}

} // namespace upsilon
