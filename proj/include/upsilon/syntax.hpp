// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "upsilon/pattern.hpp"
#include "upsilon/term.hpp"

namespace upsilon {

/// Malformed input; `position()` is the byte offset where parsing failed.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Concrete syntax shared by terms and patterns:
///
///   index        decimal numeral
///   abstraction  `\ t` (extends as far right as possible)
///   application  juxtaposition, left-associative
///   closure      postfix `t[s]`, binds tighter than application
///   slash        postfix `t/`
///   lift         `+(s)`
///   shift        `^`
///
/// Patterns additionally allow the leaves `T S N G0 G1 ...` and the prefix
/// `succ p` on an index-sorted primary.
Pattern parse_pattern(std::string_view text);

/// Parses a ground term or substitution; nonterminals are rejected.
Term parse_term(std::string_view text);

} // namespace upsilon
