// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "upsilon/grammar.hpp"

namespace upsilon {

/// One production per line, `G1 -> 0[N/]`. Predefined productions are
/// included so the output reads back into the same grammar.
void write_text(std::ostream& os, const ReductionGrammar& g);
std::string to_text(const ReductionGrammar& g);

/// Inverse of write_text. Blank lines and lines starting with `#` are
/// skipped. The level is the highest Gk mentioned on a left-hand side.
/// Throws ParseError with the line number folded into the message.
ReductionGrammar read_text(std::istream& is);
ReductionGrammar parse_grammar(std::string_view text);

/// `{"level": n, "productions": [{"lhs": "G1", "rhs": <pattern AST>}]}`.
std::string to_json(const ReductionGrammar& g, int indent = 2);

/// Writes productions one at a time, for grammars too large to hold. Text
/// output matches write_text line for line; JSON output is the document of
/// to_json with one production per line.
class GrammarWriter {
public:
    enum class Format { Text, Json };

    GrammarWriter(std::ostream& os, Format format, std::uint32_t level);
    void write(const Production& p);
    /// Closes the JSON document; required before the stream is used further.
    void finish();

private:
    std::ostream* os_;
    Format format_;
    bool first_ = true;
    bool finished_ = false;
};

} // namespace upsilon
