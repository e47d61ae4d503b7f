// SPDX-License-Identifier: Apache-2.0
#include "upsilon/grammar_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "upsilon/syntax.hpp"

namespace upsilon {

void write_text(std::ostream& os, const ReductionGrammar& g) {
    for (const Production& p : g.productions()) os << p << '\n';
}

std::string to_text(const ReductionGrammar& g) {
    std::ostringstream out;
    write_text(out, g);
    return out.str();
}

ReductionGrammar read_text(std::istream& is) {
    ReductionGrammar g;
    std::uint32_t level = 0;
    std::string line;
    std::size_t number = 0;
    while (std::getline(is, line)) {
        ++number;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::size_t arrow = line.find("->");
        if (arrow == std::string::npos) throw ParseError("line " + std::to_string(number) + ": missing '->'", first);
        std::string lhs_text = line.substr(first, arrow - first);
        lhs_text.erase(lhs_text.find_last_not_of(" \t") + 1);
        auto lhs = parse_nonterminal(lhs_text);
        if (!lhs) throw ParseError("line " + std::to_string(number) + ": bad nonterminal '" + lhs_text + "'", first);
        Pattern rhs = Pattern::zero();
        try {
            rhs = parse_pattern(std::string_view(line).substr(arrow + 2));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(number) + ": " + e.what(), arrow + 2 + e.position());
        }
        try {
            g.add(*lhs, rhs);
        } catch (const std::invalid_argument& e) {
            throw ParseError("line " + std::to_string(number) + ": " + e.what(), arrow + 2);
        }
        if (lhs->is_level()) level = std::max(level, lhs->level);
    }
    g.set_level(level);
    return g;
}

ReductionGrammar parse_grammar(std::string_view text) {
    std::istringstream in{std::string(text)};
    return read_text(in);
}

namespace {

nlohmann::json ast(Pattern p) {
    using K = Pattern::Kind;
    switch (p.kind()) {
    case K::NonTerminal: return {{"kind", "nonterminal"}, {"name", p.nonterminal().name()}};
    case K::Zero: return {{"kind", "index"}, {"value", 0}};
    case K::Succ: {
        std::uint32_t depth = 0;
        Pattern base = p;
        while (base.kind() == K::Succ) {
            base = base.child(0);
            ++depth;
        }
        if (base.kind() == K::Zero) return {{"kind", "index"}, {"value", depth}};
        return {{"kind", "succ"}, {"arg", ast(p.child(0))}};
    }
    case K::Abs: return {{"kind", "abs"}, {"body", ast(p.child(0))}};
    case K::App: return {{"kind", "app"}, {"left", ast(p.child(0))}, {"right", ast(p.child(1))}};
    case K::Closure: return {{"kind", "closure"}, {"body", ast(p.child(0))}, {"sub", ast(p.child(1))}};
    case K::Slash: return {{"kind", "slash"}, {"body", ast(p.child(0))}};
    case K::Lift: return {{"kind", "lift"}, {"sub", ast(p.child(0))}};
    case K::Shift: return {{"kind", "shift"}};
    }
    return nullptr;
}

} // namespace

std::string to_json(const ReductionGrammar& g, int indent) {
    nlohmann::json productions = nlohmann::json::array();
    for (const Production& p : g.productions()) {
        productions.push_back({{"lhs", p.lhs.name()}, {"rhs", ast(p.rhs)}});
    }
    nlohmann::json doc = {{"level", g.level()}, {"productions", std::move(productions)}};
    return doc.dump(indent);
}

GrammarWriter::GrammarWriter(std::ostream& os, Format format, std::uint32_t level) : os_(&os), format_(format) {
    if (format_ == Format::Json) *os_ << "{\"level\":" << level << ",\"productions\":[";
}

void GrammarWriter::write(const Production& p) {
    if (format_ == Format::Text) {
        *os_ << to_string(p) << '\n';
        return;
    }
    *os_ << (first_ ? "\n" : ",\n") << nlohmann::json{{"lhs", p.lhs.name()}, {"rhs", ast(p.rhs)}}.dump();
    first_ = false;
}

void GrammarWriter::finish() {
    if (finished_) return;
    finished_ = true;
    if (format_ == Format::Json) *os_ << "\n]}\n";
}

} // namespace upsilon
