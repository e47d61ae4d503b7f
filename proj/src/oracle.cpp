// SPDX-License-Identifier: Apache-2.0
#include "upsilon/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "upsilon/enumerate.hpp"
#include "upsilon/membership.hpp"
#include "upsilon/reduction.hpp"

namespace upsilon {

std::uint64_t CensusTable::at(std::uint64_t n, std::uint64_t k) const {
    if (n >= counts.size() || k >= counts[n].size()) return 0;
    return counts[n][k];
}

std::uint64_t CensusTable::total(std::uint64_t n) const {
    if (n >= counts.size()) return 0;
    std::uint64_t sum = overflow[n];
    for (std::uint64_t c : counts[n]) sum += c;
    return sum;
}

namespace {

// Runs body(i) for i in [0, count) on up to `jobs` threads, each with its
// own state from make_state(). States are returned for merging.
template <typename State, typename Make, typename Body>
std::vector<State> parallel_chunks(std::size_t count, unsigned jobs, Make make_state, Body body) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::vector<State> states;
    states.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) states.push_back(make_state());
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) body(states[0], i);
        return states;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (unsigned j = 0; j < jobs; ++j) {
        workers.emplace_back([&, j] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) body(states[j], i);
        });
    }
    for (std::thread& w : workers) w.join();
    return states;
}

} // namespace

CensusTable census(std::uint64_t max_size, std::uint64_t max_steps, unsigned jobs) {
    CensusTable table;
    table.max_size = max_size;
    table.max_steps = max_steps;
    table.counts.assign(max_size + 1, std::vector<std::uint64_t>(max_steps + 1, 0));
    table.overflow.assign(max_size + 1, 0);
    Enumerator& terms = Enumerator::shared();
    for (std::uint64_t n = 1; n <= max_size; ++n) {
        const std::vector<Term>& level = terms.terms(n, Sort::Term);
        struct Tally {
            std::vector<std::uint64_t> counts;
            std::uint64_t overflow = 0;
        };
        auto states = parallel_chunks<Tally>(
            level.size(), jobs, [&] { return Tally{std::vector<std::uint64_t>(max_steps + 1, 0), 0}; },
            [&](Tally& tally, std::size_t i) {
                if (auto steps = count_steps(level[i], max_steps)) ++tally.counts[*steps];
                else ++tally.overflow;
            });
        for (const Tally& t : states) {
            for (std::uint64_t k = 0; k <= max_steps; ++k) table.counts[n][k] += t.counts[k];
            table.overflow[n] += t.overflow;
        }
    }
    return table;
}

namespace {

std::optional<std::string> find_witness(Membership& m, NonTerminal axiom, std::uint32_t k, std::uint64_t n) {
    Enumerator& terms = Enumerator::shared();
    const auto& list = terms.terms(n, Sort::Term);
    const auto& pats = terms.patterns(n, Sort::Term);
    const Pattern target = Pattern::nonterminal(axiom);
    for (std::size_t i = 0; i < list.size(); ++i) {
        auto steps = count_steps(list[i], std::uint64_t{k} + 1);
        const bool in_class = steps && *steps == k;
        if (in_class != m.member(pats[i], target)) return to_string(list[i]);
    }
    return std::nullopt;
}

} // namespace

std::vector<LevelReport> verify_levels(const ReductionGrammar& g, const CensusTable& table, std::uint64_t max_size,
                                       const std::vector<CountSeries>* series, unsigned jobs) {
    const std::uint32_t levels = g.level() + 1;
    if (max_size > table.max_size) throw std::invalid_argument("census does not reach the requested size");
    std::vector<LevelReport> reports(levels);
    for (std::uint32_t k = 0; k < levels; ++k) {
        if (k > table.max_steps) throw std::invalid_argument("census does not reach level " + std::to_string(k));
        reports[k].level = k;
        reports[k].census.assign(max_size + 1, 0);
        reports[k].members.assign(max_size + 1, 0);
        for (std::uint64_t n = 1; n <= max_size; ++n) reports[k].census[n] = table.at(n, k);
        if (series) {
            if (series->size() <= k || (*series)[k].order() < max_size) {
                throw std::invalid_argument("series missing or too short for level " + std::to_string(k));
            }
            reports[k].series.assign(max_size + 1, 0);
            for (std::uint64_t n = 1; n <= max_size; ++n) reports[k].series[n] = (*series)[k][n];
        }
    }

    Enumerator& terms = Enumerator::shared();
    for (std::uint64_t n = 1; n <= max_size; ++n) {
        const auto& pats = terms.patterns(n, Sort::Term);
        struct Tally {
            Membership membership;
            std::vector<std::uint64_t> counts;
        };
        auto states = parallel_chunks<Tally>(
            pats.size(), jobs, [&] { return Tally{Membership(g), std::vector<std::uint64_t>(levels, 0)}; },
            [&](Tally& tally, std::size_t i) {
                for (std::uint32_t k = 0; k < levels; ++k) {
                    if (tally.membership.member(pats[i], Pattern::nonterminal(NonTerminal::G(k)))) ++tally.counts[k];
                }
            });
        for (const Tally& t : states) {
            for (std::uint32_t k = 0; k < levels; ++k) reports[k].members[n] += t.counts[k];
        }
    }

    Membership m(g);
    for (LevelReport& r : reports) {
        for (std::uint64_t n = 1; n <= max_size; ++n) {
            bool same = r.census[n] == r.members[n];
            if (!r.series.empty()) same = same && r.series[n] == r.census[n];
            if (!same) {
                r.mismatch_size = n;
                r.witness = find_witness(m, NonTerminal::G(r.level), r.level, n);
                break;
            }
        }
    }
    return reports;
}

LevelReport verify_grammar(const ReductionGrammar& g, std::uint32_t k, const CensusTable& table,
                           std::uint64_t max_size, const std::vector<CountSeries>* series) {
    if (k > g.level()) throw std::invalid_argument("grammar does not reach level " + std::to_string(k));
    ReductionGrammar sub = g.truncated(k);
    std::vector<CountSeries> cut;
    if (series) cut.assign(series->begin(), series->begin() + std::min<std::size_t>(series->size(), k + 1));
    return verify_levels(sub, table, max_size, series ? &cut : nullptr).at(k);
}

UnambiguityReport verify_unambiguity(const ReductionGrammar& g, NonTerminal axiom, std::uint64_t max_size) {
    UnambiguityReport report;
    Membership m(g, 2);
    Enumerator& terms = Enumerator::shared();
    const Pattern target = Pattern::nonterminal(axiom);
    const Sort sort = axiom.sort() == Sort::Subst ? Sort::Subst : Sort::Term;
    for (std::uint64_t n = 1; n <= max_size; ++n) {
        for (Pattern t : terms.patterns(n, sort)) {
            std::uint64_t d = m.derivations(t, target);
            if (d == 0) continue;
            ++report.checked;
            if (d > 1) {
                report.witness = to_string(t);
                return report;
            }
        }
    }
    return report;
}

UnambiguityReport verify_unambiguity(const ReductionGrammar& g, std::uint64_t max_size) {
    return verify_unambiguity(g, g.axiom(), max_size);
}

} // namespace upsilon
