// SPDX-License-Identifier: Apache-2.0
#include "upsilon/enumerate.hpp"

#include <limits>
#include <stdexcept>

namespace upsilon {

Enumerator& Enumerator::shared() {
    static Enumerator instance;
    return instance;
}

const std::vector<Term>& Enumerator::terms(std::uint64_t n, Sort sort) { return level(n, sort).terms; }

const std::vector<Pattern>& Enumerator::patterns(std::uint64_t n, Sort sort) { return level(n, sort).patterns; }

const Enumerator::Level& Enumerator::level(std::uint64_t n, Sort sort) {
    if (n == 0) throw std::invalid_argument("terms have positive size");
    std::lock_guard lock(mutex_);
    grow(n);
    switch (sort) {
    case Sort::Term: return term_levels_[n];
    case Sort::Subst: return subst_levels_[n];
    case Sort::Index: return index_levels_[n];
    }
    throw std::logic_error("unknown sort");
}

void Enumerator::grow(std::uint64_t n) {
    while (term_levels_.size() <= n) {
        const std::uint64_t size = term_levels_.size();
        Level terms, substs, index;

        auto emit = [](Level& level, Term t, Pattern p) {
            level.terms.push_back(std::move(t));
            level.patterns.push_back(p);
        };

        const Term idx = Term::index(static_cast<std::uint32_t>(size - 1));
        const Pattern idx_p = Pattern::index(static_cast<std::uint32_t>(size - 1));
        emit(index, idx, idx_p);
        emit(terms, idx, idx_p);

        if (size >= 2) {
            const Level& body = term_levels_[size - 1];
            for (std::size_t i = 0; i < body.terms.size(); ++i) {
                emit(terms, Term::abs(body.terms[i]), Pattern::abs(body.patterns[i]));
            }
        }
        for (std::uint64_t left = 1; left + 1 < size; ++left) {
            const Level& l = term_levels_[left];
            const Level& r = term_levels_[size - 1 - left];
            for (std::size_t i = 0; i < l.terms.size(); ++i) {
                for (std::size_t j = 0; j < r.terms.size(); ++j) {
                    emit(terms, Term::app(l.terms[i], r.terms[j]), Pattern::app(l.patterns[i], r.patterns[j]));
                }
            }
        }
        for (std::uint64_t left = 1; left + 1 < size; ++left) {
            const Level& l = term_levels_[left];
            const Level& r = subst_levels_[size - 1 - left];
            for (std::size_t i = 0; i < l.terms.size(); ++i) {
                for (std::size_t j = 0; j < r.terms.size(); ++j) {
                    emit(terms, Term::closure(l.terms[i], r.terms[j]),
                         Pattern::closure(l.patterns[i], r.patterns[j]));
                }
            }
        }

        if (size >= 2) {
            const Level& body = term_levels_[size - 1];
            for (std::size_t i = 0; i < body.terms.size(); ++i) {
                emit(substs, Term::slash(body.terms[i]), Pattern::slash(body.patterns[i]));
            }
            const Level& inner = subst_levels_[size - 1];
            for (std::size_t i = 0; i < inner.terms.size(); ++i) {
                emit(substs, Term::lift(inner.terms[i]), Pattern::lift(inner.patterns[i]));
            }
        } else {
            emit(substs, Term::shift(), Pattern::shift());
        }

        term_levels_.push_back(std::move(terms));
        subst_levels_.push_back(std::move(substs));
        index_levels_.push_back(std::move(index));
    }
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    return __builtin_add_overflow(a, b, &r) ? std::numeric_limits<std::uint64_t>::max() : r;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    return __builtin_mul_overflow(a, b, &r) ? std::numeric_limits<std::uint64_t>::max() : r;
}

} // namespace

std::uint64_t term_count(std::uint64_t n, Sort sort) {
    if (n == 0) return 0;
    if (sort == Sort::Index) return 1;
    std::vector<std::uint64_t> t(n + 1, 0), s(n + 1, 0);
    for (std::uint64_t m = 1; m <= n; ++m) {
        std::uint64_t tm = 1; // the index m - 1
        std::uint64_t sm = m == 1 ? 1 : 0;
        if (m >= 2) {
            tm = sat_add(tm, t[m - 1]);
            sm = sat_add(sm, sat_add(t[m - 1], s[m - 1]));
        }
        for (std::uint64_t left = 1; left + 1 < m; ++left) {
            tm = sat_add(tm, sat_mul(t[left], t[m - 1 - left]));
            tm = sat_add(tm, sat_mul(t[left], s[m - 1 - left]));
        }
        t[m] = tm;
        s[m] = sm;
    }
    return sort == Sort::Term ? t[n] : s[n];
}

} // namespace upsilon
