// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "upsilon/grammar.hpp"
#include "upsilon/polynomial.hpp"
#include "upsilon/radical.hpp"
#include "upsilon/series.hpp"

namespace upsilon {

using CountSeries = PowerSeries<mpz_class>;

/// Default truncation order for density extrapolation; the environment
/// variable UPSILON_SERIES_ORDER overrides it.
std::size_t default_series_order();

struct BaseSeries {
    CountSeries t;     // all terms
    CountSeries s;     // all substitutions
    CountSeries n;     // de Bruijn indices
    CountSeries l_inf; // closure-free terms
};

/// Counting series of the predefined classes, by coefficient-wise fixpoint
/// iteration of N = z + zN, T = N + zT + zT^2 + zTS, S = zT + zS + z and
/// L = N + zL + zL^2.
BaseSeries base_series(std::size_t order);

/// Exponents of one right-hand side: constructor count, then occurrences of
/// T, S, N and of each level G0..Gk.
struct MonomialProfile {
    std::uint64_t symbols = 0;
    std::uint32_t terms = 0;
    std::uint32_t substs = 0;
    std::uint32_t indices = 0;
    std::vector<std::uint32_t> levels;

    friend auto operator<=>(const MonomialProfile&, const MonomialProfile&) = default;
};

MonomialProfile profile_of(Pattern rhs, std::uint32_t max_level);

/// Profiles of the Gk productions with multiplicities, split into regular and
/// self-referencing ones.
struct LevelProfiles {
    std::vector<std::pair<MonomialProfile, std::uint64_t>> regular;
    std::vector<std::pair<MonomialProfile, std::uint64_t>> self;
};

LevelProfiles level_profiles(const ReductionGrammar& g, std::uint32_t k);
/// Profiles of G0..Gn, one entry per level.
std::vector<LevelProfiles> hierarchy_profiles(const ReductionGrammar& g);

/// Collects the profiles of one level's right-hand sides as they arrive,
/// for levels that are streamed rather than stored.
class ProfileTally {
public:
    explicit ProfileTally(std::uint32_t level) : level_(level) {}

    void add(Pattern rhs);
    LevelProfiles result() const;
    std::uint64_t count() const noexcept { return count_; }

private:
    std::uint32_t level_;
    std::uint64_t count_ = 0;
    std::map<MonomialProfile, std::uint64_t> regular_;
    std::map<MonomialProfile, std::uint64_t> self_;
};

/// Counting series of G0..Gn for the grammar's levels. Each Gk (k >= 1) is
/// linear in itself, so it is its regular part divided by one minus the
/// self-referencing part; G0 is the closure-free class.
std::vector<CountSeries> grammar_series(const ReductionGrammar& g, std::size_t order);
std::vector<CountSeries> grammar_series(const std::vector<LevelProfiles>& levels, std::size_t order);

/// Relations u^2 = 1 - 4z, v^2 = (1 - 3z - z^2 - z^3) / (1 - z).
struct SymbolicRelations {
    static const RationalFunction& u_squared();
    static const RationalFunction& v_squared();
};

/// The same relations at z = 1/4: u^2 = 0, v^2 = 11/48.
struct QuarterRelations {
    static const mpq_class& u_squared();
    static const mpq_class& v_squared();
};

using Radical = RadicalElement<RationalFunction, SymbolicRelations>;
using QuarterRadical = RadicalElement<mpq_class, QuarterRelations>;

struct ClosedForms {
    Radical t, s, n, l_inf;
};

/// T = (1 - u)/(2z) - 1, S = (1 - u)/(2(1 - z)), N = z/(1 - z),
/// L = (1 - z - v)/(2z).
const ClosedForms& closed_forms();

/// Closed forms of G0..Gn. Throws InvariantViolation if the
/// self-referencing part of some level is not 1 - z - 2zG0 (= v).
std::vector<Radical> grammar_closed_forms(const ReductionGrammar& g);
std::vector<Radical> grammar_closed_forms(const std::vector<LevelProfiles>& levels);

/// Values at z = 1/4 of the closed forms, computed directly in the quotient
/// ring where u^2 = 0. An independent route to the same numbers.
std::vector<QuarterRadical> grammar_quarter_values(const ReductionGrammar& g);
std::vector<QuarterRadical> grammar_quarter_values(const std::vector<LevelProfiles>& levels);

/// Power series of a closed form, exact to z^order.
PowerSeries<mpq_class> series_of(const Radical& r, std::size_t order);

/// Asymptotic proportion of size-n terms needing exactly `level` steps, as
/// n grows. Exactly rational + sqrt33 * sqrt(33).
struct Density {
    std::uint32_t level = 0;
    mpq_class rational;
    mpq_class sqrt33;
    /// u-components of the closed form: G = (...) + u (u_rational + u_v v).
    RationalFunction u_rational;
    RationalFunction u_v;

    mpf_class value(unsigned bits = 256) const;
    /// Decimal rounded half-up at `digits` places.
    std::string decimal(int digits) const;
    /// Decimal rounded towards +infinity at `digits` places.
    std::string decimal_ceiling(int digits) const;
    std::string algebraic() const;
};

/// Densities of levels 0..n from the closed forms. The singular part of Gk
/// at z = 1/4 is u * g(z); the density is g(1/4) / gT(1/4) with gT(1/4) = -2.
/// Throws std::domain_error if g has a pole at 1/4, and std::logic_error if
/// the symbolic and the direct evaluation disagree.
std::vector<Density> densities_exact(const ReductionGrammar& g);
std::vector<Density> densities_exact(const std::vector<LevelProfiles>& levels);
Density density_exact(std::uint32_t k, const ReductionGrammar& g);

/// [z^n]Gk / [z^n]T with one Richardson step against the 1/n correction,
/// i.e. 2 r(n) - r(n/2). Series must reach z^n.
mpf_class density_numeric(const CountSeries& level_series, const CountSeries& all_terms, std::size_t n);

/// Smallest positive root of 1 - 3z - z^2 - z^3, the singularity of the
/// closure-free class; bisection then Newton at the requested precision.
mpf_class dominant_root(unsigned bits = 256);

/// Formats an mpf value rounded half-up to `digits` decimals.
std::string format_fixed(const mpf_class& x, int digits);

} // namespace upsilon
