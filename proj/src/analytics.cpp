// SPDX-License-Identifier: Apache-2.0
#include "upsilon/analytics.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace upsilon {

std::size_t default_series_order() {
    if (const char* env = std::getenv("UPSILON_SERIES_ORDER")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return 800;
}

BaseSeries base_series(std::size_t order) {
    if (order < 1) throw std::invalid_argument("series order must be positive");
    BaseSeries b{CountSeries(order), CountSeries(order), CountSeries(order), CountSeries(order)};
    for (std::size_t n = 1; n <= order; ++n) {
        b.n[n] = n == 1 ? 1 : b.n[n - 1];
        mpz_class t = b.n[n] + b.t[n - 1];
        mpz_class l = b.n[n] + b.l_inf[n - 1];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            t += b.t[i] * (b.t[n - 1 - i] + b.s[n - 1 - i]);
            l += b.l_inf[i] * b.l_inf[n - 1 - i];
        }
        b.t[n] = t;
        b.l_inf[n] = l;
        b.s[n] = b.t[n - 1] + b.s[n - 1] + (n == 1 ? 1 : 0);
    }
    return b;
}

MonomialProfile profile_of(Pattern rhs, std::uint32_t max_level) {
    MonomialProfile p;
    p.symbols = rhs.symbols();
    p.levels.assign(max_level + 1, 0);
    std::vector<Pattern> stack{rhs};
    while (!stack.empty()) {
        Pattern q = stack.back();
        stack.pop_back();
        if (q.is_ground()) continue;
        if (q.kind() != Pattern::Kind::NonTerminal) {
            for (std::size_t i = 0; i < q.arity(); ++i) stack.push_back(q.child(i));
            continue;
        }
        NonTerminal x = q.nonterminal();
        switch (x.kind) {
        case NonTerminal::Kind::T: ++p.terms; break;
        case NonTerminal::Kind::S: ++p.substs; break;
        case NonTerminal::Kind::N: ++p.indices; break;
        case NonTerminal::Kind::G:
            if (x.level > max_level) throw InvariantViolation("profile mentions " + x.name() + " above its level");
            ++p.levels[x.level];
            break;
        }
    }
    return p;
}

void ProfileTally::add(Pattern rhs) {
    MonomialProfile prof = profile_of(rhs, level_);
    (prof.levels[level_] > 0 ? self_ : regular_)[std::move(prof)] += 1;
    ++count_;
}

LevelProfiles ProfileTally::result() const {
    return {{regular_.begin(), regular_.end()}, {self_.begin(), self_.end()}};
}

LevelProfiles level_profiles(const ReductionGrammar& g, std::uint32_t k) {
    ProfileTally tally(k);
    for (const Production& p : g.rules(NonTerminal::G(k))) tally.add(p.rhs);
    return tally.result();
}

std::vector<LevelProfiles> hierarchy_profiles(const ReductionGrammar& g) {
    std::vector<LevelProfiles> out;
    for (std::uint32_t k = 0; k <= g.level(); ++k) out.push_back(level_profiles(g, k));
    return out;
}

namespace {

using Exponents = std::vector<std::uint32_t>;

// Memoised products T^a S^b N^c G0^d ... over a ring, one multiplication per
// distinct exponent vector.
template <typename Elem>
class Products {
public:
    explicit Products(Elem one) : one_(std::move(one)) {}

    void set_base(std::size_t j, Elem e) {
        if (bases_.size() <= j) bases_.resize(j + 1, one_);
        bases_[j] = std::move(e);
    }

    Elem product(Exponents e) {
        while (!e.empty() && e.back() == 0) e.pop_back();
        if (e.empty()) return one_;
        if (auto it = products_.find(e); it != products_.end()) return it->second;
        const std::size_t j = e.size() - 1;
        const std::uint32_t power_of_j = e[j];
        Exponents rest = e;
        rest[j] = 0;
        Elem value = product(rest) * power(j, power_of_j);
        products_.emplace(std::move(e), value);
        return value;
    }

private:
    Elem power(std::size_t j, std::uint32_t e) {
        auto key = std::make_pair(j, e);
        if (auto it = powers_.find(key); it != powers_.end()) return it->second;
        Elem value = e == 1 ? bases_.at(j) : power(j, e - 1) * bases_.at(j);
        powers_.emplace(key, value);
        return value;
    }

    Elem one_;
    std::vector<Elem> bases_;
    std::map<std::pair<std::size_t, std::uint32_t>, Elem> powers_;
    std::map<Exponents, Elem> products_;
};

void require_seed(const ReductionGrammar& g) {
    const Pattern g0 = Pattern::nonterminal(NonTerminal::G(0));
    const Pattern expected[] = {Pattern::nonterminal(NonTerminal::N()), Pattern::abs(g0), Pattern::app(g0, g0)};
    auto rules = g.rules(NonTerminal::G(0));
    bool ok = rules.size() == 3;
    for (Pattern e : expected) {
        ok = ok && std::any_of(rules.begin(), rules.end(), [&](const Production& p) { return p.rhs == e; });
    }
    if (!ok) throw InvariantViolation("G0 must be the closure-free seed N | \\ G0 | G0 G0");
}

// The same requirement seen through profiles: N, then G0 once and twice
// under one constructor each.
void require_seed(const std::vector<LevelProfiles>& levels) {
    if (levels.empty()) throw std::invalid_argument("no levels given");
    MonomialProfile index;
    index.indices = 1;
    index.levels = {0};
    MonomialProfile once{1, 0, 0, 0, {1}};
    MonomialProfile twice{1, 0, 0, 0, {2}};
    const LevelProfiles& g0 = levels.front();
    const std::vector<std::pair<MonomialProfile, std::uint64_t>> expected{{index, 1}};
    const std::vector<std::pair<MonomialProfile, std::uint64_t>> expected_self{{once, 1}, {twice, 1}};
    if (g0.regular != expected || g0.self != expected_self) {
        throw InvariantViolation("G0 must be the closure-free seed N | \\ G0 | G0 G0");
    }
}

// Shared evaluation of G1..Gn in any ring that can represent the base
// classes. Ctx supplies the bases, z-polynomials and the final division.
template <typename Elem, typename Ctx>
std::vector<Elem> level_values(const std::vector<LevelProfiles>& levels, Ctx& ctx) {
    require_seed(levels);
    Products<Elem> products(ctx.one());
    products.set_base(0, ctx.t());
    products.set_base(1, ctx.s());
    products.set_base(2, ctx.n());
    products.set_base(3, ctx.l_inf());
    std::vector<Elem> out{ctx.l_inf()};

    for (std::uint32_t k = 1; k < levels.size(); ++k) {
        const LevelProfiles& lp = levels[k];
        auto combine = [&](const auto& list, bool self) {
            std::map<Exponents, std::map<std::uint64_t, mpz_class>> grouped;
            for (const auto& [p, mult] : list) {
                if (self && p.levels[k] != 1) {
                    throw InvariantViolation("G" + std::to_string(k) + " is not linear in itself");
                }
                Exponents e{p.terms, p.substs, p.indices};
                e.insert(e.end(), p.levels.begin(), p.levels.begin() + k);
                grouped[e][p.symbols] += mult;
            }
            Elem acc = ctx.zero();
            for (const auto& [e, zs] : grouped) acc += ctx.zpoly(zs) * products.product(e);
            return acc;
        };
        Elem numerator = combine(lp.regular, false);
        Elem denominator = ctx.one() - combine(lp.self, true);
        Elem value = ctx.solve(numerator, denominator, k);
        products.set_base(3 + k, value);
        out.push_back(std::move(value));
    }
    return out;
}

struct SeriesContext {
    std::size_t order;
    BaseSeries base;

    CountSeries one() const { return CountSeries::constant(1, order); }
    CountSeries zero() const { return CountSeries(order); }
    CountSeries t() const { return base.t; }
    CountSeries s() const { return base.s; }
    CountSeries n() const { return base.n; }
    CountSeries l_inf() const { return base.l_inf; }
    CountSeries zpoly(const std::map<std::uint64_t, mpz_class>& zs) const {
        CountSeries out(order);
        for (const auto& [e, c] : zs) {
            if (e <= order) out[e] += c;
        }
        return out;
    }
    CountSeries solve(const CountSeries& num, const CountSeries& den, std::uint32_t) const {
        return num * den.inverse();
    }
};

Polynomial poly(std::initializer_list<mpq_class> c) { return Polynomial(std::vector<mpq_class>(c)); }

struct SymbolicContext {
    Radical one() const { return Radical(RationalFunction(1)); }
    Radical zero() const { return Radical(); }
    Radical t() const { return closed_forms().t; }
    Radical s() const { return closed_forms().s; }
    Radical n() const { return closed_forms().n; }
    Radical l_inf() const { return closed_forms().l_inf; }
    Radical zpoly(const std::map<std::uint64_t, mpz_class>& zs) const {
        Polynomial p;
        for (const auto& [e, c] : zs) p += Polynomial::monomial(e, mpq_class(c));
        return Radical(RationalFunction(p));
    }
    Radical solve(const Radical& num, const Radical& den, std::uint32_t k) const {
        if (!(den == Radical::v())) {
            throw InvariantViolation("self-referencing part of G" + std::to_string(k) + " is not 1 - z - 2z G0");
        }
        // 1/v = v (1 - z) / R
        return num * Radical::v() * RationalFunction(poly({1, -1}), 0, 0, 1);
    }
};

struct QuarterContext {
    QuarterRadical one() const { return QuarterRadical(mpq_class(1)); }
    QuarterRadical zero() const { return QuarterRadical(); }
    QuarterRadical t() const { return QuarterRadical(mpq_class(1), mpq_class(-2)); }
    QuarterRadical s() const { return QuarterRadical(mpq_class(2, 3), mpq_class(-2, 3)); }
    QuarterRadical n() const { return QuarterRadical(mpq_class(1, 3)); }
    QuarterRadical l_inf() const { return QuarterRadical(mpq_class(3, 2), mpq_class(0), mpq_class(-2)); }
    QuarterRadical zpoly(const std::map<std::uint64_t, mpz_class>& zs) const {
        mpq_class acc = 0;
        for (const auto& [e, c] : zs) {
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), 4, e);
            acc += mpq_class(c, den);
        }
        acc.canonicalize();
        return QuarterRadical(acc);
    }
    QuarterRadical solve(const QuarterRadical& num, const QuarterRadical& den, std::uint32_t k) const {
        if (!(den == QuarterRadical::v())) {
            throw InvariantViolation("self-referencing part of G" + std::to_string(k) + " is not v at z = 1/4");
        }
        return num * QuarterRadical::v() * mpq_class(48, 11);
    }
};

} // namespace

std::vector<CountSeries> grammar_series(const ReductionGrammar& g, std::size_t order) {
    require_seed(g);
    return grammar_series(hierarchy_profiles(g), order);
}

std::vector<CountSeries> grammar_series(const std::vector<LevelProfiles>& levels, std::size_t order) {
    SeriesContext ctx{order, base_series(std::max<std::size_t>(order, 1))};
    return level_values<CountSeries>(levels, ctx);
}

const RationalFunction& SymbolicRelations::u_squared() {
    static const RationalFunction r(poly({1, -4}));
    return r;
}

const RationalFunction& SymbolicRelations::v_squared() {
    static const RationalFunction r(RationalFunction::radicand(), 0, 1, 0);
    return r;
}

const mpq_class& QuarterRelations::u_squared() {
    static const mpq_class r(0);
    return r;
}

const mpq_class& QuarterRelations::v_squared() {
    static const mpq_class r(11, 48);
    return r;
}

const ClosedForms& closed_forms() {
    static const ClosedForms forms{
        Radical(RationalFunction(poly({mpq_class(1, 2), -1}), 1), RationalFunction(poly({mpq_class(-1, 2)}), 1)),
        Radical(RationalFunction(poly({mpq_class(1, 2)}), 0, 1), RationalFunction(poly({mpq_class(-1, 2)}), 0, 1)),
        Radical(RationalFunction(poly({0, 1}), 0, 1)),
        Radical(RationalFunction(poly({mpq_class(1, 2), mpq_class(-1, 2)}), 1), RationalFunction(0),
                RationalFunction(poly({mpq_class(-1, 2)}), 1)),
    };
    return forms;
}

std::vector<Radical> grammar_closed_forms(const ReductionGrammar& g) {
    require_seed(g);
    return grammar_closed_forms(hierarchy_profiles(g));
}

std::vector<Radical> grammar_closed_forms(const std::vector<LevelProfiles>& levels) {
    SymbolicContext ctx;
    return level_values<Radical>(levels, ctx);
}

std::vector<QuarterRadical> grammar_quarter_values(const ReductionGrammar& g) {
    require_seed(g);
    return grammar_quarter_values(hierarchy_profiles(g));
}

std::vector<QuarterRadical> grammar_quarter_values(const std::vector<LevelProfiles>& levels) {
    QuarterContext ctx;
    return level_values<QuarterRadical>(levels, ctx);
}

PowerSeries<mpq_class> series_of(const Radical& r, std::size_t order) {
    unsigned pole = 0;
    for (std::size_t i = 0; i < 4; ++i) pole = std::max(pole, r.part(i).z_exponent());
    const std::size_t work = order + pole;
    const PowerSeries<mpq_class> u = poly({1, -4}).series(work).sqrt();
    const PowerSeries<mpq_class> v =
        (RationalFunction::radicand().series(work) * poly({1, -1}).series(work).inverse()).sqrt();
    const PowerSeries<mpq_class> basis[] = {PowerSeries<mpq_class>::constant(1, work), u, v, u * v};
    PowerSeries<mpq_class> acc(work);
    for (std::size_t i = 0; i < 4; ++i) {
        if (!r.part(i).is_zero()) acc += r.part(i).series(work, pole) * basis[i];
    }
    PowerSeries<mpq_class> out(order);
    for (std::size_t i = 0; i < pole; ++i) {
        if (acc[i] != 0) throw std::domain_error("closed form has a pole at zero");
    }
    for (std::size_t i = 0; i <= order; ++i) out[i] = acc[i + pole];
    return out;
}

mpf_class Density::value(unsigned bits) const {
    mpf_class root(33, bits);
    root = sqrt(root);
    mpf_class x(rational, bits), y(sqrt33, bits);
    mpf_class out(0, bits);
    out = x + y * root;
    return out;
}

std::string format_fixed(const mpf_class& x, int digits) {
    if (digits < 0) throw std::invalid_argument("digits must be non-negative");
    const unsigned bits = std::max<unsigned>(x.get_prec(), 64 + 4 * static_cast<unsigned>(digits));
    mpf_class scale(1, bits);
    for (int i = 0; i < digits; ++i) scale *= 10;
    mpf_class scaled(0, bits);
    scaled = abs(x) * scale + mpf_class(0.5, bits);
    mpf_class floored(0, bits);
    mpf_floor(floored.get_mpf_t(), scaled.get_mpf_t());
    mpz_class n(floored);
    std::string s = n.get_str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    if (x < 0 && n != 0) s.insert(0, "-");
    return s;
}

std::string Density::decimal(int digits) const { return format_fixed(value(), digits); }

std::string Density::decimal_ceiling(int digits) const {
    mpf_class v = value();
    mpf_class scale(1, v.get_prec());
    for (int i = 0; i < digits; ++i) scale *= 10;
    mpf_class scaled(0, v.get_prec());
    scaled = v * scale;
    mpf_class up(0, v.get_prec());
    mpf_ceil(up.get_mpf_t(), scaled.get_mpf_t());
    mpf_class back(0, v.get_prec());
    back = up / scale;
    return format_fixed(back, digits);
}

std::string Density::algebraic() const {
    if (sqrt33 == 0) return rational.get_str();
    std::string out = rational == 0 ? "" : rational.get_str() + (sqrt33 < 0 ? " - " : " + ");
    if (rational == 0 && sqrt33 < 0) out += "-";
    mpq_class mag = abs(sqrt33);
    out += mag.get_str() + "*sqrt(33)";
    return out;
}

std::vector<Density> densities_exact(const ReductionGrammar& g) {
    require_seed(g);
    return densities_exact(hierarchy_profiles(g));
}

std::vector<Density> densities_exact(const std::vector<LevelProfiles>& levels) {
    const std::vector<Radical> forms = grammar_closed_forms(levels);
    const std::vector<QuarterRadical> direct = grammar_quarter_values(levels);
    const mpq_class quarter(1, 4);
    std::vector<Density> out;
    for (std::uint32_t k = 0; k < forms.size(); ++k) {
        const Radical& f = forms[k];
        for (std::size_t i = 0; i < 4; ++i) {
            if (f.part(i).evaluate(quarter) != direct[k].part(i)) {
                throw std::logic_error("closed form of G" + std::to_string(k) +
                                       " disagrees with its direct evaluation at 1/4");
            }
        }
        Density d;
        d.level = k;
        d.u_rational = f.part(1);
        d.u_v = f.part(3);
        // v(1/4) = sqrt(33)/12 and the singular coefficient of T is -2.
        d.rational = f.part(1).evaluate(quarter) / mpq_class(-2);
        d.sqrt33 = f.part(3).evaluate(quarter) / mpq_class(-24);
        d.rational.canonicalize();
        d.sqrt33.canonicalize();
        out.push_back(std::move(d));
    }
    return out;
}

Density density_exact(std::uint32_t k, const ReductionGrammar& g) {
    if (k > g.level()) throw std::invalid_argument("grammar does not reach level " + std::to_string(k));
    return densities_exact(g.truncated(k)).at(k);
}

mpf_class density_numeric(const CountSeries& level_series, const CountSeries& all_terms, std::size_t n) {
    if (n < 2 || n > level_series.order() || n > all_terms.order()) {
        throw std::invalid_argument("series too short for the requested index");
    }
    auto ratio = [&](std::size_t m) {
        mpf_class num(level_series[m], 256), den(all_terms[m], 256);
        mpf_class r(0, 256);
        r = num / den;
        return r;
    };
    mpf_class out(0, 256);
    out = 2 * ratio(n) - ratio(n / 2);
    return out;
}

mpf_class dominant_root(unsigned bits) {
    auto f = [&](const mpf_class& z) {
        mpf_class r(0, bits);
        r = 1 - 3 * z - z * z - z * z * z;
        return r;
    };
    mpf_class lo(0.25, bits), hi(0.3, bits), mid(0, bits);
    for (int i = 0; i < 64; ++i) {
        mid = (lo + hi) / 2;
        if (f(mid) > 0) lo = mid;
        else hi = mid;
    }
    // Bisection leaves ~2^-64; Newton doubles the correct bits each pass.
    mpf_class z(0, bits), deriv(0, bits);
    z = (lo + hi) / 2;
    for (unsigned good = 64; good < 2 * bits; good *= 2) {
        deriv = -3 - 2 * z - 3 * z * z;
        z -= f(z) / deriv;
    }
    return z;
}

} // namespace upsilon
