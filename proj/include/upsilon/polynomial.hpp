// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "upsilon/series.hpp"

namespace upsilon {

/// Dense univariate polynomial in z over the rationals, lowest degree first,
/// kept without trailing zeros.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::vector<mpq_class> coeffs);
    static Polynomial constant(const mpq_class& c);
    /// c * z^k
    static Polynomial monomial(std::size_t k, const mpq_class& c = 1);

    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// Degree, or -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    mpq_class operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : mpq_class(0); }
    const std::vector<mpq_class>& coefficients() const noexcept { return coeffs_; }

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const mpq_class& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const mpq_class& c) { return a *= c; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

    Polynomial pow(std::uint64_t e) const;
    mpq_class evaluate(const mpq_class& z) const;

    /// Quotient when `d` divides exactly; false otherwise (quotient untouched).
    bool divide_exact(const Polynomial& d, Polynomial& quotient) const;

    PowerSeries<mpq_class> series(std::size_t order) const;
    std::string to_string() const;

private:
    void trim();
    std::vector<mpq_class> coeffs_;
};

/// A rational function whose denominator only involves the factors that can
/// occur here: num / (z^a (1-z)^b R^c) with R = 1 - 3z - z^2 - z^3. Keeping
/// the denominator factored makes arithmetic gcd-free, and since none of the
/// factors vanishes at z = 1/4 analyticity there is structural. Factors that
/// divide the numerator are cancelled, so the form is canonical.
class RationalFunction {
public:
    RationalFunction() = default;
    RationalFunction(const mpq_class& c) : num_(Polynomial::constant(c)) {}
    RationalFunction(Polynomial num, unsigned z_exp = 0, unsigned one_minus_z_exp = 0, unsigned radicand_exp = 0);

    /// 1 - 3z - z^2 - z^3
    static const Polynomial& radicand();

    const Polynomial& numerator() const noexcept { return num_; }
    unsigned z_exponent() const noexcept { return a_; }
    unsigned one_minus_z_exponent() const noexcept { return b_; }
    unsigned radicand_exponent() const noexcept { return c_; }
    Polynomial denominator() const;

    bool is_zero() const noexcept { return num_.is_zero(); }

    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o);
    RationalFunction& operator*=(const RationalFunction& o);
    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
    friend RationalFunction operator-(RationalFunction a) {
        a.num_ *= -1;
        return a;
    }
    friend bool operator==(const RationalFunction& x, const RationalFunction& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.num_ == y.num_;
    }

    /// Divides by z^a (1-z)^b R^c.
    RationalFunction divided(unsigned a, unsigned b, unsigned c) const;

    /// Value at z; throws std::domain_error if the denominator vanishes.
    mpq_class evaluate(const mpq_class& z) const;

    /// Laurent expansion scaled by z^shift: the power series of z^shift * f.
    /// Throws std::domain_error if z^shift does not clear the pole at 0.
    PowerSeries<mpq_class> series(std::size_t order, unsigned shift = 0) const;

    std::string to_string() const;

private:
    void normalize();

    Polynomial num_;
    unsigned a_ = 0, b_ = 0, c_ = 0;
};

} // namespace upsilon
