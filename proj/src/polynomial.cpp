// SPDX-License-Identifier: Apache-2.0
#include "upsilon/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace upsilon {

Polynomial::Polynomial(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(const mpq_class& c) { return Polynomial(std::vector<mpq_class>{c}); }

Polynomial Polynomial::monomial(std::size_t k, const mpq_class& c) {
    std::vector<mpq_class> v(k + 1, mpq_class(0));
    v[k] = c;
    return Polynomial(std::move(v));
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), mpq_class(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), mpq_class(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const mpq_class& c) {
    if (c == 0) {
        coeffs_.clear();
        return *this;
    }
    for (mpq_class& x : coeffs_) x *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpq_class> out(a.coeffs_.size() + b.coeffs_.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::pow(std::uint64_t e) const {
    Polynomial result = constant(1);
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1u) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

mpq_class Polynomial::evaluate(const mpq_class& z) const {
    mpq_class acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

bool Polynomial::divide_exact(const Polynomial& d, Polynomial& quotient) const {
    if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
    if (is_zero()) {
        quotient = {};
        return true;
    }
    if (degree() < d.degree()) return false;
    std::vector<mpq_class> rem = coeffs_;
    std::vector<mpq_class> q(coeffs_.size() - d.coeffs_.size() + 1, mpq_class(0));
    const mpq_class& lead = d.coeffs_.back();
    for (std::size_t i = q.size(); i-- > 0;) {
        mpq_class c = rem[i + d.coeffs_.size() - 1] / lead;
        q[i] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < d.coeffs_.size(); ++j) rem[i + j] -= c * d.coeffs_[j];
    }
    for (const mpq_class& r : rem) {
        if (r != 0) return false;
    }
    quotient = Polynomial(std::move(q));
    return true;
}

PowerSeries<mpq_class> Polynomial::series(std::size_t order) const {
    PowerSeries<mpq_class> s(order);
    for (std::size_t i = 0; i < coeffs_.size() && i <= order; ++i) s[i] = coeffs_[i];
    return s;
}

std::string Polynomial::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const mpq_class& c = coeffs_[i];
        if (c == 0) continue;
        if (!first) out << (c < 0 ? " - " : " + ");
        else if (c < 0) out << '-';
        mpq_class mag = abs(c);
        if (i == 0 || mag != 1) out << mag.get_str();
        if (i > 0) {
            if (mag != 1) out << '*';
            out << 'z';
            if (i > 1) out << '^' << i;
        }
        first = false;
    }
    return out.str();
}

const Polynomial& RationalFunction::radicand() {
    static const Polynomial r(std::vector<mpq_class>{1, -3, -1, -1});
    return r;
}

namespace {

const Polynomial& z_poly() {
    static const Polynomial p = Polynomial::monomial(1);
    return p;
}

const Polynomial& one_minus_z() {
    static const Polynomial p(std::vector<mpq_class>{1, -1});
    return p;
}

} // namespace

RationalFunction::RationalFunction(Polynomial num, unsigned z_exp, unsigned one_minus_z_exp, unsigned radicand_exp)
    : num_(std::move(num)), a_(z_exp), b_(one_minus_z_exp), c_(radicand_exp) {
    normalize();
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        a_ = b_ = c_ = 0;
        return;
    }
    Polynomial q;
    while (a_ > 0 && num_[0] == 0) {
        num_.divide_exact(z_poly(), q);
        num_ = std::move(q);
        --a_;
    }
    while (b_ > 0 && num_.evaluate(1) == 0) {
        num_.divide_exact(one_minus_z(), q);
        num_ = std::move(q);
        --b_;
    }
    while (c_ > 0 && num_.divide_exact(radicand(), q)) {
        num_ = std::move(q);
        --c_;
    }
}

Polynomial RationalFunction::denominator() const {
    return z_poly().pow(a_) * one_minus_z().pow(b_) * radicand().pow(c_);
}

namespace {

Polynomial raise(const Polynomial& num, unsigned da, unsigned db, unsigned dc) {
    Polynomial out = num;
    if (da) out = out * z_poly().pow(da);
    if (db) out = out * one_minus_z().pow(db);
    if (dc) out = out * RationalFunction::radicand().pow(dc);
    return out;
}

} // namespace

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    const unsigned a = std::max(a_, o.a_), b = std::max(b_, o.b_), c = std::max(c_, o.c_);
    num_ = raise(num_, a - a_, b - b_, c - c_) + raise(o.num_, a - o.a_, b - o.b_, c - o.c_);
    a_ = a;
    b_ = b;
    c_ = c;
    normalize();
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
    num_ = num_ * o.num_;
    a_ += o.a_;
    b_ += o.b_;
    c_ += o.c_;
    normalize();
    return *this;
}

RationalFunction RationalFunction::divided(unsigned a, unsigned b, unsigned c) const {
    return RationalFunction(num_, a_ + a, b_ + b, c_ + c);
}

mpq_class RationalFunction::evaluate(const mpq_class& z) const {
    mpq_class den = denominator().evaluate(z);
    if (den == 0) throw std::domain_error("rational function has a pole at z = " + z.get_str());
    return num_.evaluate(z) / den;
}

PowerSeries<mpq_class> RationalFunction::series(std::size_t order, unsigned shift) const {
    if (shift < a_) {
        throw std::domain_error("series of a function with a pole of order " + std::to_string(a_) + " at zero");
    }
    const std::size_t extra = shift - a_;
    PowerSeries<mpq_class> s = num_.series(order);
    PowerSeries<mpq_class> den = (one_minus_z().pow(b_) * radicand().pow(c_)).series(order);
    return (s * den.inverse()).shifted(extra);
}

std::string RationalFunction::to_string() const {
    std::string out = "(" + num_.to_string() + ")";
    if (a_ == 0 && b_ == 0 && c_ == 0) return out;
    out += " / (";
    bool first = true;
    auto factor = [&](const char* name, unsigned e) {
        if (e == 0) return;
        if (!first) out += " * ";
        out += name;
        if (e > 1) out += "^" + std::to_string(e);
        first = false;
    };
    factor("z", a_);
    factor("(1 - z)", b_);
    factor("(1 - 3z - z^2 - z^3)", c_);
    return out + ")";
}

} // namespace upsilon
