// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace upsilon {

/// Formal power series truncated after z^order, with exact coefficients.
/// Scalar is an exact ring such as mpz_class or mpq_class. Binary operations
/// truncate to the smaller of the two orders.
template <typename Scalar>
class PowerSeries {
public:
    explicit PowerSeries(std::size_t order = 0) : coeffs_(order + 1, Scalar(0)) {}
    PowerSeries(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.push_back(Scalar(0));
    }

    static PowerSeries constant(const Scalar& c, std::size_t order) {
        PowerSeries s(order);
        s.coeffs_[0] = c;
        return s;
    }
    /// z^k truncated at `order` (zero when k exceeds it).
    static PowerSeries monomial(std::size_t k, const Scalar& c, std::size_t order) {
        PowerSeries s(order);
        if (k <= order) s.coeffs_[k] = c;
        return s;
    }

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    const Scalar& operator[](std::size_t n) const { return coeffs_.at(n); }
    Scalar& operator[](std::size_t n) { return coeffs_.at(n); }
    const std::vector<Scalar>& coefficients() const noexcept { return coeffs_; }

    PowerSeries truncated(std::size_t order) const {
        PowerSeries s(order);
        for (std::size_t i = 0; i <= order && i < coeffs_.size(); ++i) s.coeffs_[i] = coeffs_[i];
        return s;
    }

    PowerSeries& operator+=(const PowerSeries& o) {
        shrink_to(o.order());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    PowerSeries& operator-=(const PowerSeries& o) {
        shrink_to(o.order());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    PowerSeries& operator*=(const Scalar& c) {
        for (Scalar& x : coeffs_) x *= c;
        return *this;
    }

    friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
    friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
    friend PowerSeries operator*(PowerSeries a, const Scalar& c) { return a *= c; }
    friend PowerSeries operator-(PowerSeries a) { return a *= Scalar(-1); }

    /// Truncated Cauchy product; zero coefficients of the sparser side are
    /// skipped, so multiplying by a polynomial is cheap.
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
        const std::size_t order = std::min(a.order(), b.order());
        const bool a_sparser = a.nonzero_count(order) <= b.nonzero_count(order);
        const PowerSeries& sparse = a_sparser ? a : b;
        const PowerSeries& dense = a_sparser ? b : a;
        PowerSeries out(order);
        for (std::size_t i = 0; i <= order; ++i) {
            if (sparse.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; i + j <= order; ++j) out.coeffs_[i + j] += sparse.coeffs_[i] * dense.coeffs_[j];
        }
        return out;
    }
    PowerSeries& operator*=(const PowerSeries& o) { return *this = *this * o; }

    /// Multiplication by z^k (coefficients pushed past the order are lost).
    PowerSeries shifted(std::size_t k) const {
        PowerSeries out(order());
        for (std::size_t i = 0; i + k <= order(); ++i) out.coeffs_[i + k] = coeffs_[i];
        return out;
    }

    /// Multiplicative inverse. The constant term must be a unit of Scalar
    /// (+-1 for integers); every step divides by it exactly.
    PowerSeries inverse() const {
        const Scalar& c0 = coeffs_[0];
        if (c0 == 0) throw std::domain_error("power series with zero constant term has no inverse");
        PowerSeries out(order());
        out.coeffs_[0] = Scalar(1) / c0;
        for (std::size_t n = 1; n <= order(); ++n) {
            Scalar acc(0);
            for (std::size_t i = 1; i <= n; ++i) acc += coeffs_[i] * out.coeffs_[n - i];
            out.coeffs_[n] = -acc / c0;
        }
        return out;
    }

    /// Square root with constant term 1. Requires a field of characteristic
    /// zero (the recurrence divides by 2).
    PowerSeries sqrt() const {
        if (coeffs_[0] != 1) throw std::domain_error("series square root needs constant term 1");
        PowerSeries out(order());
        out.coeffs_[0] = 1;
        for (std::size_t n = 1; n <= order(); ++n) {
            Scalar acc = coeffs_[n];
            for (std::size_t i = 1; i < n; ++i) acc -= out.coeffs_[i] * out.coeffs_[n - i];
            out.coeffs_[n] = acc / 2;
        }
        return out;
    }

    PowerSeries pow(std::uint64_t e) const {
        PowerSeries result = constant(Scalar(1), order());
        PowerSeries base = *this;
        while (e > 0) {
            if (e & 1u) result *= base;
            e >>= 1;
            if (e > 0) base *= base;
        }
        return result;
    }

    friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
        const std::size_t order = std::min(a.order(), b.order());
        for (std::size_t i = 0; i <= order; ++i) {
            if (a.coeffs_[i] != b.coeffs_[i]) return false;
        }
        return true;
    }

private:
    void shrink_to(std::size_t order) {
        if (order < this->order()) coeffs_.resize(order + 1);
    }

    std::size_t nonzero_count(std::size_t order) const {
        std::size_t n = 0;
        for (std::size_t i = 0; i <= order; ++i) n += coeffs_[i] != 0;
        return n;
    }

    std::vector<Scalar> coeffs_;
};

/// Coefficient-wise conversion, e.g. integers to rationals.
template <typename To, typename From>
PowerSeries<To> series_cast(const PowerSeries<From>& s) {
    std::vector<To> out;
    out.reserve(s.order() + 1);
    for (const From& c : s.coefficients()) out.push_back(To(c));
    return PowerSeries<To>(std::move(out));
}

} // namespace upsilon
