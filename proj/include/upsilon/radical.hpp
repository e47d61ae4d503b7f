// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>

namespace upsilon {

/// Element a0 + a1 u + a2 v + a3 uv of the extension Field[u, v] with
/// u^2 = Relations::u_squared() and v^2 = Relations::v_squared().
///
/// Relations is a type with two static functions returning `const Field&`.
/// Instantiated over rational functions of z for the closed forms, and over
/// the rationals for their values at z = 1/4.
template <typename Field, typename Relations>
class RadicalElement {
public:
    RadicalElement() : parts_{Field(0), Field(0), Field(0), Field(0)} {}
    RadicalElement(Field a0, Field a1 = Field(0), Field a2 = Field(0), Field a3 = Field(0))
        : parts_{std::move(a0), std::move(a1), std::move(a2), std::move(a3)} {}

    static RadicalElement u() { return RadicalElement(Field(0), Field(1)); }
    static RadicalElement v() { return RadicalElement(Field(0), Field(0), Field(1)); }

    /// Component on the basis element 1, u, v, uv respectively.
    const Field& part(std::size_t i) const { return parts_.at(i); }
    const Field& rational_part() const { return parts_[0]; }

    RadicalElement& operator+=(const RadicalElement& o) {
        for (std::size_t i = 0; i < 4; ++i) parts_[i] += o.parts_[i];
        return *this;
    }
    RadicalElement& operator-=(const RadicalElement& o) {
        for (std::size_t i = 0; i < 4; ++i) parts_[i] -= o.parts_[i];
        return *this;
    }
    friend RadicalElement operator+(RadicalElement a, const RadicalElement& b) { return a += b; }
    friend RadicalElement operator-(RadicalElement a, const RadicalElement& b) { return a -= b; }

    friend RadicalElement operator*(const RadicalElement& a, const RadicalElement& b) {
        const Field& U = Relations::u_squared();
        const Field& V = Relations::v_squared();
        const auto& x = a.parts_;
        const auto& y = b.parts_;
        Field c0 = x[0] * y[0] + (x[1] * y[1] + x[3] * y[3] * V) * U + x[2] * y[2] * V;
        Field c1 = x[0] * y[1] + x[1] * y[0] + (x[2] * y[3] + x[3] * y[2]) * V;
        Field c2 = x[0] * y[2] + x[2] * y[0] + (x[1] * y[3] + x[3] * y[1]) * U;
        Field c3 = x[0] * y[3] + x[3] * y[0] + x[1] * y[2] + x[2] * y[1];
        return RadicalElement(std::move(c0), std::move(c1), std::move(c2), std::move(c3));
    }
    RadicalElement& operator*=(const RadicalElement& o) { return *this = *this * o; }

    friend RadicalElement operator*(RadicalElement a, const Field& c) {
        for (Field& p : a.parts_) p = p * c;
        return a;
    }

    RadicalElement pow(std::uint64_t e) const {
        RadicalElement result(Field(1));
        RadicalElement base = *this;
        while (e > 0) {
            if (e & 1u) result *= base;
            e >>= 1;
            if (e > 0) base *= base;
        }
        return result;
    }

    friend bool operator==(const RadicalElement& a, const RadicalElement& b) { return a.parts_ == b.parts_; }

private:
    std::array<Field, 4> parts_;
};

} // namespace upsilon
