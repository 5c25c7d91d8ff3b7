#ifndef VIBENC_RATIONAL_HPP
#define VIBENC_RATIONAL_HPP

// Minimal exact rational arithmetic on 64-bit integers with overflow
// detection through 128-bit intermediates.  Used to carry model preset
// coefficients exactly until the final conversion to double, so that
// symbolic identities between presets can be checked without float noise.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "vibenc/core.hpp"

namespace vibenc {

class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
        detail::require(d != 0, "Rational: zero denominator");
        normalize();
    }

    // Exact conversion: every finite double is a dyadic rational.  Rejects
    // values whose exact form does not fit in 64-bit numerator/denominator.
    static Rational from_double_exact(double v) {
        detail::require(std::isfinite(v), "Rational: non-finite value");
        if (v == 0.0) return Rational(0);
        int exp = 0;
        double frac = std::frexp(v, &exp);  // v = frac * 2^exp, |frac| in [0.5,1)
        // Scale the fraction up to a full integer mantissa (at most 53 bits).
        for (int guard = 0; guard < 64 && frac != std::floor(frac); ++guard) {
            frac *= 2.0;
            --exp;  // compensates the shift
        }
        detail::require(frac == std::floor(frac) && std::abs(frac) < 9.3e18,
                        "Rational: double mantissa does not fit");
        std::int64_t mant = static_cast<std::int64_t>(frac);
        while (mant != 0 && (mant % 2) == 0) { mant /= 2; ++exp; }
        Rational r(mant);
        // Apply the power of two; reject exponents that overflow 64 bits.
        detail::require(exp > -63 && exp < 63, "Rational: exponent out of range");
        if (exp >= 0)
            r = mul(r, Rational(std::int64_t(1) << exp));
        else
            r = mul(r, Rational(1, std::int64_t(1) << (-exp)));
        return r;
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_zero() const { return num_ == 0; }

    static Rational add(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return make_checked(n, d);
    }
    static Rational sub(const Rational& a, const Rational& b) { return add(a, neg(b)); }
    static Rational mul(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.num_;
        __int128 d = (__int128)a.den_ * b.den_;
        return make_checked(n, d);
    }
    static Rational div(const Rational& a, const Rational& b) {
        detail::require(!b.is_zero(), "Rational: division by zero");
        __int128 n = (__int128)a.num_ * b.den_;
        __int128 d = (__int128)a.den_ * b.num_;
        return make_checked(n, d);
    }
    static Rational neg(const Rational& a) { return Rational(-a.num_, a.den_); }

    Rational operator+(const Rational& o) const { return add(*this, o); }
    Rational operator-(const Rational& o) const { return sub(*this, o); }
    Rational operator*(const Rational& o) const { return mul(*this, o); }
    Rational operator/(const Rational& o) const { return div(*this, o); }
    Rational operator-() const { return neg(*this); }
    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

  private:
    std::int64_t num_, den_;

    void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    static Rational make_checked(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        __int128 an = n < 0 ? -n : n;
        __int128 g = gcd128(an, d);
        if (g > 1) { n /= g; d /= g; }
        constexpr __int128 lim = 0x7fffffffffffffffLL;
        detail::require(n <= lim && n >= -lim && d <= lim,
                        "Rational: 64-bit overflow after reduction");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        if (r.num_ == 0) r.den_ = 1;
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }
};

}  // namespace vibenc

#endif  // VIBENC_RATIONAL_HPP
