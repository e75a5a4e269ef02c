#pragma once

// Exact arithmetic substrate: big integers, reduced fractions, integer square
// root, exact floor-logarithm and the 2-adic valuation of denominators.

#include <schizo/error.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

namespace schizo {

using Integer = boost::multiprecision::cpp_int;

/// Non-negative by contract; operations taking a Natural validate the sign.
using Natural = Integer;

/// Positional base. Every operation requires base >= 2.
using Base = std::uint32_t;

inline void require_base(Base base) {
    detail::require(base >= 2, "base must be at least 2");
}

inline Integer ipow(const Integer& base, std::uint64_t exponent) {
    Integer result = 1;
    Integer factor = base;
    while (exponent != 0) {
        if ((exponent & 1U) != 0) {
            result *= factor;
        }
        exponent >>= 1U;
        if (exponent != 0) {
            factor *= factor;
        }
    }
    return result;
}

/// floor(sqrt(x)) by Newton iteration from an over-estimate.
inline Natural isqrt(const Natural& x) {
    detail::require(x >= 0, "isqrt of a negative number");
    if (x < 2) {
        return x;
    }
    const auto bits = boost::multiprecision::msb(x);
    Natural guess = Natural(1) << (bits / 2 + 1);
    for (;;) {
        Natural next = (guess + x / guess) >> 1;
        if (next >= guess) {
            return guess;
        }
        guess = std::move(next);
    }
}

/// Exact fraction kept in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;

    Rational(Integer numerator)  // NOLINT(google-explicit-constructor)
        : num_(std::move(numerator)) {}

    template <std::integral I>
    Rational(I value)  // NOLINT(google-explicit-constructor)
        : num_(value) {}

    Rational(Integer numerator, Integer denominator)
        : num_(std::move(numerator)), den_(std::move(denominator)) {
        detail::require(den_ != 0, "zero denominator");
        normalize();
    }

    [[nodiscard]] const Integer& numerator() const noexcept { return num_; }
    [[nodiscard]] const Integer& denominator() const noexcept { return den_; }

    [[nodiscard]] int sign() const { return num_.sign(); }
    [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
    [[nodiscard]] bool is_integer() const { return den_ == 1; }

    [[nodiscard]] Rational abs() const {
        Rational r = *this;
        if (r.num_ < 0) {
            r.num_ = -r.num_;
        }
        return r;
    }

    /// Greatest integer not above the value.
    [[nodiscard]] Integer floor() const {
        Integer q;
        Integer r;
        boost::multiprecision::divide_qr(num_, den_, q, r);
        if (r < 0) {
            --q;
        }
        return q;
    }

    [[nodiscard]] std::string str() const {
        if (den_ == 1) {
            return num_.str();
        }
        return num_.str() + "/" + den_.str();
    }

    Rational operator-() const {
        Rational r = *this;
        r.num_ = -r.num_;
        return r;
    }

    Rational& operator+=(const Rational& o) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator-=(const Rational& o) { return *this += -o; }
    Rational& operator*=(const Rational& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        detail::require(!o.is_zero(), "division by zero");
        num_ *= o.den_;
        den_ *= o.num_;
        normalize();
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const Integer lhs = a.num_ * b.den_;
        const Integer rhs = b.num_ * a.den_;
        if (lhs < rhs) {
            return std::strong_ordering::less;
        }
        if (lhs > rhs) {
            return std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

private:
    void normalize() {
        if (den_ < 0) {
            den_ = -den_;
            num_ = -num_;
        }
        if (num_.is_zero()) {
            den_ = 1;
            return;
        }
        Integer g = boost::multiprecision::gcd(num_, den_);
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    Integer num_ = 0;
    Integer den_ = 1;
};

/// base^exponent for a possibly negative exponent.
inline Rational rational_pow(const Integer& base, std::int64_t exponent) {
    if (exponent >= 0) {
        return Rational(ipow(base, static_cast<std::uint64_t>(exponent)));
    }
    return Rational(Integer(1), ipow(base, static_cast<std::uint64_t>(-exponent)));
}

/// Greatest e with base^e <= |q|, by exact integer comparison.
inline std::int64_t floor_log(const Natural& base, const Rational& q) {
    detail::require(base >= 2, "floor_log base must be at least 2");
    detail::require(!q.is_zero(), "floor_log of zero");
    const Integer n = boost::multiprecision::abs(q.numerator());
    const Integer& d = q.denominator();
    std::int64_t e = 0;
    if (n >= d) {
        Integer scaled = d;
        while (scaled * base <= n) {
            scaled *= base;
            ++e;
        }
    } else {
        Integer scaled = n;
        while (scaled < d) {
            scaled *= base;
            --e;
        }
    }
    return e;
}

/// Exponent of 2 in the reduced denominator of q.
inline std::size_t v2_denominator(const Rational& q) {
    detail::require(!q.is_zero(), "v2_denominator of zero");
    return static_cast<std::size_t>(boost::multiprecision::lsb(q.denominator()));
}

}  // namespace schizo
