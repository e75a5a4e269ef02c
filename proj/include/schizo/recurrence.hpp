#pragma once

// f_b(n) = b*f_b(n-1) + n with f_b(0) = 0.

#include <schizo/error.hpp>
#include <schizo/numeric.hpp>

#include <cstdint>

namespace schizo {

inline Natural f_iterative(Base base, std::uint64_t n) {
    require_base(base);
    Natural value = 0;
    for (std::uint64_t i = 1; i <= n; ++i) {
        value = value * base + i;
    }
    return value;
}

/// (b^(n+1) - b(n+1) + n) / (b-1)^2, with the division checked.
inline Natural f_closed(Base base, std::uint64_t n) {
    require_base(base);
    const Integer b = base;
    const Integer numerator = ipow(b, n + 1) - b * (Integer(n) + 1) + n;
    const Integer denominator = (b - 1) * (b - 1);
    Integer quotient;
    Integer remainder;
    boost::multiprecision::divide_qr(numerator, denominator, quotient, remainder);
    if (remainder != 0) {
        throw consistency_error("closed form of f_b(n) is not an integer");
    }
    return quotient;
}

/// The constant (2k-1)(b-1)+b inside the binomial series of sqrt(f_b(2k-1)).
inline Natural c_constant(Base base, std::uint64_t k) {
    require_base(base);
    detail::require(k >= 1, "k must be at least 1");
    return Natural(2 * Integer(k) - 1) * (base - 1) + base;
}

}  // namespace schizo
