#pragma once

// Binomial-series decomposition of sqrt(f_b(2k-1)):
//
//   sqrt(f_b(2k-1)) = sum_l  binom(1/2,l) (-1)^l * c^l/(b-1) * b^(k(1-2l)),
//
// with c = (2k-1)(b-1)+b. Each term is stored as the signed coefficient
// (-1)^l binom(1/2,l), the factor c^l/(b-1) and the power-of-b shift.

#include <schizo/error.hpp>
#include <schizo/expansion.hpp>
#include <schizo/numeric.hpp>
#include <schizo/recurrence.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace schizo {

/// binom(1/2, l) = prod_{i<l} (1/2 - i) / l!
inline Rational binom_half(std::size_t l) {
    Integer num = 1;
    Integer den = 1;
    for (std::size_t i = 0; i < l; ++i) {
        num *= 1 - 2 * static_cast<std::int64_t>(i);
        den *= 2 * static_cast<std::int64_t>(i + 1);
    }
    return {num, den};
}

struct TaylorTerm {
    std::size_t l = 0;
    Rational tau1;           ///< (-1)^l binom(1/2, l)
    Rational tau3;           ///< c^l / (b-1)
    std::int64_t shift = 0;  ///< k(1-2l), the power of b

    /// tau1 * tau3: the digits of the term before shifting.
    [[nodiscard]] Rational coefficient() const { return tau1 * tau3; }

    [[nodiscard]] Rational value(Base base) const {
        return coefficient() * rational_pow(base, shift);
    }
};

inline TaylorTerm term(Base base, std::uint64_t k, std::size_t l) {
    require_base(base);
    detail::require(k >= 1, "k must be at least 1");
    TaylorTerm t;
    t.l = l;
    t.tau1 = (l % 2 == 0) ? binom_half(l) : -binom_half(l);
    t.tau3 = Rational(ipow(c_constant(base, k), l), Integer(base - 1));
    t.shift = static_cast<std::int64_t>(k) * (1 - 2 * static_cast<std::int64_t>(l));
    return t;
}

/// q: 2-adic valuation of tau1's denominator. r: least r > 0 with 2^q | b^r
/// for even b, and 0 for odd b.
struct ShiftParams {
    std::size_t q = 0;
    std::size_t r = 0;
};

inline ShiftParams shift_params(Base base, std::size_t l) {
    require_base(base);
    detail::require(l >= 1, "shift_params needs l >= 1");
    ShiftParams p;
    p.q = v2_denominator(binom_half(l));
    if (base % 2 == 1) {
        return p;
    }
    const Integer modulus = Integer(1) << p.q;
    Integer power = base;
    p.r = 1;
    while (power % modulus != 0) {
        power *= base;
        ++p.r;
    }
    return p;
}

/// Most significant base-b digit of q > 0.
inline Digit first_digit(Base base, const Rational& q) {
    require_base(base);
    detail::require(q.sign() > 0, "first_digit needs q > 0");
    const Rational scaled = q / rational_pow(base, floor_log(base, q));
    return scaled.floor().convert_to<Digit>();
}

/// How epsilon(l) decides whether block l starts one digit early.
enum class EpsilonRule {
    /// The repeating digits of block l-1, read at the positions the l-th
    /// term occupies, are compared as a whole number against that term; a
    /// borrow (epsilon = 1) happens when they are smaller.
    borrow,
    /// Only the first digit of block l-1's period is compared with the first
    /// digit of |tau1 tau3|.
    leading_digit,
};

/// Lazily evaluated terms and partial sums for one (b, k). Not thread-safe;
/// use one instance per thread.
class TaylorSeries {
public:
    TaylorSeries(Base base, std::uint64_t k) : base_(base), k_(k) {
        require_base(base);
        detail::require(k >= 1, "k must be at least 1");
    }

    [[nodiscard]] Base base() const noexcept { return base_; }
    [[nodiscard]] std::uint64_t k() const noexcept { return k_; }

    const TaylorTerm& term(std::size_t l) {
        while (terms_.size() <= l) {
            terms_.push_back(schizo::term(base_, k_, terms_.size()));
        }
        return terms_[l];
    }

    /// |tau1 tau3| of the l-th term.
    Rational magnitude(std::size_t l) { return term(l).coefficient().abs(); }

    /// Sum of terms 0..l.
    const Rational& partial_sum(std::size_t l) {
        while (sums_.size() <= l) {
            const std::size_t next = sums_.size();
            Rational v = term(next).value(base_);
            if (next > 0) {
                v += sums_.back();
            }
            sums_.push_back(std::move(v));
        }
        return sums_[l];
    }

    /// Minimal repeating unit of block l. Every later term is negative, so the
    /// digits of sqrt(f) in block l are those of the l-th partial sum
    /// approached from below.
    const std::vector<Digit>& repeating_digits(std::size_t l) {
        while (periods_.size() <= l) {
            const std::size_t next = periods_.size();
            if (next == 0) {
                periods_.push_back({1});
            } else {
                periods_.push_back(rational_expansion_from_below(base_, partial_sum(next)).period);
            }
        }
        return periods_[l];
    }

    int epsilon(std::size_t l, EpsilonRule rule = EpsilonRule::borrow) {
        detail::require(l >= 1, "epsilon needs l >= 1");
        if (rule == EpsilonRule::leading_digit) {
            const Digit previous = repeating_digits(l - 1).front();
            return previous < first_digit(base_, magnitude(l)) ? 1 : 0;
        }
        const Rational& before = partial_sum(l - 1);
        const Rational incoming = term(l).value(base_).abs();
        const Rational unit = rational_pow(base_, floor_log(base_, incoming) + 1);
        const Rational low_part = before - unit * Rational((before / unit).floor());
        return low_part < incoming ? 1 : 0;
    }

private:
    Base base_;
    std::uint64_t k_;
    std::vector<TaylorTerm> terms_;
    std::vector<Rational> sums_;
    std::vector<std::vector<Digit>> periods_;
};

inline Rational partial_sum(Base base, std::uint64_t k, std::size_t last) {
    TaylorSeries series(base, k);
    return series.partial_sum(last);
}

inline std::vector<Digit> repeating_digit(Base base, std::uint64_t k, std::size_t l) {
    TaylorSeries series(base, k);
    return series.repeating_digits(l);
}

inline int epsilon(Base base, std::uint64_t k, std::size_t l,
                   EpsilonRule rule = EpsilonRule::borrow) {
    TaylorSeries series(base, k);
    return series.epsilon(l, rule);
}

}  // namespace schizo
