#include <schizo/expansion.hpp>
#include <schizo/taylor.hpp>

#include <gtest/gtest.h>

using namespace schizo;

namespace {

Rational frac(std::int64_t n, std::int64_t d) { return {Integer(n), Integer(d)}; }

}  // namespace

TEST(BinomHalf, Examples) {
    EXPECT_EQ(binom_half(0), 1);
    EXPECT_EQ(binom_half(1), frac(1, 2));
    EXPECT_EQ(binom_half(2), frac(-1, 8));
    EXPECT_EQ(binom_half(3), frac(1, 16));
    EXPECT_EQ(binom_half(4), frac(-5, 128));
}

TEST(BinomHalf, RecurrenceBetweenTerms) {
    // C(1/2, l+1) = C(1/2, l) * (1/2 - l) / (l + 1)
    for (std::size_t l = 0; l < 40; ++l) {
        const auto li = static_cast<std::int64_t>(l);
        ASSERT_EQ(binom_half(l + 1), binom_half(l) * frac(1 - 2 * li, 2 * (li + 1)));
    }
}

TEST(Term, Examples) {
    EXPECT_EQ(term(10, 25, 1).coefficient(), frac(-451, 18));
    EXPECT_EQ(term(10, 25, 2).coefficient().abs(), frac(203401, 72));
    const TaylorTerm t0 = term(7, 4, 0);
    EXPECT_EQ(t0.tau1, 1);
    EXPECT_EQ(t0.tau3, frac(1, 6));
    EXPECT_EQ(t0.shift, 4);
    EXPECT_EQ(term(10, 25, 2).shift, -75);
}

TEST(Term, DenominatorShapes) {
    for (Base b = 2; b <= 16; ++b) {
        for (std::size_t l = 0; l <= 8; ++l) {
            const TaylorTerm t = term(b, 10, l);
            const Integer d1 = t.tau1.denominator();
            ASSERT_EQ(d1 & (d1 - 1), 0) << "tau1 denominator " << d1;
            ASSERT_EQ(Integer(b - 1) % t.tau3.denominator(), 0);
        }
    }
}

TEST(PartialSum, Examples) {
    const Rational s0 = partial_sum(10, 25, 0);
    EXPECT_EQ(s0, Rational(ipow(10, 25), Integer(9)));
    EXPECT_EQ(partial_sum(10, 25, 1), s0 - Rational(Integer(451), 18 * ipow(10, 25)));
    for (Base b = 2; b <= 16; ++b) {
        for (std::uint64_t k : {1, 5, 25}) {
            const Rational p = partial_sum(b, k, 0);
            ASSERT_GE(p * p, Rational(f_closed(b, 2 * k - 1)));
        }
    }
}

TEST(PartialSum, TruncationErrorBelowTwiceNextTerm) {
    // |sqrt(f) - S_L| < 2|tau_{L+1}|, checked by squaring both bounds
    for (Base b : {3U, 5U, 8U, 10U, 11U, 13U, 16U}) {
        TaylorSeries series(b, 25);
        const Rational f(f_closed(b, 49));
        for (std::size_t L = 0; L <= 5; ++L) {
            const Rational s = series.partial_sum(L);
            const Rational slack = 2 * series.term(L + 1).value(b).abs();
            const Rational low = s - slack;
            const Rational high = s + slack;
            ASSERT_GT(low.sign(), 0);
            ASSERT_LT(low * low, f) << "b=" << b << " L=" << L;
            ASSERT_GT(high * high, f) << "b=" << b << " L=" << L;
        }
    }
}

TEST(ShiftParams, Examples) {
    EXPECT_EQ(shift_params(10, 1).q, 1U);
    EXPECT_EQ(shift_params(10, 1).r, 1U);
    EXPECT_EQ(shift_params(10, 2).q, 3U);
    EXPECT_EQ(shift_params(10, 2).r, 3U);
    EXPECT_EQ(shift_params(11, 2).q, 3U);
    EXPECT_EQ(shift_params(11, 2).r, 0U);
    EXPECT_EQ(shift_params(8, 2).r, 1U);
    EXPECT_EQ(shift_params(6, 2).r, 3U);
    EXPECT_THROW(shift_params(10, 0), precondition_error);
}

TEST(FirstDigit, Examples) {
    EXPECT_EQ(first_digit(10, frac(451, 18)), 2U);
    EXPECT_EQ(first_digit(10, frac(203401, 72)), 2U);
    for (Base b = 2; b <= 36; ++b) {
        EXPECT_EQ(first_digit(b, 1), 1U);
    }
    EXPECT_EQ(first_digit(16, frac(1, 32)), 8U);
    EXPECT_THROW(first_digit(10, frac(-1, 2)), precondition_error);
}

TEST(RepeatingDigit, Base10) {
    EXPECT_EQ(repeating_digit(10, 25, 0), std::vector<Digit>({1}));
    EXPECT_EQ(repeating_digit(10, 25, 1), std::vector<Digit>({5}));
    EXPECT_EQ(repeating_digit(10, 25, 2), std::vector<Digit>({6}));
}

TEST(RepeatingDigit, OddBasesHaveLongerPeriods) {
    const auto p11 = repeating_digit(11, 25, 1);
    ASSERT_EQ(p11.size(), 2U);
    EXPECT_TRUE(std::is_permutation(p11.begin(), p11.end(), std::vector<Digit>{0, 6}.begin()));
    EXPECT_EQ(repeating_digit(8, 25, 1), std::vector<Digit>({4}));
}

TEST(Epsilon, Base10WorkedValues) {
    EXPECT_EQ(epsilon(10, 25, 1), 1);
    EXPECT_EQ(epsilon(10, 25, 2), 0);
    EXPECT_EQ(epsilon(10, 25, 1, EpsilonRule::leading_digit), 1);
    EXPECT_EQ(epsilon(10, 25, 2, EpsilonRule::leading_digit), 0);
    EXPECT_THROW(epsilon(10, 25, 0), precondition_error);
}

TEST(Epsilon, TieBetweenRepeatingAndFirstDigitBorrows) {
    // base 13: d_0 = f_1 = 1, yet the term still borrows from the run of 1s
    TaylorSeries series(13, 25);
    EXPECT_EQ(series.repeating_digits(0).front(), first_digit(13, series.magnitude(1)));
    EXPECT_EQ(series.epsilon(1, EpsilonRule::borrow), 1);
    EXPECT_EQ(series.epsilon(1, EpsilonRule::leading_digit), 0);
}

TEST(Epsilon, LeadingDigitCaseWhenDigitIsLarger) {
    // d_{l-1} >= f_l: no borrow under either rule
    TaylorSeries series(10, 25);
    ASSERT_GE(series.repeating_digits(1).front(), first_digit(10, series.magnitude(2)));
    EXPECT_EQ(series.epsilon(2, EpsilonRule::leading_digit), 0);
    EXPECT_EQ(series.epsilon(2, EpsilonRule::borrow), 0);
}
