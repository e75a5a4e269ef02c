#include <schizo/numeric.hpp>

#include <gtest/gtest.h>

#include <random>

using schizo::floor_log;
using schizo::Integer;
using schizo::ipow;
using schizo::isqrt;
using schizo::Natural;
using schizo::Rational;
using schizo::rational_pow;
using schizo::v2_denominator;

namespace {

Natural random_natural(std::mt19937_64& rng, unsigned max_bits) {
    const unsigned bits = std::uniform_int_distribution<unsigned>(1, max_bits)(rng);
    Natural x = 0;
    for (unsigned have = 0; have < bits; have += 64) {
        x = (x << 64) | Natural(rng());
    }
    return x >> (((bits + 63) / 64) * 64 - bits);
}

Rational random_rational(std::mt19937_64& rng) {
    Integer num = random_natural(rng, 160) + 1;
    Integer den = random_natural(rng, 160) + 1;
    if (rng() & 1) {
        num = -num;
    }
    return {num, den};
}

}  // namespace

TEST(Isqrt, Examples) {
    EXPECT_EQ(isqrt(0), 0);
    EXPECT_EQ(isqrt(1), 1);
    EXPECT_EQ(isqrt(3), 1);
    EXPECT_EQ(isqrt(4), 2);
    EXPECT_EQ(isqrt(24412), 156);
    EXPECT_EQ(isqrt(Natural(20000000000ULL)), 141421);
}

TEST(Isqrt, PerfectSquaresAndNeighbours) {
    const Natural s = ipow(10, 60) + 12345;
    EXPECT_EQ(isqrt(s * s), s);
    EXPECT_EQ(isqrt(s * s - 1), s - 1);
    EXPECT_EQ(isqrt(s * s + 2 * s), s);
}

TEST(Isqrt, RandomInputsUpTo256Bits) {
    std::mt19937_64 rng(0x5eed0001);
    for (int i = 0; i < 10000; ++i) {
        const Natural x = random_natural(rng, 256);
        const Natural s = isqrt(x);
        ASSERT_LE(s * s, x) << x;
        ASSERT_GT((s + 1) * (s + 1), x) << x;
    }
}

TEST(Rational, LowestTermsAndSign) {
    const Rational q(Integer(6), Integer(-4));
    EXPECT_EQ(q.numerator(), -3);
    EXPECT_EQ(q.denominator(), 2);
    EXPECT_EQ(Rational(Integer(0), Integer(-7)).denominator(), 1);
    EXPECT_THROW(Rational(Integer(1), Integer(0)), schizo::precondition_error);
}

TEST(Rational, Arithmetic) {
    const Rational a(Integer(1), Integer(6));
    const Rational b(Integer(1), Integer(3));
    EXPECT_EQ(a + b, Rational(Integer(1), Integer(2)));
    EXPECT_EQ(a - b, Rational(Integer(-1), Integer(6)));
    EXPECT_EQ(a * b, Rational(Integer(1), Integer(18)));
    EXPECT_EQ(a / b, Rational(Integer(1), Integer(2)));
    EXPECT_LT(a, b);
    EXPECT_EQ(Rational(Integer(-7), Integer(2)).floor(), -4);
    EXPECT_EQ(Rational(Integer(7), Integer(2)).floor(), 3);
    EXPECT_EQ(rational_pow(10, -2), Rational(Integer(1), Integer(100)));
    EXPECT_EQ(Rational(Integer(451), Integer(18)).str(), "451/18");
}

TEST(Rational, RandomResultsStayReduced) {
    std::mt19937_64 rng(0x5eed0002);
    for (int i = 0; i < 500; ++i) {
        const Rational a = random_rational(rng);
        const Rational b = random_rational(rng);
        for (const Rational& r : {a + b, a - b, a * b, a / b}) {
            ASSERT_GT(r.denominator(), 0);
            ASSERT_EQ(boost::multiprecision::gcd(r.numerator(), r.denominator()), 1);
        }
    }
}

TEST(FloorLog, Examples) {
    EXPECT_EQ(floor_log(10, Rational(Integer(451), Integer(18))), 1);
    EXPECT_EQ(floor_log(10, Rational(Integer(203401), Integer(72))), 3);
    EXPECT_EQ(floor_log(7, 1), 0);
    EXPECT_EQ(floor_log(10, Rational(Integer(-1), Integer(1000))), -3);
    EXPECT_EQ(floor_log(10, Rational(Integer(1), Integer(1001))), -4);
    EXPECT_EQ(floor_log(2, 1024), 10);
    EXPECT_EQ(floor_log(2, 1023), 9);
    EXPECT_THROW(floor_log(10, 0), schizo::precondition_error);
}

TEST(FloorLog, RandomBounds) {
    std::mt19937_64 rng(0x5eed0003);
    std::uniform_int_distribution<unsigned> base_dist(2, 36);
    for (int i = 0; i < 2000; ++i) {
        const unsigned b = base_dist(rng);
        const Rational q = random_rational(rng);
        const std::int64_t e = floor_log(b, q);
        ASSERT_LE(rational_pow(b, e), q.abs());
        ASSERT_GT(rational_pow(b, e + 1), q.abs());
    }
}

TEST(V2Denominator, Examples) {
    EXPECT_EQ(v2_denominator(Rational(Integer(1), Integer(2))), 1U);
    EXPECT_EQ(v2_denominator(Rational(Integer(-1), Integer(8))), 3U);
    EXPECT_EQ(v2_denominator(5), 0U);
    EXPECT_EQ(v2_denominator(Rational(Integer(5), Integer(24))), 3U);
    EXPECT_THROW(v2_denominator(0), schizo::precondition_error);
}
