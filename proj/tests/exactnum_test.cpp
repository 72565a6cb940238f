#include "aac/exactnum.hpp"

#include <gtest/gtest.h>
#include <mpfr.h>

#include <random>

namespace aac {
namespace {

Rational q(const char* s) { return parse_rational(s); }

TEST(Rational, ArithmeticIsExactAndReduced) {
    EXPECT_EQ(q("1/2") + q("1/3"), q("5/6"));
    EXPECT_EQ(to_string(make_rational(2, 4)), "1/2");
    EXPECT_LT(q("1/3"), q("1/2"));
    EXPECT_EQ(to_string(Rational(0)), "0");
    EXPECT_THROW(divide(q("1"), q("0")), DomainError);
    EXPECT_THROW(make_rational(1, 0), DomainError);
}

TEST(Rational, ParsesDecimalsAndFractions) {
    EXPECT_EQ(q("-1.25"), q("-5/4"));
    EXPECT_EQ(q("0.6"), q("3/5"));
    EXPECT_EQ(q("3e2"), q("300"));
    EXPECT_EQ(q("12.5e-1"), q("5/4"));
    EXPECT_THROW(q("1/x"), DomainError);
    EXPECT_THROW(q(""), DomainError);
}

TEST(Radical, NormalizeExtractsSquares) {
    Radical r = radical_normalize(0, 1, 8);
    EXPECT_EQ(r.b(), 2);
    EXPECT_EQ(r.c(), 2);
    Radical s = radical_normalize(3, 0, 7);
    EXPECT_TRUE(s.is_rational());
    EXPECT_EQ(s.c(), 1);
    Radical t = radical_normalize(0, 1, q("9/4"));
    EXPECT_TRUE(t.is_rational());
    EXPECT_EQ(t.a(), q("3/2"));
    Radical u = radical_normalize(1, 1, q("1/2"));  // sqrt(1/2) = sqrt(2)/2
    EXPECT_EQ(u.b(), q("1/2"));
    EXPECT_EQ(u.c(), 2);
    EXPECT_THROW(radical_normalize(0, 1, -2), DomainError);
}

TEST(Radical, NormalizeIsIdempotent) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        Rational a(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 50) + 1);
        Rational b(static_cast<long>(rng() % 201) - 100, static_cast<long>(rng() % 50) + 1);
        Rational c(static_cast<long>(rng() % 5000), static_cast<long>(rng() % 30) + 1);
        a.canonicalize();
        b.canonicalize();
        c.canonicalize();
        Radical once = radical_normalize(a, b, c);
        Radical twice = radical_normalize(once.a(), once.b(), Rational(once.c()));
        EXPECT_TRUE(once.same_form(twice)) << once << " vs " << twice;
    }
}

TEST(Radical, CompareExamples) {
    EXPECT_GT(compare(radical_normalize(1, 1, 2), Radical(2)), 0);
    EXPECT_LT(compare(Radical(5), radical_normalize(0, 3, 3)), 0);
    EXPECT_EQ(compare(radical_normalize(0, 2, 2), radical_normalize(0, 1, 8)), 0);
    EXPECT_TRUE(radical_normalize(0, 2, 2).same_form(radical_normalize(0, 1, 8)));
    // two distinct radicands: 3/2 + sqrt2 (2.914) vs sqrt10 (3.162)
    EXPECT_LT(compare(radical_normalize(q("3/2"), 1, 2), radical_normalize(0, 1, 10)), 0);
    // 7/5 + sqrt 2 (2.814) vs 1/2 + sqrt 5 (2.736)
    EXPECT_GT(compare(radical_normalize(q("7/5"), 1, 2), radical_normalize(q("1/2"), 1, 5)), 0);
}

TEST(Radical, MixingRadicandsSignals) {
    EXPECT_THROW(radical_normalize(0, 1, 2) + radical_normalize(0, 1, 3), MixedRadicandError);
}

TEST(Radical, ArithmeticWithinOneRadicand) {
    Radical s2 = Radical::sqrt(2);
    EXPECT_EQ(s2 * s2, Radical(2));
    Radical x = Radical(1) + s2;
    EXPECT_EQ(x * x.conjugate(), Radical(-1));
    EXPECT_EQ((Radical(1) / x), s2 - Radical(1));
    EXPECT_THROW(Radical(1) / Radical(0), DomainError);
}

TEST(Radical, EvalLinearRational) {
    Radical s2 = Radical::sqrt(2);
    Radical r = eval_linear_rational(2, 1, 1, 1, s2);
    EXPECT_TRUE(r.same_form(Radical(3) - s2)) << r;
    Radical x = radical_normalize(q("7/3"), q("1/2"), 5);
    EXPECT_TRUE(eval_linear_rational(1, 0, 0, 1, x).same_form(x));
    EXPECT_TRUE(eval_linear_rational(0, 1, 1, 0, s2).same_form(radical_normalize(0, q("1/2"), 2)));
    EXPECT_THROW(eval_linear_rational(1, 0, 1, -2, Radical(2)), PoleError);
}

TEST(Radical, BitComplexity) {
    EXPECT_EQ(bit_complexity(Integer(5)), 3u);
    EXPECT_EQ(bit_complexity(q("7/16")), 5u);
    EXPECT_EQ(bit_complexity(radical_normalize(1, 2, 3)), 2u);
}

TEST(Radical, FloorAndDecimal) {
    EXPECT_EQ(floor_of(Radical::sqrt(2)), 1);
    EXPECT_EQ(floor_of(-Radical::sqrt(2)), -2);
    EXPECT_EQ(to_decimal(Radical::sqrt(2), 10), "1.4142135623");
    EXPECT_EQ(to_decimal(Radical(q("1/8")), 3), "0.125");
    EXPECT_EQ(to_decimal(Radical(q("-1/8")), 3), "-0.125");
}

TEST(Radical, RationalBetweenIsStrictAndSimple) {
    Radical a = Radical::sqrt(2), b = radical_normalize(0, 1, 3);
    Rational m = rational_between(a, b);
    EXPECT_LT(compare(a, Radical(m)), 0);
    EXPECT_LT(compare(Radical(m), b), 0);
    EXPECT_EQ(m, q("3/2"));
    EXPECT_EQ(rational_between(q("1/3"), q("1/2")), q("2/5"));
    EXPECT_EQ(rational_between(q("-1/2"), q("1/2")), 0);
    EXPECT_EQ(rational_between(q("0"), q("1/10")), q("1/11"));
}

TEST(Radical, QuadraticRoots) {
    auto r = solve_quadratic(1, 0, -2);
    ASSERT_EQ(r.roots.size(), 2u);
    EXPECT_EQ(r.roots[0], -Radical::sqrt(2));
    EXPECT_EQ(r.roots[1], Radical::sqrt(2));
    EXPECT_TRUE(solve_quadratic(0, 0, 0).identically_zero);
    EXPECT_TRUE(solve_quadratic(1, 0, 1).roots.empty());
    EXPECT_EQ(solve_quadratic(1, -2, 1).roots.size(), 1u);
}

// High-precision decimal oracle backed by MPFR, independent of the squaring
// comparison path.
int mpfr_oracle_compare(const Radical& x, const Radical& y, bool& decisive) {
    mpfr_t vx, vy, t, diff;
    mpfr_inits2(700, vx, vy, t, diff, static_cast<mpfr_ptr>(nullptr));
    auto load = [&](mpfr_t out, const Radical& r) {
        mpfr_set_z(t, r.c().get_mpz_t(), MPFR_RNDN);
        mpfr_sqrt(t, t, MPFR_RNDN);
        mpfr_mul_q(t, t, r.b().get_mpq_t(), MPFR_RNDN);
        mpfr_set_q(out, r.a().get_mpq_t(), MPFR_RNDN);
        mpfr_add(out, out, t, MPFR_RNDN);
    };
    load(vx, x);
    load(vy, y);
    mpfr_sub(diff, vx, vy, MPFR_RNDN);
    mpfr_abs(t, diff, MPFR_RNDN);
    decisive = mpfr_cmp_d(t, 1e-50) > 0;
    int s = mpfr_sgn(diff);
    mpfr_clears(vx, vy, t, diff, static_cast<mpfr_ptr>(nullptr));
    return (s > 0) - (s < 0);
}

TEST(Radical, CompareAgreesWithDecimalOracle) {
    std::mt19937_64 rng(2024);
    auto rnd = [&](int bits) {
        Integer v = static_cast<unsigned long>(rng() >> (64 - bits));
        return (rng() & 1) ? Integer(-v) : v;
    };
    int mismatches = 0;
    for (int i = 0; i < 2000; ++i) {
        Radical x = radical_normalize(make_rational(rnd(32), abs(rnd(16)) + 1), make_rational(rnd(20), abs(rnd(8)) + 1),
                                      Rational(abs(rnd(12))));
        Radical y = (i % 3 == 0) ? Radical(x.a() + 1) - Radical(1) + Radical(x.b()) * Radical::sqrt(Rational(x.c()))
                                 : radical_normalize(make_rational(rnd(32), abs(rnd(16)) + 1),
                                                     make_rational(rnd(20), abs(rnd(8)) + 1), Rational(abs(rnd(12))));
        bool decisive = false;
        int oracle = mpfr_oracle_compare(x, y, decisive);
        int exact = compare(x, y);
        if (decisive && oracle != exact) ++mismatches;
        if (!decisive && exact != 0 && oracle == 0) ++mismatches;
    }
    EXPECT_EQ(mismatches, 0);
}

}  // namespace
}  // namespace aac
