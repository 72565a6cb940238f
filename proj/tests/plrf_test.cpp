#include "aac/plrf.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

namespace aac {
namespace {

using PF = PiecewiseFunction<UnitRep>;
using PR = PiecewiseFunction<RayRep>;
using LF = LiftedPiecewise<UnitRep>;

Rational q(const char* s) { return parse_rational(s); }
UnitPoint u(const char* s) { return UnitPoint(q(s)); }
UnitPoint u(const Rational& v) { return UnitPoint(v); }
RayPoint ray(long x, long y) { return RayPoint(Rational(x), Rational(y)); }

PF rotation(const Rational& d) {
    if (d == 0) return PF::identity();
    return PF({{UnitPoint::branch(), LinRat1(1, d, 0, 1)}, {u(1 - d), LinRat1(1, d - 1, 0, 1)}});
}

std::vector<UnitPoint> random_points(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> den(1, 997);
    std::vector<UnitPoint> out;
    for (int i = 0; i < n; ++i) {
        int d = den(rng);
        out.push_back(u(make_rational(std::uniform_int_distribution<int>(0, d - 1)(rng), d)));
    }
    return out;
}

// Random increasing generator: k pieces, each an affine map with a positive
// slope, arranged so the image never wraps inside a piece.
PF random_monotone(std::mt19937& rng, int k) {
    std::vector<Piece<UnitRep>> pieces;
    std::vector<int> cuts{0};
    std::set<int> seen{0};
    while (static_cast<int>(cuts.size()) < k) {
        int c = std::uniform_int_distribution<int>(1, 99)(rng);
        if (seen.insert(c).second) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        Rational slope = make_rational(std::uniform_int_distribution<int>(1, 5)(rng), std::uniform_int_distribution<int>(1, 5)(rng));
        Rational shift = make_rational(std::uniform_int_distribution<int>(-50, 150)(rng), 100);
        pieces.push_back({u(make_rational(cuts[i], 100)), LinRat1(slope, shift, 0, 1)});
    }
    return PF(std::move(pieces));
}

TEST(Piecewise, EvalIdentityAndRotation) {
    EXPECT_EQ(PF::identity()(u("0.3")), u("0.3"));
    PF r = rotation(q("2/5"));
    EXPECT_EQ(r(u("0.9")), u("0.3"));
    EXPECT_EQ(r(u("0.6")), u("0"));
    EXPECT_EQ(r(u("0")), u("0.4"));
}

TEST(Piecewise, EvalRayRotation) {
    PR rot = PR::single(LinRat2(0, -1, 1, 0));
    EXPECT_EQ(rot(ray(1, 0)), ray(0, 1));
    EXPECT_EQ(rot(ray(-2, -1)), ray(1, -2));
}

TEST(Piecewise, HoleRaises) {
    PF f({{UnitPoint::branch(), LinRat1(1, 0, 0, 2)}, {u("1/2"), std::nullopt}});
    EXPECT_THROW(f(u("0.7")), DomainError);
    EXPECT_EQ(f(u("0.4")), u("0.2"));
}

TEST(Piecewise, ComposeRotations) {
    PF h = compose(rotation(q("1/4")), rotation(q("1/4")));
    for (const auto& x : random_points(50, 1)) EXPECT_EQ(h(x), UnitPoint(x.t() + Radical(q("1/2"))));
    EXPECT_EQ(h.boundaries().size(), 1u);
}

TEST(Piecewise, ComposeMoebius) {
    LinRat1 f(1, 0, 1, 1);  // t / (t + 1)
    LinRat1 g(0, 1, 1, 0);  // 1 / t
    EXPECT_EQ(f.then_after(g), LinRat1(0, 1, 1, 1));
    PF pf = PF::single(f);
    PF pg = PF::single(LinRat1(0, 1, 1, 1));
    PF h = compose(pf, pg);  // 1 / (t + 2) away from t = 0
    EXPECT_EQ(h(u("1/3")), u("3/7"));
    EXPECT_EQ(h(u("1/2")), u("2/5"));
}

TEST(Piecewise, InvertRotationAndHalving) {
    PF inv = invert(rotation(q("2/5")));
    for (const auto& x : random_points(50, 2)) EXPECT_EQ(inv(x), UnitPoint(x.t() + Radical(q("3/5"))));
    PF id = invert(PF::identity());
    EXPECT_EQ(id.size(), 1u);
    PF half = PF::single(LinRat1(1, 0, 0, 2));
    PF dbl = invert(half);
    EXPECT_EQ(dbl(u("0.3")), u("0.6"));
    EXPECT_FALSE(dbl.defined_at(u("0.7")));
}

TEST(Piecewise, InvertRejectsReflection) {
    PF refl({{UnitPoint::branch(), LinRat1(-1, 1, 0, 1)}});
    EXPECT_THROW(invert(refl), DomainError);
}

TEST(Piecewise, MergeConstantWithIdentity) {
    PF c = PF::single(LinRat1::constant(u("0.6")));
    PF m = merge_max(c, PF::identity());
    ASSERT_EQ(m.boundaries().size(), 2u);
    EXPECT_EQ(m.boundaries()[1], u("0.6"));
    EXPECT_EQ(m(u("0.2")), u("0.6"));
    EXPECT_EQ(m(u("0.8")), u("0.8"));
    PF n = merge_min(c, PF::identity());
    EXPECT_EQ(n(u("0.2")), u("0.2"));
    EXPECT_EQ(n(u("0.8")), u("0.6"));
}

TEST(Piecewise, MergeWithoutInteriorCrossing) {
    PF a({{UnitPoint::branch(), LinRat1(2, 0, 1, 1)}});   // 2t / (t + 1)
    PF b({{UnitPoint::branch(), LinRat1(3, 0, 1, 2)}});   // 3t / (t + 2)
    PF m = merge_max(a, b);
    EXPECT_EQ(m.size(), 1u);
    // dense sampling: 2t/(t+1) >= 3t/(t+2) on [0,1)
    for (int i = 0; i < 200; ++i) {
        Rational t = make_rational(i, 200);
        EXPECT_EQ(m(u(t)), a(u(t)));
    }
    PF a2({{UnitPoint::branch(), LinRat1(1, q("1/4"), 0, 1)}, {u("1/2"), std::nullopt}});
    PF b2({{UnitPoint::branch(), LinRat1(1, 1, 0, 2)}, {u("1/2"), std::nullopt}});
    PF m2 = merge_max(a2, b2);
    EXPECT_EQ(m2(u("0.1")), b2(u("0.1")));
    EXPECT_FALSE(m2.defined_at(u("0.6")));
}

TEST(Piecewise, MergeDomainUnion) {
    PF a({{UnitPoint::branch(), LinRat1::constant(u("0.3"))}, {u("1/2"), std::nullopt}});
    PF b({{UnitPoint::branch(), std::nullopt}, {u("1/4"), LinRat1::constant(u("0.9"))}});
    PF m = merge_max(a, b);
    EXPECT_EQ(m(u("0.1")), u("0.3"));
    EXPECT_EQ(m(u("0.3")), u("0.9"));
    EXPECT_EQ(m(u("0.7")), u("0.9"));
}

TEST(Lift, RotationWindings) {
    LF l = lift(rotation(q("2/5")));
    ASSERT_EQ(l.size(), 2u);
    EXPECT_EQ(l.pieces()[0].winding, 0);
    EXPECT_EQ(l.pieces()[1].winding, 1);
    EXPECT_EQ(l.pieces()[1].start, u("3/5"));
    LF id = lift(PF::identity());
    for (const auto& p : id.pieces()) EXPECT_EQ(p.winding, 0);
    LF c = lift(PF::single(LinRat1::constant(UnitPoint::branch())));
    auto e = c.eval(0, u("0.5"));
    EXPECT_EQ(e.winding, 1);
    EXPECT_EQ(c.size(), 1u);
}

TEST(Lift, ProperAndThreshold) {
    LF g = lift(rotation(q("2/5")));
    EXPECT_TRUE(is_proper(g));
    EXPECT_TRUE(is_proper(lift(PF::identity())));
    LF g2 = compose(g, g), g3 = compose(g, g2);
    EXPECT_TRUE(is_proper(g2));
    EXPECT_FALSE(is_proper(g3));
    EXPECT_FALSE(threshold_test(g2).has_value());
    auto w = threshold_test(g3);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(*w, UnitPoint::branch());
}

TEST(Lift, ThresholdPiecewiseAdvance) {
    // advance 0.9 on [0,1/2), 1.1 on [1/2,1), written as a single lifted step
    LF f({{UnitPoint::branch(), LinRat1(1, q("9/10"), 0, 1), 0},
          {u("1/10"), LinRat1(1, q("-1/10"), 0, 1), 1},
          {u("1/2"), LinRat1(1, q("1/10"), 0, 1), 1},
          {u("9/10"), LinRat1(1, q("-9/10"), 0, 1), 2}});
    auto w = threshold_test(f);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(*w, u("1/2"));
}

TEST(Monotone, Examples) {
    EXPECT_TRUE(monotone_check(rotation(q("2/5"))));
    EXPECT_TRUE(monotone_check(PF::identity()));
    PF refl({{UnitPoint::branch(), LinRat1(-1, 1, 0, 1)}});
    EXPECT_FALSE(monotone_check(refl));
    PF drop({{UnitPoint::branch(), LinRat1(1, q("1/2"), 0, 1)}, {u("1/4"), LinRat1(1, q("1/4"), 0, 1)}});
    EXPECT_FALSE(monotone_check(drop));
    PF plateau({{UnitPoint::branch(), LinRat1::constant(u("1/2"))}, {u("1/2"), LinRat1(1, q("1/4"), 0, 1)}});
    EXPECT_TRUE(monotone_check(plateau));
}

TEST(Monotone, RayRotation) {
    EXPECT_TRUE(monotone_check(PR::single(LinRat2(0, -1, 1, 0))));
    EXPECT_FALSE(monotone_check(PR::single(LinRat2(1, 0, 0, -1))));
}

TEST(Properties, CompositionMatchesNestedEvaluation) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 6; ++trial) {
        PF f = random_monotone(rng, 3), g = random_monotone(rng, 4);
        PF h = compose(f, g);
        EXPECT_LE(h.boundaries().size(), 2 * (f.size() + g.size()) + 2);
        for (const auto& x : random_points(1000, 100 + trial)) ASSERT_EQ(h(x), f(g(x))) << to_string(x);
    }
}

TEST(Properties, InverseUndoesFunction) {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 6; ++trial) {
        // increasing bijection followed by a rotation
        Rational d = make_rational(std::uniform_int_distribution<int>(1, 99)(rng), 100);
        PF f = compose(rotation(d), PF({{UnitPoint::branch(), LinRat1(3, 0, 2, 1)}, {u("1/4"), LinRat1(2, 1, 0, 3)}}));
        PF fi = invert(f);
        for (const auto& x : random_points(300, 200 + trial)) ASSERT_EQ(f(fi(x)), x);
    }
}

TEST(Properties, MergeDominatesBoth) {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 6; ++trial) {
        PF a = random_monotone(rng, 3), b = random_monotone(rng, 3);
        PF m = merge_max(a, b);
        EXPECT_LE(m.size(), 2 * (a.size() + b.size()) + 4 + 8);
        for (const auto& x : random_points(1000, 300 + trial)) {
            UnitPoint mx = m(x), ax = a(x), bx = b(x);
            ASSERT_GE(ccw_compare(mx, ax, UnitPoint::branch()), 0);
            ASSERT_GE(ccw_compare(mx, bx, UnitPoint::branch()), 0);
            ASSERT_TRUE(mx == ax || mx == bx);
        }
    }
}

TEST(Properties, RayMergeAndCompose) {
    std::mt19937 rng(14);
    std::uniform_int_distribution<int> c(-4, 4);
    for (int trial = 0; trial < 10; ++trial) {
        auto rnd_map = [&] {
            for (;;) {
                int a = c(rng), b = c(rng), d = c(rng), e = c(rng);
                if (a * e - b * d > 0) return LinRat2(a, b, d, e);
            }
        };
        PR f = PR::single(rnd_map()), g = PR::single(rnd_map());
        PR h = compose(f, g), m = merge_max(f, g);
        for (int i = 0; i < 200; ++i) {
            RayPoint x(Rational(c(rng) * 7 + 1), Rational(c(rng) * 5 - 2));
            ASSERT_EQ(h(x), f(g(x)));
            RayPoint mx = m(x);
            ASSERT_TRUE(mx == f(x) || mx == g(x));
            ASSERT_GE(ccw_compare(mx, f(x)), 0);
            ASSERT_GE(ccw_compare(mx, g(x)), 0);
        }
    }
}

}  // namespace
}  // namespace aac
