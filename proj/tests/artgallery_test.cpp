#include "aac/artgallery.hpp"
#include "aac/oracles/gallery.hpp"
#include "polygon_gen.hpp"

#include <gtest/gtest.h>

namespace aac {
namespace {

using testing::comb;
using oracle::gallery_oracle;
using testing::l_hexagon;
using testing::random_simple_polygon;

Point2 pt(int x, int y) { return {Rational(x), Rational(y)}; }

// Independent reach for one fixed guard in a toy restricted problem.
bool toy_valid(const EdgePair& ef, const std::vector<Point2>& blockers, const Point2& y, const Point2& p) {
    int side = orient(ef.e0, ef.e1, y);
    if (side == 0) return on_segment(ef.e0, ef.e1, y);
    if (side < 0) return false;
    for (const auto& w : blockers)
        if (detail::strictly_inside_triangle(y, p, ef.e1, w)) return false;
    return true;
}

Rational toy_reach(const EdgePair& ef, const std::vector<Point2>& blockers, const Point2& y) {
    int side = orient(ef.f0, ef.f1, y);
    if (side == 0) return on_segment(ef.f0, ef.f1, y) ? 1 : 0;
    if (side < 0) return 0;
    Rational r = 1;
    for (const auto& w : blockers) {
        if (!detail::strictly_inside_triangle(y, ef.f0, ef.f1, w)) continue;
        auto h = line_intersection(y, w, ef.f0, ef.f1);
        if (!h) continue;
        Point2 d = ef.f1 - ef.f0;
        Rational s = dot(*h - ef.f0, d) / dot(d, d);
        r = std::min(r, s);
    }
    return r;
}

TEST(RestrictedNext, FarBlockersReachTheWholeTarget) {
    EdgePair ef{pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4)};
    auto res = restricted_next(ef, pt(1, 1), pt(3, 1), pt(10, 10), pt(-5, -5));
    for (int k = 0; k < 20; ++k) {
        auto v = evaluate(res.reach, Radical(make_rational(k, 20)));
        ASSERT_TRUE(v);
        EXPECT_EQ(*v, Radical(1));
    }
}

TEST(RestrictedNext, HidingBlockerRemovesStarts) {
    EdgePair ef{pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4)};
    Point2 y = pt(2, 1);
    Point2 w{make_rational(3, 1), make_rational(1, 4)};
    auto res = restricted_next(ef, y, y, w, w);
    for (int k = 0; k < 40; ++k) {
        Rational t = make_rational(k, 40);
        Point2 p = ef.e0 + (ef.e1 - ef.e0) * t;
        EXPECT_EQ(evaluate(res.reach, Radical(t)).has_value(), toy_valid(ef, {w}, y, p)) << to_string(t);
    }
}

// Each reach value is attained by the recorded guard, and no sampled guard
// on the segment does better.
TEST(RestrictedNext, MatchesSampledGuards) {
    std::mt19937 rng(11);
    EdgePair ef{pt(0, 0), pt(6, 0), pt(6, 6), pt(0, 6)};
    int checked = 0;
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<Point2> X;
        for (int b = 0; b < 2; ++b) X.push_back(testing::random_point(rng, Rational(1), Rational(5), 17));
        Point2 l0 = testing::random_point(rng, Rational(1), Rational(5), 13);
        Point2 l1 = testing::random_point(rng, Rational(1), Rational(5), 13);
        auto res = restricted_next_multi(ef, l0, l1, X);
        for (int k = 0; k < 15; ++k) {
            Rational t = make_rational(2 * k + 1, 30);
            Point2 p = ef.e0 + (ef.e1 - ef.e0) * t;
            std::optional<Rational> best;
            for (int s = 0; s <= 60; ++s) {
                Point2 y = l0 + (l1 - l0) * make_rational(s, 60);
                if (!toy_valid(ef, X, y, p)) continue;
                Rational r = toy_reach(ef, X, y);
                if (!best || r > *best) best = r;
            }
            auto v = evaluate(res.reach, Radical(t));
            if (best) {
                ASSERT_TRUE(v) << "trial " << trial << " t " << to_string(t);
                EXPECT_GE(*v, Radical(*best));
            }
            if (!v) continue;
            const RealPiece* piece = nullptr;
            for (const auto& pc : res.reach)
                if (pc.lo <= Radical(t) && Radical(t) < pc.hi) piece = &pc;
            ASSERT_NE(piece, nullptr);
            auto y = res.candidates[piece->tag].at(t);
            ASSERT_TRUE(y);
            EXPECT_TRUE(toy_valid(ef, X, *y, p));
            EXPECT_EQ(Radical(toy_reach(ef, X, *y)), *v);
            ++checked;
        }
    }
    EXPECT_GT(checked, 30);
}

TEST(FurthestEdge, ConvexWrapsAround) {
    Polygon P{pt(0, 0), pt(4, 0), pt(5, 3), pt(2, 5), pt(-1, 3)};
    EXPECT_EQ(furthest_edge(P, 0).j, 5);
    EXPECT_EQ(furthest_edge(P, 3).j, 8);
}

TEST(FurthestEdge, RegionsSeeTheChain) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        Polygon P = random_simple_polygon(rng, 8);
        std::size_t n = P.size();
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::vector<Polygon>> regions;
            auto fe = furthest_edge(P, i, std::nullopt, &regions);
            EXPECT_EQ(static_cast<long>(i + regions.size()), fe.j);
            for (std::size_t k = 0; k < regions.size(); ++k)
                for (const auto& poly : regions[k])
                    for (const auto& x : poly)
                        for (std::size_t m = i + 1; m <= i + 1 + k; ++m)
                            EXPECT_TRUE(segment_inside(P, x, P[m % n]));
        }
    }
}

TEST(Gallery, ConvexNeedsOneGuard) {
    Polygon P{pt(0, 0), pt(4, 0), pt(5, 3), pt(2, 5), pt(-1, 3)};
    auto sol = solve_contiguous_art_gallery(P);
    EXPECT_EQ(sol.plan.k, 1);
    EXPECT_FALSE(sol.generator);
    EXPECT_EQ(sol.plan.guards[0].guard, RPoint2(polygon_kernel(P).front()));
    EXPECT_TRUE(validate_plan(P, sol.plan));
}

TEST(Gallery, LHexagonIsStarShaped) {
    auto sol = solve_contiguous_art_gallery(l_hexagon());
    EXPECT_EQ(sol.plan.k, 1);
    EXPECT_EQ(gallery_oracle(l_hexagon()), 1);
    EXPECT_THROW(build_gallery_generator(l_hexagon()), StarShaped);
}

TEST(Gallery, KernelWithoutVertices) {
    Polygon P{pt(4, 10), pt(12, 7), pt(11, 9), pt(0, 12), pt(0, 11), pt(7, 6), pt(10, 4), pt(9, 6), pt(1, 11)};
    auto sol = solve_contiguous_art_gallery(P);
    EXPECT_EQ(sol.plan.k, 1);
    EXPECT_EQ(gallery_oracle(P), 1);
    EXPECT_EQ(gallery_oracle(P, true), 2);
    EXPECT_TRUE(validate_plan(P, sol.plan));
}

TEST(Gallery, Comb) {
    auto sol = solve_contiguous_art_gallery(comb());
    EXPECT_EQ(sol.plan.k, gallery_oracle(comb()));
    EXPECT_EQ(sol.plan.k, 3);
    EXPECT_TRUE(validate_plan(comb(), sol.plan));
    ASSERT_TRUE(sol.generator);
    EXPECT_TRUE(monotone_check(sol.generator->g));
    EXPECT_THROW(solve_contiguous_art_gallery(comb(), {2, SolveMode::doubling}), KMaxExceeded);
}

TEST(Gallery, LinearModeAgrees) {
    auto a = solve_contiguous_art_gallery(comb(), {std::nullopt, SolveMode::linear});
    auto b = solve_contiguous_art_gallery(comb());
    EXPECT_EQ(a.plan.k, b.plan.k);
}

TEST(Gallery, GeneratorReachIsRealizedAndMaximal) {
    const Polygon P = comb();
    auto gen = build_gallery_generator(P);
    EXPECT_TRUE(monotone_check(gen.g));
    auto all = oracle::all_stretches(gen.P, oracle::oracle_guards(gen.P));
    for (int k = 0; k < 48; ++k) {
        Rational T = make_rational(2 * k + 1, 96);
        UnitPoint start(T);
        UnitPoint target = gen.g(start);
        RPoint2 y = reconstruct_guard(gen, start);
        EXPECT_TRUE(sees_stretch(gen.P, y, start, target)) << to_string(T);
        Radical lifted = target.t();
        if (lifted <= Radical(T)) lifted += Radical(1);
        auto sampled = oracle::extend(all, T);
        if (sampled) {
            EXPECT_LE(Radical(*sampled), lifted) << to_string(T);
        }
    }
}

TEST(Gallery, RandomPolygonsMatchOracle) {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 24; ++trial) {
        int n = 5 + trial % 7;
        Polygon P = random_simple_polygon(rng, n);
        auto sol = solve_contiguous_art_gallery(P);
        EXPECT_EQ(sol.plan.k, gallery_oracle(P)) << "trial " << trial;
        EXPECT_TRUE(validate_plan(normalize_polygon(P), sol.plan));
    }
}

Polygon transform(const Polygon& P, int which) {
    Polygon out;
    for (const auto& v : P) {
        switch (which) {
            case 0: out.push_back(v + Point2{make_rational(7, 3), Rational(-5)}); break;
            case 1:
                out.push_back({v.x * make_rational(3, 5) - v.y * make_rational(4, 5),
                               v.x * make_rational(4, 5) + v.y * make_rational(3, 5)});
                break;
            case 2: out.push_back(v * make_rational(5, 2)); break;
            default: out.push_back({-v.x, v.y}); break;
        }
    }
    return out;
}

TEST(Gallery, Metamorphic) {
    std::mt19937 rng(77);
    std::vector<Polygon> cases{comb()};
    for (int trial = 0; trial < 5; ++trial) cases.push_back(random_simple_polygon(rng, 7 + trial));
    for (const auto& P : cases) {
        long k = solve_contiguous_art_gallery(P).plan.k;
        for (int which = 0; which < 4; ++which)
            EXPECT_EQ(solve_contiguous_art_gallery(transform(P, which)).plan.k, k) << which;
        Polygon extra = P;
        extra.insert(extra.begin() + 1, midpoint(P[0], P[1]));
        EXPECT_EQ(solve_contiguous_art_gallery(extra).plan.k, k);
        std::rotate(extra.begin(), extra.begin() + 3, extra.end());
        EXPECT_EQ(solve_contiguous_art_gallery(extra).plan.k, k);
    }
}

TEST(Gallery, RejectsSelfIntersection) {
    Polygon bow{pt(0, 0), pt(2, 2), pt(2, 0), pt(0, 2)};
    EXPECT_THROW(solve_contiguous_art_gallery(bow), GeometryError);
}

}  // namespace
}  // namespace aac
