#include "aac/geom2d.hpp"
#include "polygon_gen.hpp"

#include <gtest/gtest.h>

#include <set>

namespace aac {
namespace {

using testing::l_hexagon;
using testing::random_point;
using testing::random_simple_polygon;

Point2 pt(int x, int y) { return {Rational(x), Rational(y)}; }
Point2 pt(const char* x, const char* y) { return {parse_rational(x), parse_rational(y)}; }

Polygon square(int x0, int y0, int x1, int y1) { return {pt(x0, y0), pt(x1, y0), pt(x1, y1), pt(x0, y1)}; }

Rational area(const std::vector<Polygon>& ps) {
    Rational s = 0;
    for (const auto& p : ps) s += signed_area2(p);
    return s / 2;
}

bool in_any(const std::vector<Polygon>& ps, const Point2& x) {
    for (const auto& p : ps)
        if (locate_point(p, x) >= 0) return true;
    return false;
}

// Brute-force hull vertices: a point is a vertex when some directed pair
// through it has every other point strictly left or on the segment.
std::set<Point2> brute_hull(const std::vector<Point2>& pts) {
    std::set<Point2> out;
    for (const auto& a : pts)
        for (const auto& b : pts) {
            if (a == b) continue;
            bool ok = true;
            for (const auto& c : pts) {
                int o = orient(a, b, c);
                if (o < 0 || (o == 0 && !on_segment(a, b, c))) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                out.insert(a);
                out.insert(b);
            }
        }
    return out;
}

TEST(Orient, Examples) {
    EXPECT_GT(orient(pt(0, 0), pt(1, 0), pt(0, 1)), 0);
    EXPECT_EQ(orient(pt(0, 0), pt(1, 1), pt(3, 3)), 0);
    EXPECT_LT(orient(pt(0, 0), pt(1, 0), pt(1, -1)), 0);
    RPoint2 a(pt(0, 0)), b(pt(1, 0));
    RPoint2 c{Radical::sqrt(2), Radical::sqrt(2) * Radical(Rational(-1))};
    EXPECT_LT(orient(a, b, c), 0);
}

TEST(Lines, Intersections) {
    auto o = line_intersection(pt(-1, 0), pt(1, 0), pt(0, -1), pt(0, 1));
    ASSERT_TRUE(o.has_value());
    EXPECT_EQ(*o, pt(0, 0));
    EXPECT_FALSE(line_intersection(pt(0, 0), pt(1, 0), pt(0, 1), pt(1, 1)).has_value());
    auto h = segment_intersection(pt(0, 0), pt(1, 1), pt(1, 1), pt(2, 0));
    EXPECT_EQ(h.relation, SegmentRelation::point);
    EXPECT_EQ(h.p, pt(1, 1));
    auto ov = segment_intersection(pt(0, 0), pt(2, 0), pt(1, 0), pt(3, 0));
    EXPECT_EQ(ov.relation, SegmentRelation::overlap);
    EXPECT_EQ(segment_intersection(pt(0, 0), pt(1, 0), pt(2, 0), pt(3, 0)).relation, SegmentRelation::disjoint);
}

TEST(ConvexHull, Examples) {
    auto h = convex_hull({pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1), pt("1/2", "1/2")});
    EXPECT_FALSE(h.degenerate);
    EXPECT_EQ(h.vertices.size(), 4u);
    EXPECT_GT(sign(signed_area2(h.vertices)), 0);
    EXPECT_EQ(convex_hull({pt(0, 0), pt(3, 1), pt(1, 2)}).vertices.size(), 3u);
    auto seg = convex_hull({pt(0, 0), pt(1, 1), pt(2, 2)});
    EXPECT_TRUE(seg.degenerate);
}

TEST(ConvexHull, MatchesBruteForceOnDiskSamples) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> c(-20, 20);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Point2> pts;
        while (pts.size() < 50) {
            int x = c(rng), y = c(rng);
            if (x * x + y * y <= 400) pts.push_back(pt(x, y));
        }
        auto h = convex_hull(pts);
        std::set<Point2> got(h.vertices.begin(), h.vertices.end());
        EXPECT_EQ(got, brute_hull(pts));
        for (std::size_t i = 0; i < h.vertices.size(); ++i)
            for (const auto& p : pts)
                EXPECT_GE(orient(h.vertices[i], h.vertices[(i + 1) % h.vertices.size()], p), 0);
    }
}

TEST(Cone, Membership) {
    Cone c{pt(1, 0), pt(0, 0), pt(0, 1)};
    EXPECT_TRUE(cone_contains(c, pt(1, 1)));
    EXPECT_FALSE(cone_contains(c, pt(-1, 0)));
    EXPECT_TRUE(cone_contains(c, pt(2, 0)));
    EXPECT_FALSE(cone_contains(c, pt(2, 0), true));
    EXPECT_THROW(cone_contains(Cone{pt(1, 0), pt(0, 0), pt(2, 0)}, pt(1, 1)), GeometryError);
}

TEST(Polygon, LocateAndSegments) {
    Polygon L = l_hexagon();
    EXPECT_EQ(locate_point(L, pt("1/2", "1/2")), 1);
    EXPECT_EQ(locate_point(L, pt("3/2", "3/2")), -1);
    EXPECT_EQ(locate_point(L, pt(1, 1)), 0);
    EXPECT_TRUE(segment_inside(L, pt(0, 0), pt(2, 1)));
    EXPECT_FALSE(segment_inside(L, pt(2, 1), pt(1, 2)));
    // grazing the reflex corner stays inside
    EXPECT_TRUE(segment_inside(L, pt(0, 0), pt(1, 1)));
    EXPECT_TRUE(segment_inside(L, pt("1/2", "3/2"), pt("3/2", "1/2")));
}

void expect_visibility_matches(const Polygon& P, const Point2& q, std::mt19937& rng, int samples) {
    Polygon V = visibility_polygon(P, q);
    ASSERT_GE(V.size(), 3u);
    auto box = bounding_box(P, 0);
    for (int i = 0; i < samples; ++i) {
        Point2 x = random_point(rng, box[0].x, box[2].x);
        if (locate_point(P, x) < 0) continue;
        bool oracle = segment_inside(P, q, x);
        EXPECT_EQ(locate_point(V, x) >= 0, oracle) << "sample " << to_string(x) << " from " << to_string(q);
    }
    for (const auto& v : V) EXPECT_TRUE(segment_inside(P, q, v));
}

TEST(Visibility, ConvexIsWhole) {
    Polygon P = square(0, 0, 3, 2);
    Polygon V = visibility_polygon(P, pt(1, 1));
    EXPECT_EQ(V.size(), 4u);
    EXPECT_EQ(signed_area2(V), signed_area2(P));
}

TEST(Visibility, LShapeMembership) {
    std::mt19937 rng(11);
    Polygon L = l_hexagon();
    Polygon V = visibility_polygon(L, pt("1/2", "1/2"));
    EXPECT_GE(locate_point(V, pt("0.4", "1.8")), 0);
    EXPECT_TRUE(segment_inside(L, pt("1/2", "1/2"), pt("1.8", "0.9")));
    EXPECT_GE(locate_point(V, pt("1.8", "0.9")), 0);
    expect_visibility_matches(L, pt("1/2", "1/2"), rng, 400);
    expect_visibility_matches(L, pt("1/4", "7/4"), rng, 400);
    // at the reflex vertex the whole L is seen
    expect_visibility_matches(L, pt(1, 1), rng, 400);
    expect_visibility_matches(L, pt(0, 2), rng, 400);
    expect_visibility_matches(L, pt("3/2", "0"), rng, 400);
    EXPECT_THROW(visibility_polygon(L, pt(3, 3)), GeometryError);
}

TEST(Visibility, RandomPolygonsAreStarShapedFromViewpoint) {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 15; ++trial) {
        Polygon P = random_simple_polygon(rng, 5 + trial % 6);
        expect_visibility_matches(P, P[trial % P.size()], rng, 200);
        Point2 inner;
        do inner = random_point(rng, 0, 12);
        while (locate_point(P, inner) <= 0);
        expect_visibility_matches(P, inner, rng, 200);
    }
}

TEST(RegionIntersection, Squares) {
    auto r = region_intersection(square(0, 0, 2, 2), square(1, 1, 3, 3));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].size(), 4u);
    EXPECT_EQ(area(r), 1);
    EXPECT_TRUE(region_intersection(square(0, 0, 1, 1), square(2, 2, 3, 3)).empty());
    // identical and nested inputs
    EXPECT_EQ(area(region_intersection(square(0, 0, 2, 2), square(0, 0, 2, 2))), 4);
    EXPECT_EQ(area(region_intersection(square(0, 0, 4, 4), square(1, 1, 2, 2))), 1);
    // sharing an edge from outside leaves nothing of positive area
    EXPECT_TRUE(region_intersection(square(0, 0, 1, 1), square(1, 0, 2, 1)).empty());
}

TEST(RegionIntersection, MatchesMembershipOracle) {
    std::mt19937 rng(13);
    Polygon L = l_hexagon();
    std::vector<std::pair<Polygon, Polygon>> cases{
        {visibility_polygon(L, pt("1/4", "7/4")), visibility_polygon(L, pt("7/4", "1/4"))},
        {visibility_polygon(L, pt(2, 1)), visibility_polygon(L, pt(1, 2))},
    };
    for (int trial = 0; trial < 6; ++trial) {
        Polygon P = random_simple_polygon(rng, 7 + trial % 4);
        cases.emplace_back(visibility_polygon(P, P[0]), visibility_polygon(P, P[P.size() / 2]));
        cases.emplace_back(P, random_simple_polygon(rng, 6));
    }
    for (const auto& [A, B] : cases) {
        auto ab = region_intersection(A, B);
        auto ba = region_intersection(B, A);
        EXPECT_EQ(area(ab), area(ba));
        auto box = bounding_box(A, 1);
        for (int i = 0; i < 500; ++i) {
            Point2 x = random_point(rng, box[0].x, box[2].x);
            int la = locate_point(A, x), lb = locate_point(B, x);
            if (la == 0 || lb == 0) continue;
            bool want = la > 0 && lb > 0;
            EXPECT_EQ(in_any(ab, x), want) << to_string(x);
            EXPECT_EQ(in_any(ba, x), want) << to_string(x);
        }
    }
}

TEST(HalfPlaneClip, Examples) {
    Polygon sq = square(0, 0, 1, 1);
    auto r = halfplane_clip(sq, {pt("1/2", "0"), pt("1/2", "1")});
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(area(r), Rational(1, 2));
    EXPECT_GE(locate_point(r[0], pt("1/4", "1/2")), 0);
    auto whole = halfplane_clip(sq, {pt(5, 0), pt(5, 1)});
    ASSERT_EQ(whole.size(), 1u);
    EXPECT_EQ(whole[0].size(), 4u);
    // the cut passes through two corners; each is kept once
    auto tri = halfplane_clip(sq, {pt(0, 0), pt(1, 1)});
    ASSERT_EQ(tri.size(), 1u);
    EXPECT_EQ(tri[0].size(), 3u);
    EXPECT_EQ(clip_convex(sq, {pt(0, 0), pt(1, 1)}).size(), 3u);
}

TEST(HalfPlaneClip, ComplementaryClipsRestoreArea) {
    std::mt19937 rng(14);
    for (int trial = 0; trial < 20; ++trial) {
        Polygon P = random_simple_polygon(rng, 5 + trial % 8);
        Point2 a = random_point(rng, 0, 12), b = random_point(rng, 0, 12);
        if (a == b) continue;
        auto left = halfplane_clip(P, {a, b});
        auto right = halfplane_clip(P, {b, a});
        EXPECT_EQ(area(left) + area(right), signed_area2(P) / 2);
    }
}

TEST(Kernel, StarShapedDetection) {
    EXPECT_FALSE(polygon_kernel(l_hexagon()).empty());
    Polygon comb{pt(0, 0), pt(5, 0), pt(5, 3), pt(4, 3), pt(4, 1), pt(3, 1), pt(3, 3),
                 pt(2, 3), pt(2, 1), pt(1, 1), pt(1, 3), pt(0, 3)};
    EXPECT_TRUE(polygon_kernel(comb).empty());
}

}  // namespace
}  // namespace aac
