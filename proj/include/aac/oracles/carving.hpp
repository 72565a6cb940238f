#pragma once

// Brute-force answers for the planar subproblem of carving: the fewest
// half-planes that cover a set of edges without entering a convex hull.

#include "aac/carve3d.hpp"
#include "aac/oracles/separation.hpp"

namespace aac::oracle {

struct OracleLine {
    Point2 n;  ///< the cut is n . x >= h
    Rational h;
};

/// Whether the closed segment reaches the open region where every line's
/// inequality fails, by clipping and testing the middle of the remainder.
inline bool reaches_uncut(const std::vector<OracleLine>& ls, const Point2& a, const Point2& b) {
    Rational t0 = 0, t1 = 1;
    for (const auto& l : ls) {
        // need h - n . (a + t (b - a)) > 0
        Rational c0 = l.h - dot(l.n, a), c1 = -dot(l.n, b - a);
        if (c1 == 0) {
            if (c0 <= 0) return false;
            continue;
        }
        Rational r = -c0 / c1;
        if (c1 > 0)
            t0 = std::max(t0, r);
        else
            t1 = std::min(t1, r);
    }
    if (t0 > t1) return false;
    Point2 m = a + (b - a) * ((t0 + t1) / 2);
    for (const auto& l : ls)
        if (!(dot(l.n, m) < l.h)) return false;
    return true;
}

inline bool oracle_cuts_valid(const Polygon& hull, const std::vector<Segment>& edges, const std::vector<OracleLine>& ls) {
    for (const auto& l : ls)
        for (const auto& v : hull)
            if (dot(l.n, v) > l.h) return false;
    for (const auto& e : edges)
        if (reaches_uncut(ls, e.a, e.b)) return false;
    return true;
}

/// Tangent lines of the hull through points of interest, tried in all
/// pairs; a convex region with three or more sides comes from the
/// separation oracle.
inline int carve_group_oracle(const Polygon& hull, const std::vector<Segment>& edges) {
    if (hull.empty()) return 1;
    std::vector<Point2> pts(hull.begin(), hull.end());
    for (const auto& e : edges) {
        pts.push_back(e.a);
        pts.push_back(e.b);
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            auto hit = segment_intersection(edges[i].a, edges[i].b, edges[j].a, edges[j].b);
            if (hit.relation == SegmentRelation::point) pts.push_back(hit.p);
        }
        for (std::size_t k = 0; k < hull.size(); ++k) {
            auto x = line_intersection(edges[i].a, edges[i].b, hull[k], hull[(k + 1) % hull.size()]);
            if (x && on_segment(edges[i].a, edges[i].b, *x)) pts.push_back(*x);
        }
    }
    std::vector<OracleLine> lines;
    for (const auto& v : hull)
        for (const auto& p : pts) {
            if (p == v) continue;
            Point2 d = p - v;
            for (const Point2& n : {Point2{d.y, -d.x}, Point2{-d.y, d.x}}) {
                Rational h = dot(n, v);
                bool ok = true;
                for (const auto& w : hull)
                    if (dot(n, w) > h) ok = false;
                if (ok) lines.push_back({n, h});
            }
        }
    for (const auto& l : lines)
        if (oracle_cuts_valid(hull, edges, {l})) return 1;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j)
            if (oracle_cuts_valid(hull, edges, {lines[i], lines[j]})) return 2;
    std::vector<Segment> inner;
    for (std::size_t i = 0; i < hull.size(); ++i) inner.push_back({hull[i], hull[(i + 1) % hull.size()]});
    return separation_oracle(make_separation_instance(inner, edges));
}

/// A triangle can be cut free when its interior misses the hull interior.
inline bool face_free_oracle(const std::array<Point2, 3>& tri, const Polygon& hull) {
    if (hull.empty()) return true;
    Polygon t(tri.begin(), tri.end());
    if (signed_area2(t) < 0) std::reverse(t.begin(), t.end());
    for (std::size_t i = 0; i < hull.size() && t.size() >= 3; ++i) t = clip_convex(t, {hull[i], hull[(i + 1) % hull.size()]});
    return t.size() < 3 || signed_area2(t) == 0;
}

}  // namespace aac::oracle
