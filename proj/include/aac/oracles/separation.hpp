#pragma once

// Exhaustive search over separating polygons whose sides are tangent lines
// through two input points.  A cyclic sequence of such lines is accepted when
// every corner keeps the outer segments out of the region it adds to the
// hull.

#include "aac/separation.hpp"

#include <limits>

namespace aac::oracle {

struct TangentLine {
    Point2 n;  ///< outward normal
    Rational h;
    Radical key;  ///< diamond angle of n
};

/// Whether the closed segment meets the interior of a convex polygon,
/// decided by clipping the segment and testing the midpoint of what is left.
inline bool meets_convex_interior(const Polygon& ccw, const Point2& a, const Point2& b) {
    if (ccw.size() < 3 || signed_area2(ccw) == 0) return false;
    Rational t0 = 0, t1 = 1;
    for (std::size_t i = 0; i < ccw.size(); ++i) {
        const Point2& p = ccw[i];
        const Point2& q = ccw[(i + 1) % ccw.size()];
        Rational fa = cross(q - p, a - p), fb = cross(q - p, b - p);
        // keep t with fa + t (fb - fa) >= 0
        Rational slope = fb - fa;
        if (slope == 0) {
            if (fa < 0) return false;
            continue;
        }
        Rational r = -fa / slope;
        if (slope > 0)
            t0 = std::max(t0, r);
        else
            t1 = std::min(t1, r);
    }
    if (t0 > t1) return false;
    Point2 m = a + (b - a) * ((t0 + t1) / 2);
    return locate_point(ccw, m) > 0;
}

inline std::vector<TangentLine> two_point_tangents(const Polygon& hull, const std::vector<Point2>& points) {
    std::vector<TangentLine> out;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (points[i] == points[j]) continue;
            Point2 d = points[j] - points[i];
            Point2 n{d.y, -d.x};
            Rational h = dot(n, points[i]);
            bool touches = false, inside = true;
            for (const auto& v : hull) {
                Rational s = dot(n, v);
                if (s > h) inside = false;
                if (s == h) touches = true;
            }
            if (!inside || !touches) continue;
            Radical key = RayPoint(n.x, n.y).key();
            bool dup = false;
            for (const auto& t : out)
                if (t.key == key) dup = true;
            if (!dup) out.push_back({n, h, key});
        }
    std::sort(out.begin(), out.end(), [](const TangentLine& a, const TangentLine& b) { return a.key < b.key; });
    return out;
}

/// Fewest sides, or -1 when no cycle of candidate lines works.
inline int separation_oracle(const SeparationInstance& inst) {
    const Polygon& H = inst.hull;
    std::vector<Point2> pts(H.begin(), H.end());
    for (const auto& s : inst.outer) {
        pts.push_back(s.a);
        pts.push_back(s.b);
    }
    auto lines = two_point_tangents(H, pts);
    std::size_t C = lines.size();
    auto offset = [&](std::size_t from, std::size_t to) {
        Radical d = lines[to].key - lines[from].key;
        if (d.sign() < 0) d += Radical(4);
        return d;
    };
    std::vector<std::vector<char>> ok(C, std::vector<char>(C, 0));
    for (std::size_t a = 0; a < C; ++a)
        for (std::size_t b = 0; b < C; ++b) {
            if (a == b) continue;
            Radical step = offset(a, b);
            if (!(step < Radical(2))) continue;
            const auto &la = lines[a], &lb = lines[b];
            Rational det = la.n.x * lb.n.y - la.n.y * lb.n.x;
            if (det == 0) continue;
            Point2 c{(la.h * lb.n.y - lb.h * la.n.y) / det, (la.n.x * lb.h - lb.n.x * la.h) / det};
            std::vector<Point2> pocket_pts(H.begin(), H.end());
            pocket_pts.push_back(c);
            auto pocket = convex_hull(pocket_pts);
            bool free = true;
            if (!pocket.degenerate)
                for (const auto& s : inst.outer)
                    if (meets_convex_interior(pocket.vertices, s.a, s.b)) {
                        free = false;
                        break;
                    }
            ok[a][b] = free;
        }
    int best = -1;
    const int inf = std::numeric_limits<int>::max();
    for (std::size_t s = 0; s < C; ++s) {
        std::vector<std::size_t> order;
        for (std::size_t v = 0; v < C; ++v)
            if (v != s) order.push_back(v);
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return offset(s, x) < offset(s, y); });
        std::vector<int> dist(C, inf);
        for (std::size_t v : order)
            if (ok[s][v]) dist[v] = 1;
        for (std::size_t i = 0; i < order.size(); ++i) {
            std::size_t v = order[i];
            if (dist[v] == inf) continue;
            for (std::size_t j = i + 1; j < order.size(); ++j) {
                std::size_t w = order[j];
                if (ok[v][w] && dist[v] + 1 < dist[w]) dist[w] = dist[v] + 1;
            }
            if (ok[v][s] && dist[v] + 1 >= 3 && (best < 0 || dist[v] + 1 < best)) best = dist[v] + 1;
        }
    }
    return best;
}

}  // namespace aac::oracle
