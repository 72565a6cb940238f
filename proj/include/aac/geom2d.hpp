#pragma once

// Exact planar geometry over Rational or Radical coordinates.

#include "aac/exactnum.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace aac {

class GeometryError : public DomainError {
public:
    using DomainError::DomainError;
};

template <class T>
struct Vec2 {
    T x{};
    T y{};

    Vec2() = default;
    Vec2(T x_, T y_) : x(std::move(x_)), y(std::move(y_)) {}
    template <class U>
        requires(!std::is_same_v<U, T>)
    explicit Vec2(const Vec2<U>& o) : x(o.x), y(o.y) {}

    friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(const Vec2& a, const T& s) { return {a.x * s, a.y * s}; }
    friend Vec2 operator*(const T& s, const Vec2& a) { return {a.x * s, a.y * s}; }
    Vec2 operator-() const { return {-x, -y}; }
    friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator<(const Vec2& a, const Vec2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }
};

using Point2 = Vec2<Rational>;
using RPoint2 = Vec2<Radical>;
using Polygon = std::vector<Point2>;

template <class T>
T cross(const Vec2<T>& a, const Vec2<T>& b) {
    return a.x * b.y - a.y * b.x;
}
template <class T>
T dot(const Vec2<T>& a, const Vec2<T>& b) {
    return a.x * b.x + a.y * b.y;
}
template <class T>
Vec2<T> perp(const Vec2<T>& a) {
    return {-a.y, a.x};
}

template <class T>
int orient(const Vec2<T>& a, const Vec2<T>& b, const Vec2<T>& c) {
    return sign(cross(b - a, c - a));
}

template <class T>
std::string to_string(const Vec2<T>& p) {
    return "(" + to_string(p.x) + ", " + to_string(p.y) + ")";
}

inline RPoint2 to_radical(const Point2& p) { return RPoint2(p); }

template <class T>
Vec2<T> midpoint(const Vec2<T>& a, const Vec2<T>& b) {
    return {(a.x + b.x) / T(2), (a.y + b.y) / T(2)};
}

// ---------------------------------------------------------------------------
// Segments and lines

template <class T>
bool on_segment(const Vec2<T>& a, const Vec2<T>& b, const Vec2<T>& q) {
    if (orient(a, b, q) != 0) return false;
    return std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= q.y &&
           q.y <= std::max(a.y, b.y);
}

/// Intersection of the lines through (a, b) and (c, d); nullopt when parallel.
template <class T>
std::optional<Vec2<T>> line_intersection(const Vec2<T>& a, const Vec2<T>& b, const Vec2<T>& c, const Vec2<T>& d) {
    Vec2<T> r = b - a, s = d - c;
    T den = cross(r, s);
    if (sign(den) == 0) return std::nullopt;
    T t = cross(c - a, s) / den;
    return a + r * t;
}

enum class SegmentRelation { disjoint, point, overlap };

template <class T>
struct SegmentHit {
    SegmentRelation relation = SegmentRelation::disjoint;
    Vec2<T> p;  ///< the point, or one end of the overlap
    Vec2<T> q;  ///< other end of the overlap
};

/// Closed segment intersection with the collinear case enumerated.
template <class T>
SegmentHit<T> segment_intersection(const Vec2<T>& a, const Vec2<T>& b, const Vec2<T>& c, const Vec2<T>& d) {
    SegmentHit<T> hit;
    Vec2<T> r = b - a, s = d - c;
    T den = cross(r, s);
    if (sign(den) != 0) {
        T t = cross(c - a, s) / den;
        T u = cross(c - a, r) / den;
        if (sign(t) >= 0 && t <= T(1) && sign(u) >= 0 && u <= T(1)) {
            hit.relation = SegmentRelation::point;
            hit.p = a + r * t;
        }
        return hit;
    }
    if (orient(a, b, c) != 0) return hit;
    // collinear: project on the dominant axis of r (or s when ab is a point)
    auto key = [&](const Vec2<T>& p) { return (a == b) ? dot(p - c, s) : dot(p - a, r); };
    std::vector<std::pair<T, Vec2<T>>> ends{{key(a), a}, {key(b), b}, {key(c), c}, {key(d), d}};
    auto lo1 = std::min(key(a), key(b)), hi1 = std::max(key(a), key(b));
    auto lo2 = std::min(key(c), key(d)), hi2 = std::max(key(c), key(d));
    T lo = std::max(lo1, lo2), hi = std::min(hi1, hi2);
    if (lo > hi) return hit;
    auto pick = [&](const T& k) {
        for (const auto& e : ends)
            if (e.first == k) return e.second;
        return a;
    };
    hit.p = pick(lo);
    hit.q = pick(hi);
    hit.relation = (lo == hi) ? SegmentRelation::point : SegmentRelation::overlap;
    return hit;
}

// ---------------------------------------------------------------------------
// Polygons

template <class T>
T signed_area2(const std::vector<Vec2<T>>& poly) {
    T s(0);
    for (std::size_t i = 0; i < poly.size(); ++i) s += cross(poly[i], poly[(i + 1) % poly.size()]);
    return s;
}

/// -1 outside, 0 on the boundary, 1 inside.
template <class T>
int locate_point(const std::vector<Vec2<T>>& poly, const Vec2<T>& q) {
    int wind = 0;
    std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2<T>& u = poly[i];
        const Vec2<T>& v = poly[(i + 1) % n];
        if (on_segment(u, v, q)) return 0;
        if (u.y <= q.y) {
            if (v.y > q.y && orient(u, v, q) > 0) ++wind;
        } else if (v.y <= q.y && orient(u, v, q) < 0) {
            --wind;
        }
    }
    return wind != 0 ? 1 : -1;
}

/// Drop repeated and collinear vertices; orient counterclockwise.
inline Polygon normalize_polygon(Polygon poly) {
    bool changed = true;
    while (changed && poly.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < poly.size() && poly.size() >= 3; ++i) {
            std::size_t n = poly.size();
            const Point2& a = poly[(i + n - 1) % n];
            const Point2& b = poly[i];
            const Point2& c = poly[(i + 1) % n];
            if (a == b || orient(a, b, c) == 0) {
                poly.erase(poly.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
        }
    }
    if (poly.size() < 3) return {};
    if (sign(signed_area2(poly)) < 0) std::reverse(poly.begin(), poly.end());
    return poly;
}

inline bool is_simple(const Polygon& poly) {
    std::size_t n = poly.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            auto h = segment_intersection(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]);
            if (h.relation == SegmentRelation::disjoint) continue;
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (!adjacent || h.relation == SegmentRelation::overlap) return false;
        }
    return true;
}

/// Closed containment of segment ab in the polygon.
template <class T>
bool segment_inside(const std::vector<Vec2<T>>& poly, const Vec2<T>& a, const Vec2<T>& b) {
    if (locate_point(poly, a) < 0 || locate_point(poly, b) < 0) return false;
    if (a == b) return true;
    Vec2<T> r = b - a;
    T rr = dot(r, r);
    std::vector<T> ts{T(0), T(1)};
    std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        auto h = segment_intersection(a, b, poly[i], poly[(i + 1) % n]);
        if (h.relation == SegmentRelation::disjoint) continue;
        ts.push_back(dot(h.p - a, r) / rr);
        if (h.relation == SegmentRelation::overlap) ts.push_back(dot(h.q - a, r) / rr);
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        T mid = (ts[i] + ts[i + 1]) / T(2);
        if (locate_point(poly, a + r * mid) < 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Convex hull

struct ConvexHull {
    Polygon vertices;  ///< counterclockwise
    bool degenerate = false;
};

inline ConvexHull convex_hull(std::vector<Point2> pts) {
    if (pts.empty()) throw GeometryError("convex hull of no points");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return {pts, true};
    Polygon h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && orient(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
        while (k >= lo && orient(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return {h, h.size() < 3};
}

// ---------------------------------------------------------------------------
// Half-planes and cones

/// Closed half-plane to the left of the directed line a -> b.
struct HalfPlane {
    Point2 a;
    Point2 b;
    bool contains(const Point2& p) const { return orient(a, b, p) >= 0; }
};

/// Sutherland-Hodgman clip of a convex polygon.
inline Polygon clip_convex(const Polygon& poly, const HalfPlane& h) {
    Polygon out;
    std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& p = poly[i];
        const Point2& q = poly[(i + 1) % n];
        int sp = orient(h.a, h.b, p), sq = orient(h.a, h.b, q);
        if (sp >= 0) out.push_back(p);
        if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) out.push_back(*line_intersection(p, q, h.a, h.b));
    }
    out.erase(std::unique(out.begin(), out.end()), out.end());
    while (out.size() > 1 && out.front() == out.back()) out.pop_back();
    return out;
}

/// The closed region swept between rays y->p and y->q on the side of
/// segment pq.
struct Cone {
    Point2 p;
    Point2 y;
    Point2 q;
    bool degenerate() const { return orient(p, y, q) == 0; }
};

inline bool cone_contains(const Cone& c, const Point2& x, bool strict = false) {
    int o = orient(c.y, c.p, c.q);
    if (o == 0) throw GeometryError("degenerate cone");
    int s1 = orient(c.y, c.p, x) * o;
    int s2 = orient(c.y, x, c.q) * o;
    return strict ? (s1 > 0 && s2 > 0) : (s1 >= 0 && s2 >= 0);
}

// ---------------------------------------------------------------------------
// Visibility

namespace detail {

/// Upper half (angle in [0, pi)) first, then counterclockwise.
inline bool angle_less(const Point2& a, const Point2& b) {
    auto half = [](const Point2& v) { return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1; };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return sign(cross(a, b)) > 0;
}

}  // namespace detail

/// Points of P seen from q (q inside P or on its boundary).
inline Polygon visibility_polygon(const Polygon& P, const Point2& q) {
    if (locate_point(P, q) < 0) throw GeometryError("viewpoint " + to_string(q) + " is outside the polygon");
    std::vector<Point2> dirs;
    for (const auto& w : P)
        if (!(w == q)) dirs.push_back(w - q);
    std::sort(dirs.begin(), dirs.end(), detail::angle_less);
    std::vector<Point2> uniq;
    for (const auto& d : dirs)
        if (uniq.empty() || !(sign(cross(uniq.back(), d)) == 0 && sign(dot(uniq.back(), d)) > 0)) uniq.push_back(d);
    if (uniq.size() > 1 && sign(cross(uniq.back(), uniq.front())) == 0 && sign(dot(uniq.back(), uniq.front())) > 0)
        uniq.pop_back();
    std::size_t m = uniq.size();
    Polygon out;
    std::size_t n = P.size();
    for (std::size_t k = 0; k < m; ++k) {
        const Point2& da = uniq[k];
        const Point2& db = uniq[(k + 1) % m];
        Rational cr = cross(da, db);
        Point2 s = sign(cr) > 0 ? da + db : (sign(cr) == 0 ? perp(da) : -(da + db));
        // nearest edge crossed by the ray q + l s, l > 0
        std::optional<std::size_t> edge;
        Rational best;
        for (std::size_t i = 0; i < n; ++i) {
            const Point2& u = P[i];
            const Point2& v = P[(i + 1) % n];
            Point2 e = v - u;
            Rational den = cross(s, e);
            if (sgn(den) == 0) continue;
            Rational l = cross(u - q, e) / den;
            Rational mu = cross(u - q, s) / den;
            if (sgn(l) <= 0 || sgn(mu) < 0 || mu > 1) continue;
            if (!edge || l < best) {
                edge = i;
                best = l;
            }
        }
        bool seen = edge && locate_point(P, q + s * (best / 2)) > 0;
        if (!seen) {
            if (out.empty() || !(out.back() == q)) out.push_back(q);
            continue;
        }
        const Point2& u = P[*edge];
        const Point2& v = P[(*edge + 1) % n];
        Point2 A = *line_intersection(q, q + da, u, v);
        Point2 B = *line_intersection(q, q + db, u, v);
        if (out.empty() || !(out.back() == A)) out.push_back(A);
        out.push_back(B);
    }
    return normalize_polygon(out);
}

// ---------------------------------------------------------------------------
// Boolean intersection by boundary fragments

namespace detail {

/// Split the edges of A where they meet the boundary of B.
inline std::vector<std::pair<Point2, Point2>> split_edges(const Polygon& A, const Polygon& B) {
    std::vector<std::pair<Point2, Point2>> out;
    std::size_t n = A.size(), m = B.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = A[i];
        const Point2& b = A[(i + 1) % n];
        Point2 r = b - a;
        Rational rr = dot(r, r);
        std::vector<Rational> ts{Rational(0), Rational(1)};
        for (std::size_t j = 0; j < m; ++j) {
            auto h = segment_intersection(a, b, B[j], B[(j + 1) % m]);
            if (h.relation == SegmentRelation::disjoint) continue;
            ts.push_back(dot(h.p - a, r) / rr);
            if (h.relation == SegmentRelation::overlap) ts.push_back(dot(h.q - a, r) / rr);
        }
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        for (std::size_t k = 0; k + 1 < ts.size(); ++k) out.emplace_back(a + r * ts[k], a + r * ts[k + 1]);
    }
    return out;
}

/// Whether the region just left of fragment (p, q) lies in B, given that
/// the fragment is on B's boundary or inside it.
inline int fragment_side(const Polygon& B, const Point2& p, const Point2& q) {
    Point2 m = midpoint(p, q);
    int loc = locate_point(B, m);
    if (loc != 0) return loc;
    for (std::size_t j = 0; j < B.size(); ++j) {
        const Point2& u = B[j];
        const Point2& v = B[(j + 1) % B.size()];
        if (on_segment(u, v, m)) return sign(dot(v - u, q - p)) > 0 ? 2 : -2;
    }
    return -1;
}

/// Turn-ordering key relative to incoming direction u: sharpest right first.
inline bool turns_less(const Point2& u, const Point2& a, const Point2& b) {
    auto group = [&](const Point2& d) {
        int c = sign(cross(u, d));
        if (c < 0) return 0;
        if (c == 0) return sign(dot(u, d)) > 0 ? 1 : 3;
        return 2;
    };
    int ga = group(a), gb = group(b);
    if (ga != gb) return ga < gb;
    return sign(cross(a, b)) > 0;
}

inline std::vector<Polygon> stitch(std::vector<std::pair<Point2, Point2>> frags) {
    std::vector<Polygon> out;
    std::vector<bool> used(frags.size(), false);
    std::multimap<Point2, std::size_t> starts;
    for (std::size_t i = 0; i < frags.size(); ++i) starts.emplace(frags[i].first, i);
    for (std::size_t s = 0; s < frags.size(); ++s) {
        if (used[s]) continue;
        Polygon cyc{frags[s].first};
        used[s] = true;
        std::size_t cur = s;
        for (std::size_t guard = 0; guard <= frags.size(); ++guard) {
            const Point2& end = frags[cur].second;
            if (end == frags[s].first) break;
            Point2 u = frags[cur].second - frags[cur].first;
            std::optional<std::size_t> next;
            auto [lo, hi] = starts.equal_range(end);
            for (auto it = lo; it != hi; ++it) {
                std::size_t c = it->second;
                if (used[c]) continue;
                Point2 d = frags[c].second - frags[c].first;
                if (!next || turns_less(u, d, frags[*next].second - frags[*next].first)) next = c;
            }
            if (!next) break;
            cyc.push_back(end);
            used[*next] = true;
            cur = *next;
        }
        Polygon clean = normalize_polygon(cyc);
        if (clean.size() >= 3 && sign(signed_area2(cyc)) > 0) out.push_back(clean);
    }
    return out;
}

}  // namespace detail

/// Exact intersection of two counterclockwise simple polygons.  Parts of
/// lower dimension (shared edges or touching vertices) are dropped.
inline std::vector<Polygon> region_intersection(const Polygon& A, const Polygon& B) {
    std::vector<std::pair<Point2, Point2>> keep;
    for (const auto& f : detail::split_edges(A, B)) {
        int side = detail::fragment_side(B, f.first, f.second);
        if (side == 1 || side == 2) keep.push_back(f);
    }
    for (const auto& f : detail::split_edges(B, A)) {
        // shared boundary with matching direction was already taken from A
        if (detail::fragment_side(A, f.first, f.second) == 1) keep.push_back(f);
    }
    return detail::stitch(std::move(keep));
}

inline std::vector<Polygon> region_intersection(const std::vector<Polygon>& As, const Polygon& B) {
    std::vector<Polygon> out;
    for (const auto& A : As)
        for (auto& r : region_intersection(A, B)) out.push_back(std::move(r));
    return out;
}

inline Polygon bounding_box(const Polygon& poly, const Rational& margin) {
    Rational x0 = poly[0].x, x1 = x0, y0 = poly[0].y, y1 = y0;
    for (const auto& p : poly) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    return {{x0 - margin, y0 - margin}, {x1 + margin, y0 - margin}, {x1 + margin, y1 + margin}, {x0 - margin, y1 + margin}};
}

inline std::vector<Polygon> halfplane_clip(const Polygon& A, const HalfPlane& h) {
    Polygon box = clip_convex(bounding_box(A, 1), h);
    if (box.size() < 3) return {};
    return region_intersection(A, box);
}

/// Points seeing every point of P (empty when P is not star-shaped).
inline Polygon polygon_kernel(const Polygon& P) {
    Polygon k = bounding_box(P, 1);
    for (std::size_t i = 0; i < P.size() && !k.empty(); ++i) k = clip_convex(k, {P[i], P[(i + 1) % P.size()]});
    return k;
}

}  // namespace aac
