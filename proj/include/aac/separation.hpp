#pragma once

// Separating outer segments from an inner convex hull with a convex polygon
// of fewest sides.  Sides are tangent lines of the hull, identified by their
// outward normals; the next-generator sends a normal to the farthest normal
// whose side can follow it without letting any outer segment into the
// polygon interior.

#include "aac/arccover.hpp"
#include "aac/geom2d.hpp"

#include <set>

namespace aac {

struct Segment {
    Point2 a;
    Point2 b;
};

class InfeasibleError : public DomainError {
public:
    using DomainError::DomainError;
};

// ---------------------------------------------------------------------------
// Open convex regions given by strict linear constraints

/// The constraint A . x + B > 0.
template <class T>
struct LinearConstraint {
    Vec2<T> A;
    T B;
    T at(const Vec2<T>& x) const { return dot(A, x) + B; }
};

/// Whether the closed segment [a, b] meets the open region cut out by the
/// constraints.
template <class T>
bool segment_meets_open_region(const std::vector<LinearConstraint<T>>& cs, const Vec2<T>& a, const Vec2<T>& b) {
    T lo(0), hi(1);
    bool lo_open = false, hi_open = false;
    for (const auto& c : cs) {
        T alpha = c.at(a);
        T beta = c.at(b) - alpha;
        int sb = sign(beta);
        if (sb == 0) {
            if (sign(alpha) <= 0) return false;
            continue;
        }
        T r = -alpha / beta;
        if (sb > 0) {
            if (r > lo || (r == lo && !lo_open)) {
                lo = r;
                lo_open = true;
            }
        } else if (r < hi || (r == hi && !hi_open)) {
            hi = r;
            hi_open = true;
        }
    }
    if (lo < hi) return true;
    return lo == hi && !lo_open && !hi_open;
}

/// Strict interior constraints of a counterclockwise convex polygon; empty
/// optional when the polygon has no interior.
template <class T>
std::optional<std::vector<LinearConstraint<T>>> interior_constraints(const std::vector<Vec2<T>>& ccw) {
    std::vector<LinearConstraint<T>> cs;
    std::size_t n = ccw.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = ccw[i];
        const auto& q = ccw[(i + 1) % n];
        if (p == q) continue;
        Vec2<T> e = q - p;
        Vec2<T> A{-e.y, e.x};
        cs.push_back({A, -dot(A, p)});
    }
    if (cs.size() < 3) return std::nullopt;
    T area2(0);
    for (std::size_t i = 0; i < n; ++i) area2 += cross(ccw[i], ccw[(i + 1) % n]);
    if (sign(area2) <= 0) return std::nullopt;
    return cs;
}

// ---------------------------------------------------------------------------
// Instances

struct SeparationInstance {
    std::vector<Segment> inner;
    std::vector<Segment> outer;
    Polygon hull;  ///< counterclockwise; one or two points when degenerate
    bool degenerate = false;
};

inline SeparationInstance make_separation_instance(std::vector<Segment> inner, std::vector<Segment> outer) {
    if (inner.empty()) throw DomainError("no inner segments");
    std::vector<Point2> pts;
    for (const auto& s : inner) {
        pts.push_back(s.a);
        pts.push_back(s.b);
    }
    auto ch = convex_hull(pts);
    SeparationInstance inst{std::move(inner), std::move(outer), ch.vertices, ch.degenerate};
    auto cs = interior_constraints(inst.hull);
    for (std::size_t i = 0; i < inst.outer.size(); ++i) {
        const auto& s = inst.outer[i];
        bool bad;
        if (cs) {
            bad = segment_meets_open_region(*cs, s.a, s.b);
        } else if (inst.hull.size() == 1) {
            bad = on_segment(s.a, s.b, inst.hull[0]);
        } else {
            bad = segment_intersection(s.a, s.b, inst.hull[0], inst.hull[1]).relation != SegmentRelation::disjoint;
        }
        if (bad) throw InfeasibleError("outer segment " + std::to_string(i) + " meets the inner hull");
    }
    return inst;
}

// ---------------------------------------------------------------------------
// Convex/non-convex equivalence

namespace detail {

inline int reflex_count(const Polygon& Q) {
    int r = 0;
    for (std::size_t i = 0; i < Q.size(); ++i)
        if (orient(Q[(i + Q.size() - 1) % Q.size()], Q[i], Q[(i + 1) % Q.size()]) < 0) ++r;
    return r;
}

inline bool contains_all(const Polygon& Q, const Polygon& P) {
    for (const auto& p : P)
        if (locate_point(Q, p) < 0) return false;
    for (std::size_t i = 0; i < P.size(); ++i)
        if (!segment_inside(Q, P[i], P[(i + 1) % P.size()])) return false;
    return true;
}

}  // namespace detail

/// Shrinks Q around the convex polygon P until it is convex, one reflex
/// vertex at a time, by cutting along a tangent of P through that vertex.
inline Polygon remove_reflex(const Polygon& Q_raw, const Polygon& P, int* iterations = nullptr) {
    if (iterations) *iterations = 0;
    Polygon Q = normalize_polygon(Q_raw);
    if (!is_simple(Q)) throw GeometryError("outer polygon is not simple");
    if (!detail::contains_all(Q, P)) throw GeometryError("inner polygon is not contained in the outer polygon");
    const std::size_t sides = Q.size();
    while (detail::reflex_count(Q) > 0) {
        std::size_t n = Q.size();
        std::size_t r = 0;
        while (orient(Q[(r + n - 1) % n], Q[r], Q[(r + 1) % n]) >= 0) ++r;
        const Point2 v = Q[r];
        std::optional<Polygon> best;
        for (const auto& q : P) {
            if (q == v) continue;
            bool left = true, right = true;
            for (const auto& x : P) {
                int o = orient(v, q, x);
                if (o < 0) left = false;
                if (o > 0) right = false;
            }
            if (!left && !right) continue;
            HalfPlane hp = left ? HalfPlane{v, q} : HalfPlane{q, v};
            for (auto& cell : halfplane_clip(Q, hp)) {
                Polygon c = normalize_polygon(cell);
                if (!detail::contains_all(c, P)) continue;
                if (!best || detail::reflex_count(c) < detail::reflex_count(*best) ||
                    (detail::reflex_count(c) == detail::reflex_count(*best) && c.size() < best->size()))
                    best = std::move(c);
            }
        }
        if (!best || detail::reflex_count(*best) >= detail::reflex_count(Q))
            throw GeometryError("no tangent cut removes the reflex vertex " + to_string(v));
        Q = std::move(*best);
        if (iterations) ++*iterations;
    }
    if (Q.size() > sides) throw GeometryError("convexification added sides");
    return Q;
}

// ---------------------------------------------------------------------------
// Tangent geometry

namespace detail {

inline Point2 rot_ccw(const Point2& v) { return {-v.y, v.x}; }
inline Point2 rot_cw(const Point2& v) { return {v.y, -v.x}; }

/// Hull vertex touched by the tangent line with outward normal n; on a tie
/// the later vertex along the counterclockwise boundary direction.
inline std::size_t support_index(const Polygon& H, const Point2& n) {
    Point2 d = rot_ccw(n);
    std::size_t best = 0;
    for (std::size_t i = 1; i < H.size(); ++i) {
        int c = sign(dot(n, H[i] - H[best]));
        if (c > 0 || (c == 0 && sign(dot(d, H[i] - H[best])) > 0)) best = i;
    }
    return best;
}

/// Vertex q of H such that H lies to the left of z -> q (nearest on ties).
inline std::optional<std::size_t> right_tangent(const Polygon& H, const Point2& z) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < H.size(); ++i) {
        if (H[i] == z) return std::nullopt;
        bool ok = true;
        for (const auto& v : H)
            if (orient(z, H[i], v) < 0) {
                ok = false;
                break;
            }
        if (!ok) continue;
        if (!best || dot(H[i] - z, H[i] - z) < dot(H[*best] - z, H[*best] - z)) best = i;
    }
    return best;
}

inline bool in_closed_hull(const Polygon& H, const Point2& w) {
    if (H.size() == 1) return w == H[0];
    if (H.size() == 2) return on_segment(H[0], H[1], w);
    return locate_point(H, w) >= 0;
}

/// Vertex following the boundary point w counterclockwise.
inline std::size_t boundary_next(const Polygon& H, const Point2& w) {
    for (std::size_t i = 0; i < H.size(); ++i)
        if (H[i] == w) return (i + 1) % H.size();
    for (std::size_t i = 0; i < H.size(); ++i)
        if (on_segment(H[i], H[(i + 1) % H.size()], w)) return (i + 1) % H.size();
    throw GeometryError("point is not on the hull boundary");
}

/// Segment endpoints together with hull vertices lying on the segment.
inline std::vector<Point2> segment_anchors(const Polygon& H, const Segment& s) {
    std::vector<Point2> out{s.a, s.b};
    for (const auto& v : H)
        if (!(v == s.a) && !(v == s.b) && on_segment(s.a, s.b, v)) out.push_back(v);
    return out;
}

/// Whether direction v leaves hull vertex i into the corner that opens
/// between the side direction d and the preceding hull edge.
inline bool enters_corner(const Polygon& H, std::size_t i, const Point2& d, const Point2& v) {
    Point2 e = H[(i + H.size() - 1) % H.size()] - H[i];
    if (cross(d, v) <= 0) return false;
    if (cross(d, e) == 0 && dot(d, e) < 0) return true;
    return cross(v, e) > 0;
}

inline std::optional<Point2> line_meet(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    if (a == b || c == d) return std::nullopt;
    return line_intersection(a, b, c, d);
}

}  // namespace detail

/// Normal of the greedy reflection: the tangent line through p1 with normal
/// n1 meets the segment s1 s2 at z, and the next side runs from z to the
/// hull vertex p2.
inline LinRat2 next_halfplane_map(const Point2& p1, const Point2& s1, const Point2& s2, const Point2& p2) {
    Point2 u = s2 - s1, a = p2 - s1, b = p1 - s1;
    // (p2 - z) (u . n) = (a u^T - u b^T) n
    Rational A00 = a.x * u.x - u.x * b.x, A01 = a.x * u.y - u.x * b.y;
    Rational A10 = a.y * u.x - u.y * b.x, A11 = a.y * u.y - u.y * b.y;
    return LinRat2(A10, A11, -A00, -A01, u.x, u.y);
}

/// Normals of the tangent lines induced by lines through a segment endpoint
/// and a hull vertex, plus the hull edge normals; sorted counterclockwise.
inline std::vector<RayPoint> event_lines(const Polygon& hull, const std::vector<Segment>& outer) {
    std::vector<RayPoint> out;
    auto add = [&](const Point2& v) {
        if (v.x == 0 && v.y == 0) return;
        out.emplace_back(v.x, v.y);
    };
    for (std::size_t i = 0; i < hull.size() && hull.size() > 1; ++i)
        add(detail::rot_cw(hull[(i + 1) % hull.size()] - hull[i]));
    for (const auto& s : outer)
        for (const auto& w : {s.a, s.b})
            for (const auto& r : hull) {
                add(detail::rot_cw(w - r));
                add(detail::rot_ccw(w - r));
            }
    std::sort(out.begin(), out.end(), [](const RayPoint& a, const RayPoint& b) { return ccw_compare(a, b) < 0; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// The next-generator

/// What limits the next side at a given normal.
struct NextSide {
    enum class Kind { reflection, endpoint, hull_edge, unbounded } kind = Kind::unbounded;
    std::size_t p1 = 0;       ///< current tangent vertex
    std::size_t segment = 0;  ///< reflection: crossed segment; endpoint: segment owning the endpoint
    std::size_t p2 = 0;       ///< next tangent vertex
    Point2 through;           ///< z for reflections, the endpoint otherwise
    LinRat2 map;
};

/// Next side for a rational normal, evaluated exactly.
inline NextSide next_side_at(const SeparationInstance& inst, const Point2& n) {
    const Polygon& H = inst.hull;
    NextSide out;
    out.p1 = detail::support_index(H, n);
    const Point2 p = H[out.p1];
    const Point2 d = detail::rot_ccw(n);
    std::optional<Rational> best;
    for (std::size_t si = 0; si < inst.outer.size(); ++si) {
        const Segment& s = inst.outer[si];
        Point2 u = s.b - s.a;
        Rational den = cross(d, u);
        if (den != 0) {
            Rational lam = cross(s.a - p, u) / den;
            Rational mu = cross(s.a - p, d) / den;
            if (lam >= 0 && mu >= 0 && mu <= 1 && (!best || lam < *best)) {
                Point2 z = p + d * lam;
                auto q = detail::right_tangent(H, z);
                if (q) {
                    best = lam;
                    out.kind = NextSide::Kind::reflection;
                    out.segment = si;
                    out.p2 = *q;
                    out.through = z;
                }
            }
        }
        for (const Point2& w : detail::segment_anchors(H, s)) {
            if (w == p) {
                bool enters = false;
                for (const Point2& v : {s.a - p, s.b - p})
                    if (!(v.x == 0 && v.y == 0) && detail::enters_corner(H, out.p1, d, v)) enters = true;
                if (enters) {
                    best = Rational(0);
                    out.kind = NextSide::Kind::hull_edge;
                    out.segment = si;
                }
                continue;
            }
            std::optional<std::size_t> q;
            bool on_hull = detail::in_closed_hull(H, w);
            if (on_hull && H.size() >= 3)
                q = detail::boundary_next(H, w);
            else if (!on_hull)
                q = detail::right_tangent(H, w);
            if (!q) continue;
            Point2 dir = H[*q] - w;
            Rational dd = cross(d, dir);
            if (dd == 0) continue;
            Rational lam = cross(w - p, dir) / dd;
            Point2 c = p + d * lam;
            Point2 cq = H[*q] - c;
            if (cq.x == 0 && cq.y == 0) continue;
            Rational t = dot(w - c, cq) / dot(cq, cq);
            if (lam < 0 || t <= 0 || t >= 1) continue;
            // a boundary point is uncovered at once when the side already
            // leans past its hull edge
            if (lam == 0 && !(on_hull && cross(dir, d) < 0)) continue;
            if (!best || lam <= *best) {
                best = lam;
                out.kind = NextSide::Kind::endpoint;
                out.segment = si;
                out.p2 = *q;
                out.through = w;
            }
        }
    }
    if (!best) {
        out.kind = NextSide::Kind::unbounded;
        out.map = LinRat2(-1, 0, 0, -1);
        return out;
    }
    if (*best == 0 && H.size() > 1) {
        out.kind = NextSide::Kind::hull_edge;
        out.p2 = (out.p1 + 1) % H.size();
        Point2 e = detail::rot_cw(H[out.p2] - p);
        out.map = LinRat2::constant(RayPoint(e.x, e.y));
        return out;
    }
    Point2 normal = detail::rot_cw(H[out.p2] - out.through);
    RayPoint target(normal.x, normal.y);
    if (out.kind == NextSide::Kind::endpoint) {
        out.map = LinRat2::constant(target);
        return out;
    }
    const Segment& s = inst.outer[out.segment];
    try {
        out.map = next_halfplane_map(p, s.a, s.b, H[out.p2]);
    } catch (const DomainError&) {
        out.map = LinRat2::constant(target);
    }
    if (!(out.map.apply(RayPoint(n.x, n.y)) == target)) throw GeometryError("reflection map disagrees with its sample");
    return out;
}

namespace detail {

/// Points whose direction from a hull vertex marks a possible change in
/// what limits the next side.
inline std::vector<Point2> separation_special_points(const SeparationInstance& inst) {
    const Polygon& H = inst.hull;
    std::set<Point2> X(H.begin(), H.end());
    std::vector<std::pair<Point2, Point2>> tangents;  // endpoint -> right tangent vertex
    for (const auto& s : inst.outer)
        for (const Point2& w : segment_anchors(H, s)) {
            X.insert(w);
            if (H.size() >= 3 && in_closed_hull(H, w))
                tangents.emplace_back(w, H[boundary_next(H, w)]);
            else if (auto q = right_tangent(H, w))
                tangents.emplace_back(w, H[*q]);
        }
    auto add = [&](const std::optional<Point2>& p) {
        if (p) X.insert(*p);
    };
    auto on_seg = [&](const Segment& s, const std::optional<Point2>& p) {
        if (p && on_segment(s.a, s.b, *p)) X.insert(*p);
    };
    for (std::size_t i = 0; i < inst.outer.size(); ++i) {
        const Segment& s = inst.outer[i];
        for (std::size_t e = 0; e < H.size() && H.size() > 1; ++e)
            on_seg(s, line_meet(s.a, s.b, H[e], H[(e + 1) % H.size()]));
        for (const auto& [w, q] : tangents) on_seg(s, line_meet(s.a, s.b, w, q));
        for (std::size_t j = i + 1; j < inst.outer.size(); ++j) {
            const Segment& t = inst.outer[j];
            auto h = segment_intersection(s.a, s.b, t.a, t.b);
            if (h.relation == SegmentRelation::point) X.insert(h.p);
        }
    }
    for (std::size_t i = 0; i < tangents.size(); ++i)
        for (std::size_t j = i + 1; j < tangents.size(); ++j)
            add(line_meet(tangents[i].first, tangents[i].second, tangents[j].first, tangents[j].second));
    return {X.begin(), X.end()};
}

}  // namespace detail

/// All normals at which the generator may change its piece.
inline std::vector<RayPoint> generator_events(const SeparationInstance& inst) {
    std::vector<RayPoint> out = event_lines(inst.hull, inst.outer);
    for (const auto& x : detail::separation_special_points(inst))
        for (const auto& r : inst.hull) {
            Point2 v = x - r;
            if (v.x == 0 && v.y == 0) continue;
            Point2 a = detail::rot_cw(v), b = detail::rot_ccw(v);
            out.emplace_back(a.x, a.y);
            out.emplace_back(b.x, b.y);
        }
    out.push_back(RayPoint::branch());
    std::sort(out.begin(), out.end(), [](const RayPoint& a, const RayPoint& b) { return ccw_compare(a, b) < 0; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct SeparationGenerator {
    PiecewiseFunction<RayRep> g;
    std::vector<NextSide> sides;  ///< per piece of g
};

inline SeparationGenerator build_separation_generator(const SeparationInstance& inst) {
    auto events = generator_events(inst);
    std::vector<Piece<RayRep>> pieces;
    std::vector<NextSide> sides;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const RayPoint& lo = events[i];
        const RayPoint& hi = i + 1 < events.size() ? events[i + 1] : events.front();
        RayPoint sample = point_between(lo, hi);
        Point2 n{sample.x().rational(), sample.y().rational()};
        NextSide side = next_side_at(inst, n);
        if (!pieces.empty() && RayRep::same_function(*pieces.back().map, side.map)) continue;
        pieces.push_back({lo, side.map});
        sides.push_back(side);
    }
    SeparationGenerator gen{PiecewiseFunction<RayRep>(std::move(pieces)), std::move(sides)};
    return gen;
}

// ---------------------------------------------------------------------------
// Separating polygons

struct SeparatingSide {
    RayPoint normal;
    Radical offset;  ///< the side is normal . x = offset
    Point2 touch;    ///< hull vertex on the side
};

struct SeparatingPolygon {
    long k = 0;
    std::vector<SeparatingSide> sides;  ///< counterclockwise
    std::vector<RPoint2> vertices;      ///< vertices[i] joins sides i and i + 1
};

inline SeparatingSide tangent_side(const Polygon& H, const RayPoint& n) {
    RPoint2 nn{n.x(), n.y()};
    Radical best = dot(nn, RPoint2(H[0]));
    std::size_t at = 0;
    for (std::size_t i = 1; i < H.size(); ++i) {
        Radical v = dot(nn, RPoint2(H[i]));
        if (v > best) {
            best = v;
            at = i;
        }
    }
    return {n, best, H[at]};
}

inline RPoint2 side_meet(const SeparatingSide& a, const SeparatingSide& b) {
    const Radical &ax = a.normal.x(), &ay = a.normal.y(), &bx = b.normal.x(), &by = b.normal.y();
    Radical det = ax * by - ay * bx;
    if (det.sign() == 0) throw GeometryError("parallel consecutive sides");
    return {(a.offset * by - b.offset * ay) / det, (ax * b.offset - bx * a.offset) / det};
}

inline SeparatingPolygon polygon_from_normals(const Polygon& H, const std::vector<RayPoint>& normals) {
    SeparatingPolygon out;
    out.k = static_cast<long>(normals.size());
    for (const auto& n : normals) out.sides.push_back(tangent_side(H, n));
    for (std::size_t i = 0; i < out.sides.size(); ++i)
        out.vertices.push_back(side_meet(out.sides[i], out.sides[(i + 1) % out.sides.size()]));
    return out;
}

/// Exact certificate: sides turn once counterclockwise in steps of less
/// than a half turn, each side supports the hull, and no outer segment
/// meets the polygon interior.
inline bool validate_separation(const SeparationInstance& inst, const SeparatingPolygon& poly, std::string* why = nullptr) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    std::size_t k = poly.sides.size();
    if (k < 3 || static_cast<long>(k) != poly.k) return fail("fewer than three sides");
    Radical total(0);
    for (std::size_t i = 0; i < k; ++i) {
        Radical step = ccw_offset(poly.sides[(i + 1) % k].normal, poly.sides[i].normal);
        if (step.sign() <= 0 || !(step < Radical(2))) return fail("side " + std::to_string(i) + " turns by half a turn or more");
        total += step;
    }
    if (!(total == Radical(4))) return fail("sides do not turn exactly once");
    std::vector<LinearConstraint<Radical>> cs;
    for (std::size_t i = 0; i < k; ++i) {
        const auto& s = poly.sides[i];
        RPoint2 nn{s.normal.x(), s.normal.y()};
        if (!(dot(nn, RPoint2(s.touch)) == s.offset)) return fail("side " + std::to_string(i) + " misses the hull");
        for (const auto& v : inst.hull)
            if (dot(nn, RPoint2(v)) > s.offset) return fail("side " + std::to_string(i) + " cuts the hull");
        cs.push_back({-nn, s.offset});
    }
    for (std::size_t i = 0; i < inst.outer.size(); ++i)
        if (segment_meets_open_region(cs, RPoint2(inst.outer[i].a), RPoint2(inst.outer[i].b)))
            return fail("outer segment " + std::to_string(i) + " enters the polygon");
    return true;
}

struct SeparationOptions {
    std::optional<long> k_max;
    SolveMode mode = SolveMode::doubling;
};

struct SeparationSolution {
    SeparatingPolygon polygon;
    std::optional<SeparationGenerator> generator;  ///< absent without outer segments
    std::optional<CoverSolution<RayPoint>> cover;
    long analytic_k = 0;  ///< cover size with closed half-turn steps
};

namespace detail {

/// Greedy chain of at most `limit` normals from `start`; half-turn steps are
/// shortened by eps (in diamond-key units).
inline std::optional<std::vector<RayPoint>> greedy_normals(const PiecewiseFunction<RayRep>& g, const RayPoint& start,
                                                           const Rational& eps, long limit) {
    std::vector<RayPoint> out{start};
    Radical done(0);
    RayPoint cur = start;
    while (static_cast<long>(out.size()) <= limit) {
        RayPoint next = g(cur);
        Radical step = ccw_offset(next, cur);
        if (!(step < Radical(2))) {
            step = Radical(2) - Radical(eps);
            next = RayPoint::from_key(cur.key() + step);
        }
        if (step.sign() <= 0) return std::nullopt;
        done += step;
        if (!(done < Radical(4))) {
            // closing back onto the start must also stay below a half turn
            Radical last = Radical(4) - (done - step);
            if (!(last < Radical(2))) return std::nullopt;
            if (out.size() < 3) {
                // fewer than three sides: split the widest step
                while (out.size() < 3) {
                    std::size_t w = 0;
                    Radical widest(0);
                    for (std::size_t i = 0; i < out.size(); ++i) {
                        Radical s = i + 1 < out.size() ? ccw_offset(out[i + 1], out[i]) : ccw_offset(out[0], out[i]);
                        if (i + 1 == out.size() && s.sign() == 0) s = Radical(4);
                        if (s > widest) {
                            widest = s;
                            w = i;
                        }
                    }
                    out.insert(out.begin() + static_cast<long>(w) + 1,
                               RayPoint::from_key(out[w].key() + widest / Radical(2)));
                }
            }
            return out;
        }
        out.push_back(next);
        cur = next;
    }
    return std::nullopt;
}

}  // namespace detail

/// Three tangent sides whose normals split the turn evenly.
inline SeparatingPolygon canonical_triangle(const Polygon& hull) {
    std::vector<RayPoint> ns{RayPoint::branch(), RayPoint::from_key(Radical(make_rational(4, 3))),
                             RayPoint::from_key(Radical(make_rational(8, 3)))};
    return polygon_from_normals(hull, ns);
}

inline SeparationSolution solve_segment_separation(const SeparationInstance& inst, const SeparationOptions& opt = {}) {
    SeparationSolution sol;
    if (inst.outer.empty()) {
        sol.polygon = canonical_triangle(inst.hull);
        sol.analytic_k = 3;
        return sol;
    }
    sol.generator = build_separation_generator(inst);
    const auto& g = sol.generator->g;
    long k_max = opt.k_max.value_or(default_k_max(g.size()));
    sol.cover = solve_analytic(g, k_max, opt.mode);
    sol.analytic_k = sol.cover->k;
    long k = std::max<long>(3, sol.analytic_k);
    std::vector<RayPoint> starts(sol.cover->cover_points.begin(), sol.cover->cover_points.end() - 1);
    for (std::size_t i = 0; i < g.size(); ++i) starts.push_back(g.pieces()[i].start);
    std::string last_reason = "no chain closed";
    for (long limit = k; limit <= k + 1 && limit <= std::max(k_max, 3L) + 1; ++limit)
        for (const auto& s : starts)
            for (int j = 2; j <= 40; j += 2) {
                auto ns = detail::greedy_normals(g, s, make_rational(1, 1L << j), limit);
                if (!ns) continue;
                SeparatingPolygon poly = polygon_from_normals(inst.hull, *ns);
                if (validate_separation(inst, poly, &last_reason)) {
                    sol.polygon = std::move(poly);
                    return sol;
                }
            }
    throw GeometryError("no separating polygon could be reconstructed: " + last_reason);
}

inline SeparationSolution solve_segment_separation(const std::vector<Segment>& inner, const std::vector<Segment>& outer,
                                                   const SeparationOptions& opt = {}) {
    return solve_segment_separation(make_separation_instance(inner, outer), opt);
}

}  // namespace aac
