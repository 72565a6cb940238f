#pragma once

// Contiguous art gallery: guards cover the boundary in contiguous stretches.
// The boundary of an n-gon is parameterized so that edge e_i (from v_i to
// v_{i+1}) fills [i/n, (i+1)/n).  The next-generator g sends a start point
// to the farthest point such that one guard sees the whole stretch.

#include "aac/arccover.hpp"
#include "aac/geom2d.hpp"

#include <functional>
#include <set>

namespace aac {

// ---------------------------------------------------------------------------
// Real-valued linear-rational maps and small polynomials

struct Moebius {
    Rational p{1}, q{0}, r{0}, s{1};

    static Moebius constant(const Rational& c) { return {0, c, 0, 1}; }

    Rational operator()(const Rational& t) const { return (p * t + q) / (r * t + s); }
    Radical operator()(const Radical& t) const { return eval_linear_rational(p, q, r, s, t); }

    bool same(const Moebius& o) const {
        const Rational* a[4] = {&p, &q, &r, &s};
        const Rational* b[4] = {&o.p, &o.q, &o.r, &o.s};
        for (int k = 0; k < 4; ++k)
            for (int l = k + 1; l < 4; ++l)
                if (*a[k] * *b[l] != *a[l] * *b[k]) return false;
        return true;
    }
};

class Poly {
public:
    Poly() = default;
    Poly(const Rational& v) : c_{v} { trim(); }  // NOLINT(google-explicit-constructor)
    static Poly affine(const Rational& c0, const Rational& c1) {
        Poly p;
        p.c_ = {c0, c1};
        p.trim();
        return p;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }

    template <class T>
    T eval(const T& t) const {
        T acc(0);
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * t + T(c_[k]);
        return acc;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = a.coeff(k) + b.coeff(k);
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = a.coeff(k) - b.coeff(k);
        r.trim();
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        if (a.is_zero() || b.is_zero()) return r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        r.trim();
        return r;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/// Homogeneous point (x : y : w) whose coordinates are polynomials in t.
struct HPoint {
    Poly x, y, w;
    static HPoint of(const Point2& p) { return {p.x, p.y, Rational(1)}; }
    template <class T>
    std::optional<Vec2<T>> at(const T& t) const {
        T W = w.eval(t);
        if (sign(W) == 0) return std::nullopt;
        return Vec2<T>{x.eval(t) / W, y.eval(t) / W};
    }
};

/// w_a w_b w_c times the orientation cross product of a, b, c.
inline Poly det3(const HPoint& a, const HPoint& b, const HPoint& c) {
    return a.x * (b.y * c.w - b.w * c.y) - a.y * (b.x * c.w - b.w * c.x) + a.w * (b.x * c.y - b.y * c.x);
}

/// Real roots of p strictly between lo and hi, sorted.
inline std::vector<Radical> roots_between(const Poly& p, const Radical& lo, const Radical& hi) {
    std::vector<Radical> out;
    int d = p.degree();
    if (d <= 0) return out;
    if (d > 2) throw DomainError("root isolation supports degree two at most");
    Rational A = p.coeff(2), B = p.coeff(1), C = p.coeff(0);
    if (d == 2) {
        if (B * B - 4 * A * C < 0) return out;
        int slo = sign(p.eval(lo)), shi = sign(p.eval(hi));
        if (slo != 0 && slo == shi) {
            Rational v = -B / (2 * A);
            if (!(lo < Radical(v) && Radical(v) < hi)) return out;
            int sv = sign(p.eval(v));
            if (sv != 0 && sv == slo) return out;
        }
    }
    for (const auto& r : solve_quadratic(A, B, C).roots)
        if (lo < r && r < hi) out.push_back(r);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Piecewise real functions on parameter intervals

struct RealPiece {
    Radical lo;
    Radical hi;
    Moebius m;
    std::size_t tag = 0;
};

using RealFn = std::vector<RealPiece>;

namespace detail {

inline const RealPiece* covering(const RealFn& f, std::size_t& idx, const Radical& x) {
    while (idx < f.size() && f[idx].hi <= x) ++idx;
    if (idx < f.size() && f[idx].lo <= x && x < f[idx].hi) return &f[idx];
    return nullptr;
}

inline void push_piece(RealFn& out, RealPiece p) {
    if (!out.empty() && out.back().hi == p.lo && out.back().tag == p.tag && out.back().m.same(p.m)) {
        out.back().hi = p.hi;
        return;
    }
    out.push_back(std::move(p));
}

}  // namespace detail

/// Pointwise max (or min) of two piecewise functions; where only one is
/// defined it is kept.  Ties keep the piece from `a`.
inline RealFn envelope(const RealFn& a, const RealFn& b, bool take_max) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    std::vector<Radical> cuts;
    for (const auto* f : {&a, &b})
        for (const auto& p : *f) {
            cuts.push_back(p.lo);
            cuts.push_back(p.hi);
        }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    RealFn out;
    std::size_t ia = 0, ib = 0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const Radical& lo = cuts[k];
        const Radical& hi = cuts[k + 1];
        const RealPiece* pa = detail::covering(a, ia, lo);
        const RealPiece* pb = detail::covering(b, ib, lo);
        if (!pa && !pb) continue;
        if (!pa || !pb) {
            const RealPiece* only = pa ? pa : pb;
            detail::push_piece(out, {lo, hi, only->m, only->tag});
            continue;
        }
        const Moebius& f = pa->m;
        const Moebius& g = pb->m;
        Poly diff = Poly::affine(f.q, f.p) * Poly::affine(g.s, g.r) - Poly::affine(g.q, g.p) * Poly::affine(f.s, f.r);
        std::vector<Radical> sub{lo};
        for (auto& r : roots_between(diff, lo, hi)) sub.push_back(r);
        sub.push_back(hi);
        for (std::size_t s = 0; s + 1 < sub.size(); ++s) {
            Rational t = rational_between(sub[s], sub[s + 1]);
            Rational va = f(t), vb = g(t);
            bool use_a = take_max ? va >= vb : va <= vb;
            const RealPiece* win = use_a ? pa : pb;
            detail::push_piece(out, {sub[s], sub[s + 1], win->m, win->tag});
        }
    }
    return out;
}

inline std::optional<Radical> evaluate(const RealFn& f, const Radical& t) {
    for (const auto& p : f)
        if (p.lo <= t && t < p.hi) return p.m(t);
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Restricted next-reach problems

/// Start segment e (point e_t = e0 + t (e1 - e0)) and target segment f
/// (point f_r = f0 + r (f1 - f0)).
struct EdgePair {
    Point2 e0, e1, f0, f1;
    RPoint2 e_at(const Radical& t) const { return RPoint2(e0) + (RPoint2(e1) - RPoint2(e0)) * t; }
    RPoint2 f_at(const Radical& r) const { return RPoint2(f0) + (RPoint2(f1) - RPoint2(f0)) * r; }
};

/// A guard position as a function of t: either fixed, or the point where
/// the line from e_t through `through` meets the segment (l0, l1).
struct GuardCandidate {
    Point2 l0, l1;
    std::optional<Point2> through;
    HPoint y;
    Poly s_num, s_den;  ///< position along l as s_num / s_den (moving guards)

    template <class T>
    std::optional<Vec2<T>> at(const T& t) const {
        return y.at(t);
    }
    std::string describe() const {
        if (!through) return "fixed guard";
        return "guard on " + to_string(l0) + "-" + to_string(l1) + " in line with " + to_string(*through);
    }
};

struct RestrictedNext {
    RealFn reach;  ///< t -> max r; t outside every piece has no valid r
    std::vector<GuardCandidate> candidates;  ///< piece tags index this list
    std::vector<RealFn> per_candidate;
};

namespace detail {

inline GuardCandidate fixed_candidate(const Point2& y) {
    GuardCandidate c;
    c.l0 = c.l1 = y;
    c.y = HPoint::of(y);
    return c;
}

inline std::optional<GuardCandidate> moving_candidate(const EdgePair& ef, const Point2& l0, const Point2& l1,
                                                      const Point2& x) {
    // s = cross(e_t - l0, x - e_t) / cross(l1 - l0, x - e_t)
    Point2 d = l1 - l0, ed = ef.e1 - ef.e0;
    Poly px = Poly::affine(ef.e0.x, ed.x), py = Poly::affine(ef.e0.y, ed.y);
    Poly ax = px - Poly(l0.x), ay = py - Poly(l0.y);
    Poly bx = Poly(x.x) - px, by = Poly(x.y) - py;
    Poly num = ax * by - ay * bx;
    Poly den = Poly(d.x) * by - Poly(d.y) * bx;
    if (den.is_zero()) return std::nullopt;
    // s in [0, 1] must hold somewhere in [0, 1)
    bool somewhere = false;
    std::vector<Radical> cuts{Radical(0)};
    for (const auto* p : {&num, &den}) {
        Poly q = (p == &num) ? num : den - num;
        for (auto& r : roots_between(q, Radical(0), Radical(1))) cuts.push_back(r);
    }
    for (auto& r : roots_between(den, Radical(0), Radical(1))) cuts.push_back(r);
    cuts.push_back(Radical(1));
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size() && !somewhere; ++k) {
        if (cuts[k] == cuts[k + 1]) continue;
        Rational t = rational_between(cuts[k], cuts[k + 1]);
        Rational D = den.eval(t);
        if (D == 0) continue;
        Rational s = num.eval(t) / D;
        somewhere = s >= 0 && s <= 1;
    }
    if (!somewhere) return std::nullopt;
    GuardCandidate c;
    c.l0 = l0;
    c.l1 = l1;
    c.through = x;
    c.s_num = num;
    c.s_den = den;
    c.y = {den * Poly(l0.x) + num * Poly(d.x), den * Poly(l0.y) + num * Poly(d.y), den};
    return c;
}

/// Map t -> r where the line from y(t) through w meets the line of f.
inline Moebius shadow_map(const EdgePair& ef, const HPoint& y, const Point2& w) {
    Point2 fd = ef.f1 - ef.f0;
    Poly num = y.x * Poly(w.y) - y.y * Poly(w.x) - y.w * Poly(cross(ef.f0, w)) + Poly(ef.f0.x) * y.y -
               Poly(ef.f0.y) * y.x;
    Poly den = y.w * Poly(cross(fd, w)) - (Poly(fd.x) * y.y - Poly(fd.y) * y.x);
    if (num.degree() > 1 || den.degree() > 1 || den.is_zero()) throw GeometryError("shadow map is not linear-rational");
    Moebius m{num.coeff(1), num.coeff(0), den.coeff(1), den.coeff(0)};
    if (m.p * m.s == m.q * m.r) return Moebius::constant(m.r != 0 ? m.p / m.r : m.q / m.s);
    return m;
}

inline bool strictly_inside_triangle(const Point2& a, const Point2& b, const Point2& c, const Point2& w) {
    int o = orient(a, b, c);
    if (o == 0) return false;
    return orient(a, b, w) == o && orient(b, c, w) == o && orient(c, a, w) == o;
}

}  // namespace detail

/// Pieces of t -> best reach for one candidate guard.  With a polygon,
/// visibility at each sample is confirmed by exact segment tests.
inline RealFn candidate_reach(const EdgePair& ef, const GuardCandidate& cand, const std::vector<Point2>& blockers,
                              const Polygon* P, std::size_t tag) {
    HPoint p{Poly::affine(ef.e0.x, ef.e1.x - ef.e0.x), Poly::affine(ef.e0.y, ef.e1.y - ef.e0.y), Rational(1)};
    HPoint e0 = HPoint::of(ef.e0), e1 = HPoint::of(ef.e1), f0 = HPoint::of(ef.f0), f1 = HPoint::of(ef.f1);
    const HPoint& y = cand.y;
    std::vector<Poly> polys{y.w, det3(y, p, e1), det3(y, f0, f1), det3(e0, e1, y), det3(f0, f1, y)};
    if (cand.through) {
        polys.push_back(cand.s_num);
        polys.push_back(cand.s_den - cand.s_num);
    }
    for (const auto& w : blockers) {
        HPoint hw = HPoint::of(w);
        polys.push_back(det3(y, p, hw));
        polys.push_back(det3(e1, y, hw));
        polys.push_back(det3(y, f0, hw));
        polys.push_back(det3(f1, y, hw));
    }
    std::vector<Radical> cuts{Radical(0), Radical(1)};
    for (const auto& poly : polys)
        for (auto& r : roots_between(poly, Radical(0), Radical(1))) cuts.push_back(std::move(r));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    RealFn out;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        Rational t = rational_between(cuts[k], cuts[k + 1]);
        auto yo = cand.at(t);
        if (!yo) continue;
        const Point2& ys = *yo;
        if (cand.through) {
            Rational s = cand.s_num.eval(t) / cand.s_den.eval(t);
            if (s < 0 || s > 1) continue;
        }
        Point2 pt = ef.e0 + (ef.e1 - ef.e0) * t;
        bool valid;
        if (P) {
            valid = segment_inside(*P, ys, pt);
        } else {
            int side = orient(ef.e0, ef.e1, ys);
            if (side > 0) {
                valid = true;
                for (const auto& w : blockers)
                    if (detail::strictly_inside_triangle(ys, pt, ef.e1, w)) {
                        valid = false;
                        break;
                    }
            } else {
                valid = side == 0 && on_segment(ef.e0, ef.e1, ys);
            }
        }
        if (!valid) continue;

        RealFn piece;
        int side_f = orient(ef.f0, ef.f1, ys);
        if (side_f > 0) {
            for (const auto& w : blockers)
                if (detail::strictly_inside_triangle(ys, ef.f0, ef.f1, w))
                    piece = envelope(piece, {{cuts[k], cuts[k + 1], detail::shadow_map(ef, y, w), tag}}, false);
            if (piece.empty()) piece.push_back({cuts[k], cuts[k + 1], Moebius::constant(1), tag});
        } else {
            Rational v = (side_f == 0 && on_segment(ef.f0, ef.f1, ys)) ? 1 : 0;
            piece.push_back({cuts[k], cuts[k + 1], Moebius::constant(v), tag});
        }
        if (P) {
            Rational r = 0;
            for (const auto& pc : piece)
                if (pc.lo <= Radical(t) && Radical(t) < pc.hi) r = pc.m(t);
            Point2 q = ef.f0 + (ef.f1 - ef.f0) * r;
            if (!segment_inside(*P, ys, q)) piece = {{cuts[k], cuts[k + 1], Moebius::constant(0), tag}};
        }
        for (auto& pc : piece) detail::push_piece(out, std::move(pc));
    }
    return out;
}

/// Best reach over guards on the given segments, avoiding blockers.
/// Candidate guards are the segment endpoints and the points where the
/// segments meet lines through e_t, e1, f0, f1 and pairs of blockers.
inline RestrictedNext restricted_next_segments(const EdgePair& ef,
                                               const std::vector<std::pair<Point2, Point2>>& segments,
                                               const std::vector<Point2>& X, const std::vector<Point2>& blockers,
                                               const Polygon* P = nullptr) {
    RestrictedNext out;
    std::set<Point2> fixed;
    std::vector<Point2> Xe, Xf;
    for (const auto& x : X) {
        if (orient(ef.e0, ef.e1, x) > 0) Xe.push_back(x);
        if (orient(ef.f0, ef.f1, x) > 0) Xf.push_back(x);
    }
    auto meet = [&](const Point2& l0, const Point2& l1, const Point2& a, const Point2& b) {
        if (a == b) return;
        if (l0 == l1) return;
        auto pnt = line_intersection(l0, l1, a, b);
        if (pnt && on_segment(l0, l1, *pnt)) fixed.insert(*pnt);
    };
    for (const auto& [l0, l1] : segments) {
        fixed.insert(l0);
        fixed.insert(l1);
        if (l0 == l1) continue;
        meet(l0, l1, ef.e0, ef.e1);
        meet(l0, l1, ef.f0, ef.f1);
        for (const auto& x : Xe) meet(l0, l1, x, ef.e1);
        for (const auto& x : Xf) {
            meet(l0, l1, x, ef.f0);
            meet(l0, l1, x, ef.f1);
        }
        for (std::size_t a = 0; a < Xf.size(); ++a)
            for (std::size_t b = a + 1; b < Xf.size(); ++b) meet(l0, l1, Xf[a], Xf[b]);
        std::set<Point2> through(Xe.begin(), Xe.end());
        through.insert(ef.f0);
        through.insert(ef.f1);
        for (const auto& x : through)
            if (auto c = detail::moving_candidate(ef, l0, l1, x)) out.candidates.push_back(std::move(*c));
    }
    for (const auto& y : fixed) out.candidates.push_back(detail::fixed_candidate(y));
    for (std::size_t c = 0; c < out.candidates.size(); ++c) {
        out.per_candidate.push_back(candidate_reach(ef, out.candidates[c], blockers, P, c));
        out.reach = envelope(out.reach, out.per_candidate.back(), true);
    }
    return out;
}

/// Single segment l with two blockers.
inline RestrictedNext restricted_next(const EdgePair& ef, const Point2& l0, const Point2& l1, const Point2& x1,
                                      const Point2& x2) {
    std::vector<Point2> X{x1};
    if (!(x2 == x1)) X.push_back(x2);
    return restricted_next_segments(ef, {{l0, l1}}, X, X);
}

inline RestrictedNext restricted_next_multi(const EdgePair& ef, const Point2& l0, const Point2& l1,
                                            const std::vector<Point2>& X) {
    return restricted_next_segments(ef, {{l0, l1}}, X, X);
}

inline std::vector<std::pair<Point2, Point2>> region_edges(const std::vector<Polygon>& C) {
    std::vector<std::pair<Point2, Point2>> out;
    for (const auto& poly : C)
        for (std::size_t k = 0; k < poly.size(); ++k) out.emplace_back(poly[k], poly[(k + 1) % poly.size()]);
    return out;
}

inline RestrictedNext restricted_next_region(const EdgePair& ef, const std::vector<Point2>& X,
                                             const std::vector<Polygon>& C) {
    return restricted_next_segments(ef, region_edges(C), X, X);
}

// ---------------------------------------------------------------------------
// Boundary parameterization

inline RPoint2 boundary_point(const Polygon& P, const Radical& T) {
    long n = static_cast<long>(P.size());
    Radical s = T * Radical(Rational(n));
    Integer fl = floor_of(s);
    Radical t = s - Radical(Rational(fl));
    long i = ((fl.get_si() % n) + n) % n;
    RPoint2 a(P[static_cast<std::size_t>(i)]), b(P[static_cast<std::size_t>((i + 1) % n)]);
    return a + (b - a) * t;
}

/// Exact check that y sees every point of the boundary from parameter
/// `from` counterclockwise to `to` (to is taken ahead of from, at most one
/// turn; to == from means the whole boundary).
inline bool sees_stretch(const Polygon& P, const RPoint2& y, const UnitPoint& from, const UnitPoint& to) {
    std::vector<RPoint2> RP(P.begin(), P.end());
    long n = static_cast<long>(P.size());
    Radical a = from.t() * Radical(Rational(n));
    Radical b = to.t() * Radical(Rational(n));
    if (compare(b, a) <= 0) b += Radical(Rational(n));
    std::vector<RPoint2> pts{boundary_point(P, from.t()), boundary_point(P, to.t())};
    Integer k0 = floor_of(a) + 1;
    for (Integer k = k0; Radical(Rational(k)) < b; ++k) pts.push_back(RP[static_cast<std::size_t>(k.get_si() % n)]);
    for (const auto& q : pts)
        if (!segment_inside(RP, y, q)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Screening and the next-generator

struct FurthestEdge {
    long j;  ///< unwrapped edge index (may exceed n - 1 after wrapping)
    std::vector<Polygon> region;
};

/// Walk counterclockwise from edge i, intersecting the visibility regions
/// of v_{i+1}, v_{i+2}, ...; stop when the region empties or has nothing
/// strictly inside the next edge's half-plane.  `start` optionally further
/// restricts the region (the visibility of the start point itself).
inline FurthestEdge furthest_edge(const Polygon& P, std::size_t i, const std::optional<Point2>& start = std::nullopt,
                                  std::vector<std::vector<Polygon>>* regions = nullptr) {
    std::size_t n = P.size();
    std::vector<Polygon> C{visibility_polygon(P, P[(i + 1) % n])};
    if (start) C = region_intersection(C, visibility_polygon(P, *start));
    FurthestEdge best{static_cast<long>(i), C};
    for (std::size_t ju = i + 1; ju <= i + n && !C.empty(); ++ju) {
        std::size_t j = ju % n;
        std::vector<Polygon> inner;
        for (const auto& poly : C)
            for (auto& r : halfplane_clip(poly, {P[j], P[(j + 1) % n]})) inner.push_back(std::move(r));
        if (inner.empty()) break;
        best = {static_cast<long>(ju), C};
        if (regions) regions->push_back(C);
        if (ju == i + n) break;
        C = region_intersection(C, visibility_polygon(P, P[(j + 1) % n]));
    }
    return best;
}

struct GalleryPair {
    std::size_t i;
    long j_u;  ///< unwrapped target edge
    RestrictedNext next;
};

struct GalleryGenerator {
    Polygon P;
    PiecewiseFunction<UnitRep> g;
    std::vector<GalleryPair> pairs;
    /// Global start key of each piece of g and the pair/candidate that
    /// realizes it (pair == npos: the start point itself).
    struct Source {
        Radical start;
        std::size_t pair;
        std::size_t cand;
    };
    std::vector<Source> sources;
};

class StarShaped : public DomainError {
public:
    using DomainError::DomainError;
};

/// Collinear vertices removed, counterclockwise, simple.
inline Polygon prepare_polygon(const Polygon& raw) {
    Polygon P = normalize_polygon(raw);
    if (P.size() < 3 || !is_simple(P)) throw GeometryError("polygon is not simple");
    return P;
}

inline GalleryGenerator build_gallery_generator(const Polygon& raw) {
    GalleryGenerator gen;
    gen.P = prepare_polygon(raw);
    const Polygon& P = gen.P;
    if (!polygon_kernel(P).empty()) throw StarShaped("polygon is star-shaped: one guard sees the boundary");
    std::size_t n = P.size();
    const std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<Piece<UnitRep>> pieces;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::vector<Polygon>> regions;  // regions[k] serves j_u = i + 1 + k
        furthest_edge(P, i, std::nullopt, &regions);
        // baseline: the start point itself sees the rest of its edge
        RealFn fi{{Radical(0), Radical(1), Moebius::constant(make_rational(static_cast<long>(i + 1), static_cast<long>(n))), npos}};
        std::vector<std::pair<Radical, Radical>> covered;
        for (std::size_t k = regions.size(); k-- > 0;) {
            long ju = static_cast<long>(i + 1 + k);
            if (ju >= static_cast<long>(i + n)) continue;
            std::size_t j = static_cast<std::size_t>(ju) % n;
            EdgePair ef{P[i], P[(i + 1) % n], P[j], P[(j + 1) % n]};
            std::vector<Point2> X;
            for (const auto& v : P)
                if (orient(ef.e0, ef.e1, v) > 0 || orient(ef.f0, ef.f1, v) > 0) X.push_back(v);
            GalleryPair gp{i, ju, restricted_next_segments(ef, region_edges(regions[k]), X, P, &P)};
            std::size_t pidx = gen.pairs.size();
            RealFn lifted;
            for (const auto& pc : gp.next.reach) {
                const Moebius& m = pc.m;
                Rational N = static_cast<long>(n);
                Moebius up{m.p + Rational(ju) * m.r, m.q + Rational(ju) * m.s, N * m.r, N * m.s};
                lifted.push_back({pc.lo, pc.hi, up, pidx * 1000000 + pc.tag});
            }
            gen.pairs.push_back(std::move(gp));
            fi = envelope(fi, lifted, true);
            // lower pairs cannot beat a pair that is valid for every start
            bool full = std::all_of(fi.begin(), fi.end(), [&](const RealPiece& pc) { return pc.tag != npos; });
            if (full) break;
        }
        Rational N = static_cast<long>(n), I = static_cast<long>(i);
        for (const auto& pc : fi) {
            const Moebius& m = pc.m;
            LinRat1 map(m.p * N, m.q - m.p * I, m.r * N, m.s - m.r * I);
            Radical start = (pc.lo + Radical(I)) / Radical(N);
            pieces.push_back({UnitPoint(start), map});
            if (pc.tag == npos)
                gen.sources.push_back({start, npos, 0});
            else
                gen.sources.push_back({start, pc.tag / 1000000, pc.tag % 1000000});
        }
    }
    gen.g = PiecewiseFunction<UnitRep>(std::move(pieces));
    return gen;
}

// ---------------------------------------------------------------------------
// Guard plans

struct GuardArc {
    RPoint2 guard;
    UnitPoint start;
    UnitPoint end;  ///< exclusive; equal to start only for a single guard
};

struct GuardPlan {
    long k = 0;
    std::vector<GuardArc> guards;
    std::size_t generator_pieces = 0;
};

/// A guard seeing the stretch from T to g(T).  Among the candidate guards
/// of the start edge that do, the lexicographically smallest is returned.
inline RPoint2 reconstruct_guard(const GalleryGenerator& gen, const UnitPoint& T) {
    const Polygon& P = gen.P;
    UnitPoint target = gen.g(T);
    auto it = std::upper_bound(gen.sources.begin(), gen.sources.end(), T.t(),
                               [](const Radical& x, const GalleryGenerator::Source& s) { return x < s.start; });
    if (it == gen.sources.begin()) throw GeometryError("no generator piece at " + to_string(T.t()));
    const auto& src = *std::prev(it);
    long n = static_cast<long>(P.size());
    Radical s = T.t() * Radical(Rational(n));
    Radical t = s - Radical(Rational(floor_of(s)));
    auto try_candidate = [&](const GuardCandidate& c) -> std::optional<RPoint2> {
        if (c.through) {
            Radical D = c.s_den.eval(t);
            if (D.sign() == 0) return std::nullopt;
            Radical sv = c.s_num.eval(t) / D;
            if (sv.sign() < 0 || sv > Radical(1)) return std::nullopt;
        }
        auto y = c.at(t);
        if (!y || !sees_stretch(P, *y, T, target)) return std::nullopt;
        return y;
    };
    if (src.pair == static_cast<std::size_t>(-1)) return boundary_point(P, T.t());
    // every candidate of the start edge that realizes the reach; the
    // lexicographically smallest one wins
    std::optional<RPoint2> best = try_candidate(gen.pairs[src.pair].next.candidates[src.cand]);
    long i = floor_of(s).get_si() % n;
    for (const auto& pr : gen.pairs) {
        if (static_cast<long>(pr.i) != i) continue;
        for (const auto& c : pr.next.candidates) {
            auto y = c.at(t);
            if (!y || (best && !(*y < *best))) continue;
            if (auto ok = try_candidate(c)) best = ok;
        }
    }
    if (!best) throw GeometryError("no candidate guard realizes the reach from " + to_string(T.t()));
    return *best;
}

inline bool validate_plan(const Polygon& P, const GuardPlan& plan) {
    if (plan.k < 1 || plan.guards.size() != static_cast<std::size_t>(plan.k)) return false;
    for (std::size_t a = 0; a + 1 < plan.guards.size(); ++a)
        if (!(plan.guards[a].end == plan.guards[a + 1].start)) return false;
    if (!(plan.guards.back().end == plan.guards.front().start)) return false;
    // the arcs must wind exactly once
    if (plan.k > 1) {
        LiftedPoint<UnitPoint> pos{0, plan.guards.front().start};
        for (const auto& ga : plan.guards) {
            if (ga.end == ga.start) return false;
            pos = advance(pos, ga.end);
        }
        if (lift_compare(pos, LiftedPoint<UnitPoint>{1, plan.guards.front().start}) != 0) return false;
    }
    for (const auto& ga : plan.guards)
        if (!sees_stretch(P, ga.guard, ga.start, ga.end)) return false;
    return true;
}

struct GalleryOptions {
    std::optional<long> k_max;
    SolveMode mode = SolveMode::doubling;
};

struct GallerySolution {
    GuardPlan plan;
    std::optional<GalleryGenerator> generator;  ///< absent for star-shaped input
    CoverSolution<UnitPoint> cover;
};

inline GallerySolution solve_contiguous_art_gallery(const Polygon& raw, const GalleryOptions& opt = {}) {
    GallerySolution sol;
    Polygon P = prepare_polygon(raw);
    Polygon ker = polygon_kernel(P);
    if (!ker.empty()) {
        sol.plan.k = 1;
        sol.plan.guards.push_back({RPoint2(ker.front()), UnitPoint::branch(), UnitPoint::branch()});
        sol.cover.k = 1;
        sol.cover.cover_points = {UnitPoint::branch(), UnitPoint::branch()};
        return sol;
    }
    sol.generator = build_gallery_generator(P);
    const auto& gen = *sol.generator;
    long k_max = opt.k_max.value_or(default_k_max(gen.g.size()));
    sol.cover = solve_analytic(gen.g, k_max, opt.mode);
    sol.plan.k = sol.cover.k;
    sol.plan.generator_pieces = gen.g.size();
    const auto& pts = sol.cover.cover_points;
    for (long a = 0; a < sol.cover.k; ++a) {
        UnitPoint from = pts[static_cast<std::size_t>(a)];
        UnitPoint to = (a + 1 == sol.cover.k) ? pts.front() : pts[static_cast<std::size_t>(a + 1)];
        sol.plan.guards.push_back({reconstruct_guard(gen, from), from, to});
    }
    if (!validate_plan(P, sol.plan)) throw GeometryError("reconstructed guard plan failed validation");
    return sol;
}

}  // namespace aac
