#pragma once

// Linear-rational maps acting on the two circle representations, packaged as
// representation policies for the piecewise machinery in plrf.hpp.
//
// A policy supplies the point and map types plus the handful of exact
// primitives the piecewise algorithms need: evaluation, composition,
// inversion, and root finding for "where do two maps agree" / "where does a
// map hit a given point" restricted to a key range.  Root finders may return
// a superset of the true change points; callers always re-test sub-arcs.

#include "aac/circle.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <vector>

namespace aac {

/// Closed range of keys [lo, hi] within one period.
struct KeyRange {
    Radical lo;
    Radical hi;

    bool contains(const Radical& k) const { return compare(lo, k) <= 0 && compare(k, hi) <= 0; }
    bool contains_open(const Radical& k) const { return compare(lo, k) < 0 && compare(k, hi) < 0; }
};

namespace detail {

inline Integer lcm_of_dens(std::initializer_list<const Rational*> xs) {
    Integer l = 1;
    for (auto* x : xs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x->get_den_mpz_t());
    return l;
}

inline void divide_content(std::initializer_list<Integer*> xs) {
    Integer g = 0;
    for (auto* x : xs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x->get_mpz_t());
    if (g > 1)
        for (auto* x : xs) mpz_divexact(x->get_mpz_t(), x->get_mpz_t(), g.get_mpz_t());
}

template <class P>
void sort_unique_by_key(std::vector<P>& pts) {
    std::sort(pts.begin(), pts.end(), [](const P& a, const P& b) { return compare(a.key(), b.key()) < 0; });
    pts.erase(std::unique(pts.begin(), pts.end(), [](const P& a, const P& b) { return a == b; }), pts.end());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// One-dimensional maps t -> (p t + q) / (r t + s)

/// A Moebius map on the unit-interval representation.  The map acts on the
/// representative t in [0, 1) and its real value is reduced modulo 1 when
/// read as a circle point.  Coefficients are kept as coprime integers.
class LinRat1 {
public:
    LinRat1() : p_(1), q_(0), r_(0), s_(1) {}
    LinRat1(const Rational& p, const Rational& q, const Rational& r, const Rational& s) {
        Integer l = detail::lcm_of_dens({&p, &q, &r, &s});
        p_ = Integer(p * l);
        q_ = Integer(q * l);
        r_ = Integer(r * l);
        s_ = Integer(s * l);
        if (r_ == 0 && s_ == 0) throw DomainError("linear-rational map with zero denominator");
        normalize();
        if (determinant() == 0) {
            // degenerate: the map is constant where defined
            Rational v = (r_ != 0) ? Rational(p_, r_) : Rational(q_, s_);
            v.canonicalize();
            constant_ = UnitPoint(v);
        }
    }

    static LinRat1 constant(const UnitPoint& v) {
        LinRat1 m;
        m.constant_ = v;
        return m;
    }
    static LinRat1 translation(const Rational& d) { return LinRat1(1, d, 0, 1); }

    const Integer& p() const noexcept { return p_; }
    const Integer& q() const noexcept { return q_; }
    const Integer& r() const noexcept { return r_; }
    const Integer& s() const noexcept { return s_; }
    bool is_constant() const noexcept { return constant_.has_value(); }
    const UnitPoint& constant_value() const { return *constant_; }

    Integer determinant() const { return p_ * s_ - q_ * r_; }

    /// Real value at representative t (no reduction).
    Radical value(const Radical& t) const {
        if (constant_) return constant_->t();
        return eval_linear_rational(p_, q_, r_, s_, t);
    }

    bool operator==(const LinRat1& o) const {
        if (is_constant() || o.is_constant()) return is_constant() && o.is_constant() && *constant_ == *o.constant_;
        return p_ == o.p_ && q_ == o.q_ && r_ == o.r_ && s_ == o.s_;
    }

    std::size_t bit_complexity() const {
        if (constant_) return constant_->bit_complexity();
        return std::max({bit_length(p_), bit_length(q_), bit_length(r_), bit_length(s_)});
    }

    /// this o inner (as real maps).
    LinRat1 then_after(const LinRat1& inner) const {
        return LinRat1(Rational(p_ * inner.p_ + q_ * inner.r_), Rational(p_ * inner.q_ + q_ * inner.s_),
                       Rational(r_ * inner.p_ + s_ * inner.r_), Rational(r_ * inner.q_ + s_ * inner.s_));
    }
    LinRat1 inverse() const {
        if (constant_) throw DomainError("constant map has no inverse");
        return LinRat1(Rational(s_), Rational(-q_), Rational(-r_), Rational(p_));
    }

private:
    void normalize() {
        detail::divide_content({&p_, &q_, &r_, &s_});
        if (r_ < 0 || (r_ == 0 && s_ < 0)) {
            p_ = -p_;
            q_ = -q_;
            r_ = -r_;
            s_ = -s_;
        }
    }

    Integer p_, q_, r_, s_;
    std::optional<UnitPoint> constant_;
};

struct UnitRep {
    using Point = UnitPoint;
    using Map = LinRat1;
    static constexpr const char* tag = "unit-interval";

    static Map identity() { return LinRat1(); }
    static Map constant(const Point& p) { return LinRat1::constant(p); }
    static bool is_constant(const Map& m) { return m.is_constant(); }

    static Point apply(const Map& m, const Point& x) { return UnitPoint(m.value(x.t())); }
    /// Value at a key, using the continuous extension (key may equal 1).
    static Point apply_at_key(const Map& m, const Radical& k) { return UnitPoint(m.value(k)); }
    /// True if the map's image reaches the branch cut exactly at key k
    /// while approaching it from below (used for left limits).
    static bool wraps_at_key(const Map& m, const Radical& k) {
        if (m.is_constant()) return false;
        Radical v = m.value(k);
        return v.is_rational() && v.rational().get_den() == 1;
    }

    /// outer o inner, valid on the sub-arc containing `sample` (the integer
    /// part of inner's value is folded in).
    static Map compose_at(const Map& outer, const Map& inner, const Point& sample) {
        if (outer.is_constant()) return outer;
        if (inner.is_constant()) return constant(apply(outer, inner.constant_value()));
        Integer shift = floor_of(inner.value(sample.t()));
        return outer.then_after(LinRat1::translation(Rational(-shift)).then_after(inner));
    }

    /// Inverse of m valid for representatives near m(sample).
    static Map inverse_at(const Map& m, const Point& sample) {
        Integer shift = floor_of(m.value(sample.t()));
        return m.inverse().then_after(LinRat1::translation(Rational(shift)));
    }

    static int orientation(const Map& m) { return m.is_constant() ? 0 : sgn(m.determinant()); }

    /// Equal as functions on the circle (coefficients may differ by an
    /// integer translation of the output).
    static bool same_function(const Map& a, const Map& b) {
        if (a.is_constant() || b.is_constant()) return a == b;
        LinRat1 d = a.then_after(b.inverse());
        return !d.is_constant() && d.r() == 0 && d.p() == d.s() && d.s() == 1;
    }

    /// The same circle map re-expressed for representatives shifted by one
    /// period (used when a piece is moved across the branch cut).
    static Map rebase(const Map& m) { return m.is_constant() ? m : m.then_after(LinRat1::translation(1)); }

    static std::vector<Point> poles(const Map& m, const KeyRange& range) {
        std::vector<Point> out;
        if (m.is_constant() || m.r() == 0) return out;
        Radical t0(Rational(-m.s(), m.r()));
        if (range.contains(t0)) out.push_back(UnitPoint(t0));
        return out;
    }

    static std::pair<Radical, Radical> value_range(const Map& m, const KeyRange& range) {
        if (!poles(m, range).empty()) throw PoleError("pole inside piece", to_string(range.lo));
        Radical a = m.value(range.lo), b = m.value(range.hi);
        if (compare(a, b) > 0) std::swap(a, b);
        return {a, b};
    }

    static std::vector<Point> preimages(const Map& m, const Point& y, const KeyRange& range) {
        std::vector<Point> out;
        if (m.is_constant()) return out;
        auto [lo, hi] = value_range(m, range);
        Integer kmin = floor_of(lo - y.t()), kmax = floor_of(hi - y.t()) + 1;
        LinRat1 inv = m.inverse();
        for (Integer k = kmin; k <= kmax; ++k) {
            Radical target = y.t() + Radical(Rational(k));
            Radical den = Radical(Rational(inv.r())) * target + Radical(Rational(inv.s()));
            if (den.sign() == 0) continue;
            Radical t = inv.value(target);
            if (range.contains(t)) out.push_back(UnitPoint(t));
        }
        return out;
    }

    /// Superset of the points in range where f and g agree on the circle.
    static std::vector<Point> crossing_candidates(const Map& f, const Map& g, const KeyRange& range,
                                                  bool* identical = nullptr) {
        if (identical) *identical = false;
        if (f.is_constant() && g.is_constant()) {
            if (identical) *identical = f == g;
            return {};
        }
        if (f.is_constant()) return preimages(g, f.constant_value(), range);
        if (g.is_constant()) return preimages(f, g.constant_value(), range);
        auto [flo, fhi] = value_range(f, range);
        auto [glo, ghi] = value_range(g, range);
        Integer kmin = floor_of(flo - ghi), kmax = floor_of(fhi - glo) + 1;
        std::vector<Point> out;
        const Integer &p1 = f.p(), &q1 = f.q(), &r1 = f.r(), &s1 = f.s();
        const Integer &p2 = g.p(), &q2 = g.q(), &r2 = g.r(), &s2 = g.s();
        for (Integer k = kmin; k <= kmax; ++k) {
            Rational A(p1 * r2 - p2 * r1 - k * r1 * r2);
            Rational B(p1 * s2 + q1 * r2 - p2 * s1 - q2 * r1 - k * (r1 * s2 + s1 * r2));
            Rational C(q1 * s2 - q2 * s1 - k * s1 * s2);
            QuadraticRoots roots = solve_quadratic(A, B, C);
            if (roots.identically_zero) {
                if (identical) *identical = true;
                continue;
            }
            for (const Radical& t : roots.roots)
                if (range.contains(t)) out.push_back(UnitPoint(t));
        }
        detail::sort_unique_by_key(out);
        return out;
    }

    static std::size_t bit_complexity(const Map& m) { return m.bit_complexity(); }
};

// ---------------------------------------------------------------------------
// Two-dimensional homogeneous maps on rays

/// A ray map n -> (M n) / (c . n): a linear map followed by division by one
/// linear form, i.e. pointwise division by C n with both rows of C equal to
/// c.  Without a denominator the map is n -> M n.  Every point of a ray maps
/// to the same output ray, and the family is closed under composition.
class LinRat2 {
public:
    LinRat2() : m_{1, 0, 0, 1}, c_{0, 0}, has_den_(false) {}
    LinRat2(const Rational& m11, const Rational& m12, const Rational& m21, const Rational& m22)
        : LinRat2(m11, m12, m21, m22, 0, 0, false) {}
    LinRat2(const Rational& m11, const Rational& m12, const Rational& m21, const Rational& m22, const Rational& c1,
            const Rational& c2)
        : LinRat2(m11, m12, m21, m22, c1, c2, true) {}

    static LinRat2 constant(const RayPoint& v) {
        LinRat2 m;
        m.constant_ = v;
        return m;
    }

    bool is_constant() const noexcept { return constant_.has_value(); }
    const RayPoint& constant_value() const { return *constant_; }
    bool has_denominator() const noexcept { return has_den_; }
    const Integer& m(int i, int j) const { return m_[2 * i + j]; }
    const Integer& c(int i) const { return c_[i]; }
    Integer determinant() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

    /// The pointwise-division form (A, C) with C's rows equal to c.
    std::array<Integer, 4> numerator_matrix() const { return {m_[0], m_[1], m_[2], m_[3]}; }
    std::array<Integer, 4> denominator_matrix() const { return {c_[0], c_[1], c_[0], c_[1]}; }

    /// Signed image vector (before normalization); nullopt at a pole.
    std::optional<std::pair<Radical, Radical>> image_vector(const Radical& x, const Radical& y) const {
        Radical u = Radical(Rational(m_[0])) * x + Radical(Rational(m_[1])) * y;
        Radical v = Radical(Rational(m_[2])) * x + Radical(Rational(m_[3])) * y;
        if (has_den_) {
            Radical d = Radical(Rational(c_[0])) * x + Radical(Rational(c_[1])) * y;
            int sd = d.sign();
            if (sd == 0) return std::nullopt;
            if (sd < 0) {
                u = -u;
                v = -v;
            }
        }
        return std::make_pair(u, v);
    }

    RayPoint apply(const RayPoint& n) const {
        if (constant_) return *constant_;
        auto img = image_vector(n.x(), n.y());
        if (!img) throw PoleError("ray map pole", to_string(n));
        return RayPoint(img->first, img->second);
    }

    /// this o inner.
    LinRat2 then_after(const LinRat2& inner) const {
        if (constant_) return *this;
        if (inner.constant_) return constant(apply(*inner.constant_));
        LinRat2 out;
        out.m_ = {m_[0] * inner.m_[0] + m_[1] * inner.m_[2], m_[0] * inner.m_[1] + m_[1] * inner.m_[3],
                  m_[2] * inner.m_[0] + m_[3] * inner.m_[2], m_[2] * inner.m_[1] + m_[3] * inner.m_[3]};
        if (has_den_) {
            out.c_ = {c_[0] * inner.m_[0] + c_[1] * inner.m_[2], c_[0] * inner.m_[1] + c_[1] * inner.m_[3]};
            out.has_den_ = true;
        } else {
            out.c_ = inner.c_;
            out.has_den_ = inner.has_den_;
        }
        out.normalize();
        return out;
    }

    LinRat2 inverse() const {
        if (constant_) throw DomainError("constant map has no inverse");
        LinRat2 out;
        out.m_ = {m_[3], -m_[1], -m_[2], m_[0]};  // adjugate
        if (has_den_) {
            out.c_ = {c_[0] * m_[3] - c_[1] * m_[2], -c_[0] * m_[1] + c_[1] * m_[0]};
            out.has_den_ = true;
        } else if (sgn(determinant()) < 0) {
            for (auto& e : out.m_) e = -e;
        }
        out.normalize();
        return out;
    }

    bool operator==(const LinRat2& o) const {
        if (is_constant() || o.is_constant()) return is_constant() && o.is_constant() && *constant_ == *o.constant_;
        return m_ == o.m_ && has_den_ == o.has_den_ && (!has_den_ || c_ == o.c_);
    }

    std::size_t bit_complexity() const {
        if (constant_) return constant_->bit_complexity();
        std::size_t b = 0;
        for (const auto& e : m_) b = std::max(b, bit_length(e));
        for (const auto& e : c_) b = std::max(b, bit_length(e));
        return b;
    }

private:
    LinRat2(const Rational& m11, const Rational& m12, const Rational& m21, const Rational& m22, const Rational& c1,
            const Rational& c2, bool den)
        : has_den_(den) {
        Integer l = detail::lcm_of_dens({&m11, &m12, &m21, &m22, &c1, &c2});
        m_ = {Integer(m11 * l), Integer(m12 * l), Integer(m21 * l), Integer(m22 * l)};
        c_ = {Integer(c1 * l), Integer(c2 * l)};
        if (den && c_[0] == 0 && c_[1] == 0) throw DomainError("ray map with zero denominator form");
        if (determinant() == 0) throw DomainError("singular ray map");
        normalize();
    }

    void normalize() {
        if (has_den_)
            detail::divide_content({&m_[0], &m_[1], &m_[2], &m_[3], &c_[0], &c_[1]});
        else
            detail::divide_content({&m_[0], &m_[1], &m_[2], &m_[3]});
        if (!has_den_) {
            c_ = {0, 0};
            return;
        }
        // (M, c) and (-M, -c) describe the same map
        if (c_[0] < 0 || (c_[0] == 0 && c_[1] < 0)) {
            for (auto& e : m_) e = -e;
            for (auto& e : c_) e = -e;
        }
    }

    std::array<Integer, 4> m_;
    std::array<Integer, 2> c_;
    bool has_den_;
    std::optional<RayPoint> constant_;
};

struct RayRep {
    using Point = RayPoint;
    using Map = LinRat2;
    static constexpr const char* tag = "ray";

    static Map identity() { return LinRat2(); }
    static Map constant(const Point& p) { return LinRat2::constant(p); }
    static bool is_constant(const Map& m) { return m.is_constant(); }

    static Point apply(const Map& m, const Point& x) { return m.apply(x); }
    static Point apply_at_key(const Map& m, const Radical& k) { return m.apply(RayPoint::from_key(k)); }
    static bool wraps_at_key(const Map& m, const Radical& k) {
        if (m.is_constant()) return false;
        return apply_at_key(m, k) == RayPoint::branch();
    }

    static Map compose_at(const Map& outer, const Map& inner, const Point&) { return outer.then_after(inner); }
    static Map inverse_at(const Map& m, const Point&) { return m.inverse(); }
    static int orientation(const Map& m) { return m.is_constant() ? 0 : sgn(m.determinant()); }
    static bool same_function(const Map& a, const Map& b) { return a == b; }
    static Map rebase(const Map& m) { return m; }

    static std::vector<Point> poles(const Map& m, const KeyRange& range) {
        std::vector<Point> out;
        if (m.is_constant() || !m.has_denominator()) return out;
        for (int s : {1, -1}) {
            RayPoint p(Rational(-s * m.c(1)), Rational(s * m.c(0)));
            if (range.contains(p.key())) out.push_back(p);
        }
        return out;
    }

    static std::vector<Point> preimages(const Map& m, const Point& y, const KeyRange& range) {
        std::vector<Point> out;
        if (m.is_constant()) return out;
        LinRat2 inv = m.inverse();
        Radical u = Radical(Rational(inv.m(0, 0))) * y.x() + Radical(Rational(inv.m(0, 1))) * y.y();
        Radical v = Radical(Rational(inv.m(1, 0))) * y.x() + Radical(Rational(inv.m(1, 1))) * y.y();
        if (u.sign() == 0 && v.sign() == 0) return out;
        for (int s : {1, -1}) {
            RayPoint cand(s > 0 ? u : -u, s > 0 ? v : -v);
            if (!range.contains(cand.key())) continue;
            auto w = m.image_vector(cand.x(), cand.y());
            if (!w) continue;
            if (RayPoint(w->first, w->second) == y) out.push_back(cand);
        }
        return out;
    }

    /// Rays n with Q(n) = a x^2 + b x y + c y^2 = 0.
    static std::vector<Point> quadratic_rays(const Rational& a, const Rational& b, const Rational& c) {
        std::vector<Point> out;
        QuadraticRoots roots = solve_quadratic(c, b, a);  // in t = y / x
        for (const Radical& t : roots.roots) {
            out.emplace_back(Radical(1), t);
            out.emplace_back(Radical(-1), -t);
        }
        if (c == 0) {
            out.emplace_back(Radical(0), Radical(1));
            out.emplace_back(Radical(0), Radical(-1));
        }
        return out;
    }

    static std::vector<Point> crossing_candidates(const Map& f, const Map& g, const KeyRange& range,
                                                  bool* identical = nullptr) {
        if (identical) *identical = false;
        if (f.is_constant() && g.is_constant()) {
            if (identical) *identical = f == g;
            return {};
        }
        if (f.is_constant()) return preimages(g, f.constant_value(), range);
        if (g.is_constant()) return preimages(f, g.constant_value(), range);
        Rational a(f.m(0, 0) * g.m(1, 0) - f.m(1, 0) * g.m(0, 0));
        Rational b(f.m(0, 0) * g.m(1, 1) + f.m(0, 1) * g.m(1, 0) - f.m(1, 0) * g.m(0, 1) - f.m(1, 1) * g.m(0, 0));
        Rational c(f.m(0, 1) * g.m(1, 1) - f.m(1, 1) * g.m(0, 1));
        std::vector<Point> out;
        if (a == 0 && b == 0 && c == 0) {
            // parallel images everywhere: agreement can only switch at poles
            auto pf = poles(f, range), pg = poles(g, range);
            out.insert(out.end(), pf.begin(), pf.end());
            out.insert(out.end(), pg.begin(), pg.end());
            if (out.empty() && identical) {
                Point s = RayPoint::from_key(range.lo);
                try {
                    *identical = apply(f, s) == apply(g, s);
                } catch (const PoleError&) {
                }
            }
            detail::sort_unique_by_key(out);
            return out;
        }
        for (const Point& n : quadratic_rays(a, b, c)) {
            if (!range.contains(n.key())) continue;
            auto u = f.image_vector(n.x(), n.y());
            auto v = g.image_vector(n.x(), n.y());
            if (!u || !v) continue;
            if (RayPoint(u->first, u->second) == RayPoint(v->first, v->second)) out.push_back(n);
        }
        for (const auto& pl : {poles(f, range), poles(g, range)}) out.insert(out.end(), pl.begin(), pl.end());
        detail::sort_unique_by_key(out);
        return out;
    }

    static std::size_t bit_complexity(const Map& m) { return m.bit_complexity(); }
};

template <class Rep>
concept Representation = requires {
    typename Rep::Point;
    typename Rep::Map;
};

}  // namespace aac
