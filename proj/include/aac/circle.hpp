#pragma once

// Points of S^1 in the unit-interval and ray representations, the
// counterclockwise order relative to a branch cut, half-open arcs, and the
// lift to Z x S^1.
//
// Both representations expose a radical-valued "key" that is monotone in the
// counterclockwise angle from the canonical branch cut: the unit-interval key
// is t itself (period 1); the ray key is the diamond angle of the ray
// (period 4), i.e. the position of the ray's crossing with |x| + |y| = 1
// measured along that diamond.  Keys are never angles, so everything stays
// inside the radical field.

#include "aac/exactnum.hpp"

#include <concepts>
#include <string>

namespace aac {

/// A point t in [0, 1); the canonical branch cut is t = 0.
class UnitPoint {
public:
    static constexpr long period = 1;

    UnitPoint() = default;
    /// Reduces v modulo 1.
    explicit UnitPoint(const Radical& v) : t_(v - Radical(Rational(floor_of(v)))) {}
    explicit UnitPoint(const Rational& v) : UnitPoint(Radical(v)) {}

    static UnitPoint from_key(const Radical& k) { return UnitPoint(k); }
    static UnitPoint branch() { return UnitPoint(); }

    const Radical& t() const noexcept { return t_; }
    const Radical& key() const noexcept { return t_; }

    friend bool operator==(const UnitPoint& a, const UnitPoint& b) { return compare(a.t_, b.t_) == 0; }

    std::size_t bit_complexity() const { return t_.bit_complexity(); }
    double turns() const { return to_double(t_); }

private:
    Radical t_;
};

/// A ray from the origin, stored by the representative on the diamond
/// |x| + |y| = 1 (so equal rays have equal coordinates).  The canonical
/// branch cut is the positive x axis.
class RayPoint {
public:
    static constexpr long period = 4;

    RayPoint() : x_(1), y_(0) {}
    RayPoint(const Radical& x, const Radical& y) {
        int sx = x.sign(), sy = y.sign();
        if (sx == 0 && sy == 0) throw DomainError("ray through the origin");
        Radical l1 = (sx < 0 ? -x : x) + (sy < 0 ? -y : y);
        x_ = x / l1;
        y_ = y / l1;
    }
    RayPoint(const Rational& x, const Rational& y) : RayPoint(Radical(x), Radical(y)) {}

    static RayPoint from_key(const Radical& k) {
        Integer quarter = floor_of(k);
        Radical f = k - Radical(Rational(quarter));
        long q = mpz_fdiv_ui(quarter.get_mpz_t(), 4);
        Radical one(1);
        RayPoint r;
        switch (q) {
            case 0: r.x_ = one - f; r.y_ = f; break;
            case 1: r.x_ = -f; r.y_ = one - f; break;
            case 2: r.x_ = f - one; r.y_ = -f; break;
            default: r.x_ = f; r.y_ = f - one; break;
        }
        return r;
    }
    static RayPoint branch() { return RayPoint(); }

    const Radical& x() const noexcept { return x_; }
    const Radical& y() const noexcept { return y_; }

    /// Diamond angle in [0, 4).
    Radical key() const {
        int sx = x_.sign(), sy = y_.sign();
        if (sx > 0 && sy >= 0) return y_;
        if (sx <= 0 && sy > 0) return Radical(1) - x_;
        if (sx < 0 && sy <= 0) return Radical(2) - y_;
        return Radical(3) + x_;
    }

    friend bool operator==(const RayPoint& a, const RayPoint& b) {
        return compare(a.x_, b.x_) == 0 && compare(a.y_, b.y_) == 0;
    }

    std::size_t bit_complexity() const { return std::max(x_.bit_complexity(), y_.bit_complexity()); }
    double turns() const { return to_double(key()) / 4.0; }

private:
    Radical x_;
    Radical y_;
};

template <class P>
concept CirclePoint = requires(const P& p, const Radical& k) {
    { p.key() } -> std::convertible_to<Radical>;
    { P::from_key(k) } -> std::same_as<P>;
    { P::branch() } -> std::same_as<P>;
    P::period;
};

/// Offset of p counterclockwise from branch, as a key in [0, period).
template <CirclePoint P>
Radical ccw_offset(const P& p, const P& branch) {
    Radical d = p.key() - branch.key();
    if (d.sign() < 0) d += Radical(P::period);
    return d;
}

/// Orders a and b by counterclockwise distance from branch (-1, 0, 1).
template <CirclePoint P>
int ccw_compare(const P& a, const P& b, const P& branch) {
    Radical kb = branch.key(), ka = a.key(), kc = b.key();
    int wa = compare(ka, kb) < 0 ? 1 : 0;
    int wc = compare(kc, kb) < 0 ? 1 : 0;
    if (wa != wc) return wa < wc ? -1 : 1;
    return compare(ka, kc);
}

/// Order from the canonical branch cut.
template <CirclePoint P>
int ccw_compare(const P& a, const P& b) {
    return compare(a.key(), b.key());
}

/// Cyclic orientation of three points: +1 if a -> b -> c is counterclockwise.
template <CirclePoint P>
int cyclic_orientation(const P& a, const P& b, const P& c) {
    if (a == b || b == c || a == c) return 0;
    return ccw_compare(b, c, a) < 0 ? 1 : -1;
}

/// Half-open counterclockwise arc [start, end).  start == end is the empty
/// arc unless `full` is set.
template <CirclePoint P>
struct Arc {
    P start;
    P end;
    bool full = false;

    static Arc whole(const P& at = P::branch()) { return Arc{at, at, true}; }
    bool empty() const { return !full && start == end; }
};

template <CirclePoint P>
bool arc_contains(const Arc<P>& arc, const P& p) {
    if (arc.full) return true;
    if (arc.start == arc.end) return false;
    return ccw_compare(p, arc.end, arc.start) < 0;
}

/// A point of Z x S^1.
template <CirclePoint P>
struct LiftedPoint {
    long winding = 0;
    P point;

    /// Real-valued position in turns (diagnostics and oracles only).
    double turns() const { return static_cast<double>(winding) + to_double(point.key()) / P::period; }
};

/// Lexicographic: winding, then counterclockwise offset from branch.
template <CirclePoint P>
int lift_compare(const LiftedPoint<P>& a, const LiftedPoint<P>& b, const P& branch) {
    if (a.winding != b.winding) return a.winding < b.winding ? -1 : 1;
    return ccw_compare(a.point, b.point, branch);
}

template <CirclePoint P>
int lift_compare(const LiftedPoint<P>& a, const LiftedPoint<P>& b) {
    return lift_compare(a, b, P::branch());
}

/// A point strictly inside the open arc (a, b); when a == b, anywhere but a.
template <CirclePoint P>
P point_between(const P& a, const P& b) {
    Radical ka = a.key();
    Radical span = (a == b) ? Radical(P::period) : ccw_offset(b, a);
    Rational k = rational_between(ka, ka + span);
    return P::from_key(Radical(k));
}

inline std::string to_string(const UnitPoint& p) { return to_string(p.t()); }
inline std::string to_string(const RayPoint& p) { return "(" + to_string(p.x()) + ", " + to_string(p.y()) + ")"; }

}  // namespace aac
