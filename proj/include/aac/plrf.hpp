#pragma once

// Piecewise linear-rational functions on the circle and their lifts to
// Z x S^1.
//
// A PiecewiseFunction stores pieces sorted by key from the canonical branch
// cut.  Piece i owns the half-open arc from its start to the next start (the
// last piece runs to the end of the period).  The first piece always starts
// at key 0.  A piece without a map is a hole in the domain.

#include "aac/maps.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace aac {

namespace detail {

/// Sorted keys strictly inside (lo, hi), taken from candidate points.
template <class P>
std::vector<Radical> interior_keys(const std::vector<P>& cands, const Radical& lo, const Radical& hi) {
    std::vector<Radical> keys;
    for (const P& c : cands) {
        Radical k = c.key();
        if (compare(lo, k) < 0 && compare(k, hi) < 0) keys.push_back(k);
    }
    std::sort(keys.begin(), keys.end(), [](const Radical& a, const Radical& b) { return compare(a, b) < 0; });
    keys.erase(std::unique(keys.begin(), keys.end(), [](const Radical& a, const Radical& b) { return compare(a, b) == 0; }),
               keys.end());
    return keys;
}

/// Consecutive sub-ranges of [lo, hi) cut at the given interior keys.
inline std::vector<KeyRange> cut_range(const Radical& lo, const Radical& hi, const std::vector<Radical>& cuts) {
    std::vector<KeyRange> out;
    Radical a = lo;
    for (const Radical& c : cuts) {
        out.push_back({a, c});
        a = c;
    }
    out.push_back({a, hi});
    return out;
}

template <class P>
P sample_in(const KeyRange& r) {
    return P::from_key(Radical(rational_between(r.lo, r.hi)));
}

}  // namespace detail

template <class Rep>
struct Piece {
    typename Rep::Point start;
    std::optional<typename Rep::Map> map;
};

template <class Rep>
class PiecewiseFunction {
public:
    using Point = typename Rep::Point;
    using Map = typename Rep::Map;
    using PieceT = Piece<Rep>;

    PiecewiseFunction() : pieces_{{Point::branch(), std::nullopt}} {}
    explicit PiecewiseFunction(std::vector<PieceT> pieces) : pieces_(std::move(pieces)) {
        if (pieces_.empty()) pieces_.push_back({Point::branch(), std::nullopt});
        for (std::size_t i = 1; i < pieces_.size(); ++i)
            if (compare(pieces_[i - 1].start.key(), pieces_[i].start.key()) >= 0)
                throw DomainError("piece starts must increase counterclockwise");
        if (pieces_.front().start.key().sign() != 0) {
            // the last piece wraps across the branch cut
            const PieceT& last = pieces_.back();
            PieceT head{Point::branch(), last.map ? std::optional<Map>(Rep::rebase(*last.map)) : std::nullopt};
            pieces_.insert(pieces_.begin(), head);
        }
    }

    static PiecewiseFunction single(const Map& m) { return PiecewiseFunction({{Point::branch(), m}}); }
    static PiecewiseFunction identity() { return single(Rep::identity()); }

    const std::vector<PieceT>& pieces() const noexcept { return pieces_; }
    std::size_t size() const noexcept { return pieces_.size(); }

    KeyRange range(std::size_t i) const {
        return {pieces_[i].start.key(),
                i + 1 < pieces_.size() ? pieces_[i + 1].start.key() : Radical(Rational(Point::period))};
    }

    std::size_t locate(const Point& x) const {
        Radical k = x.key();
        std::size_t lo = 0, hi = pieces_.size();
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (compare(pieces_[mid].start.key(), k) <= 0)
                lo = mid;
            else
                hi = mid;
        }
        return lo;
    }

    bool defined_at(const Point& x) const { return pieces_[locate(x)].map.has_value(); }
    bool total() const {
        for (const auto& p : pieces_)
            if (!p.map) return false;
        return true;
    }

    Point eval(const Point& x) const {
        const PieceT& p = pieces_[locate(x)];
        if (!p.map) throw DomainError("point " + to_string(x) + " outside the domain");
        return Rep::apply(*p.map, x);
    }
    Point operator()(const Point& x) const { return eval(x); }

    /// Start points of all pieces except the forced one at the branch cut
    /// (unless it is a genuine change of map).
    std::vector<Point> boundaries() const {
        std::vector<Point> out;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            if (i == 0) {
                const PieceT& last = pieces_.back();
                if (pieces_.size() > 1 && same_piece(last, pieces_[0])) continue;
            }
            out.push_back(pieces_[i].start);
        }
        return out;
    }

    /// Merges neighbours carrying the same map.
    PiecewiseFunction coalesced() const {
        std::vector<PieceT> out;
        for (const PieceT& p : pieces_) {
            if (!out.empty() && same_piece(out.back(), p)) continue;
            out.push_back(p);
        }
        PiecewiseFunction f;
        f.pieces_ = std::move(out);
        return f;
    }

    std::size_t bit_complexity() const {
        std::size_t b = 0;
        for (const PieceT& p : pieces_) {
            b = std::max(b, p.start.bit_complexity());
            if (p.map) b = std::max(b, Rep::bit_complexity(*p.map));
        }
        return b;
    }

    std::size_t boundary_bit_complexity() const {
        std::size_t b = 0;
        for (const Point& p : boundaries()) b = std::max(b, p.bit_complexity());
        return b;
    }

private:
    static bool same_piece(const PieceT& a, const PieceT& b) {
        if (!a.map || !b.map) return !a.map && !b.map;
        return Rep::same_function(*a.map, *b.map);
    }

    std::vector<PieceT> pieces_;
};

// ---------------------------------------------------------------------------
// Algebra on piecewise functions

/// f o g.  Pieces of g are split at the preimages of f's piece starts so that
/// each sub-arc maps into a single piece of f.
template <class Rep>
PiecewiseFunction<Rep> compose(const PiecewiseFunction<Rep>& f, const PiecewiseFunction<Rep>& g) {
    using P = typename Rep::Point;
    std::vector<Piece<Rep>> out;
    std::vector<P> f_starts;
    for (const auto& p : f.pieces()) f_starts.push_back(p.start);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto& gp = g.pieces()[i];
        KeyRange r = g.range(i);
        if (!gp.map) {
            out.push_back({gp.start, std::nullopt});
            continue;
        }
        std::vector<P> cands = Rep::poles(*gp.map, r);
        if (!Rep::is_constant(*gp.map))
            for (const P& b : f_starts) {
                auto pre = Rep::preimages(*gp.map, b, r);
                cands.insert(cands.end(), pre.begin(), pre.end());
            }
        for (const KeyRange& sub : detail::cut_range(r.lo, r.hi, detail::interior_keys(cands, r.lo, r.hi))) {
            P s = detail::sample_in<P>(sub);
            P y = Rep::apply(*gp.map, s);
            const auto& fp = f.pieces()[f.locate(y)];
            P start = P::from_key(sub.lo);
            if (!fp.map)
                out.push_back({start, std::nullopt});
            else
                out.push_back({start, Rep::compose_at(*fp.map, *gp.map, s)});
        }
    }
    return PiecewiseFunction<Rep>(std::move(out)).coalesced();
}

/// Piecewise inverse of an injective, orientation-preserving function.
/// Points outside the image become holes.
template <class Rep>
PiecewiseFunction<Rep> invert(const PiecewiseFunction<Rep>& f) {
    using P = typename Rep::Point;
    using M = typename Rep::Map;
    struct Span {
        Radical lo, hi;
        M map;
    };
    const Radical period(Rational(P::period));
    std::vector<Span> spans;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto& fp = f.pieces()[i];
        if (!fp.map) continue;
        if (Rep::orientation(*fp.map) <= 0) throw DomainError("cannot invert a non-increasing piece");
        KeyRange r = f.range(i);
        std::vector<P> cands = Rep::poles(*fp.map, r);
        if (!cands.empty()) throw DomainError("cannot invert a piece containing a pole");
        cands = Rep::preimages(*fp.map, P::branch(), r);
        for (const KeyRange& sub : detail::cut_range(r.lo, r.hi, detail::interior_keys(cands, r.lo, r.hi))) {
            P s = detail::sample_in<P>(sub);
            Radical lo = Rep::apply_at_key(*fp.map, sub.lo).key();
            Radical hi = Rep::wraps_at_key(*fp.map, sub.hi) ? period : Rep::apply_at_key(*fp.map, sub.hi).key();
            spans.push_back({lo, hi, Rep::inverse_at(*fp.map, s)});
        }
    }
    std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) { return compare(a.lo, b.lo) < 0; });
    std::vector<Piece<Rep>> out;
    Radical cursor(0);
    for (const Span& s : spans) {
        int c = compare(s.lo, cursor);
        if (c < 0) throw DomainError("function is not injective");
        if (c > 0) out.push_back({P::from_key(cursor), std::nullopt});
        out.push_back({P::from_key(s.lo), s.map});
        cursor = s.hi;
    }
    if (compare(cursor, period) < 0) out.push_back({P::from_key(cursor), std::nullopt});
    return PiecewiseFunction<Rep>(std::move(out)).coalesced();
}

namespace detail {

template <class Rep>
PiecewiseFunction<Rep> merge(const PiecewiseFunction<Rep>& fa, const PiecewiseFunction<Rep>& fb,
                             const std::optional<typename Rep::Point>& branch, bool take_max) {
    using P = typename Rep::Point;
    std::vector<P> starts;
    for (const auto& p : fa.pieces()) starts.push_back(p.start);
    for (const auto& p : fb.pieces()) starts.push_back(p.start);
    sort_unique_by_key(starts);
    const Radical period(Rational(P::period));
    std::vector<Piece<Rep>> out;
    for (std::size_t i = 0; i < starts.size(); ++i) {
        KeyRange r{starts[i].key(), i + 1 < starts.size() ? starts[i + 1].key() : period};
        P mid = sample_in<P>(r);
        const auto& pa = fa.pieces()[fa.locate(mid)];
        const auto& pb = fb.pieces()[fb.locate(mid)];
        if (!pa.map || !pb.map) {
            out.push_back({starts[i], pa.map ? pa.map : pb.map});
            continue;
        }
        bool identical = false;
        std::vector<P> cands = Rep::crossing_candidates(*pa.map, *pb.map, r, &identical);
        for (const auto* m : {&*pa.map, &*pb.map}) {
            auto pre = branch ? Rep::preimages(*m, *branch, r) : Rep::crossing_candidates(*m, Rep::identity(), r);
            cands.insert(cands.end(), pre.begin(), pre.end());
            auto pl = Rep::poles(*m, r);
            cands.insert(cands.end(), pl.begin(), pl.end());
        }
        for (const KeyRange& sub : cut_range(r.lo, r.hi, interior_keys(cands, r.lo, r.hi))) {
            P s = sample_in<P>(sub);
            int c = ccw_compare(Rep::apply(*pa.map, s), Rep::apply(*pb.map, s), branch ? *branch : s);
            bool pick_a = take_max ? c >= 0 : c <= 0;
            out.push_back({P::from_key(sub.lo), pick_a ? pa.map : pb.map});
        }
    }
    return PiecewiseFunction<Rep>(std::move(out)).coalesced();
}

}  // namespace detail

/// Pointwise maximum in counterclockwise order from `branch`; where only one
/// function is defined, that one.
template <class Rep>
PiecewiseFunction<Rep> merge_max(const PiecewiseFunction<Rep>& fa, const PiecewiseFunction<Rep>& fb,
                                 const typename Rep::Point& branch = Rep::Point::branch()) {
    return detail::merge(fa, fb, branch, true);
}

/// Pointwise farthest reach: at each x, whichever value lies farther
/// counterclockwise from x itself.  This is the maximum used to build
/// next-generators, where the order is relative to the moving start point.
template <class Rep>
PiecewiseFunction<Rep> merge_reach(const PiecewiseFunction<Rep>& fa, const PiecewiseFunction<Rep>& fb) {
    return detail::merge(fa, fb, std::nullopt, true);
}

template <class Rep>
PiecewiseFunction<Rep> merge_min(const PiecewiseFunction<Rep>& fa, const PiecewiseFunction<Rep>& fb,
                                 const typename Rep::Point& branch = Rep::Point::branch()) {
    return detail::merge(fa, fb, branch, false);
}

// ---------------------------------------------------------------------------
// Lifts to Z x S^1

template <class Rep>
struct LiftedPiece {
    typename Rep::Point start;
    typename Rep::Map map;
    long winding = 0;
};

/// A total piecewise function on Z x S^1 of the form (z, x) -> (z + w, m(x))
/// with w and m constant on each piece.
template <class Rep>
class LiftedPiecewise {
public:
    using Point = typename Rep::Point;
    using Map = typename Rep::Map;
    using PieceT = LiftedPiece<Rep>;
    using Lifted = LiftedPoint<Point>;

    LiftedPiecewise() : pieces_{{Point::branch(), Rep::identity(), 0}} {}
    explicit LiftedPiecewise(std::vector<PieceT> pieces) : pieces_(std::move(pieces)) {
        if (pieces_.empty() || pieces_.front().start.key().sign() != 0)
            throw DomainError("lifted function must have a piece at the branch cut");
        for (std::size_t i = 1; i < pieces_.size(); ++i)
            if (compare(pieces_[i - 1].start.key(), pieces_[i].start.key()) >= 0)
                throw DomainError("piece starts must increase counterclockwise");
    }

    const std::vector<PieceT>& pieces() const noexcept { return pieces_; }
    std::size_t size() const noexcept { return pieces_.size(); }

    KeyRange range(std::size_t i) const {
        return {pieces_[i].start.key(),
                i + 1 < pieces_.size() ? pieces_[i + 1].start.key() : Radical(Rational(Point::period))};
    }

    std::size_t locate(const Point& x) const {
        Radical k = x.key();
        std::size_t lo = 0, hi = pieces_.size();
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (compare(pieces_[mid].start.key(), k) <= 0)
                lo = mid;
            else
                hi = mid;
        }
        return lo;
    }

    Lifted eval(long z, const Point& x) const {
        const PieceT& p = pieces_[locate(x)];
        return {z + p.winding, Rep::apply(p.map, x)};
    }
    Lifted eval(const Lifted& x) const { return eval(x.winding, x.point); }

    PiecewiseFunction<Rep> base() const {
        std::vector<Piece<Rep>> out;
        for (const PieceT& p : pieces_) out.push_back({p.start, p.map});
        return PiecewiseFunction<Rep>(std::move(out)).coalesced();
    }

    LiftedPiecewise coalesced() const {
        std::vector<PieceT> out;
        for (const PieceT& p : pieces_) {
            if (!out.empty() && out.back().winding == p.winding && Rep::same_function(out.back().map, p.map)) continue;
            out.push_back(p);
        }
        LiftedPiecewise f;
        f.pieces_ = std::move(out);
        return f;
    }

    std::size_t boundary_count() const { return pieces_.size(); }

    std::size_t bit_complexity() const {
        std::size_t b = 0;
        for (const PieceT& p : pieces_) b = std::max({b, p.start.bit_complexity(), Rep::bit_complexity(p.map)});
        return b;
    }

    std::size_t boundary_bit_complexity() const {
        std::size_t b = 0;
        for (const PieceT& p : pieces_) b = std::max(b, p.start.bit_complexity());
        return b;
    }

private:
    std::vector<PieceT> pieces_;
};

/// Annotates a total function with winding increments relative to the
/// canonical branch cut: a point x gets increment 1 when the counterclockwise
/// arc from x to f(x) passes the cut, i.e. when f(x) precedes x in key order.
/// Pieces are split where this can change, so the increment is constant on
/// each piece (at an isolated fixed point the piece's interior value wins).
template <class Rep>
LiftedPiecewise<Rep> lift(const PiecewiseFunction<Rep>& f) {
    using P = typename Rep::Point;
    if (!f.total()) throw DomainError("lift needs a total function");
    std::vector<LiftedPiece<Rep>> out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto& m = *f.pieces()[i].map;
        KeyRange r = f.range(i);
        std::vector<P> cands = Rep::poles(m, r);
        auto pre = Rep::preimages(m, P::branch(), r);
        cands.insert(cands.end(), pre.begin(), pre.end());
        auto fix = Rep::crossing_candidates(m, Rep::identity(), r);
        cands.insert(cands.end(), fix.begin(), fix.end());
        for (const KeyRange& sub : detail::cut_range(r.lo, r.hi, detail::interior_keys(cands, r.lo, r.hi))) {
            P s = detail::sample_in<P>(sub);
            long w = ccw_compare(Rep::apply(m, s), s) < 0 ? 1 : 0;
            out.push_back({P::from_key(sub.lo), m, w});
        }
    }
    return LiftedPiecewise<Rep>(std::move(out)).coalesced();
}

/// F o G on Z x S^1.
template <class Rep>
LiftedPiecewise<Rep> compose(const LiftedPiecewise<Rep>& f, const LiftedPiecewise<Rep>& g) {
    using P = typename Rep::Point;
    std::vector<LiftedPiece<Rep>> out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto& gp = g.pieces()[i];
        KeyRange r = g.range(i);
        std::vector<P> cands = Rep::poles(gp.map, r);
        if (!Rep::is_constant(gp.map))
            for (const auto& fp : f.pieces()) {
                auto pre = Rep::preimages(gp.map, fp.start, r);
                cands.insert(cands.end(), pre.begin(), pre.end());
            }
        for (const KeyRange& sub : detail::cut_range(r.lo, r.hi, detail::interior_keys(cands, r.lo, r.hi))) {
            P s = detail::sample_in<P>(sub);
            const auto& fp = f.pieces()[f.locate(Rep::apply(gp.map, s))];
            out.push_back({P::from_key(sub.lo), Rep::compose_at(fp.map, gp.map, s), gp.winding + fp.winding});
        }
    }
    return LiftedPiecewise<Rep>(std::move(out)).coalesced();
}

namespace detail {

/// Calls visit(point) on each piece's sub-arc starts and interior samples,
/// with sub-arcs cut at fixed points of the piece map.
template <class Rep, class Visit>
void scan_against_identity(const LiftedPiecewise<Rep>& f, std::size_t i, Visit&& visit) {
    using P = typename Rep::Point;
    const auto& piece = f.pieces()[i];
    KeyRange r = f.range(i);
    auto cands = Rep::crossing_candidates(piece.map, Rep::identity(), r);
    auto pl = Rep::poles(piece.map, r);
    cands.insert(cands.end(), pl.begin(), pl.end());
    for (const KeyRange& sub : cut_range(r.lo, r.hi, interior_keys(cands, r.lo, r.hi))) {
        if (!visit(P::from_key(sub.lo))) return;
        if (!visit(sample_in<P>(sub))) return;
    }
}

}  // namespace detail

/// Points x (in increasing key order, at most two per sub-arc) with
/// F(0, x) >= (1, x).  Each satisfying sub-arc contributes its start when the
/// start itself qualifies, and an interior point.
template <class Rep>
std::vector<typename Rep::Point> threshold_candidates(const LiftedPiecewise<Rep>& f) {
    using P = typename Rep::Point;
    std::vector<P> out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto& piece = f.pieces()[i];
        if (piece.winding < 1) continue;
        detail::scan_against_identity(f, i, [&](const P& x) {
            if (lift_compare(LiftedPoint<P>{piece.winding, Rep::apply(piece.map, x)}, LiftedPoint<P>{1, x}) >= 0)
                out.push_back(x);
            return true;
        });
    }
    return out;
}

/// Some x with F(0, x) >= (1, x), the one of smallest key.
template <class Rep>
std::optional<typename Rep::Point> threshold_test(const LiftedPiecewise<Rep>& f) {
    auto c = threshold_candidates(f);
    if (c.empty()) return std::nullopt;
    return c.front();
}

/// True iff F(0, x) <= (1, x) everywhere.
template <class Rep>
bool is_proper(const LiftedPiecewise<Rep>& f) {
    using P = typename Rep::Point;
    bool ok = true;
    for (std::size_t i = 0; i < f.size() && ok; ++i) {
        const auto& piece = f.pieces()[i];
        if (piece.winding < 1) continue;
        if (piece.winding > 1) return false;
        detail::scan_against_identity(f, i, [&](const P& x) {
            if (lift_compare(LiftedPoint<P>{piece.winding, Rep::apply(piece.map, x)}, LiftedPoint<P>{1, x}) > 0)
                ok = false;
            return ok;
        });
    }
    return ok;
}

/// Checks that the lift of f is non-decreasing on Z x S^1: every piece
/// preserves orientation (or is constant), has no pole, and the lifted value
/// never drops across a piece boundary, including the wrap back to the first
/// piece one turn later.
template <class Rep>
bool monotone_check(const PiecewiseFunction<Rep>& f) {
    using P = typename Rep::Point;
    using L = LiftedPoint<P>;
    if (!f.total()) return false;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto& m = *f.pieces()[i].map;
        if (Rep::orientation(m) < 0) return false;
        KeyRange r = f.range(i);
        for (const P& pole : Rep::poles(m, r))
            if (compare(pole.key(), r.lo) >= 0) return false;
    }
    LiftedPiecewise<Rep> g = lift(f);
    try {
        for (std::size_t i = 0; i < g.size(); ++i) {
            const auto& cur = g.pieces()[i];
            KeyRange r = g.range(i);
            L left{cur.winding, Rep::apply_at_key(cur.map, r.hi)};
            if (Rep::orientation(cur.map) > 0 && Rep::wraps_at_key(cur.map, r.hi)) left.winding += 1;
            L right;
            if (i + 1 < g.size()) {
                const auto& nxt = g.pieces()[i + 1];
                right = {nxt.winding, Rep::apply(nxt.map, nxt.start)};
            } else {
                const auto& first = g.pieces()[0];
                right = {first.winding + 1, Rep::apply(first.map, first.start)};
            }
            if (lift_compare(left, right) > 0) return false;
        }
    } catch (const PoleError&) {
        return false;
    }
    return true;
}

template <class Rep>
std::string to_string(const PiecewiseFunction<Rep>& f) {
    std::string s;
    for (const auto& p : f.pieces()) {
        s += "[" + to_string(p.start) + ": ";
        s += p.map ? "map" : "hole";
        s += "] ";
    }
    return s;
}

}  // namespace aac
