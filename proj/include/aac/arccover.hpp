#pragma once

// Covering the circle with arcs: the finite greedy algorithms and the
// analytic solver that works on a piecewise next-generator g by composing
// its lift and testing whether some start point completes a full turn.

#include "aac/plrf.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace aac {

class CoverError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Raised when no k <= k_max admits a cover.  `best_turns` is the largest
/// advance (in turns, approximate) seen at the last composition.
class KMaxExceeded : public CoverError {
public:
    KMaxExceeded(long k_max, double best_turns)
        : CoverError("no cover with at most " + std::to_string(k_max) + " arcs (best advance " +
                     std::to_string(best_turns) + " turns)"),
          k_max_(k_max), best_turns_(best_turns) {}
    long k_max() const noexcept { return k_max_; }
    double best_turns() const noexcept { return best_turns_; }

private:
    long k_max_;
    double best_turns_;
};

// ---------------------------------------------------------------------------
// Intervals on [0, 1)

struct Interval {
    Rational lo;
    Rational hi;  ///< exclusive
};

/// Indices of a minimum subset of half-open intervals covering [0, 1).
inline std::vector<std::size_t> interval_cover_greedy(const std::vector<Interval>& intervals) {
    std::vector<std::size_t> chosen;
    Rational cursor = 0;
    while (cursor < 1) {
        std::optional<std::size_t> best;
        for (std::size_t i = 0; i < intervals.size(); ++i) {
            const Interval& iv = intervals[i];
            if (iv.lo <= cursor && cursor < iv.hi && (!best || iv.hi > intervals[*best].hi)) best = i;
        }
        if (!best) throw CoverError("point " + to_string(cursor) + " is not covered");
        chosen.push_back(*best);
        cursor = intervals[*best].hi;
    }
    return chosen;
}

// ---------------------------------------------------------------------------
// Finite arc instances

template <CirclePoint P>
struct CoverSolution {
    long k = 0;
    P witness;
    std::vector<P> cover_points;  ///< witness, g(witness), ..., g^k(witness)
    std::vector<std::size_t> chosen;  ///< arc indices, finite instances only
};

template <CirclePoint P>
struct ArcInstance {
    std::vector<Arc<P>> arcs;
};

/// Lifted step from x to y going counterclockwise (0 when y == x).
template <CirclePoint P>
LiftedPoint<P> advance(const LiftedPoint<P>& from, const P& to) {
    long w = from.winding + (compare(to.key(), from.point.key()) < 0 ? 1 : 0);
    return {w, to};
}

template <CirclePoint P>
bool covers_circle(const ArcInstance<P>& inst) {
    if (inst.arcs.empty()) return false;
    for (const auto& a : inst.arcs)
        if (a.full) return true;
    // an uncovered region always begins at some arc's end
    for (const auto& a : inst.arcs) {
        bool hit = false;
        for (const auto& b : inst.arcs)
            if (arc_contains(b, a.end)) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

/// Greedy counterclockwise cover starting at p: repeatedly take the arc
/// through the current point that reaches farthest.
template <CirclePoint P>
CoverSolution<P> arc_cover_from_point(const ArcInstance<P>& inst, const P& p) {
    CoverSolution<P> sol;
    sol.witness = p;
    sol.cover_points.push_back(p);
    for (std::size_t i = 0; i < inst.arcs.size(); ++i)
        if (inst.arcs[i].full) {
            sol.k = 1;
            sol.chosen = {i};
            sol.cover_points.push_back(p);
            return sol;
        }
    LiftedPoint<P> pos{0, p};
    const LiftedPoint<P> goal{1, p};
    while (lift_compare(pos, goal) < 0) {
        std::optional<std::size_t> best;
        for (std::size_t i = 0; i < inst.arcs.size(); ++i) {
            const auto& a = inst.arcs[i];
            if (!arc_contains(a, pos.point)) continue;
            if (!best || ccw_compare(a.end, inst.arcs[*best].end, pos.point) > 0) best = i;
        }
        if (!best) throw CoverError("point " + to_string(pos.point) + " is not covered");
        pos = advance(pos, inst.arcs[*best].end);
        sol.chosen.push_back(*best);
        sol.cover_points.push_back(pos.point);
        ++sol.k;
        if (sol.k > static_cast<long>(inst.arcs.size()) + 1) throw CoverError("greedy cover does not terminate");
    }
    return sol;
}

/// Step function of a single arc: x in [a, b) goes to b.
template <class Rep>
PiecewiseFunction<Rep> arc_step(const Arc<typename Rep::Point>& a) {
    using P = typename Rep::Point;
    if (a.full) throw DomainError("a full arc has no step function");
    auto c = Rep::constant(a.end);
    if (a.empty()) return PiecewiseFunction<Rep>();
    bool ends_at_cut = a.end.key().sign() == 0;
    if (ends_at_cut || compare(a.start.key(), a.end.key()) < 0) {
        std::vector<Piece<Rep>> pieces;
        if (a.start.key().sign() != 0) pieces.push_back({P::branch(), std::nullopt});
        pieces.push_back({a.start, c});
        if (!ends_at_cut) pieces.push_back({a.end, std::nullopt});
        return PiecewiseFunction<Rep>(std::move(pieces));
    }
    std::vector<Piece<Rep>> pieces{{P::branch(), c}, {a.end, std::nullopt}, {a.start, c}};
    return PiecewiseFunction<Rep>(std::move(pieces));
}

/// The next-generator of a finite instance: the farthest-reach merge of all
/// arc step functions.  Throws if some point is uncovered.
template <class Rep>
PiecewiseFunction<Rep> next_generator(const ArcInstance<typename Rep::Point>& inst) {
    PiecewiseFunction<Rep> g;
    for (const auto& a : inst.arcs) g = merge_reach(g, arc_step<Rep>(a));
    if (!g.total()) throw CoverError("instance does not cover the circle");
    return g;
}

// ---------------------------------------------------------------------------
// Analytic solver

/// Exact certificate check: iterating g from the witness reproduces the
/// cover points, every step makes progress, and the chain completes a turn.
template <class Rep>
bool validate_cover(const PiecewiseFunction<Rep>& g, const CoverSolution<typename Rep::Point>& sol) {
    using P = typename Rep::Point;
    if (sol.k < 1 || sol.cover_points.size() != static_cast<std::size_t>(sol.k) + 1) return false;
    if (!(sol.cover_points.front() == sol.witness)) return false;
    LiftedPoint<P> pos{0, sol.witness};
    try {
        for (long i = 0; i < sol.k; ++i) {
            P next = g(pos.point);
            if (next == pos.point) return false;
            if (!(next == sol.cover_points[i + 1])) return false;
            pos = advance(pos, next);
        }
    } catch (const DomainError&) {
        return false;
    }
    return lift_compare(pos, LiftedPoint<P>{1, sol.witness}) >= 0;
}

/// Number of g-steps from p until one full turn is completed, or nullopt if
/// that takes more than `limit` steps or stalls at a fixed point.
template <class Rep>
std::optional<long> steps_from(const PiecewiseFunction<Rep>& g, const typename Rep::Point& p, long limit) {
    using P = typename Rep::Point;
    LiftedPoint<P> pos{0, p};
    const LiftedPoint<P> goal{1, p};
    for (long k = 1; k <= limit; ++k) {
        P next = g(pos.point);
        if (next == pos.point) return std::nullopt;
        pos = advance(pos, next);
        if (lift_compare(pos, goal) >= 0) return k;
    }
    return std::nullopt;
}

enum class SolveMode { doubling, linear };

struct SolveStats {
    long compositions = 0;
    long threshold_tests = 0;
    std::size_t max_pieces = 0;
};

namespace detail {

template <class Rep>
std::optional<CoverSolution<typename Rep::Point>> try_witnesses(const PiecewiseFunction<Rep>& g,
                                                                 const LiftedPiecewise<Rep>& f, long k) {
    for (const auto& x : threshold_candidates(f)) {
        CoverSolution<typename Rep::Point> sol;
        sol.k = k;
        sol.witness = x;
        sol.cover_points.push_back(x);
        try {
            for (long i = 0; i < k; ++i) sol.cover_points.push_back(g(sol.cover_points.back()));
        } catch (const DomainError&) {
            continue;
        }
        if (validate_cover(g, sol)) return sol;
    }
    return std::nullopt;
}

template <class Rep>
double best_turns(const LiftedPiecewise<Rep>& f) {
    using P = typename Rep::Point;
    double best = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        P x = sample_in<P>(f.range(i));
        auto y = f.eval(0, x);
        best = std::max(best, y.turns() - LiftedPoint<P>{0, x}.turns());
    }
    return best;
}

}  // namespace detail

inline long default_k_max(std::size_t pieces) { return static_cast<long>(pieces) + 3; }

/// Smallest k <= k_max such that some start point completes a turn in k
/// steps of g, with a validated witness of smallest key.
template <class Rep>
CoverSolution<typename Rep::Point> solve_analytic(const PiecewiseFunction<Rep>& g, long k_max,
                                                  SolveMode mode = SolveMode::doubling, SolveStats* stats = nullptr) {
    SolveStats local;
    SolveStats& st = stats ? *stats : local;
    if (k_max < 1) throw DomainError("k_max must be positive");
    if (!g.total()) throw CoverError("generator is not total");
    LiftedPiecewise<Rep> G = lift(g);
    if (!is_proper(G)) throw CoverError("generator is not proper");
    bool moves = false;
    for (std::size_t i = 0; i < G.size() && !moves; ++i) {
        auto x = detail::sample_in<typename Rep::Point>(G.range(i));
        moves = !(g(x) == x);
    }
    if (!moves) throw CoverError("generator makes no progress");
    auto note = [&](const LiftedPiecewise<Rep>& f) { st.max_pieces = std::max(st.max_pieces, f.size()); };
    note(G);

    auto linear_from = [&](LiftedPiecewise<Rep> F, long k) -> CoverSolution<typename Rep::Point> {
        for (;; ++k) {
            ++st.threshold_tests;
            if (auto sol = detail::try_witnesses(g, F, k)) return *sol;
            if (k >= k_max) throw KMaxExceeded(k_max, detail::best_turns(F));
            F = compose(G, F);
            ++st.compositions;
            note(F);
        }
    };
    if (mode == SolveMode::linear) return linear_from(G, 1);

    // powers[i] = G^(2^i)
    std::vector<LiftedPiecewise<Rep>> powers{G};
    long top = 1;
    for (;;) {
        ++st.threshold_tests;
        if (threshold_test(powers.back()).has_value()) break;
        if (top >= k_max) throw KMaxExceeded(k_max, detail::best_turns(powers.back()));
        powers.push_back(compose(powers.back(), powers.back()));
        ++st.compositions;
        note(powers.back());
        top *= 2;
    }
    // largest k below the threshold, by binary lifting over the powers
    long below = 0;
    std::optional<LiftedPiecewise<Rep>> cur;
    for (std::size_t j = powers.size() - 1; j-- > 0;) {
        long step = 1L << j;
        if (below + step >= k_max) continue;
        LiftedPiecewise<Rep> t = cur ? compose(powers[j], *cur) : powers[j];
        if (cur) ++st.compositions;
        ++st.threshold_tests;
        if (!threshold_test(t).has_value()) {
            cur = std::move(t);
            below += step;
        }
    }
    LiftedPiecewise<Rep> F = cur ? compose(G, *cur) : G;
    if (cur) ++st.compositions;
    note(F);
    return linear_from(std::move(F), below + 1);
}

}  // namespace aac
