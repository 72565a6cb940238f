#pragma once

// Discretized guard search for the contiguous art gallery problem.  Each
// guard from a finite candidate set contributes the boundary stretches it
// sees; the best contiguous cover over those stretches is found by trying
// every stretch as the first one and extending greedily.

#include "aac/geom2d.hpp"

#include <set>

namespace aac::oracle {

struct Stretch {
    Rational lo;  ///< global boundary parameter in [0, 1)
    Rational hi;  ///< lo <= hi <= lo + 1
};

/// Closed boundary stretches seen from y, in global parameters.
inline std::vector<Stretch> visible_stretches(const Polygon& P, const Point2& y) {
    std::size_t n = P.size();
    Rational N = static_cast<long>(n);
    std::vector<Stretch> pieces;
    for (std::size_t k = 0; k < n; ++k) {
        const Point2& a = P[k];
        const Point2& b = P[(k + 1) % n];
        std::vector<Rational> cuts{0, 1};
        if (orient(a, b, y) > 0) {
            for (const auto& w : P) {
                if (w == a || w == b) continue;
                if (orient(y, a, w) > 0 && orient(a, b, w) > 0 && orient(b, y, w) > 0) {
                    auto h = line_intersection(y, w, a, b);
                    if (!h) continue;
                    Rational r = dot(*h - a, b - a) / dot(b - a, b - a);
                    if (r > 0 && r < 1) cuts.push_back(r);
                }
            }
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            Point2 m = a + (b - a) * ((cuts[c] + cuts[c + 1]) / 2);
            if (segment_inside(P, y, m))
                pieces.push_back({(Rational(static_cast<long>(k)) + cuts[c]) / N,
                                  (Rational(static_cast<long>(k)) + cuts[c + 1]) / N});
        }
    }
    // join touching pieces, including across the wrap
    std::vector<Stretch> joined;
    for (const auto& p : pieces) {
        if (!joined.empty() && joined.back().hi == p.lo)
            joined.back().hi = p.hi;
        else
            joined.push_back(p);
    }
    if (joined.size() > 1 && joined.back().hi == 1 && joined.front().lo == 0) {
        joined.front().lo = joined.back().lo;
        joined.front().hi += 1;
        joined.pop_back();
    }
    return joined;
}

/// Farthest lifted position reachable from pos by one stretch containing it.
inline std::optional<Rational> extend(const std::vector<Stretch>& all, const Rational& pos) {
    std::optional<Rational> best;
    for (const auto& s : all) {
        if (s.hi - s.lo >= 1) return pos + 1;
        // shift the stretch by an integer so that lo <= pos
        Rational shift = Rational(floor_of(Rational(pos - s.lo)));
        Rational lo = s.lo + shift, hi = s.hi + shift;
        if (lo <= pos && pos <= hi && hi > pos && (!best || hi > *best)) best = hi;
    }
    return best;
}

/// Fewest contiguous guard stretches covering the boundary, or -1.
inline int oracle_optimum(const std::vector<Stretch>& all, int limit = 64) {
    int best = -1;
    for (const auto& s : all)
        if (s.hi - s.lo >= 1) return 1;
    for (const auto& first : all) {
        Rational goal = first.lo + 1;
        Rational pos = first.hi;
        int k = 1;
        while (pos < goal && k < limit) {
            auto nx = extend(all, pos);
            if (!nx) break;
            pos = *nx;
            ++k;
        }
        if (pos >= goal && (best < 0 || k < best)) best = k;
    }
    return best;
}

/// Candidate guards: vertices, edge midpoints, a half-unit grid, and
/// crossings of lines through vertex pairs.
inline std::vector<Point2> oracle_guards(const Polygon& P, bool vertices_only = false) {
    std::set<Point2> out(P.begin(), P.end());
    if (vertices_only) return {out.begin(), out.end()};
    std::size_t n = P.size();
    for (std::size_t k = 0; k < n; ++k) out.insert(midpoint(P[k], P[(k + 1) % n]));
    auto box = bounding_box(P, 0);
    for (Rational x = box[0].x; x <= box[2].x; x += make_rational(1, 2))
        for (Rational y = box[0].y; y <= box[2].y; y += make_rational(1, 2))
            if (locate_point(P, Point2{x, y}) >= 0) out.insert({x, y});
    std::vector<std::pair<Point2, Point2>> lines;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) lines.emplace_back(P[a], P[b]);
    for (std::size_t a = 0; a < lines.size(); ++a)
        for (std::size_t b = a + 1; b < lines.size(); ++b) {
            auto h = line_intersection(lines[a].first, lines[a].second, lines[b].first, lines[b].second);
            if (h && locate_point(P, *h) >= 0) out.insert(*h);
        }
    return {out.begin(), out.end()};
}

inline std::vector<Stretch> all_stretches(const Polygon& P, const std::vector<Point2>& guards) {
    std::vector<Stretch> all;
    for (const auto& y : guards)
        for (const auto& s : visible_stretches(P, y)) all.push_back(s);
    return all;
}

inline int gallery_oracle(const Polygon& P, bool vertices_only = false) {
    return oracle_optimum(all_stretches(P, oracle_guards(P, vertices_only)));
}

}  // namespace aac::oracle
