#pragma once

// Random simple polygons on a small integer grid, untangled by 2-opt moves.

#include "aac/geom2d.hpp"

#include <algorithm>
#include <random>

namespace aac::testing {

inline bool general_position(const Polygon& p) {
    std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                if (i != j && i != k && orient(p[i], p[j], p[k]) == 0) return false;
    return true;
}

/// A simple counterclockwise polygon with n vertices in [0, grid]^2, no
/// three vertices collinear.
inline Polygon random_simple_polygon(std::mt19937& rng, int n, int grid = 12) {
    std::uniform_int_distribution<int> coord(0, grid);
    for (;;) {
        Polygon p;
        while (static_cast<int>(p.size()) < n) {
            Point2 c{Rational(coord(rng)), Rational(coord(rng))};
            if (std::find(p.begin(), p.end(), c) == p.end()) p.push_back(c);
        }
        if (!general_position(p)) continue;
        bool crossed = true;
        for (int round = 0; crossed && round < 500; ++round) {
            crossed = false;
            for (int i = 0; i < n && !crossed; ++i)
                for (int j = i + 2; j < n && !crossed; ++j) {
                    if (i == 0 && j == n - 1) continue;
                    auto h = segment_intersection(p[i], p[i + 1], p[j], p[(j + 1) % n]);
                    if (h.relation != SegmentRelation::disjoint) {
                        std::reverse(p.begin() + i + 1, p.begin() + j + 1);
                        crossed = true;
                    }
                }
        }
        if (crossed || !is_simple(p)) continue;
        if (sign(signed_area2(p)) < 0) std::reverse(p.begin(), p.end());
        return p;
    }
}

inline Point2 random_point(std::mt19937& rng, const Rational& lo, const Rational& hi, int den = 997) {
    std::uniform_int_distribution<int> d(0, den);
    return {lo + (hi - lo) * make_rational(d(rng), den), lo + (hi - lo) * make_rational(d(rng), den)};
}

inline Polygon l_hexagon() {
    return {{Rational(0), Rational(0)}, {Rational(2), Rational(0)}, {Rational(2), Rational(1)},
            {Rational(1), Rational(1)}, {Rational(1), Rational(2)}, {Rational(0), Rational(2)}};
}

/// Three teeth joined along the bottom; no point sees every pocket.
inline Polygon comb() {
    auto q = [](int x, int y) { return Point2{Rational(x), Rational(y)}; };
    return {q(0, 0), q(5, 0), q(5, 3), q(4, 3), q(4, 1), q(3, 1),
            q(3, 3), q(2, 3), q(2, 1), q(1, 1), q(1, 3), q(0, 3)};
}

}  // namespace aac::testing
