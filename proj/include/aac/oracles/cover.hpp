#pragma once

// Reference answers for circle covers.  Small finite instances are solved by
// trying every subset of arcs.  For a generator the best start point is
// bracketed by sampling: iterating from any sample can only match or exceed
// the true minimum, so the sampled count is an upper bound that becomes tight
// once a sample lands in the witness's plateau.

#include "aac/arccover.hpp"

#include <algorithm>
#include <random>

namespace aac::oracle {

inline bool intervals_cover(const std::vector<Interval>& iv, unsigned mask) {
    std::vector<Interval> s;
    for (std::size_t i = 0; i < iv.size(); ++i)
        if (mask >> i & 1) s.push_back(iv[i]);
    std::sort(s.begin(), s.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    Rational reach = 0;
    for (const auto& x : s) {
        if (x.lo > reach) return false;
        reach = std::max(reach, x.hi);
    }
    return reach >= 1;
}

/// Fewest intervals covering [0, 1], or -1.  Exponential; keep inputs small.
inline int brute_interval_optimum(const std::vector<Interval>& iv) {
    if (iv.size() > 20) throw DomainError("exhaustive interval search is limited to 20 intervals");
    int best = -1;
    for (unsigned mask = 1; mask < (1u << iv.size()); ++mask)
        if (intervals_cover(iv, mask)) {
            int c = __builtin_popcount(mask);
            if (best < 0 || c < best) best = c;
        }
    return best;
}

template <CirclePoint P>
int brute_arc_optimum(const std::vector<Arc<P>>& arcs) {
    if (arcs.size() > 20) throw DomainError("exhaustive arc search is limited to 20 arcs");
    int best = -1;
    for (unsigned mask = 1; mask < (1u << arcs.size()); ++mask) {
        int c = __builtin_popcount(mask);
        if (best >= 0 && c >= best) continue;
        ArcInstance<P> sub;
        for (std::size_t i = 0; i < arcs.size(); ++i)
            if (mask >> i & 1) sub.arcs.push_back(arcs[i]);
        if (covers_circle(sub)) best = c;
    }
    return best;
}

struct SampledCover {
    std::optional<long> best;  ///< smallest step count seen, if any sample finished
    Rational start_key;        ///< key of the sample that achieved it
    long samples = 0;
};

/// Iterates g from every rational piece start, a point inside every piece and `extra`
/// random rational keys drawn with `seed`, keeping the smallest number of
/// steps that completes a turn within `limit`.
template <class Rep>
SampledCover sampled_cover(const PiecewiseFunction<Rep>& g, long limit, int extra = 64, unsigned seed = 1) {
    using P = typename Rep::Point;
    std::vector<Rational> keys;
    for (std::size_t i = 0; i < g.size(); ++i) {
        KeyRange r = g.range(i);
        if (r.lo.b() == 0) keys.push_back(r.lo.a());
        keys.push_back(rational_between(r.lo, r.hi));
    }
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> d(0, 999983L * P::period - 1);
    for (int i = 0; i < extra; ++i) keys.push_back(Rational(d(rng), 999983L));
    SampledCover out;
    for (const auto& k : keys) {
        ++out.samples;
        P p = P::from_key(Radical(k));
        std::optional<long> s;
        try {
            s = steps_from(g, p, limit);
        } catch (const DomainError&) {
            continue;
        }
        if (s && (!out.best || *s < *out.best)) {
            out.best = s;
            out.start_key = k;
        }
    }
    return out;
}

}  // namespace aac::oracle
