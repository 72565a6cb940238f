#pragma once

// Exact rational and first-order radical arithmetic.
//
// Rationals are GMP rationals (always canonical: lowest terms, positive
// denominator, zero is 0/1).  A Radical is a + b*sqrt(c) with rational a, b
// and a square-free integer radicand c >= 2, or the rational embedding
// b = 0, c = 1.  Comparisons never use floating point.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aac {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised for division by zero, negative radicands and similar misuse.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when an operation would need a second distinct radicand inside a
/// single radical (the result would not be a first-order radical).
class MixedRadicandError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Raised when a linear-rational map is evaluated at its pole.
class PoleError : public DomainError {
public:
    PoleError(const std::string& what, std::string where)
        : DomainError(what + " at " + where), where_(std::move(where)) {}
    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

// ---------------------------------------------------------------------------
// Integers and rationals

/// Number of bits needed to store |v| (0 for zero).
inline std::size_t bit_length(const Integer& v) {
    if (v == 0) return 0;
    return mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline std::size_t bit_complexity(const Integer& v) { return bit_length(v); }

inline std::size_t bit_complexity(const Rational& v) {
    return std::max(bit_length(v.get_num()), bit_length(v.get_den()));
}

inline int sign(const Rational& v) { return sgn(v); }
inline int sign(const Integer& v) { return sgn(v); }

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational divide(const Rational& x, const Rational& y) {
    if (y == 0) throw DomainError("division by zero");
    return Rational(x / y);
}

inline Integer floor_of(const Rational& v) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return q;
}

inline Integer ceil_of(const Rational& v) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return q;
}

inline std::string to_string(const Integer& v) { return v.get_str(); }

inline std::string to_string(const Rational& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

/// Parses "p", "p/q" or a plain decimal such as "-1.25" exactly.
inline Rational parse_rational(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ' && ch != '\t' && ch != '\n') s.push_back(ch);
    if (s.empty()) throw DomainError("empty rational literal");
    auto is_int = [](std::string_view t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto to_int = [](std::string t) {
        if (!t.empty() && t[0] == '+') t.erase(0, 1);
        return Integer(t, 10);
    };
    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string n = s.substr(0, slash), d = s.substr(slash + 1);
        if (!is_int(n) || !is_int(d)) throw DomainError("malformed rational '" + s + "'");
        return make_rational(to_int(n), to_int(d));
    }
    Integer exp10 = 0;
    std::string mant = s;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        std::string ex = s.substr(e + 1);
        if (!is_int(ex)) throw DomainError("malformed exponent in '" + s + "'");
        exp10 = to_int(ex);
        mant = s.substr(0, e);
    }
    std::string digits = mant;
    long frac = 0;
    if (auto dot = mant.find('.'); dot != std::string::npos) {
        frac = static_cast<long>(mant.size() - dot - 1);
        digits = mant.substr(0, dot) + mant.substr(dot + 1);
        if (digits == "-" || digits == "+" || digits.empty()) throw DomainError("malformed decimal '" + s + "'");
    }
    if (!is_int(digits)) throw DomainError("malformed number '" + s + "'");
    long shift = exp10.get_si() - frac;
    Integer ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    Integer m = to_int(digits);
    if (shift >= 0) return Rational(m * ten_pow);
    return make_rational(m, ten_pow);
}

// ---------------------------------------------------------------------------
// Square-free splitting of radicands

struct SquareFreeSplit {
    Integer outside;  ///< n = outside^2 * inside
    Integer inside;
};

namespace detail {

inline const std::vector<unsigned long>& small_primes() {
    static const std::vector<unsigned long> primes = [] {
        constexpr unsigned long bound = 1UL << 16;
        std::vector<bool> composite(bound + 1, false);
        std::vector<unsigned long> out;
        for (unsigned long i = 2; i <= bound; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (unsigned long j = i * i; j <= bound; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

}  // namespace detail

/// Extracts square factors by trial division over primes below 2^16.  A
/// cofactor that survives trial division is kept unless it is itself a
/// perfect square; the result's inside part is never a perfect square > 1.
inline SquareFreeSplit square_free_split(const Integer& n) {
    if (n < 0) throw DomainError("negative radicand");
    if (n <= 1) return {1, n};
    static std::mutex cache_mutex;
    static std::map<Integer, SquareFreeSplit> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    Integer m = n, outside = 1, inside = 1;
    for (unsigned long p : detail::small_primes()) {
        if (Integer(p) * p > m) break;
        unsigned e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        }
        for (unsigned k = 0; k < e / 2; ++k) outside *= p;
        if (e % 2) inside *= p;
    }
    if (m > 1) {
        if (mpz_perfect_square_p(m.get_mpz_t())) {
            Integer r;
            mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
            outside *= r;
        } else {
            inside *= m;
        }
    }
    SquareFreeSplit out{outside, inside};
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (cache.size() > 200000) cache.clear();
    cache.emplace(n, out);
    return out;
}

// ---------------------------------------------------------------------------
// Sign determination

inline int cmp_sign(const Rational& x, const Rational& y) {
    int r = cmp(x, y);
    return (r > 0) - (r < 0);
}

/// Sign of a + b*sqrt(c) for rational a, b and integer c >= 0.
inline int sign_of_radical(const Rational& a, const Rational& b, const Integer& c) {
    int sa = sgn(a);
    int sb = (c == 0) ? 0 : sgn(b);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // opposite signs: compare a^2 with b^2 c
    Rational lhs = a * a, rhs = b * b * c;
    int cmp = cmp_sign(lhs, rhs);
    return cmp > 0 ? sa : (cmp < 0 ? sb : 0);
}

/// Sign of a + b*sqrt(c) + d*sqrt(e): two radicands, decided by squaring
/// with the signs of both summands fixed first.
inline int sign_of_two_radicals(const Rational& a, const Rational& b, const Integer& c,
                                const Rational& d, const Integer& e) {
    int sx = sign_of_radical(a, b, c);
    int sy = (e == 0) ? 0 : sgn(d);
    if (sy == 0) return sx;
    if (sx == 0 || sx == sy) return sy;
    // |a + b sqrt c| vs |d sqrt e|: square both; left square is a radical in c
    Rational ra = a * a + b * b * c - d * d * e;
    Rational rb = 2 * a * b;
    int s = sign_of_radical(ra, rb, c);
    return s > 0 ? sx : (s < 0 ? sy : 0);
}

// ---------------------------------------------------------------------------
// Radical

class Radical {
public:
    Radical() : a_(0), b_(0), c_(1) {}
    Radical(const Rational& a) : a_(a), b_(0), c_(1) {}  // NOLINT(google-explicit-constructor)
    Radical(long a) : a_(a), b_(0), c_(1) {}             // NOLINT(google-explicit-constructor)

    /// Canonical form of a + b*sqrt(c) for a rational radicand c >= 0.
    static Radical make(const Rational& a, const Rational& b, const Rational& c) {
        if (c < 0) throw DomainError("negative radicand " + to_string(c));
        if (b == 0 || c == 0) return Radical(a);
        // sqrt(n/d) = sqrt(n d) / d
        Integer nd = c.get_num() * c.get_den();
        SquareFreeSplit split = square_free_split(nd);
        Rational coeff = b * Rational(split.outside) / Rational(c.get_den());
        coeff.canonicalize();
        if (split.inside == 1) return Radical(Rational(a + coeff));
        Radical r;
        r.a_ = a;
        r.b_ = coeff;
        r.c_ = split.inside;
        return r;
    }

    static Radical sqrt(const Rational& c) { return make(0, 1, c); }

    const Rational& a() const noexcept { return a_; }
    const Rational& b() const noexcept { return b_; }
    const Integer& c() const noexcept { return c_; }

    bool is_rational() const noexcept { return b_ == 0; }
    Rational rational() const {
        if (!is_rational()) throw DomainError("radical is not rational");
        return a_;
    }

    int sign() const { return sign_of_radical(a_, b_, c_); }
    Radical conjugate() const {
        Radical r = *this;
        r.b_ = -r.b_;
        return r;
    }
    /// (a + b sqrt c)(a - b sqrt c)
    Rational norm() const { return Rational(a_ * a_ - b_ * b_ * c_); }

    Radical operator-() const {
        Radical r = *this;
        r.a_ = -r.a_;
        r.b_ = -r.b_;
        return r;
    }

    friend Radical operator+(const Radical& x, const Radical& y) {
        Integer c = common_radicand(x, y);
        return build(x.a_ + y.a_, x.b_ + y.b_, c);
    }
    friend Radical operator-(const Radical& x, const Radical& y) {
        Integer c = common_radicand(x, y);
        return build(x.a_ - y.a_, x.b_ - y.b_, c);
    }
    friend Radical operator*(const Radical& x, const Radical& y) {
        Integer c = common_radicand(x, y);
        return build(x.a_ * y.a_ + x.b_ * y.b_ * c, x.a_ * y.b_ + x.b_ * y.a_, c);
    }
    friend Radical operator/(const Radical& x, const Radical& y) {
        if (y.is_rational()) {
            if (y.a_ == 0) throw DomainError("division by zero");
            return build(x.a_ / y.a_, x.b_ / y.a_, x.c_);
        }
        Rational n = y.norm();
        if (n == 0) throw DomainError("division by zero");
        Radical num = x * y.conjugate();
        return build(num.a_ / n, num.b_ / n, num.c_);
    }
    Radical& operator+=(const Radical& y) { return *this = *this + y; }
    Radical& operator-=(const Radical& y) { return *this = *this - y; }
    Radical& operator*=(const Radical& y) { return *this = *this * y; }
    Radical& operator/=(const Radical& y) { return *this = *this / y; }

    friend int compare(const Radical& x, const Radical& y) {
        if (x.c_ == y.c_ || x.is_rational() || y.is_rational()) {
            const Integer& c = x.is_rational() ? y.c_ : x.c_;
            return sign_of_radical(x.a_ - y.a_, x.b_ - y.b_, c);
        }
        return sign_of_two_radicals(x.a_ - y.a_, x.b_, x.c_, -y.b_, y.c_);
    }
    friend std::strong_ordering operator<=>(const Radical& x, const Radical& y) {
        int c = compare(x, y);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    friend bool operator==(const Radical& x, const Radical& y) { return compare(x, y) == 0; }

    /// Syntactic identity of the canonical forms.
    bool same_form(const Radical& y) const { return a_ == y.a_ && b_ == y.b_ && c_ == y.c_; }

    std::size_t bit_complexity() const {
        return std::max({aac::bit_complexity(a_), aac::bit_complexity(b_), aac::bit_complexity(c_)});
    }

private:
    static Integer common_radicand(const Radical& x, const Radical& y) {
        if (x.is_rational()) return y.c_;
        if (y.is_rational()) return x.c_;
        if (x.c_ != y.c_)
            throw MixedRadicandError("radicands " + x.c_.get_str() + " and " + y.c_.get_str() +
                                     " cannot share one first-order radical");
        return x.c_;
    }
    static Radical build(const Rational& a, const Rational& b, const Integer& c) {
        Radical r;
        r.a_ = a;
        if (b == 0 || c == 1) {
            r.a_ = (c == 1) ? Rational(a + b) : a;
            return r;
        }
        r.b_ = b;
        r.c_ = c;
        return r;
    }

    Rational a_;
    Rational b_;
    Integer c_;
};

inline std::size_t bit_complexity(const Radical& x) { return x.bit_complexity(); }
inline int sign(const Radical& x) { return x.sign(); }
inline Radical abs(const Radical& x) { return x.sign() < 0 ? -x : x; }
inline const Radical& min(const Radical& x, const Radical& y) { return compare(x, y) <= 0 ? x : y; }
inline const Radical& max(const Radical& x, const Radical& y) { return compare(x, y) >= 0 ? x : y; }

/// Normalization entry point: canonical a + b sqrt(c).
inline Radical radical_normalize(const Rational& a, const Rational& b, const Rational& c) {
    return Radical::make(a, b, c);
}

inline std::string to_string(const Radical& x) {
    if (x.is_rational()) return to_string(x.a());
    return to_string(x.a()) + " + " + to_string(x.b()) + "*sqrt(" + x.c().get_str() + ")";
}

inline std::ostream& operator<<(std::ostream& os, const Radical& x) { return os << to_string(x); }

// ---------------------------------------------------------------------------
// Approximation

/// Closed rational interval containing x, of width at most |b| * 2^-bits.
inline std::pair<Rational, Rational> enclose(const Radical& x, unsigned bits) {
    if (x.is_rational()) return {x.a(), x.a()};
    Integer scaled = x.c();
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * bits);
    Integer s;
    mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
    Integer denom = 1;
    mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), bits);
    Rational lo_root = make_rational(s, denom), hi_root = make_rational(s + 1, denom);
    Rational p = x.a() + x.b() * lo_root, q = x.a() + x.b() * hi_root;
    if (p > q) std::swap(p, q);
    return {p, q};
}

inline Integer floor_of(const Radical& x) {
    if (x.is_rational()) return floor_of(x.a());
    for (unsigned bits = 32;; bits *= 2) {
        auto [lo, hi] = enclose(x, bits);
        Integer fl = floor_of(lo);
        if (floor_of(hi) == fl && Rational(fl) != hi) return fl;
        if (bits > (1u << 20)) throw DomainError("floor did not converge");
    }
}

inline double to_double(const Radical& x) {
    auto [lo, hi] = enclose(x, 64);
    Rational mid = (lo + hi) / 2;
    return mid.get_d();
}

inline double to_double(const Rational& x) { return x.get_d(); }

/// Decimal expansion truncated toward minus infinity to `digits` places.
inline std::string to_decimal(const Radical& x, unsigned digits) {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    Integer fl = floor_of(x * Radical(Rational(scale)));
    bool neg = fl < 0;
    Integer mag = neg ? Integer(-fl) : fl;
    // floor of a negative value rounds away from zero; keep the exact floor
    std::string s = mag.get_str();
    if (digits > 0) {
        if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
        s.insert(s.size() - digits, ".");
    }
    return neg ? "-" + s : s;
}

namespace detail {

// Simplest rational strictly inside (lo, hi); hi_inf selects (lo, +inf).
inline Rational simplest_between(const Rational& lo, const Rational& hi, bool hi_inf) {
    if (!hi_inf && lo >= 0 && hi <= 0) throw DomainError("empty interval");
    if (!hi_inf && hi <= 0) return -simplest_between(-hi, -lo, false);
    if (lo < 0) return Rational(0);
    Integer fl = floor_of(lo);
    Integer n = fl + 1;
    if (hi_inf || Rational(n) < hi) return Rational(n);
    // fl <= lo < hi <= fl + 1
    Rational lo_frac = lo - fl, hi_frac = hi - fl;
    Rational inner = (lo_frac == 0) ? simplest_between(Rational(1) / hi_frac, 0, true)
                                    : simplest_between(Rational(1) / hi_frac, Rational(1) / lo_frac, false);
    return Rational(fl + Rational(1) / inner);
}

}  // namespace detail

/// Simplest rational q with lo < q < hi.
inline Rational rational_between(const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw DomainError("rational_between needs lo < hi");
    return detail::simplest_between(lo, hi, false);
}

/// A simple rational strictly between two distinct radicals.
inline Rational rational_between(const Radical& lo, const Radical& hi) {
    if (compare(lo, hi) >= 0) throw DomainError("rational_between needs lo < hi");
    for (unsigned bits = 16;; bits *= 2) {
        auto lo_box = enclose(lo, bits);
        auto hi_box = enclose(hi, bits);
        Rational a = lo_box.second, b = hi_box.first;
        if (a < b) return rational_between(a, b);
        if (a == b) {
            // one endpoint may be exactly rational at a
            if (!(lo_box.second == lo_box.first) || !(hi_box.first == hi_box.second)) {
                if (bits > (1u << 20)) break;
                continue;
            }
        }
        if (bits > (1u << 20)) break;
    }
    throw DomainError("rational_between did not converge");
}

// ---------------------------------------------------------------------------
// Linear-rational evaluation and quadratics

/// (p x + q) / (r x + s) on a radical; the denominator is rationalized with
/// its conjugate so the result keeps x's radicand.
inline Radical eval_linear_rational(const Rational& p, const Rational& q, const Rational& r,
                                    const Rational& s, const Radical& x) {
    Radical num = Radical(p) * x + Radical(q);
    Radical den = Radical(r) * x + Radical(s);
    if (den.sign() == 0) throw PoleError("linear-rational pole", to_string(x));
    return num / den;
}

struct QuadraticRoots {
    bool identically_zero = false;
    std::vector<Radical> roots;  ///< distinct real roots, ascending
};

/// Real roots of A t^2 + B t + C = 0.
inline QuadraticRoots solve_quadratic(const Rational& A, const Rational& B, const Rational& C) {
    QuadraticRoots out;
    if (A == 0) {
        if (B == 0) {
            out.identically_zero = (C == 0);
            return out;
        }
        out.roots.push_back(Radical(Rational(-C / B)));
        return out;
    }
    Rational disc = B * B - 4 * A * C;
    if (disc < 0) return out;
    Rational base = -B / (2 * A);
    if (disc == 0) {
        out.roots.push_back(Radical(base));
        return out;
    }
    Rational half = Rational(1) / (2 * A);
    Radical r1 = Radical::make(base, -abs(half), disc);
    Radical r2 = Radical::make(base, abs(half), disc);
    out.roots.push_back(r1);
    if (compare(r1, r2) != 0) out.roots.push_back(r2);
    return out;
}

}  // namespace aac
