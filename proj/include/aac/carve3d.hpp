#pragma once

// Half-plane carving of a triangulated polytope.  Faces are grouped by their
// supporting plane; inside each plane the cuts form the complement of a
// convex region that must contain the hull of the cross-section and keep
// every face edge out of its interior.

#include "aac/separation.hpp"

#include <array>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace aac {

template <class T>
struct Vec3 {
    T x{}, y{}, z{};

    Vec3() = default;
    Vec3(T x_, T y_, T z_) : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}
    template <class U>
        requires(!std::is_same_v<U, T>)
    explicit Vec3(const Vec3<U>& o) : x(o.x), y(o.y), z(o.z) {}

    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(const Vec3& a, const T& s) { return {a.x * s, a.y * s, a.z * s}; }
    friend bool operator==(const Vec3& a, const Vec3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
    friend bool operator<(const Vec3& a, const Vec3& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.z < b.z;
    }
    T operator[](int i) const { return i == 0 ? x : i == 1 ? y : z; }
};

using Point3 = Vec3<Rational>;
using RPoint3 = Vec3<Radical>;

template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}
template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
template <class T>
std::string to_string(const Vec3<T>& p) {
    return "(" + to_string(p.x) + ", " + to_string(p.y) + ", " + to_string(p.z) + ")";
}

class MeshError : public DomainError {
public:
    using DomainError::DomainError;
};

struct TriMesh {
    std::vector<Point3> vertices;
    std::vector<std::array<std::size_t, 3>> triangles;

    std::array<Point3, 3> corners(std::size_t t) const {
        const auto& f = triangles[t];
        return {vertices[f[0]], vertices[f[1]], vertices[f[2]]};
    }
};

/// Six times the signed volume enclosed by the triangles.
inline Rational signed_volume6(const TriMesh& m) {
    Rational v = 0;
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        auto [a, b, c] = m.corners(t);
        v += dot(a, cross(b, c));
    }
    return v;
}

/// Checks that the surface is closed, edge-manifold and consistently
/// oriented, and flips every triangle when the orientation points inward.
inline void validate_mesh(TriMesh& m) {
    if (m.triangles.size() < 4) throw MeshError("a closed surface needs at least four triangles");
    std::map<std::pair<std::size_t, std::size_t>, int> directed;
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        const auto& f = m.triangles[t];
        for (auto i : f)
            if (i >= m.vertices.size()) throw MeshError("triangle " + std::to_string(t) + " uses a missing vertex");
        auto [a, b, c] = m.corners(t);
        if (cross(b - a, c - a) == Point3{}) throw MeshError("triangle " + std::to_string(t) + " is degenerate");
        for (int i = 0; i < 3; ++i)
            if (++directed[{f[i], f[(i + 1) % 3]}] > 1)
                throw MeshError("edge " + std::to_string(f[i]) + "-" + std::to_string(f[(i + 1) % 3]) +
                                " is used twice in the same direction");
    }
    for (const auto& [e, n] : directed)
        if (!directed.count({e.second, e.first}))
            throw MeshError("edge " + std::to_string(e.first) + "-" + std::to_string(e.second) + " has no opposite");
    Rational vol = signed_volume6(m);
    if (vol == 0) throw MeshError("the surface encloses no volume");
    if (vol < 0)
        for (auto& f : m.triangles) std::swap(f[1], f[2]);
}

namespace detail {

inline std::vector<std::string> mesh_tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line.substr(0, line.find('#')));
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline std::size_t parse_index(const std::string& tok, std::size_t line) {
    try {
        std::size_t used = 0;
        long v = std::stol(tok, &used);
        if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw MeshError("line " + std::to_string(line) + ": bad index '" + tok + "'");
    }
}

inline Rational parse_coord(const std::string& tok, std::size_t line) {
    try {
        return parse_rational(tok);
    } catch (const DomainError& e) {
        throw MeshError("line " + std::to_string(line) + ": " + e.what());
    }
}

}  // namespace detail

/// OFF with triangular faces; coordinates are read as exact decimals or p/q.
inline TriMesh parse_off(std::istream& in) {
    std::vector<std::pair<std::size_t, std::vector<std::string>>> lines;
    std::string raw;
    std::size_t no = 0;
    while (std::getline(in, raw)) {
        ++no;
        auto toks = detail::mesh_tokens(raw);
        if (!toks.empty()) lines.push_back({no, std::move(toks)});
    }
    std::size_t at = 0;
    if (at < lines.size() && lines[at].second[0] == "OFF") {
        lines[at].second.erase(lines[at].second.begin());
        if (lines[at].second.empty()) ++at;
    }
    if (at >= lines.size() || lines[at].second.size() < 2) throw MeshError("missing OFF counts line");
    std::size_t nv = detail::parse_index(lines[at].second[0], lines[at].first);
    std::size_t nf = detail::parse_index(lines[at].second[1], lines[at].first);
    ++at;
    TriMesh m;
    for (std::size_t i = 0; i < nv; ++i, ++at) {
        if (at >= lines.size()) throw MeshError("expected " + std::to_string(nv) + " vertices");
        const auto& [ln, t] = lines[at];
        if (t.size() != 3) throw MeshError("line " + std::to_string(ln) + ": vertex needs three coordinates");
        m.vertices.push_back({detail::parse_coord(t[0], ln), detail::parse_coord(t[1], ln), detail::parse_coord(t[2], ln)});
    }
    for (std::size_t i = 0; i < nf; ++i, ++at) {
        if (at >= lines.size()) throw MeshError("expected " + std::to_string(nf) + " faces");
        const auto& [ln, t] = lines[at];
        if (t.size() != 4 || detail::parse_index(t[0], ln) != 3)
            throw MeshError("line " + std::to_string(ln) + ": only triangular faces are supported");
        m.triangles.push_back({detail::parse_index(t[1], ln), detail::parse_index(t[2], ln), detail::parse_index(t[3], ln)});
    }
    if (at != lines.size()) throw MeshError("line " + std::to_string(lines[at].first) + ": trailing data");
    validate_mesh(m);
    return m;
}

/// The `v` and triangular `f` records of OBJ; other records are ignored.
inline TriMesh parse_obj(std::istream& in) {
    TriMesh m;
    std::string raw;
    std::size_t no = 0;
    while (std::getline(in, raw)) {
        ++no;
        auto t = detail::mesh_tokens(raw);
        if (t.empty()) continue;
        if (t[0] == "v") {
            if (t.size() != 4) throw MeshError("line " + std::to_string(no) + ": vertex needs three coordinates");
            m.vertices.push_back({detail::parse_coord(t[1], no), detail::parse_coord(t[2], no), detail::parse_coord(t[3], no)});
        } else if (t[0] == "f") {
            if (t.size() != 4) throw MeshError("line " + std::to_string(no) + ": only triangular faces are supported");
            std::array<std::size_t, 3> f{};
            for (int i = 0; i < 3; ++i) {
                std::size_t k = detail::parse_index(t[i + 1].substr(0, t[i + 1].find('/')), no);
                if (k == 0) throw MeshError("line " + std::to_string(no) + ": OBJ indices start at 1");
                f[i] = k - 1;
            }
            m.triangles.push_back(f);
        }
    }
    validate_mesh(m);
    return m;
}

inline TriMesh load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MeshError("cannot open " + path);
    std::string ext = path.size() >= 4 ? path.substr(path.size() - 4) : "";
    for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext == ".obj" ? parse_obj(in) : parse_off(in);
}

inline std::string write_off(const TriMesh& m) {
    std::ostringstream out;
    out << "OFF\n" << m.vertices.size() << ' ' << m.triangles.size() << " 0\n";
    for (const auto& v : m.vertices) out << to_string(v.x) << ' ' << to_string(v.y) << ' ' << to_string(v.z) << '\n';
    for (const auto& f : m.triangles) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Planes and charts

/// Oriented plane normal . x = offset with a primitive integer normal.
struct PlaneKey {
    std::array<Integer, 3> normal;
    Rational offset;

    friend bool operator==(const PlaneKey& a, const PlaneKey& b) { return a.normal == b.normal && a.offset == b.offset; }
    friend bool operator<(const PlaneKey& a, const PlaneKey& b) {
        if (a.normal != b.normal) return a.normal < b.normal;
        return a.offset < b.offset;
    }
    Point3 normal_vec() const { return {Rational(normal[0]), Rational(normal[1]), Rational(normal[2])}; }
    Rational side(const Point3& p) const { return dot(normal_vec(), p) - offset; }
};

inline PlaneKey plane_of(const Point3& a, const Point3& b, const Point3& c) {
    Point3 n = cross(b - a, c - a);
    Integer l = 1;
    for (int i = 0; i < 3; ++i) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), n[i].get_den().get_mpz_t());
    std::array<Integer, 3> ints;
    Integer g = 0;
    for (int i = 0; i < 3; ++i) {
        Rational v = n[i] * l;
        ints[i] = v.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
    }
    if (g == 0) throw MeshError("degenerate triangle has no plane");
    for (auto& v : ints) v /= g;
    PlaneKey key{ints, 0};
    key.offset = dot(key.normal_vec(), a);
    return key;
}

/// Parallel projection of a plane onto two coordinate axes, ordered so that
/// counterclockwise in the chart is counterclockwise seen from the normal side.
struct PlaneChart {
    PlaneKey plane;
    int drop = 2, u = 0, v = 1;

    explicit PlaneChart(PlaneKey key) : plane(std::move(key)) {
        for (int i = 0; i < 3; ++i)
            if (abs(plane.normal[i]) > abs(plane.normal[drop])) drop = i;
        u = (drop + 1) % 3;
        v = (drop + 2) % 3;
        if (plane.normal[drop] < 0) std::swap(u, v);
    }

    Point2 to2(const Point3& p) const { return {p[u], p[v]}; }

    template <class T>
    Vec3<T> lift(const Vec2<T>& q) const {
        std::array<T, 3> c;
        c[u] = q.x;
        c[v] = q.y;
        T rest = T(plane.offset) - T(Rational(plane.normal[u])) * q.x - T(Rational(plane.normal[v])) * q.y;
        c[drop] = rest / T(Rational(plane.normal[drop]));
        return {c[0], c[1], c[2]};
    }

    /// In-plane direction whose chart coordinates are d.
    template <class T>
    Vec3<T> lift_direction(const Vec2<T>& d) const {
        std::array<T, 3> c;
        c[u] = d.x;
        c[v] = d.y;
        c[drop] = -(T(Rational(plane.normal[u])) * d.x + T(Rational(plane.normal[v])) * d.y) / T(Rational(plane.normal[drop]));
        return {c[0], c[1], c[2]};
    }
};

// ---------------------------------------------------------------------------
// Point location in the solid

enum class SolidLocation { outside, boundary, inside };

namespace detail {

inline bool point_in_triangle3(const Point3& q, const Point3& a, const Point3& b, const Point3& c, bool& on_edge) {
    Point3 n = cross(b - a, c - a);
    Rational s0 = dot(cross(b - a, q - a), n), s1 = dot(cross(c - b, q - b), n), s2 = dot(cross(a - c, q - c), n);
    on_edge = false;
    if (s0 < 0 || s1 < 0 || s2 < 0) return false;
    on_edge = s0 == 0 || s1 == 0 || s2 == 0;
    return true;
}

}  // namespace detail

/// Exact parity ray casting; rays that graze an edge, a vertex or a face
/// plane are discarded and replaced by another direction.
inline SolidLocation locate_in_solid(const TriMesh& m, const Point3& q) {
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        auto [a, b, c] = m.corners(t);
        bool edge;
        if (dot(cross(b - a, c - a), q - a) == 0 && detail::point_in_triangle3(q, a, b, c, edge)) return SolidLocation::boundary;
    }
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coord(-97, 97);
    for (int attempt = 0; attempt < 200; ++attempt) {
        Point3 r{Rational(coord(rng)), Rational(coord(rng)), Rational(coord(rng))};
        if (r == Point3{}) continue;
        bool clean = true;
        int hits = 0;
        for (std::size_t t = 0; t < m.triangles.size() && clean; ++t) {
            auto [a, b, c] = m.corners(t);
            Point3 n = cross(b - a, c - a);
            Rational den = dot(n, r), num = dot(n, a - q);
            if (den == 0) {
                if (num == 0) clean = false;
                continue;
            }
            Rational s = num / den;
            if (s <= 0) continue;
            bool edge;
            if (detail::point_in_triangle3(q + r * s, a, b, c, edge)) {
                if (edge) clean = false;
                ++hits;
            }
        }
        if (clean) return hits % 2 ? SolidLocation::inside : SolidLocation::outside;
    }
    throw GeometryError("no generic ray found for point location");
}

// ---------------------------------------------------------------------------
// Cross-sections

struct CrossSection {
    std::vector<Polygon> cells;  ///< closed trapezoids covering the section
    int components = 0;
    Polygon hull;  ///< counterclockwise; empty when the section is empty

    bool empty() const { return cells.empty(); }
};

namespace detail {

/// Traces of the surface in the plane, in chart coordinates, plus the
/// isolated vertices that only touch it.
inline void plane_traces(const TriMesh& m, const PlaneChart& ch, std::vector<Segment>& segs, std::vector<Point2>& touch) {
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        auto P = m.corners(t);
        std::array<Rational, 3> s;
        for (int i = 0; i < 3; ++i) s[i] = ch.plane.side(P[i]);
        int zeros = 0, pos = 0, neg = 0;
        for (const auto& v : s) (v == 0 ? zeros : v > 0 ? pos : neg)++;
        if (zeros == 3) {
            for (int i = 0; i < 3; ++i) segs.push_back({ch.to2(P[i]), ch.to2(P[(i + 1) % 3])});
            continue;
        }
        std::vector<Point2> pts;
        for (int i = 0; i < 3; ++i)
            if (s[i] == 0) pts.push_back(ch.to2(P[i]));
        if (pos && neg)
            for (int i = 0; i < 3; ++i) {
                int j = (i + 1) % 3;
                if ((s[i] > 0 && s[j] < 0) || (s[i] < 0 && s[j] > 0)) {
                    Rational lam = s[i] / (s[i] - s[j]);
                    pts.push_back(ch.to2(P[i] + (P[j] - P[i]) * lam));
                }
            }
        if (pts.size() == 2 && !(pts[0] == pts[1]))
            segs.push_back({pts[0], pts[1]});
        else
            for (const auto& p : pts) touch.push_back(p);
    }
}

inline Rational v_at(const Segment& s, const Rational& u) {
    return s.a.y + (s.b.y - s.a.y) * (u - s.a.x) / (s.b.x - s.a.x);
}

}  // namespace detail

/// Interior of the solid intersected with the plane, as a vertical-slab
/// trapezoid decomposition whose cells are classified by point location.
inline CrossSection cross_section(const TriMesh& m, const PlaneKey& plane) {
    PlaneChart ch(plane);
    std::vector<Segment> segs;
    std::vector<Point2> touch;
    detail::plane_traces(m, ch, segs, touch);
    std::vector<Rational> us;
    for (const auto& s : segs) {
        us.push_back(s.a.x);
        us.push_back(s.b.x);
    }
    for (const auto& p : touch) us.push_back(p.x);
    for (std::size_t i = 0; i < segs.size(); ++i)
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            auto hit = segment_intersection(segs[i].a, segs[i].b, segs[j].a, segs[j].b);
            if (hit.relation == SegmentRelation::point) us.push_back(hit.p.x);
        }
    std::sort(us.begin(), us.end());
    us.erase(std::unique(us.begin(), us.end()), us.end());

    struct Cell {
        std::size_t slab;
        Rational lo0, hi0, lo1, hi1;  // v range at the left and right slab walls
    };
    std::vector<Cell> cells;
    for (std::size_t k = 0; k + 1 < us.size(); ++k) {
        const Rational &u0 = us[k], &u1 = us[k + 1];
        Rational um = (u0 + u1) / 2;
        std::vector<std::array<Rational, 3>> cut;  // v at um, u0, u1
        for (const auto& s : segs) {
            Rational a = std::min(s.a.x, s.b.x), b = std::max(s.a.x, s.b.x);
            if (a <= u0 && b >= u1 && a != b) cut.push_back({detail::v_at(s, um), detail::v_at(s, u0), detail::v_at(s, u1)});
        }
        std::sort(cut.begin(), cut.end());
        cut.erase(std::unique(cut.begin(), cut.end(), [](const auto& x, const auto& y) { return x[0] == y[0]; }), cut.end());
        for (std::size_t i = 0; i + 1 < cut.size(); ++i) {
            Point2 q{um, (cut[i][0] + cut[i + 1][0]) / 2};
            if (locate_in_solid(m, ch.lift(q)) == SolidLocation::inside)
                cells.push_back({k, cut[i][1], cut[i + 1][1], cut[i][2], cut[i + 1][2]});
        }
    }

    CrossSection out;
    std::vector<Point2> corners;
    for (const auto& c : cells) {
        const Rational &u0 = us[c.slab], &u1 = us[c.slab + 1];
        Polygon trap{{u0, c.lo0}, {u1, c.lo1}, {u1, c.hi1}, {u0, c.hi0}};
        Polygon cleaned;
        for (const auto& p : trap)
            if (cleaned.empty() || !(cleaned.back() == p)) cleaned.push_back(p);
        if (cleaned.size() > 1 && cleaned.front() == cleaned.back()) cleaned.pop_back();
        corners.insert(corners.end(), cleaned.begin(), cleaned.end());
        out.cells.push_back(std::move(cleaned));
    }
    if (cells.empty()) return out;

    // components: cells in neighbouring slabs whose shared wall overlaps in a
    // stretch not covered by a wall segment
    std::vector<std::size_t> parent(cells.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < cells.size(); ++i)
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (cells[j].slab != cells[i].slab + 1) continue;
            const Rational& w = us[cells[j].slab];
            Rational lo = std::max(cells[i].lo1, cells[j].lo0), hi = std::min(cells[i].hi1, cells[j].hi0);
            if (!(lo < hi)) continue;
            std::vector<std::pair<Rational, Rational>> walls;
            for (const auto& s : segs)
                if (s.a.x == w && s.b.x == w) walls.push_back({std::min(s.a.y, s.b.y), std::max(s.a.y, s.b.y)});
            std::sort(walls.begin(), walls.end());
            Rational reach = lo;
            for (const auto& [a, b] : walls) {
                if (a > reach) break;
                reach = std::max(reach, b);
            }
            if (reach < hi) parent[find(i)] = find(j);
        }
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (find(i) == i) ++out.components;
    out.hull = convex_hull(corners).vertices;
    return out;
}

// ---------------------------------------------------------------------------
// Groups

struct PlaneGroup {
    PlaneKey plane;
    std::vector<std::size_t> triangles;  ///< indices into the mesh
    std::vector<std::array<Point2, 3>> faces;  ///< the same triangles in chart coordinates
    CrossSection section;
    std::vector<Segment> edges;  ///< distinct triangle edges in chart coordinates

    PlaneChart chart() const { return PlaneChart(plane); }
    const Polygon& hull() const { return section.hull; }
};

inline std::vector<PlaneGroup> group_coplanar(const TriMesh& m) {
    std::map<PlaneKey, std::vector<std::size_t>> by_plane;
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        auto [a, b, c] = m.corners(t);
        by_plane[plane_of(a, b, c)].push_back(t);
    }
    std::vector<PlaneGroup> out;
    for (auto& [key, tris] : by_plane) {
        PlaneGroup g{key, tris, {}, {}, {}};
        PlaneChart ch(key);
        std::set<std::pair<Point2, Point2>> seen;
        auto less = [](const Point2& a, const Point2& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; };
        for (auto t : tris) {
            auto P = m.corners(t);
            std::array<Point2, 3> f{ch.to2(P[0]), ch.to2(P[1]), ch.to2(P[2])};
            g.faces.push_back(f);
            for (int i = 0; i < 3; ++i) {
                Point2 a = f[i], b = f[(i + 1) % 3];
                if (less(b, a)) std::swap(a, b);
                if (seen.insert({a, b}).second) g.edges.push_back({a, b});
            }
        }
        g.section = cross_section(m, key);
        out.push_back(std::move(g));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Face feasibility

namespace detail {

/// Whether the line through p and q has the triangle on one closed side and
/// the hull on the other.
inline bool splits(const Point2& p, const Point2& q, const std::array<Point2, 3>& tri, const Polygon& hull) {
    for (int dir : {1, -1}) {
        bool ok = true;
        for (const auto& x : tri)
            if (orient(p, q, x) * dir < 0) ok = false;
        for (const auto& h : hull)
            if (orient(p, q, h) * dir > 0) ok = false;
        if (ok) return true;
    }
    return false;
}

}  // namespace detail

/// For each triangle of the group: does some line through a hull vertex and
/// a triangle vertex keep the triangle and the hull on opposite sides?
inline std::vector<bool> face_feasibility(const PlaneGroup& g) {
    std::vector<bool> out;
    for (const auto& tri : g.faces) {
        if (g.section.empty()) {
            out.push_back(true);
            continue;
        }
        bool ok = false;
        for (const auto& h : g.hull())
            for (const auto& v : tri) {
                if (!(h == v)) {
                    ok = ok || detail::splits(h, v, tri, g.hull());
                    continue;
                }
                for (const auto& w : g.hull())
                    if (!(w == h)) ok = ok || detail::splits(h, w, tri, g.hull());
                for (const auto& w : tri)
                    if (!(w == h)) ok = ok || detail::splits(h, w, tri, g.hull());
            }
        out.push_back(ok);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cuts

/// A cut is the closed half-plane normal . x >= offset of the group plane,
/// in chart coordinates; the region left uncut is where every cut's
/// inequality fails.
struct PlanarCut {
    RPoint2 normal;
    Radical offset;
    RPoint2 anchor;  ///< a point on the boundary line
};

/// A cut carried back to space.  `side` is an in-plane vector pointing into
/// the half-plane.
struct SpatialCut {
    PlaneKey plane;
    RPoint3 point;
    RPoint3 direction;
    RPoint3 side;
};

enum class GroupMethod { empty_section, few_cuts, separation };

inline const char* to_string(GroupMethod m) {
    switch (m) {
        case GroupMethod::empty_section: return "empty-section";
        case GroupMethod::few_cuts: return "few-cuts";
        default: return "separation";
    }
}

struct GroupCuts {
    std::size_t group = 0;
    GroupMethod method = GroupMethod::empty_section;
    std::vector<PlanarCut> planar;
    std::vector<SpatialCut> cuts;
};

struct CutSet {
    std::vector<GroupCuts> groups;
    long total = 0;
};

class CarvingInfeasible : public InfeasibleError {
public:
    CarvingInfeasible(const std::string& what, std::vector<std::size_t> faces)
        : InfeasibleError(what), blocked(std::move(faces)) {}
    std::vector<std::size_t> blocked;  ///< mesh triangle indices
};

/// Exact check that the cuts cover every edge and spare the hull interior.
inline bool validate_cuts(const Polygon& hull, const std::vector<Segment>& edges, const std::vector<PlanarCut>& cuts,
                          std::string* why = nullptr) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if (cuts.empty()) return fail("no cuts");
    std::vector<LinearConstraint<Radical>> open;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const auto& c = cuts[i];
        if (!(dot(c.normal, c.anchor) == c.offset)) return fail("cut " + std::to_string(i) + " misses its anchor");
        for (const auto& h : hull)
            if (dot(c.normal, RPoint2(h)) > c.offset) return fail("cut " + std::to_string(i) + " enters the hull");
        open.push_back({-c.normal, c.offset});
    }
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (segment_meets_open_region(open, RPoint2(edges[i].a), RPoint2(edges[i].b)))
            return fail("edge " + std::to_string(i) + " is not covered");
    return true;
}

namespace detail {

struct Line2 {
    Point2 n;
    Rational h;
    Point2 anchor;
};

inline PlanarCut to_cut(const Line2& l) { return {RPoint2(l.n), Radical(l.h), RPoint2(l.anchor)}; }

/// Lines through two of the points with every hull vertex on the closed
/// side n . x <= h.
inline std::vector<Line2> hull_bounding_lines(const Polygon& hull, const std::vector<Point2>& pts) {
    std::vector<Line2> out;
    std::set<std::pair<std::pair<Rational, Rational>, Rational>> seen;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (pts[i] == pts[j]) continue;
            Point2 n = rot_cw(pts[j] - pts[i]);
            Rational h = dot(n, pts[i]);
            bool ok = true;
            for (const auto& v : hull)
                if (dot(n, v) > h) ok = false;
            if (!ok) continue;
            Rational scale = abs(n.x) + abs(n.y);
            if (seen.insert({{n.x / scale, n.y / scale}, h / scale}).second) out.push_back({n, h, pts[i]});
        }
    return out;
}

inline std::vector<Point2> unique_points(std::vector<Point2> pts) {
    auto less = [](const Point2& a, const Point2& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; };
    std::sort(pts.begin(), pts.end(), less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

/// Closed pieces of the edges lying strictly inside n . x < h somewhere.
inline std::vector<Point2> uncovered_piece_ends(const std::vector<Segment>& edges, const Line2& l) {
    std::vector<Point2> out;
    for (const auto& e : edges) {
        Rational fa = dot(l.n, e.a) - l.h, fb = dot(l.n, e.b) - l.h;
        if (fa >= 0 && fb >= 0) continue;
        if (fa <= 0) out.push_back(e.a);
        if (fb <= 0) out.push_back(e.b);
        if ((fa < 0 && fb > 0) || (fa > 0 && fb < 0)) out.push_back(e.a + (e.b - e.a) * (fa / (fa - fb)));
    }
    return out;
}

/// One or two cuts when they suffice.  A single cut is a line weakly
/// separating the hull from all edges.  For two cuts, either one boundary
/// passes through two input points and the other separates the hull from
/// what the first leaves uncovered, or both boundaries are the tangents from
/// an apex on an edge placed at an event.
inline std::optional<std::vector<Line2>> few_cuts(const Polygon& hull, const std::vector<Segment>& edges) {
    auto valid = [&](const std::vector<Line2>& ls) {
        std::vector<PlanarCut> cs;
        for (const auto& l : ls) cs.push_back(to_cut(l));
        return validate_cuts(hull, edges, cs);
    };
    std::vector<Point2> base(hull.begin(), hull.end());
    for (const auto& e : edges) {
        base.push_back(e.a);
        base.push_back(e.b);
    }
    base = unique_points(base);
    auto first = hull_bounding_lines(hull, base);
    for (const auto& l : first)
        if (valid({l})) return std::vector<Line2>{l};
    for (const auto& l : first) {
        auto rest = uncovered_piece_ends(edges, l);
        std::vector<Point2> pts(hull.begin(), hull.end());
        pts.insert(pts.end(), rest.begin(), rest.end());
        for (const auto& m : hull_bounding_lines(hull, unique_points(pts)))
            if (valid({l, m})) return std::vector<Line2>{l, m};
    }
    std::vector<Point2> apexes;
    for (const auto& e : edges) {
        apexes.push_back(e.a);
        apexes.push_back(e.b);
        auto meet = [&](const Point2& p, const Point2& q) {
            auto x = line_intersection(e.a, e.b, p, q);
            if (x && on_segment(e.a, e.b, *x)) apexes.push_back(*x);
        };
        for (std::size_t i = 0; i < base.size(); ++i)
            for (std::size_t j = i + 1; j < base.size(); ++j) meet(base[i], base[j]);
    }
    for (const auto& x : unique_points(apexes)) {
        if (in_closed_hull(hull, x)) continue;
        std::vector<Line2> tangents;
        for (const auto& v : hull) {
            Point2 n = rot_cw(v - x);
            for (const Point2& nn : {n, Point2{-n.x, -n.y}}) {
                Rational h = dot(nn, x);
                bool ok = true;
                for (const auto& w : hull)
                    if (dot(nn, w) > h) ok = false;
                if (ok) tangents.push_back({nn, h, x});
            }
        }
        for (std::size_t i = 0; i < tangents.size(); ++i)
            for (std::size_t j = i + 1; j < tangents.size(); ++j)
                if (valid({tangents[i], tangents[j]})) return std::vector<Line2>{tangents[i], tangents[j]};
    }
    return std::nullopt;
}

}  // namespace detail

/// Fewest cuts for one group, in chart coordinates.
inline GroupCuts solve_group(const PlaneGroup& g, const SeparationOptions& opt = {}) {
    GroupCuts out;
    if (g.section.empty()) {
        out.method = GroupMethod::empty_section;
        Point2 lowest = g.faces.front()[0];
        for (const auto& f : g.faces)
            for (const auto& p : f)
                if (p.x < lowest.x) lowest = p;
        out.planar.push_back(detail::to_cut({{Rational(1), Rational(0)}, lowest.x, lowest}));
    } else if (auto few = detail::few_cuts(g.hull(), g.edges)) {
        out.method = GroupMethod::few_cuts;
        for (const auto& l : *few) out.planar.push_back(detail::to_cut(l));
    } else {
        out.method = GroupMethod::separation;
        const Polygon& H = g.hull();
        std::vector<Segment> inner;
        for (std::size_t i = 0; i < H.size(); ++i) inner.push_back({H[i], H[(i + 1) % H.size()]});
        auto sol = solve_segment_separation(inner, g.edges, opt);
        for (const auto& s : sol.polygon.sides)
            out.planar.push_back({RPoint2(s.normal.x(), s.normal.y()), s.offset, RPoint2(s.touch)});
    }
    std::string why;
    if (!validate_cuts(g.hull(), g.edges, out.planar, &why)) throw GeometryError("cut certificate failed: " + why);
    PlaneChart ch = g.chart();
    for (const auto& c : out.planar)
        out.cuts.push_back({g.plane, ch.lift(c.anchor), ch.lift_direction(RPoint2(-c.normal.y, c.normal.x)),
                            ch.lift_direction(c.normal)});
    return out;
}

inline CutSet solve_carving(const std::vector<PlaneGroup>& groups, const SeparationOptions& opt = {}) {
    std::vector<std::size_t> blocked;
    for (const auto& g : groups) {
        auto ok = face_feasibility(g);
        for (std::size_t i = 0; i < ok.size(); ++i)
            if (!ok[i]) blocked.push_back(g.triangles[i]);
    }
    if (!blocked.empty()) {
        std::sort(blocked.begin(), blocked.end());
        std::string list;
        for (auto t : blocked) list += (list.empty() ? "" : ", ") + std::to_string(t);
        throw CarvingInfeasible("faces cannot be cut free: " + list, blocked);
    }
    CutSet out;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        out.groups.push_back(solve_group(groups[i], opt));
        out.groups.back().group = i;
        out.total += static_cast<long>(out.groups.back().cuts.size());
    }
    return out;
}

inline CutSet solve_carving(const TriMesh& m, const SeparationOptions& opt = {}) {
    return solve_carving(group_coplanar(m), opt);
}

}  // namespace aac
