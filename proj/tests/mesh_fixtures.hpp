#pragma once

#include "aac/carve3d.hpp"

namespace aac::testing {

inline Point3 p3(long x, long y, long z) { return {Rational(x), Rational(y), Rational(z)}; }

/// Collects triangles by position, orienting each one away from the hint.
class MeshBuilder {
public:
    std::size_t index(const Point3& p) {
        auto [it, fresh] = ids_.emplace(p, mesh_.vertices.size());
        if (fresh) mesh_.vertices.push_back(p);
        return it->second;
    }
    void tri(const Point3& a, const Point3& b, const Point3& c, const Point3& outward) {
        std::array<std::size_t, 3> f{index(a), index(b), index(c)};
        if (dot(cross(b - a, c - a), outward) < 0) std::swap(f[1], f[2]);
        mesh_.triangles.push_back(f);
    }
    void quad(const Point3& a, const Point3& b, const Point3& c, const Point3& d, const Point3& outward) {
        tri(a, b, c, outward);
        tri(a, c, d, outward);
    }
    TriMesh done() {
        validate_mesh(mesh_);
        return mesh_;
    }

private:
    TriMesh mesh_;
    std::map<Point3, std::size_t> ids_;
};

/// Ear clipping of a counterclockwise simple polygon.
inline std::vector<std::array<std::size_t, 3>> ear_clip(const Polygon& P) {
    std::vector<std::size_t> idx(P.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::array<std::size_t, 3>> out;
    while (idx.size() > 3) {
        bool cut = false;
        for (std::size_t i = 0; i < idx.size() && !cut; ++i) {
            std::size_t a = idx[(i + idx.size() - 1) % idx.size()], b = idx[i], c = idx[(i + 1) % idx.size()];
            if (orient(P[a], P[b], P[c]) <= 0) continue;
            bool empty = true;
            for (auto j : idx) {
                if (j == a || j == b || j == c) continue;
                if (orient(P[a], P[b], P[j]) >= 0 && orient(P[b], P[c], P[j]) >= 0 && orient(P[c], P[a], P[j]) >= 0)
                    empty = false;
            }
            if (!empty) continue;
            out.push_back({a, b, c});
            idx.erase(idx.begin() + static_cast<long>(i));
            cut = true;
        }
        if (!cut) throw GeometryError("ear clipping stalled");
    }
    out.push_back({idx[0], idx[1], idx[2]});
    return out;
}

/// A profile in the xz plane swept along y from 0 to depth.
inline TriMesh extrude_xz(const Polygon& profile, long depth) {
    MeshBuilder b;
    auto at = [&](const Point2& q, long y) { return Point3{q.x, Rational(y), q.y}; };
    for (const auto& t : ear_clip(profile)) {
        b.tri(at(profile[t[0]], 0), at(profile[t[1]], 0), at(profile[t[2]], 0), p3(0, -1, 0));
        b.tri(at(profile[t[0]], depth), at(profile[t[1]], depth), at(profile[t[2]], depth), p3(0, 1, 0));
    }
    for (std::size_t i = 0; i < profile.size(); ++i) {
        const Point2 &p = profile[i], &q = profile[(i + 1) % profile.size()];
        Point2 n{(q - p).y, -(q - p).x};
        b.quad(at(p, 0), at(q, 0), at(q, depth), at(p, depth), {n.x, Rational(0), n.y});
    }
    return b.done();
}

inline TriMesh box(long x0, long y0, long z0, long x1, long y1, long z1) {
    Polygon prof{{Rational(x0), Rational(z0)}, {Rational(x1), Rational(z0)}, {Rational(x1), Rational(z1)},
                 {Rational(x0), Rational(z1)}};
    TriMesh m = extrude_xz(prof, y1 - y0);
    for (auto& v : m.vertices) v.y += y0;
    return m;
}

inline TriMesh cube() { return box(0, 0, 0, 1, 1, 1); }

inline TriMesh tetrahedron() {
    MeshBuilder b;
    std::array<Point3, 4> v{p3(0, 0, 0), p3(3, 0, 0), p3(0, 3, 0), p3(0, 0, 3)};
    Point3 centre = p3(3, 3, 3) * make_rational(1, 4);
    for (int skip = 0; skip < 4; ++skip) {
        std::vector<Point3> f;
        for (int i = 0; i < 4; ++i)
            if (i != skip) f.push_back(v[i]);
        b.tri(f[0], f[1], f[2], f[0] - centre);
    }
    return b.done();
}

/// Two ledges at height 2 on either side of a central tower; the plane of
/// the ledges cuts through the tower.
inline TriMesh stepped_block() {
    Polygon prof{{Rational(0), Rational(0)}, {Rational(6), Rational(0)}, {Rational(6), Rational(2)},
                 {Rational(4), Rational(2)}, {Rational(4), Rational(4)}, {Rational(2), Rational(4)},
                 {Rational(2), Rational(2)}, {Rational(0), Rational(2)}};
    return extrude_xz(prof, 2);
}

/// A square plate with a square tower rising from its middle.  The top of
/// the plate is a frame around the tower's footprint.
inline TriMesh tower_on_plate() {
    MeshBuilder b;
    const Point3 up = p3(0, 0, 1), down = p3(0, 0, -1);
    b.quad(p3(0, 0, 0), p3(6, 0, 0), p3(6, 6, 0), p3(0, 6, 0), down);
    std::array<Point2, 4> outer{Point2{0, 0}, Point2{6, 0}, Point2{6, 6}, Point2{0, 6}};
    std::array<Point2, 4> inner{Point2{2, 2}, Point2{4, 2}, Point2{4, 4}, Point2{2, 4}};
    auto at = [](const Point2& q, long z) { return Point3{q.x, q.y, Rational(z)}; };
    for (int i = 0; i < 4; ++i) {
        int j = (i + 1) % 4;
        Point2 e = outer[j] - outer[i];
        Point3 out{e.y, -e.x, Rational(0)};
        b.quad(at(outer[i], 0), at(outer[j], 0), at(outer[j], 2), at(outer[i], 2), out);
        b.quad(at(outer[i], 2), at(outer[j], 2), at(inner[j], 2), at(inner[i], 2), up);
        b.quad(at(inner[i], 2), at(inner[j], 2), at(inner[j], 4), at(inner[i], 4), out);
    }
    b.quad(p3(2, 2, 4), p3(4, 2, 4), p3(4, 4, 4), p3(2, 4, 4), up);
    return b.done();
}

/// A channel whose floor lies between two walls; the floor plane passes
/// through both walls, so no half-plane can cut the floor free.
inline TriMesh u_channel() {
    Polygon prof{{Rational(0), Rational(0)}, {Rational(6), Rational(0)}, {Rational(6), Rational(4)},
                 {Rational(4), Rational(4)}, {Rational(4), Rational(2)}, {Rational(2), Rational(2)},
                 {Rational(2), Rational(4)}, {Rational(0), Rational(4)}};
    return extrude_xz(prof, 2);
}

inline TriMesh transform_mesh(const TriMesh& m, const Point3& shift, int quarter_turns) {
    TriMesh out = m;
    for (auto& v : out.vertices) {
        for (int q = 0; q < quarter_turns % 4; ++q) v = {-v.y, v.x, v.z};
        v = v + shift;
    }
    return out;
}

}  // namespace aac::testing
