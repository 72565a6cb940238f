#include "aac/carve3d.hpp"
#include "aac/oracles/carving.hpp"
#include "mesh_fixtures.hpp"

#include <gtest/gtest.h>

namespace aac {
namespace {

using namespace testing;
using namespace oracle;

const PlaneGroup& group_with_normal(const std::vector<PlaneGroup>& gs, long a, long b, long c, long d) {
    for (const auto& g : gs)
        if (g.plane.normal == std::array<Integer, 3>{a, b, c} && g.plane.offset == d) return g;
    throw std::runtime_error("no such group");
}

TEST(MeshIo, OffRoundTrip) {
    TriMesh m = tower_on_plate();
    std::istringstream in(write_off(m));
    TriMesh back = parse_off(in);
    EXPECT_EQ(back.vertices, m.vertices);
    EXPECT_EQ(back.triangles, m.triangles);
}

TEST(MeshIo, ObjSubsetAndDecimals) {
    std::istringstream in(
        "# tetrahedron\nv 0 0 0\nv 1.5 0 0\nv 0 1.5 0\nv 0 0 3/2\n"
        "f 1 3 2\nf 1 2 4\nf 2 3 4\nf 1 4 3\n");
    TriMesh m = parse_obj(in);
    EXPECT_EQ(m.vertices[1].x, make_rational(3, 2));
    EXPECT_GT(signed_volume6(m), 0);
}

TEST(MeshIo, InwardOrientationIsFlipped) {
    TriMesh m = cube();
    for (auto& f : m.triangles) std::swap(f[1], f[2]);
    validate_mesh(m);
    EXPECT_GT(signed_volume6(m), 0);
}

TEST(MeshIo, RejectsOpenSurfaceAndBadLines) {
    TriMesh m = cube();
    m.triangles.pop_back();
    EXPECT_THROW(validate_mesh(m), MeshError);
    std::istringstream bad("OFF\n3 1 0\n0 0 0\n1 x 0\n0 1 0\n3 0 1 2\n");
    try {
        parse_off(bad);
        FAIL();
    } catch (const MeshError& e) {
        EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
    }
}

TEST(Solid, PointLocation) {
    TriMesh m = tower_on_plate();
    auto q = [](long x, long y, long z) { return Point3{make_rational(x, 2), make_rational(y, 2), make_rational(z, 2)}; };
    EXPECT_EQ(locate_in_solid(m, q(6, 6, 7)), SolidLocation::inside);
    EXPECT_EQ(locate_in_solid(m, q(1, 1, 5)), SolidLocation::outside);
    EXPECT_EQ(locate_in_solid(m, q(1, 1, 4)), SolidLocation::boundary);
    EXPECT_EQ(locate_in_solid(m, q(1, 1, 1)), SolidLocation::inside);
}

TEST(Grouping, CubeAndTetrahedron) {
    auto cg = group_coplanar(cube());
    ASSERT_EQ(cg.size(), 6u);
    for (const auto& g : cg) {
        EXPECT_EQ(g.triangles.size(), 2u);
        EXPECT_TRUE(g.section.empty());
    }
    auto tg = group_coplanar(tetrahedron());
    ASSERT_EQ(tg.size(), 4u);
    for (const auto& g : tg) EXPECT_EQ(g.triangles.size(), 1u);
}

TEST(Grouping, PartitionIsSound) {
    for (const TriMesh& m : {cube(), tetrahedron(), stepped_block(), tower_on_plate(), u_channel()}) {
        auto gs = group_coplanar(m);
        std::vector<int> seen(m.triangles.size(), 0);
        for (std::size_t i = 0; i < gs.size(); ++i) {
            for (std::size_t j = i + 1; j < gs.size(); ++j) EXPECT_FALSE(gs[i].plane == gs[j].plane);
            for (auto t : gs[i].triangles) {
                ++seen[t];
                for (const auto& p : m.corners(t)) EXPECT_EQ(gs[i].plane.side(p), 0);
            }
        }
        for (int s : seen) EXPECT_EQ(s, 1);
    }
}

TEST(Grouping, LedgesShareAPlane) {
    auto gs = group_coplanar(stepped_block());
    const auto& ledge = group_with_normal(gs, 0, 0, 1, 2);
    EXPECT_EQ(ledge.triangles.size(), 4u);
}

TEST(CrossSection, SupportingPlanesAreEmpty) {
    for (const auto& g : group_coplanar(cube())) EXPECT_TRUE(g.section.empty());
}

TEST(CrossSection, LedgePlaneCutsTheTower) {
    auto gs = group_coplanar(stepped_block());
    const auto& ledge = group_with_normal(gs, 0, 0, 1, 2);
    EXPECT_EQ(ledge.section.components, 1);
    Polygon expect{{2, 0}, {4, 0}, {4, 2}, {2, 2}};
    EXPECT_EQ(ledge.hull(), normalize_polygon(expect));
}

TEST(CrossSection, MiddleOfAConvexSolid) {
    TriMesh m = tetrahedron();
    PlaneKey mid{{0, 0, 1}, 1};
    auto cs = cross_section(m, mid);
    EXPECT_EQ(cs.components, 1);
    Polygon expect{{0, 0}, {2, 0}, {0, 2}};
    EXPECT_EQ(cs.hull, normalize_polygon(expect));
}

TEST(CrossSection, ChannelFloorSeesBothWalls) {
    auto gs = group_coplanar(u_channel());
    const auto& floor = group_with_normal(gs, 0, 0, 1, 2);
    EXPECT_EQ(floor.section.components, 2);
    EXPECT_EQ(floor.hull().size(), 4u);
}

TEST(Feasibility, MatchesCandidateEnumeration) {
    for (const TriMesh& m : {cube(), tetrahedron(), stepped_block(), tower_on_plate(), u_channel()}) {
        for (const auto& g : group_coplanar(m)) {
            auto ok = face_feasibility(g);
            ASSERT_EQ(ok.size(), g.faces.size());
            for (std::size_t i = 0; i < ok.size(); ++i) EXPECT_EQ(ok[i], face_free_oracle(g.faces[i], g.hull()));
        }
    }
}

TEST(Feasibility, ChannelFloorIsBlocked) {
    auto gs = group_coplanar(u_channel());
    const auto& floor = group_with_normal(gs, 0, 0, 1, 2);
    for (bool b : face_feasibility(floor)) EXPECT_FALSE(b);
    try {
        solve_carving(u_channel());
        FAIL();
    } catch (const CarvingInfeasible& e) {
        EXPECT_EQ(e.blocked.size(), floor.triangles.size());
    }
}

TEST(Carving, ConvexSolidsNeedOneCutPerPlane) {
    EXPECT_EQ(solve_carving(cube()).total, 6);
    auto t = solve_carving(tetrahedron());
    EXPECT_EQ(t.total, 4);
    for (const auto& g : t.groups) EXPECT_EQ(g.method, GroupMethod::empty_section);
}

TEST(Carving, GroupsMatchThePlanarOracle) {
    for (const TriMesh& m : {stepped_block(), tower_on_plate()}) {
        auto gs = group_coplanar(m);
        auto cuts = solve_carving(gs);
        long sum = 0;
        for (const auto& gc : cuts.groups) {
            const auto& g = gs[gc.group];
            int want = carve_group_oracle(g.hull(), g.edges);
            EXPECT_EQ(static_cast<long>(gc.cuts.size()), want);
            sum += want;
            EXPECT_TRUE(validate_cuts(g.hull(), g.edges, gc.planar));
        }
        EXPECT_EQ(cuts.total, sum);
    }
}

TEST(Carving, CoplanarGroupsUseTheirCrossSection) {
    auto sb = group_coplanar(stepped_block());
    auto cs = solve_carving(sb);
    for (const auto& gc : cs.groups)
        if (sb[gc.group].plane == group_with_normal(sb, 0, 0, 1, 2).plane) {
            EXPECT_EQ(gc.method, GroupMethod::few_cuts);
            EXPECT_EQ(gc.cuts.size(), 2u);
        }
    auto tp = group_coplanar(tower_on_plate());
    auto ct = solve_carving(tp);
    for (const auto& gc : ct.groups)
        if (tp[gc.group].plane == group_with_normal(tp, 0, 0, 1, 2).plane) {
            EXPECT_EQ(gc.method, GroupMethod::separation);
            EXPECT_EQ(gc.cuts.size(), 4u);
        }
}

TEST(Carving, LiftedCutsLieInTheirPlane) {
    auto gs = group_coplanar(tower_on_plate());
    for (const auto& gc : solve_carving(gs).groups)
        for (const auto& c : gc.cuts) {
            RPoint3 n(c.plane.normal_vec());
            EXPECT_EQ(dot(n, c.point), Radical(c.plane.offset));
            EXPECT_EQ(dot(n, c.direction).sign(), 0);
            EXPECT_EQ(dot(n, c.side).sign(), 0);
            EXPECT_NE(dot(cross(c.direction, c.side), n).sign(), 0);
        }
}

TEST(Carving, Metamorphic) {
    for (const TriMesh& m : {tetrahedron(), stepped_block(), tower_on_plate()}) {
        long k = solve_carving(m).total;
        for (int q = 0; q < 4; ++q) {
            Point3 shift{make_rational(7, 3), Rational(-2), make_rational(1, 5)};
            EXPECT_EQ(solve_carving(transform_mesh(m, shift, q)).total, k) << q;
        }
    }
}

}  // namespace
}  // namespace aac
