#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace ptv;
using Catch::Matchers::WithinRel;

namespace {

std::optional<ErrorCode> code_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

Triangulation single_tet()
{
    std::vector<std::array<Label, 4>> tuples{{0, 1, 2, 3}};
    return Triangulation::from_vertex_tuples(tuples);
}

double sphere_value(int r) { return 1.0 / oracle::rank_squared_by_sum(r); }

} // namespace

TEST_CASE("example library", "[constructions]")
{
    CHECK(example_names().size() == 7);
    for (const auto& name : example_names()) CHECK_NOTHROW(example(name));
    CHECK(code_of([] { example("no-such-thing"); }) == ErrorCode::UnknownExample);
    CHECK(code_of([] { example_triangulation("torus7"); }) == ErrorCode::UnknownExample);
    auto st = example_triangulation("solid-torus");
    CHECK(st.tet_count() == 1);
    auto bc = boundary_components(st);
    REQUIRE(bc.components.size() == 1);
    CHECK(bc.components[0].is_torus());
    CHECK(bc.components[0].triangles.size() == 2);
}

TEST_CASE("coning a ball gives a sphere", "[constructions]")
{
    auto c = cone_boundary(single_tet(), {{0}});
    CHECK(c.closed());
    CHECK(c.tet_count() == 5);
    CHECK(c.vertex_count() == 5);
    CHECK(skeletons(c).x1_vertices.empty());
    for (int r = 3; r <= 5; ++r) CHECK_THAT(state_sum(c, QuantumParams(r)).value.real(), WithinRel(sphere_value(r), 1e-10));
}

TEST_CASE("cone groups", "[constructions]")
{
    auto two = disjoint_union(single_tet(), single_tet());
    CHECK(boundary_components(two).components.size() == 2);
    auto separate = cone_boundary(two, {{0}, {1}});
    auto joint = cone_boundary(two, {{0, 1}});
    CHECK(separate.vertex_count() == 10);
    CHECK(joint.vertex_count() == 9);
    QuantumParams p(4);
    // two spheres, and two spheres sharing their cone point (wedge)
    CHECK_THAT(state_sum(separate, p).value.real(), WithinRel(std::pow(sphere_value(4), 2), 1e-10));
    CHECK_THAT(state_sum(joint, p).value.real(), WithinRel(sphere_value(4), 1e-10));
    CHECK(skeletons(joint).x0_vertices.size() == 1);
    CHECK(code_of([&] { cone_boundary(two, {{0}}); }) == ErrorCode::PartitionInvalid);
    CHECK(code_of([&] { cone_boundary(two, {{0, 0}, {1}}); }) == ErrorCode::PartitionInvalid);
    CHECK(code_of([&] { cone_boundary(two, {{0}, {3}}); }) == ErrorCode::PartitionInvalid);
    CHECK(code_of([&] { cone_boundary(two, {{}, {0, 1}}); }) == ErrorCode::PartitionInvalid);
    CHECK(code_of([&] { cone_boundary(example_triangulation("s3-two-tet"), {{0}}); }) == ErrorCode::NotBoundary);
}

TEST_CASE("coning the solid torus", "[constructions]")
{
    auto c = cone_boundary(example_triangulation("solid-torus"), {{0}});
    CHECK(c.tet_count() == 3);
    auto rep = skeletons(c);
    REQUIRE(rep.x0_vertices.size() == 1);
    const auto& link = rep.links[static_cast<std::size_t>(rep.x0_vertices.front())];
    REQUIRE(link.components.size() == 1);
    CHECK(link.components[0].euler == 0);
}

TEST_CASE("identifying vertices scales by the squared rank", "[constructions]")
{
    auto s = example_triangulation("s3-bd4simplex");
    for (int r = 3; r <= 5; ++r) {
        QuantumParams p(r);
        CHECK_THAT(state_sum(identify_vertices(s, {{0, 1}}), p).value.real(), WithinRel(1.0, 1e-10));
        CHECK_THAT(state_sum(identify_vertices(s, {{0, 1, 2}}), p).value.real(), WithinRel(oracle::rank_squared_by_sum(r), 1e-10));
    }
    CHECK(identify_vertices(s, {{0, 1}, {2, 3}}).vertex_count() == 3);
    CHECK(code_of([&] { identify_vertices(s, {{0, 7}}); }) == ErrorCode::InvalidId);
    CHECK(code_of([&] { identify_vertices(s, {{0, 1}, {1, 2}}); }) == ErrorCode::PartitionInvalid);
}

TEST_CASE("wedge of two spheres", "[constructions]")
{
    auto s = example_triangulation("s3-bd4simplex");
    auto u = disjoint_union(s, s);
    CHECK(u.vertex_count() == 10);
    auto w = identify_vertices(u, {{0, 5}});
    auto rep = skeletons(w);
    CHECK(rep.x0_vertices.size() == 1);
    for (int r = 3; r <= 4; ++r) CHECK_THAT(state_sum(w, QuantumParams(r)).value.real(), WithinRel(sphere_value(r), 1e-10));
}

TEST_CASE("suspension", "[constructions]")
{
    auto s = suspension(example_surface("sphere-bd-tet"));
    CHECK(s.tet_count() == 8);
    CHECK(s.vertex_count() == 6);
    CHECK(skeletons(s).x1_vertices.empty());
    CHECK_THAT(state_sum(s, QuantumParams(4)).value.real(), WithinRel(sphere_value(4), 1e-10));
    auto st = example_triangulation("susp-torus");
    CHECK(st.tet_count() == 28);
    CHECK(st.vertex_count() == 9);
    CHECK(st.edge_count() == 21 + 14);
    std::vector<std::array<Label, 3>> disk{{0, 1, 2}};
    CHECK(code_of([&] { suspension(Complex2::from_vertex_triples(disk)); }) == ErrorCode::NotClosedSurfaceComplex);
}

TEST_CASE("mapping cylinder: k = 1 closes the solid torus into a sphere", "[constructions][mapcyl]")
{
    auto st = example_triangulation("solid-torus");
    for (int m : {3, 4}) {
        auto t = mapping_cylinder_attach(st, 0, 1, m);
        CHECK(t.closed());
        auto rep = skeletons(t);
        CHECK(rep.x1_vertices.empty());
        CHECK(rep.x1_edges.empty());
        for (int r = 3; r <= 5; ++r) CHECK_THAT(state_sum(t, QuantumParams(r)).value.real(), WithinRel(sphere_value(r), 1e-9));
    }
}

TEST_CASE("mapping cylinder: core circle structure", "[constructions][mapcyl]")
{
    auto st = example_triangulation("solid-torus");
    for (int k : {2, 3}) {
        for (int m : {3, 4, 5}) {
            INFO("k = " << k << " m = " << m);
            auto t = mapping_cylinder_attach(st, 0, k, m);
            CHECK(validate(t).status == Validity::closedPseudomanifold);
            CHECK(oracle::count_vertices(t) == t.vertex_count());
            auto rep = skeletons(t);
            CHECK(rep.x0_vertices.empty());
            CHECK(static_cast<int>(rep.x1_edges.size()) == m);
            CHECK(static_cast<int>(rep.x1_vertices.size()) == m);
            for (int e : rep.x1_edges) CHECK(static_cast<int>(t.edge(e).circle_count()) == k);
            REQUIRE(rep.gamma.arcs.size() == 1);
            CHECK(rep.gamma.arcs[0].interior_vertices() == m);
            CHECK(rep.gamma.arcs[0].k == k);
        }
    }
}

TEST_CASE("mapping cylinder on a larger solid torus", "[constructions][mapcyl]")
{
    auto prism = detail::example_prism_solid_torus(3, 3);
    auto bc = boundary_components(prism);
    REQUIRE(bc.components.size() == 1);
    CHECK(bc.components[0].is_torus());
    auto small = skeletons(mapping_cylinder_attach(example_triangulation("solid-torus"), 0, 2, 3));
    auto big = mapping_cylinder_attach(prism, 0, 2, 3);
    auto rep = skeletons(big);
    CHECK(same_gamma_class(rep, small));
    for (int v : rep.x1_vertices) CHECK(rep.nature[static_cast<std::size_t>(v)] == VertexNature::x1NotX0);
}

TEST_CASE("mapping cylinder value does not depend on the input triangulation", "[constructions][mapcyl][property]")
{
    auto st = example_triangulation("solid-torus");
    auto refined = move_14(st, 0);
    QuantumParams p(4);
    for (int m : {3, 4}) {
        auto a = state_sum(mapping_cylinder_attach(st, 0, 2, m), p);
        auto b = state_sum(mapping_cylinder_attach(refined, 0, 2, m), p);
        CHECK(state_sum_deviation(a, b) < 1e-9);
    }
}

TEST_CASE("mapping cylinder errors", "[constructions][mapcyl]")
{
    auto st = example_triangulation("solid-torus");
    CHECK(code_of([&] { mapping_cylinder_attach(st, 0, 2, 2); }) == ErrorCode::GridIncompatible);
    CHECK(code_of([&] { mapping_cylinder_attach(st, 0, 0, 3); }) == ErrorCode::GridIncompatible);
    CHECK(code_of([&] { mapping_cylinder_attach(st, 1, 2, 3); }) == ErrorCode::InvalidId);
    CHECK(code_of([&] { mapping_cylinder_attach(single_tet(), 0, 2, 3); }) == ErrorCode::NotTorusBoundary);
    CHECK(code_of([&] { mapping_cylinder_attach(example_triangulation("s3-bd4simplex"), 0, 2, 3); }) == ErrorCode::NotTorusBoundary);
}
