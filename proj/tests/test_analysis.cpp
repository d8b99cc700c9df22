#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace ptv;

namespace {

// Euler characteristic of the (unnormalized) link of vertex v counted straight
// from the triangulation: edge ends at v, face corners at v, tetrahedron corners at v.
int link_euler_by_counting(const Triangulation& t, int v)
{
    int ends = 0;
    for (const auto& e : t.edges()) ends += (e.tail == v) + (e.head == v);
    int face_corners = 0;
    for (int f = 0; f < t.face_count(); ++f) {
        auto [tet, face] = t.face_slots(f).front();
        for (int s : face_vertices(face)) face_corners += t.vertex_of(tet, s) == v;
    }
    int tet_corners = 0;
    for (int a = 0; a < t.tet_count(); ++a) {
        for (int s = 0; s < 4; ++s) tet_corners += t.vertex_of(a, s) == v;
    }
    return ends - face_corners + tet_corners;
}

Complex2 surface(const std::vector<std::array<Label, 3>>& tris) { return Complex2::from_vertex_triples(tris); }

} // namespace

TEST_CASE("surface classification", "[surface]")
{
    auto torus = example_surface("torus7");
    auto c = classify_surface(torus);
    REQUIRE(c.components.size() == 1);
    CHECK(c.components[0].orientable);
    CHECK(c.components[0].euler == 0);
    CHECK(c.pinches.empty());
    CHECK(torus.vertex_count() == 7);
    CHECK(torus.edge_count() == 21);

    auto sphere = classify_surface(example_surface("sphere-bd-tet"));
    CHECK(sphere.is_sphere());

    // projective plane: 6-vertex minimal triangulation (10 triangles)
    auto rp2 = classify_surface(surface({{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 6, 2}, {2, 3, 5}, {3, 4, 6}, {4, 5, 2}, {5, 6, 3}, {6, 2, 4}}));
    REQUIRE(rp2.components.size() == 1);
    CHECK(rp2.components.front().euler == 1);
    CHECK_FALSE(rp2.components.front().orientable);

    // two tetrahedron boundaries sharing a vertex
    auto wedge = classify_surface(surface({{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}, {0, 5, 6}, {0, 4, 6}, {0, 4, 5}, {4, 5, 6}}));
    CHECK(wedge.components.size() == 2);
    REQUIRE(wedge.pinches.size() == 1);
    CHECK(wedge.pinches[0].label == 0);
    CHECK(wedge.pinches[0].circles == 2);
    CHECK(wedge.raw_euler == 3);
}

TEST_CASE("5-tetrahedron sphere has no singular skeleton", "[analysis]")
{
    auto t = example_triangulation("s3-bd4simplex");
    auto rep = skeletons(t);
    CHECK(rep.x0_vertices.empty());
    CHECK(rep.x1_vertices.empty());
    CHECK(rep.x1_edges.empty());
    CHECK(rep.gamma.nodes.empty());
    for (int v = 0; v < t.vertex_count(); ++v) {
        CHECK(rep.links[static_cast<std::size_t>(v)].is_sphere());
        CHECK(link_euler_by_counting(t, v) == 2);
    }
}

TEST_CASE("suspended torus: the apexes are X(0) and X(1) = X(0)", "[analysis]")
{
    auto t = example_triangulation("susp-torus");
    auto rep = skeletons(t);
    std::set<Label> apex_labels;
    for (int v : rep.x0_vertices) apex_labels.insert(t.vertex_label(v));
    CHECK(apex_labels == std::set<Label>{7, 8});
    CHECK(rep.x1_vertices == rep.x0_vertices);
    CHECK(rep.x1_edges.empty());
    for (int v = 0; v < t.vertex_count(); ++v) {
        int chi = link_euler_by_counting(t, v);
        CHECK(chi == rep.links[static_cast<std::size_t>(v)].raw_euler);
        CHECK(chi == (t.vertex_label(v) >= 7 ? 0 : 2));
    }
    CHECK(rep.gamma.arcs.empty());
    CHECK(rep.gamma.nodes.size() == 2);
}

TEST_CASE("pinched sphere has one X(0) point", "[analysis]")
{
    auto t = example_triangulation("pinched-s3");
    auto rep = skeletons(t);
    REQUIRE(rep.x0_vertices.size() == 1);
    const int v = rep.x0_vertices.front();
    CHECK(link_euler_by_counting(t, v) == 4); // two disjoint spheres
    CHECK(rep.links[static_cast<std::size_t>(v)].components.size() == 2);
    CHECK(rep.x1_edges.empty());
}

TEST_CASE("core circle of the k = 2 mapping cylinder", "[analysis]")
{
    auto t = mapping_cylinder_attach(example_triangulation("solid-torus"), 0, 2, 3);
    auto rep = skeletons(t);
    CHECK(rep.x0_vertices.empty());
    REQUIRE(rep.x1_edges.size() == 3);
    for (int e : rep.x1_edges) CHECK(t.edge(e).circle_count() == 2);
    CHECK(rep.x1_vertices.size() == 3);
    for (int v : rep.x1_vertices) {
        const auto& link = rep.links[static_cast<std::size_t>(v)];
        // two spheres glued at both poles
        CHECK(link.components.size() == 2);
        CHECK(link.pinches.size() == 2);
        CHECK(link_euler_by_counting(t, v) == 2);
    }
    REQUIRE(rep.gamma.arcs.size() == 1);
    CHECK(rep.gamma.arcs[0].k == 2);
    CHECK(rep.gamma.arcs[0].interior_vertices() == 3);
    CHECK(rep.gamma.nodes.size() == 1);
    CHECK(rep.gamma.nodes[0].circle);
}

TEST_CASE("gamma classes distinguish circle length and k", "[analysis]")
{
    auto st = example_triangulation("solid-torus");
    auto a = skeletons(mapping_cylinder_attach(st, 0, 2, 3));
    auto b = skeletons(mapping_cylinder_attach(st, 0, 2, 4));
    auto c = skeletons(mapping_cylinder_attach(st, 0, 3, 3));
    CHECK_FALSE(same_gamma_class(a, b));
    CHECK_FALSE(same_gamma_class(a, c));
    CHECK(same_gamma_class(a, skeletons(mapping_cylinder_attach(st, 0, 2, 3))));
    CHECK(same_gamma_class(skeletons(example_triangulation("s3-bd4simplex")), skeletons(example_triangulation("s3-two-tet"))));
}

TEST_CASE("skeleton analysis refuses complexes with boundary", "[analysis]")
{
    CHECK_THROWS_AS(skeletons(example_triangulation("solid-torus")), Error);
}

TEST_CASE("vertex natures from link data", "[analysis]")
{
    SurfaceClassification s;
    s.components.push_back({true, 2, 4, {}});
    CHECK(nature_of_link(s) == VertexNature::manifoldPoint);
    s.components.push_back({true, 2, 4, {}});
    CHECK(nature_of_link(s) == VertexNature::x0Point); // two spheres, no pinch
    s.pinches.push_back({0, 0, 2, {0, 1}});
    s.pinches.push_back({1, 1, 2, {0, 1}});
    int k = 0;
    CHECK(nature_of_link(s, &k) == VertexNature::x1NotX0);
    CHECK(k == 2);
    s.components[1].euler = 0;
    CHECK(nature_of_link(s) == VertexNature::x0Point);
}
