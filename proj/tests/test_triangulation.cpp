#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace ptv;

namespace {

bool has_code(const std::function<void()>& fn, ErrorCode code)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

// distinct label pairs / triples among the tuples
std::pair<int, int> simplicial_counts(const std::vector<std::array<Label, 4>>& tuples)
{
    std::set<std::pair<Label, Label>> edges;
    std::set<std::array<Label, 3>> faces;
    for (const auto& t : tuples) {
        for (int a = 0; a < 4; ++a) {
            for (int b = a + 1; b < 4; ++b) edges.insert(std::minmax(t[static_cast<std::size_t>(a)], t[static_cast<std::size_t>(b)]));
            std::array<Label, 3> f{};
            int k = 0;
            for (int c = 0; c < 4; ++c) {
                if (c != a) f[static_cast<std::size_t>(k++)] = t[static_cast<std::size_t>(c)];
            }
            std::sort(f.begin(), f.end());
            faces.insert(f);
        }
    }
    return {static_cast<int>(edges.size()), static_cast<int>(faces.size())};
}

} // namespace

TEST_CASE("vertex-tuple ingestion of the 4-simplex boundary", "[triangulation]")
{
    std::vector<std::array<Label, 4>> tuples{{0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 3, 4}, {0, 2, 3, 4}, {1, 2, 3, 4}};
    auto t = Triangulation::from_vertex_tuples(tuples);
    auto [ne, nf] = simplicial_counts(tuples);
    CHECK(t.tet_count() == 5);
    CHECK(t.vertex_count() == 5);
    CHECK(t.edge_count() == ne);
    CHECK(t.face_count() == nf);
    CHECK(t.closed());
    CHECK(t.euler_characteristic() == 0);
    for (int e = 0; e < t.edge_count(); ++e) {
        CHECK(t.edge(e).circle_count() == 1);
        CHECK(t.edge(e).slots.size() == 3);
    }
    CHECK(t == example_triangulation("s3-bd4simplex"));
}

TEST_CASE("gluing ingestion of two tetrahedra", "[triangulation]")
{
    auto t = example_triangulation("s3-two-tet");
    CHECK(t.tet_count() == 2);
    CHECK(t.vertex_count() == 4);
    CHECK(t.edge_count() == 6);
    CHECK(t.face_count() == 4);
    CHECK(t.closed());
    CHECK(oracle::count_vertices(t) == t.vertex_count());
}

TEST_CASE("single tetrahedron has boundary", "[triangulation]")
{
    std::vector<std::array<Label, 4>> tuples{{0, 1, 2, 3}};
    auto t = Triangulation::from_vertex_tuples(tuples);
    CHECK_FALSE(t.closed());
    CHECK(t.boundary_face_count() == 4);
    CHECK(validate(t).status == Validity::pseudomanifoldWithBoundary);
    for (const auto& e : t.edges()) {
        CHECK(e.circles.empty());
        CHECK(e.arcs.size() == 1);
    }
}

TEST_CASE("ingestion errors", "[triangulation]")
{
    std::vector<std::array<Label, 4>> repeat{{0, 1, 1, 2}};
    CHECK(has_code([&] { Triangulation::from_vertex_tuples(repeat); }, ErrorCode::BadTuple));
    std::vector<std::array<Label, 4>> three{{0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 2, 5}};
    CHECK(has_code([&] { Triangulation::from_vertex_tuples(three); }, ErrorCode::TripleOvershared));
    std::vector<GluingRecord> self{{0, 1, 0, 1, {0, 1, 2}}};
    CHECK(has_code([&] { Triangulation::from_gluings(1, self); }, ErrorCode::SelfGluedFace));
    std::vector<GluingRecord> reuse{{0, 0, 1, 0, {0, 1, 2}}, {0, 0, 1, 1, {0, 1, 2}}};
    CHECK(has_code([&] { Triangulation::from_gluings(2, reuse); }, ErrorCode::SlotReused));
    std::vector<GluingRecord> perm{{0, 0, 1, 0, {0, 0, 2}}};
    CHECK(has_code([&] { Triangulation::from_gluings(2, perm); }, ErrorCode::BadPermutation));
    std::vector<GluingRecord> range{{0, 0, 3, 0, {0, 1, 2}}};
    CHECK(has_code([&] { Triangulation::from_gluings(2, range); }, ErrorCode::InvalidId));
}

TEST_CASE("folded edge is invalid", "[triangulation]")
{
    // face 012 onto face 013 by 0->1, 1->0, 2->3 sends edge 01 onto itself reversed
    std::vector<GluingRecord> g{{0, 3, 0, 2, {1, 0, 2}}};
    auto t = Triangulation::from_gluings(1, g);
    CHECK_FALSE(t.folded_edges().empty());
    auto res = validate(t);
    CHECK(res.status == Validity::invalid);
    CHECK(has_code([&] { skeletons(t); }, ErrorCode::ComplexNotClosed));
    CHECK(validate(Triangulation{}).status == Validity::invalid);
}

TEST_CASE("vertex classes agree with an independent union-find", "[triangulation][property]")
{
    for (const auto& name : {"s3-bd4simplex", "s3-two-tet", "solid-torus", "pinched-s3", "susp-torus"}) {
        auto t = example_triangulation(name);
        INFO(name);
        CHECK(oracle::count_vertices(t) == t.vertex_count());
    }
    auto mc = mapping_cylinder_attach(example_triangulation("solid-torus"), 0, 2, 3);
    CHECK(oracle::count_vertices(mc) == mc.vertex_count());
}

TEST_CASE("edge class slot counts add up", "[triangulation][property]")
{
    for (const auto& name : {"s3-bd4simplex", "susp-torus", "pinched-s3"}) {
        auto t = example_triangulation(name);
        std::size_t slots = 0;
        for (const auto& e : t.edges()) {
            std::size_t in_circles = 0;
            for (const auto& c : e.circles) in_circles += c.size();
            CHECK(in_circles == e.slots.size());
            slots += e.slots.size();
        }
        CHECK(slots == 6 * static_cast<std::size_t>(t.tet_count()));
    }
}

TEST_CASE("file round trips", "[io]")
{
    for (const auto& name : example_names()) {
        auto e = example(name);
        if (auto* t = std::get_if<Triangulation>(&e)) {
            auto back = triangulation_from_json(json::parse(to_json(*t).dump()));
            CHECK(isomorphism_signature(back) == isomorphism_signature(*t));
            CHECK(back.vertex_count() == t->vertex_count());
            CHECK(back.edge_count() == t->edge_count());
        } else {
            auto s = std::get<Complex2>(e);
            auto back = complex2_from_json(json::parse(to_json(s).dump()));
            CHECK(back.tri_count() == s.tri_count());
            CHECK(back.euler_characteristic() == s.euler_characteristic());
        }
    }
    auto mc = mapping_cylinder_attach(example_triangulation("solid-torus"), 0, 2, 3);
    auto j = to_json(mc);
    auto back = triangulation_from_json(j);
    CHECK(back.edge_count() == mc.edge_count());
    CHECK(skeletons(back).gamma.labeled == skeletons(mc).gamma.labeled);
}

TEST_CASE("malformed files", "[io]")
{
    CHECK(has_code([] { triangulation_from_json(json::parse(R"({"format":"ptri-1"})")); }, ErrorCode::Format));
    CHECK(has_code([] { triangulation_from_json(json::parse(R"({"format":"other","mode":"vertex","tetrahedra":[]})")); }, ErrorCode::Format));
    CHECK(has_code([] { triangulation_from_json(json::parse(R"({"format":"ptri-1","mode":"vertex","tetrahedra":[[0,1,2]]})")); }, ErrorCode::Format));
    CHECK(has_code([] { triangulation_from_json(json::parse(R"({"format":"ptri-1","mode":"vertex","tetrahedra":[["a",1,2,3]]})")); }, ErrorCode::Format));
    CHECK(has_code([] { load_triangulation("/nonexistent/file.ptri"); }, ErrorCode::Format));
}

TEST_CASE("isomorphism signature ignores numbering", "[isosig][property]")
{
    std::vector<std::array<Label, 4>> a{{0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 3, 4}, {0, 2, 3, 4}, {1, 2, 3, 4}};
    std::vector<std::array<Label, 4>> b{{14, 12, 11, 10}, {13, 12, 11, 10}, {14, 13, 10, 12}, {14, 13, 12, 11}, {14, 13, 11, 10}};
    CHECK(isomorphism_signature(Triangulation::from_vertex_tuples(a)) == isomorphism_signature(Triangulation::from_vertex_tuples(b)));
    CHECK(isomorphism_signature(example_triangulation("s3-bd4simplex")) != isomorphism_signature(example_triangulation("s3-two-tet")));
}
