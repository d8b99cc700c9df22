#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace ptv;

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

int vertex_with_label(const Triangulation& t, Label l)
{
    for (int v = 0; v < t.vertex_count(); ++v) {
        if (t.vertex_label(v) == l) return v;
    }
    return -1;
}

} // namespace

TEST_CASE("1-4 move counts", "[moves]")
{
    auto t = example_triangulation("s3-bd4simplex");
    auto u = move_14(t, 2);
    CHECK(u.tet_count() == t.tet_count() + 3);
    CHECK(u.vertex_count() == t.vertex_count() + 1);
    CHECK(u.edge_count() == t.edge_count() + 4);
    CHECK(u.face_count() == t.face_count() + 6);
    CHECK(u.euler_characteristic() == 0);
    CHECK(u.closed());
    CHECK(oracle::count_vertices(u) == u.vertex_count());
    const int apex = vertex_with_label(u, t.max_label() + 1);
    REQUIRE(apex >= 0);
    CHECK(u.vertex_corners(apex).size() == 4);
    CHECK(classify_vertex_link(u, apex).is_sphere());
}

TEST_CASE("1-4 then 4-1 restores the complex", "[moves][property]")
{
    for (const auto& name : {"s3-bd4simplex", "s3-two-tet", "susp-torus"}) {
        auto t = example_triangulation(name);
        for (int tet : {0, t.tet_count() - 1}) {
            auto u = move_14(t, tet);
            int apex = vertex_with_label(u, t.max_label() + 1);
            CHECK_FALSE(check_41(u, apex).has_value());
            auto back = move_41(u, apex);
            CHECK(isomorphism_signature(back) == isomorphism_signature(t));
        }
    }
}

TEST_CASE("2-3 then 3-2 restores the complex", "[moves][property]")
{
    auto t = example_triangulation("s3-bd4simplex");
    for (int f = 0; f < t.face_count(); ++f) {
        REQUIRE_FALSE(check_23(t, f).has_value());
        auto u = move_23(t, f);
        CHECK(u.tet_count() == t.tet_count() + 1);
        CHECK(u.edge_count() == t.edge_count() + 1);
        CHECK(u.vertex_count() == t.vertex_count());
        // the new edge is the unique class of degree 3 whose removal restores t
        bool restored = false;
        for (int e : legal_targets(u, MoveKind::m32)) {
            if (isomorphism_signature(move_32(u, e)) == isomorphism_signature(t)) restored = true;
        }
        CHECK(restored);
    }
}

TEST_CASE("2-3 creates a parallel edge rather than merging", "[moves]")
{
    // in the two-tetrahedron sphere every face joins the same pair of tetrahedra
    auto t = example_triangulation("s3-two-tet");
    auto u = move_23(t, 0);
    CHECK(u.edge_count() == 7);
    CHECK(u.tet_count() == 3);
    CHECK(oracle::count_vertices(u) == 4);
}

TEST_CASE("illegal moves report their reason", "[moves]")
{
    auto t = example_triangulation("s3-bd4simplex");
    // every vertex of the 4-simplex boundary lies in four tetrahedra
    CHECK(code_of([&] { move_41(t, 0); }) == std::nullopt);
    CHECK(isomorphism_signature(move_41(t, 0)) == isomorphism_signature(example_triangulation("s3-two-tet")));
    CHECK(code_of([&] { move_41(move_14(t, 0), 0); }) == ErrorCode::NotFourValent);
    CHECK(code_of([&] { move_32(t, 0); }) == std::nullopt);
    CHECK(code_of([&] { move_14(t, 9); }) == ErrorCode::InvalidId);
    CHECK(code_of([&] { move_23(t, 99); }) == ErrorCode::InvalidId);
    auto two = example_triangulation("s3-two-tet");
    CHECK(code_of([&] { move_32(two, 0); }) == ErrorCode::EdgeDegreeNot3);
    auto st = example_triangulation("solid-torus");
    int boundary_face = -1;
    for (int f = 0; f < st.face_count(); ++f) {
        if (st.face_slots(f).size() == 1) boundary_face = f;
    }
    CHECK(code_of([&] { move_23(st, boundary_face); }) == ErrorCode::BoundaryFace);
    int self_face = -1;
    for (int f = 0; f < st.face_count(); ++f) {
        if (st.face_slots(f).size() == 2) self_face = f;
    }
    CHECK(code_of([&] { move_23(st, self_face); }) == ErrorCode::SameTetrahedron);
    auto mc = mapping_cylinder_attach(st, 0, 2, 3);
    auto rep = skeletons(mc);
    CHECK(code_of([&] { move_32(mc, rep.x1_edges.front()); }) == ErrorCode::SingularEdge);
    for (int v : rep.x1_vertices) CHECK(check_41(mc, v).has_value());
}

TEST_CASE("walks are reproducible", "[moves]")
{
    auto t = example_triangulation("susp-torus");
    auto a = random_walk(t, 15, 42);
    auto b = random_walk(t, 15, 42);
    REQUIRE(a.trace.size() == 15);
    for (std::size_t i = 0; i < a.trace.size(); ++i) CHECK(a.trace[i].move == b.trace[i].move);
    CHECK(a.result == b.result);
    auto c = random_walk(t, 15, 43);
    bool differs = !(c.result == a.result);
    for (std::size_t i = 0; i < c.trace.size(); ++i) differs = differs || !(c.trace[i].move == a.trace[i].move);
    CHECK(differs);
    CHECK(code_of([&] { random_walk(example_triangulation("solid-torus"), 1, 1); }) == ErrorCode::NotClosed);
}

TEST_CASE("moves preserve the singular skeleton", "[moves][property]")
{
    for (const auto& name : {"susp-torus", "pinched-s3"}) {
        auto t = example_triangulation(name);
        const auto gamma = skeletons(t).gamma.labeled;
        const int chi = t.euler_characteristic();
        random_walk(t, 25, 7, {}, [&](const WalkStep& s, const Triangulation& snap) {
            INFO(name << " step " << s.step);
            CHECK(skeletons(snap).gamma.labeled == gamma);
            CHECK(snap.euler_characteristic() == chi);
            CHECK(oracle::count_vertices(snap) == snap.vertex_count());
        });
    }
    auto mc = mapping_cylinder_attach(example_triangulation("solid-torus"), 0, 2, 3);
    const auto gamma = skeletons(mc).gamma.labeled;
    random_walk(mc, 25, 8, {}, [&](const WalkStep&, const Triangulation& snap) { CHECK(skeletons(snap).gamma.labeled == gamma); });
}

TEST_CASE("weights restrict the move kinds", "[moves]")
{
    MoveWeights only23{0, 0, 1, 0};
    auto w = random_walk(example_triangulation("s3-bd4simplex"), 6, 1, only23);
    for (const auto& s : w.trace) CHECK(s.move.kind == MoveKind::m23);
    CHECK(w.result.tet_count() == 11);
    MoveWeights none{0, 0, 0, 0};
    CHECK(code_of([&] { random_walk(example_triangulation("s3-bd4simplex"), 1, 1, none); }) == ErrorCode::NoLegalMove);
}

TEST_CASE("state sum is unchanged by each move kind", "[moves][property]")
{
    auto t = example_triangulation("pinched-s3");
    QuantumParams p(4);
    const cplx v = state_sum(t, p).value;
    auto a = move_14(t, 1);
    auto b = move_23(t, 3);
    int apex = vertex_with_label(a, t.max_label() + 1);
    auto c = move_41(a, apex);
    CHECK(std::abs(state_sum(a, p).value - v) < 1e-10);
    CHECK(std::abs(state_sum(b, p).value - v) < 1e-10);
    CHECK(std::abs(state_sum(c, p).value - v) < 1e-10);
    auto e = legal_targets(b, MoveKind::m32);
    REQUIRE_FALSE(e.empty());
    CHECK(std::abs(state_sum(move_32(b, e.front()), p).value - v) < 1e-10);
}
