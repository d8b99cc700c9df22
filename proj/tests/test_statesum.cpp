#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace ptv;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

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

} // namespace

TEST_CASE("boundary of the 4-simplex at r = 3", "[statesum]")
{
    auto t = example_triangulation("s3-bd4simplex");
    QuantumParams p(3);
    std::uint64_t count = 0;
    cplx brute = oracle::brute_state_sum(t, p, &count);
    auto res = state_sum(t, p);
    CHECK_THAT(brute.real(), WithinAbs(0.5, 1e-12));
    CHECK_THAT(res.value.real(), WithinAbs(0.5, 1e-12));
    CHECK_THAT(res.value.imag(), WithinAbs(0.0, 1e-12));
    CHECK(res.colorings == count);
    CHECK(res.a == 5);
    CHECK(res.edges == 10);
}

TEST_CASE("3-sphere value is the inverse squared rank", "[statesum]")
{
    for (const char* name : {"s3-bd4simplex", "s3-two-tet"}) {
        auto t = example_triangulation(name);
        for (int r = 2; r <= 6; ++r) {
            QuantumParams p(r);
            INFO(name << " r = " << r);
            CHECK_THAT(state_sum(t, p).value.real(), WithinRel(1.0 / oracle::rank_squared_by_sum(r), 1e-10));
        }
    }
    QuantumParams p(5, 3);
    CHECK_THAT(state_sum(example_triangulation("s3-two-tet"), p).value.real(), WithinRel(1.0 / p.rank_squared_real(), 1e-10));
}

TEST_CASE("r = 2 gives (rank^2)^-a exactly", "[statesum]")
{
    QuantumParams p(2);
    for (const auto& name : {"s3-bd4simplex", "pinched-s3", "susp-torus"}) {
        auto t = example_triangulation(name);
        auto res = state_sum(t, p);
        CHECK(res.colorings == 1);
        CHECK(res.value.real() == 1.0);
    }
}

TEST_CASE("contraction agrees with brute force on small complexes", "[statesum]")
{
    std::vector<Triangulation> cases{example_triangulation("s3-two-tet"), example_triangulation("pinched-s3"),
                                     move_23(example_triangulation("s3-bd4simplex"), 0)};
    for (std::size_t i = 0; i < cases.size(); ++i) {
        for (int r : {3, 4}) {
            QuantumParams p(r);
            if (std::pow(p.color_count(), cases[i].edge_count()) > 3e6) continue;
            INFO("case " << i << " r = " << r);
            std::uint64_t count = 0;
            cplx brute = oracle::brute_state_sum(cases[i], p, &count);
            auto res = state_sum(cases[i], p);
            CHECK(std::abs(res.value - brute) < 1e-10 * std::max(1.0, std::abs(brute)));
            CHECK(res.colorings == count);
        }
    }
}

TEST_CASE("explicit edge orders give the same value", "[statesum][property]")
{
    auto t = example_triangulation("s3-bd4simplex");
    QuantumParams p(4);
    const cplx base = state_sum(t, p).value;
    std::vector<int> order(static_cast<std::size_t>(t.edge_count()));
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(order.begin(), order.end(), rng);
        StateSumOptions opt;
        opt.order = order;
        CHECK(std::abs(state_sum(t, p, opt).value - base) < 1e-12);
    }
    StateSumOptions bad;
    bad.order = {0, 1, 2};
    CHECK(has_code([&] { state_sum(t, p, bad); }, ErrorCode::InvalidId));
    bad.order = std::vector<int>(10, 0);
    CHECK(has_code([&] { state_sum(t, p, bad); }, ErrorCode::InvalidId));
}

TEST_CASE("state sum errors", "[statesum]")
{
    QuantumParams p(3);
    CHECK(has_code([&] { state_sum(example_triangulation("solid-torus"), p); }, ErrorCode::NotClosed));
    StateSumOptions tiny;
    tiny.branch_cap = 10;
    CHECK(has_code([&] { state_sum(example_triangulation("susp-torus"), QuantumParams(4), tiny); }, ErrorCode::Overflow));
}

TEST_CASE("jobs do not change a single bit", "[statesum][property]")
{
    for (const auto& name : {"s3-bd4simplex", "s3-two-tet", "susp-torus"}) {
        auto t = example_triangulation(name);
        for (int r : {3, 4}) {
            QuantumParams p(r);
            StateSumOptions one, many;
            many.jobs = 8;
            auto a = state_sum(t, p, one);
            auto b = state_sum(t, p, many);
            CHECK(a.value.real() == b.value.real());
            CHECK(a.value.imag() == b.value.imag());
            CHECK(a.magnitude == b.magnitude);
            CHECK(a.colorings == b.colorings);
        }
    }
}

TEST_CASE("disjoint union multiplies values", "[statesum][property]")
{
    auto s = example_triangulation("s3-bd4simplex");
    auto q = example_triangulation("pinched-s3");
    auto u = example_triangulation("susp-torus");
    for (int r : {3, 4}) {
        QuantumParams p(r);
        cplx vs = state_sum(s, p).value, vq = state_sum(q, p).value, vu = state_sum(u, p).value;
        CHECK(std::abs(state_sum(disjoint_union(s, q), p).value - vs * vq) <= 1e-12 * std::abs(vs * vq));
        CHECK(std::abs(state_sum(disjoint_union(u, s), p).value - vu * vs) <= 1e-12 * std::abs(vu * vs));
    }
}

TEST_CASE("enumerate_colorings lists exactly the admissible colorings", "[statesum]")
{
    auto t = example_triangulation("s3-bd4simplex");
    QuantumParams p(3);
    std::uint64_t expected = 0;
    cplx brute = oracle::brute_state_sum(t, p, &expected);
    std::uint64_t seen = 0;
    cplx total{0, 0};
    enumerate_colorings(t, p, [&](const std::vector<int>& colors, cplx weight) {
        ++seen;
        for (int tet = 0; tet < t.tet_count(); ++tet) CHECK(tet_weight(t, tet, colors, p) != cplx{0.0, 0.0});
        total += weight;
    });
    CHECK(seen == expected);
    CHECK(std::abs(total * std::pow(p.rank_squared_real(), -t.vertex_count()) - brute) < 1e-12);
}

TEST_CASE("invariance_check along a walk", "[statesum][property]")
{
    auto t = example_triangulation("pinched-s3");
    auto rep = invariance_check(t, QuantumParams(4), 8, 11);
    CHECK(rep.snapshots.size() == 8);
    CHECK(rep.gammas.size() == 8);
    CHECK(rep.max_deviation < 1e-9);
    CHECK_THAT(rep.initial.value.real(), WithinAbs(1.0, 1e-10));
}

TEST_CASE("magnitude floor for cancelling sums", "[statesum]")
{
    StateSumResult zero_a, zero_b, big;
    zero_a.value = {1e-30, 0};
    zero_a.magnitude = 1.0;
    zero_b.value = {-3e-31, 0};
    zero_b.magnitude = 1.0;
    CHECK(state_sum_deviation(zero_a, zero_b) < 1e-20);
    big.value = {0.5, 0};
    big.magnitude = 0.5;
    CHECK_THAT(state_sum_deviation(big, zero_a), WithinAbs(1.0, 1e-12));
}
