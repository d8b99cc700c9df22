#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace ptv;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("quantum integers at a root of unity", "[quantum]")
{
    QuantumParams p(5);
    // [n] = (a^{2n} - a^{-2n}) / (a^2 - a^{-2}) evaluated with complex arithmetic
    const cplx a = p.a();
    for (int n = 0; n <= 12; ++n) {
        cplx direct = (std::pow(a, 2 * n) - std::pow(a, -2 * n)) / (a * a - 1.0 / (a * a));
        CHECK_THAT(p.qint(n).real(), WithinAbs(direct.real(), 1e-12));
        CHECK_THAT(direct.imag(), WithinAbs(0.0, 1e-12));
    }
    CHECK(p.qint(5) == cplx{0.0, 0.0});
    CHECK(p.qint(10) == cplx{0.0, 0.0});
    CHECK_THAT(p.qint(1).real(), WithinAbs(1.0, 1e-15));
}

TEST_CASE("quantum dimensions and rank", "[quantum]")
{
    for (int r = 2; r <= 9; ++r) {
        QuantumParams p(r);
        CHECK(p.color_count() == r - 1);
        for (int i = 0; i < p.color_count(); ++i) CHECK_THAT(p.qdim_real(i), WithinAbs(oracle::qdim(r, i), 1e-12));
        CHECK_THAT(p.rank_squared_real(), WithinRel(oracle::rank_squared_by_sum(r), 1e-12));
    }
    QuantumParams r3(3);
    CHECK_THAT(r3.qdim_real(1), WithinAbs(-1.0, 1e-14));
    CHECK_THAT(r3.rank_squared_real(), WithinAbs(2.0, 1e-14));
    QuantumParams r2(2);
    CHECK_THAT(r2.rank_squared_real(), WithinAbs(1.0, 1e-14));
}

TEST_CASE("other roots of unity", "[quantum]")
{
    for (int c : {3, 7}) {
        QuantumParams p(5, c);
        double s = 0;
        for (int i = 0; i < p.color_count(); ++i) {
            double d = std::pow(-1.0, i) * std::sin((i + 1) * c * std::numbers::pi / 5) / std::sin(c * std::numbers::pi / 5);
            CHECK_THAT(p.qdim_real(i), WithinAbs(d, 1e-12));
            s += d * d;
        }
        CHECK_THAT(p.rank_squared_real(), WithinRel(s, 1e-12));
    }
    CHECK_THROWS_MATCHES(QuantumParams(5, 5), Error, Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == ErrorCode::InvalidRoot; }));
    CHECK_THROWS_AS(QuantumParams(4, 2), Error);
    CHECK_THROWS_AS(QuantumParams(1), Error);
}

TEST_CASE("admissibility matches the triangle rules", "[quantum]")
{
    for (int r = 2; r <= 6; ++r) {
        QuantumParams p(r);
        for (int i = -1; i <= r; ++i) {
            for (int j = -1; j <= r; ++j) {
                for (int k = -1; k <= r; ++k) CHECK(p.admissible(i, j, k) == oracle::admissible(r, i, j, k));
            }
        }
    }
    QuantumParams p(4);
    CHECK(p.admissible(0, 1, 1));
    CHECK_FALSE(p.admissible(1, 1, 1));
    CHECK_FALSE(p.admissible(2, 2, 2)); // exceeds 2r-4
    CHECK(p.admissible(1, 1, 2));
}

TEST_CASE("6j gate is exact on every key", "[quantum]")
{
    for (int r = 2; r <= 4; ++r) {
        QuantumParams p(r);
        const int nc = p.color_count();
        SixJKey key{};
        std::function<void(int)> scan = [&](int d) {
            if (d == 6) {
                bool adm = oracle::admissible(r, key[0], key[1], key[2]) && oracle::admissible(r, key[0], key[4], key[5]) &&
                           oracle::admissible(r, key[1], key[3], key[5]) && oracle::admissible(r, key[2], key[3], key[4]);
                if (!adm) CHECK(p.sixj(key) == cplx{0.0, 0.0});
                return;
            }
            for (int c = 0; c < nc; ++c) {
                key[static_cast<std::size_t>(d)] = c;
                scan(d + 1);
            }
        };
        scan(0);
    }
    QuantumParams p(3);
    CHECK_THROWS_AS(p.sixj(SixJKey{0, 0, 0, 0, 0, 2}), Error);
}

TEST_CASE("6j values with a trivial color", "[quantum]")
{
    // With one color 0 the tetrahedron degenerates; the weight depends only on
    // the dimensions involved: |T| = 1/sqrt(dim(i) dim(j)) up to sign/phase.
    for (int r = 3; r <= 6; ++r) {
        QuantumParams p(r);
        CHECK_THAT(std::abs(p.sixj(0, 0, 0, 0, 0, 0)), WithinAbs(1.0, 1e-12));
        for (int i = 0; i < p.color_count(); ++i) {
            for (int j = 0; j < p.color_count(); ++j) {
                // AB=0, BC=AC=i, AD=BD=j, CD=k
                for (int k = 0; k < p.color_count(); ++k) {
                    if (!oracle::admissible(r, i, j, k)) continue;
                    double mag = std::abs(p.sixj(0, i, i, k, j, j));
                    CHECK_THAT(mag, WithinRel(1.0 / std::sqrt(std::abs(oracle::qdim(r, i) * oracle::qdim(r, j))), 1e-10));
                }
            }
        }
    }
}

TEST_CASE("6j tetrahedral symmetry", "[quantum][property]")
{
    for (int r : {4, 5, 6, 7}) {
        QuantumParams p(r);
        std::mt19937_64 rng(99 + static_cast<unsigned>(r));
        int tested = 0;
        while (tested < 200) {
            SixJKey key{};
            for (auto& c : key) c = static_cast<int>(rng() % static_cast<unsigned>(p.color_count()));
            cplx v = p.sixj(key);
            if (v == cplx{0.0, 0.0}) continue;
            ++tested;
            for (int s = 0; s < 24; ++s) {
                cplx w = p.sixj(permute_key(key, Perm4::from_index(s)));
                CHECK(std::abs(v - w) <= 1e-10 * std::max(std::abs(v), p.sixj_magnitude(key)));
            }
        }
    }
}

TEST_CASE("2-3 identity on random boundary colorings", "[quantum][property]")
{
    for (int r : {3, 4, 5, 6}) {
        auto rep = verify_pentagon(QuantumParams(r), 200, 5);
        CHECK(rep.samples == 200);
        CHECK(rep.max_deviation < 1e-9);
    }
    auto rep = verify_pentagon(QuantumParams(7, 3), 100, 6);
    CHECK(rep.max_deviation < 1e-9);
}

TEST_CASE("identity suite", "[quantum]")
{
    for (int r = 2; r <= 8; ++r) {
        auto chk = check_identities(QuantumParams(r), 50, 3);
        INFO("r = " << r);
        CHECK(chk.passed);
        CHECK(chk.gate_ok);
    }
}
