// Identifying vertices of the 5-tetrahedron sphere, and the mapping cylinders
// C_k attached to a solid torus, evaluated at a few levels.

#include "ptv/ptv.hpp"

#include <cstdio>

int main()
{
    using namespace ptv;
    const auto sphere = example_triangulation("s3-bd4simplex");
    const std::vector<std::pair<const char*, Triangulation>> spaces{
        {"S^3", sphere},
        {"S^3 / (v0 ~ v1)", identify_vertices(sphere, {{0, 1}})},
        {"S^3 / (v0 ~ v1 ~ v2)", identify_vertices(sphere, {{0, 1, 2}})},
        {"S^3 v S^3", identify_vertices(disjoint_union(sphere, sphere), {{0, 5}})},
        {"C_2, m=3", mapping_cylinder_attach(example_triangulation("solid-torus"), 0, 2, 3)},
        {"C_3, m=3", mapping_cylinder_attach(example_triangulation("solid-torus"), 0, 3, 3)},
    };
    std::printf("%-22s %-26s", "space", "gamma");
    for (int r = 3; r <= 5; ++r) std::printf("  r=%d        ", r);
    std::printf("\n");
    for (const auto& [name, t] : spaces) {
        std::printf("%-22s %-26s", name, skeletons(t).gamma.labeled.c_str());
        for (int r = 3; r <= 5; ++r) {
            auto res = state_sum(t, QuantumParams(r));
            // cancellation leaves round-off far below the term sum
            double v = std::abs(res.value) < 1e-12 * res.magnitude ? 0.0 : res.value.real();
            std::printf("  %-11.8g", v);
        }
        std::printf("\n");
    }
}
