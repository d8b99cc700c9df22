#pragma once

// Reference computations used by the tests.  These deliberately avoid the
// library's own contraction and closed forms.

#include "ptv/ptv.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <vector>

namespace oracle {

inline double qdim(int r, int i) { return std::pow(-1.0, i) * std::sin((i + 1) * std::numbers::pi / r) / std::sin(std::numbers::pi / r); }

inline double rank_squared_by_sum(int r)
{
    double s = 0;
    for (int i = 0; i <= r - 2; ++i) s += qdim(r, i) * qdim(r, i);
    return s;
}

// triangle inequality, even sum, and the level bound, written out directly
inline bool admissible(int r, int i, int j, int k)
{
    if (i < 0 || j < 0 || k < 0 || i > r - 2 || j > r - 2 || k > r - 2) return false;
    if ((i + j + k) & 1) return false;
    if (i > j + k || j > i + k || k > i + j) return false;
    return i + j + k <= 2 * r - 4;
}

// Plain enumeration of every edge coloring.  Each tetrahedron reads its six
// colors by slot pairs AB, BC, AC, CD, AD, BD.
inline ptv::cplx brute_state_sum(const ptv::Triangulation& t, const ptv::QuantumParams& p, std::uint64_t* admissible_count = nullptr)
{
    const int ne = t.edge_count();
    const int nc = p.color_count();
    std::vector<int> col(static_cast<std::size_t>(ne), 0);
    ptv::cplx total{0, 0};
    std::uint64_t count = 0;
    static constexpr int pairs[6][2]{{0, 1}, {1, 2}, {0, 2}, {2, 3}, {0, 3}, {1, 3}};
    while (true) {
        ptv::cplx w{1, 0};
        bool ok = true;
        for (int tet = 0; tet < t.tet_count() && ok; ++tet) {
            ptv::SixJKey key{};
            for (int s = 0; s < 6; ++s) key[static_cast<std::size_t>(s)] = col[static_cast<std::size_t>(t.edge_of(tet, ptv::edge_index(pairs[s][0], pairs[s][1])))];
            if (!admissible(p.r(), key[0], key[1], key[2]) || !admissible(p.r(), key[0], key[4], key[5]) || !admissible(p.r(), key[1], key[3], key[5]) ||
                !admissible(p.r(), key[2], key[3], key[4])) {
                ok = false;
                break;
            }
            w *= p.sixj(key);
        }
        if (ok) {
            ++count;
            for (int e = 0; e < ne; ++e) w *= qdim(p.r(), col[static_cast<std::size_t>(e)]);
            total += w;
        }
        int e = 0;
        while (e < ne && ++col[static_cast<std::size_t>(e)] == nc) col[static_cast<std::size_t>(e++)] = 0;
        if (e == ne) break;
    }
    if (admissible_count) *admissible_count = count;
    return total * std::pow(rank_squared_by_sum(p.r()), -t.vertex_count());
}

// Vertex classes by union-find over face gluings plus label equality.
inline int count_vertices(const ptv::Triangulation& t)
{
    const int n = 4 * t.tet_count();
    std::vector<int> parent(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    auto unite = [&](int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); };
    for (int a = 0; a < t.tet_count(); ++a) {
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.gluing(a, f);
            if (!g) continue;
            for (int v = 0; v < 4; ++v) {
                if (v != f) unite(4 * a + v, 4 * g->tet + g->perm[v]);
            }
        }
    }
    std::map<ptv::Label, int> by_label;
    for (int a = 0; a < t.tet_count(); ++a) {
        for (int v = 0; v < 4; ++v) {
            auto [it, fresh] = by_label.try_emplace(t.tet(a).labels[static_cast<std::size_t>(v)], 4 * a + v);
            if (!fresh) unite(it->second, 4 * a + v);
        }
    }
    std::set<int> roots;
    for (int i = 0; i < n; ++i) roots.insert(find(i));
    return static_cast<int>(roots.size());
}

} // namespace oracle
