#pragma once

#include "ptv/links.hpp"
#include "ptv/surface.hpp"
#include "ptv/triangulation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace ptv {

struct BoundaryComponent {
    std::vector<int> triangles; // indices into BoundaryComponentMap::surface.faces
    bool orientable = true;
    int euler = 0;
    bool pinched = false;

    bool is_torus() const { return orientable && euler == 0 && !pinched; }
};

struct BoundaryComponentMap {
    BoundarySurface surface;
    std::vector<BoundaryComponent> components;
};

inline BoundaryComponentMap boundary_components(const Triangulation& t)
{
    BoundaryComponentMap out;
    out.surface = boundary_surface(t);
    if (out.surface.faces.empty()) return out;
    auto cls = classify_surface(out.surface.surface);
    for (const auto& c : cls.components) {
        BoundaryComponent bc;
        bc.triangles = c.triangle_ids;
        bc.orientable = c.orientable;
        bc.euler = c.euler;
        out.components.push_back(std::move(bc));
    }
    for (const auto& p : cls.pinches) {
        for (int c : p.components) out.components[static_cast<std::size_t>(c)].pinched = true;
    }
    return out;
}

namespace detail {

inline std::int64_t max_tag(const Triangulation& t)
{
    std::int64_t m = -1;
    for (const auto& tet : t.tetrahedra()) {
        for (const auto& tag : tet.edge_tags) m = std::max(m, tag.id);
    }
    return m;
}

inline Perm4 cone_perm(const std::array<std::uint8_t, 3>& p)
{
    Perm4 out;
    for (int k = 0; k < 3; ++k) out.image[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k)];
    out.image[3] = 3;
    return out;
}

} // namespace detail

/// Cone each group of boundary components to its own new apex.  Components are
/// numbered as in boundary_components().
inline Triangulation cone_boundary(const Triangulation& t, const std::vector<std::vector<int>>& partition)
{
    auto map = boundary_components(t);
    if (map.components.empty()) throw Error(ErrorCode::NotBoundary, "complex has no boundary faces");
    const int nc = static_cast<int>(map.components.size());
    std::vector<int> group_of(static_cast<std::size_t>(nc), -1);
    for (std::size_t g = 0; g < partition.size(); ++g) {
        if (partition[g].empty()) throw Error(ErrorCode::PartitionInvalid, "empty group in partition");
        for (int c : partition[g]) {
            if (c < 0 || c >= nc) {
                throw Error(ErrorCode::PartitionInvalid, "boundary component " + std::to_string(c) + " does not exist (have " + std::to_string(nc) + ")");
            }
            if (group_of[static_cast<std::size_t>(c)] >= 0) {
                throw Error(ErrorCode::PartitionInvalid, "boundary component " + std::to_string(c) + " appears twice");
            }
            group_of[static_cast<std::size_t>(c)] = static_cast<int>(g);
        }
    }
    for (int c = 0; c < nc; ++c) {
        if (group_of[static_cast<std::size_t>(c)] < 0) {
            throw Error(ErrorCode::PartitionInvalid, "boundary component " + std::to_string(c) + " is not covered");
        }
    }

    const auto& surf = map.surface.surface;
    const std::size_t nt = map.surface.faces.size();
    std::vector<int> tri_group(nt, -1);
    for (int c = 0; c < nc; ++c) {
        for (int tri : map.components[static_cast<std::size_t>(c)].triangles) tri_group[static_cast<std::size_t>(tri)] = group_of[static_cast<std::size_t>(c)];
    }
    std::vector<Tetrahedron> tets = t.tetrahedra();
    const int base = t.tet_count();
    const Label apex0 = t.max_label() + 1;
    std::int64_t next_tag = detail::max_tag(t) + 1;
    std::map<std::pair<int, int>, std::int64_t> apex_edge; // (group, vertex class) -> tag
    tets.resize(tets.size() + nt);
    for (std::size_t i = 0; i < nt; ++i) {
        auto [tet, f] = map.surface.faces[i];
        auto fv = face_vertices(f);
        Tetrahedron& cone = tets[static_cast<std::size_t>(base) + i];
        const int g = tri_group[i];
        for (int k = 0; k < 3; ++k) {
            const int slot = fv[static_cast<std::size_t>(k)];
            cone.labels[static_cast<std::size_t>(k)] = t.tet(tet).labels[static_cast<std::size_t>(slot)];
            auto [it, inserted] = apex_edge.try_emplace({g, t.vertex_of(tet, slot)}, next_tag);
            if (inserted) ++next_tag;
            cone.edge_tags[static_cast<std::size_t>(edge_index(k, 3))] = EdgeTag{it->second, false};
        }
        cone.labels[3] = apex0 + g;
        Perm4 down;
        for (int k = 0; k < 3; ++k) down.image[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(fv[static_cast<std::size_t>(k)]);
        down.image[3] = static_cast<std::uint8_t>(f);
        cone.gluing[3] = FaceGluing{tet, f, down};
        tets[static_cast<std::size_t>(tet)].gluing[static_cast<std::size_t>(f)] = FaceGluing{base + static_cast<int>(i), 3, down.inverse()};
        const auto& tri = surf.triangles().at(i);
        for (int k = 0; k < 3; ++k) {
            const auto& gl = tri.gluing[static_cast<std::size_t>(k)];
            cone.gluing[static_cast<std::size_t>(k)] = FaceGluing{base + gl->tri, gl->edge, detail::cone_perm(gl->perm)};
        }
    }
    return Triangulation(std::move(tets));
}

/// Merge each group of vertex classes into one vertex.  Tetrahedra and
/// gluings are unchanged.
inline Triangulation identify_vertices(const Triangulation& t, const std::vector<std::vector<int>>& groups)
{
    std::vector<int> group_of(static_cast<std::size_t>(t.vertex_count()), -1);
    std::vector<Label> target;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        Label lo = 0;
        bool first = true;
        for (int v : groups[g]) {
            if (v < 0 || v >= t.vertex_count()) throw Error(ErrorCode::InvalidId, "vertex " + std::to_string(v));
            if (group_of[static_cast<std::size_t>(v)] >= 0) {
                throw Error(ErrorCode::PartitionInvalid, "vertex " + std::to_string(v) + " is in two groups");
            }
            group_of[static_cast<std::size_t>(v)] = static_cast<int>(g);
            lo = first ? t.vertex_label(v) : std::min(lo, t.vertex_label(v));
            first = false;
        }
        target.push_back(lo);
    }
    std::vector<Tetrahedron> tets = t.tetrahedra();
    for (std::size_t i = 0; i < tets.size(); ++i) {
        for (int s = 0; s < 4; ++s) {
            int g = group_of[static_cast<std::size_t>(t.vertex_of(static_cast<int>(i), s))];
            if (g >= 0) tets[i].labels[static_cast<std::size_t>(s)] = target[static_cast<std::size_t>(g)];
        }
    }
    return Triangulation(std::move(tets));
}

/// Two cones (north and south) over a closed 2-complex.
inline Triangulation suspension(const Complex2& s)
{
    if (!s.closed()) throw Error(ErrorCode::NotClosedSurfaceComplex, "suspension needs every edge in exactly two triangles");
    const int n = s.tri_count();
    Label top = -1;
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < 3; ++k) top = std::max(top, s.vertex_label(s.vertex_of(i, k)));
    }
    std::vector<Tetrahedron> tets(static_cast<std::size_t>(2 * n));
    std::map<std::pair<int, int>, std::int64_t> apex_edge;
    for (int side = 0; side < 2; ++side) {
        for (int i = 0; i < n; ++i) {
            Tetrahedron& tet = tets[static_cast<std::size_t>(side * n + i)];
            const auto& tri = s.triangles().at(static_cast<std::size_t>(i));
            for (int k = 0; k < 3; ++k) {
                tet.labels[static_cast<std::size_t>(k)] = s.vertex_label(s.vertex_of(i, k));
                auto [it, inserted] = apex_edge.try_emplace({side, s.vertex_of(i, k)}, static_cast<std::int64_t>(apex_edge.size()));
                tet.edge_tags[static_cast<std::size_t>(edge_index(k, 3))] = EdgeTag{it->second, false};
                const auto& gl = tri.gluing[static_cast<std::size_t>(k)];
                tet.gluing[static_cast<std::size_t>(k)] = FaceGluing{side * n + gl->tri, gl->edge, detail::cone_perm(gl->perm)};
            }
            tet.labels[3] = top + 1 + side;
            tet.gluing[3] = FaceGluing{(1 - side) * n + i, 3, Perm4{}};
        }
    }
    return Triangulation(std::move(tets));
}

/// Disjoint union; labels and edge tags of `b` are shifted past those of `a`.
inline Triangulation disjoint_union(const Triangulation& a, const Triangulation& b)
{
    std::vector<Tetrahedron> tets = a.tetrahedra();
    const int shift = a.tet_count();
    const Label lshift = a.max_label() + 1;
    const std::int64_t tshift = detail::max_tag(a) + 1;
    for (Tetrahedron tet : b.tetrahedra()) {
        for (auto& g : tet.gluing) {
            if (g) g->tet += shift;
        }
        for (auto& l : tet.labels) l += lshift;
        for (auto& tag : tet.edge_tags) {
            if (tag.id >= 0) tag.id += tshift;
        }
        tets.push_back(tet);
    }
    return Triangulation(std::move(tets));
}

namespace detail {

/// One closed component of a boundary surface with its edges.  Slot edge k of
/// a triangle runs from corner tri_edge_vertices(k)[0] to [1].
struct TorusPatch {
    std::vector<int> tris;                                 // surface triangle ids
    std::map<int, int> local;                              // surface id -> index
    std::vector<std::array<int, 3>> edge;                  // per triangle and slot
    std::vector<std::array<int, 3>> sign;                  // +1 when the slot runs along the edge
    std::vector<std::pair<int, int>> ends;                 // tail and head vertex per edge
    std::vector<std::array<std::pair<int, int>, 2>> slots; // both (triangle, slot) of each edge
    int vertex_count = 0;
};

inline TorusPatch torus_patch(const Complex2& surf, const std::vector<int>& tris)
{
    TorusPatch tp;
    tp.tris = tris;
    for (std::size_t i = 0; i < tris.size(); ++i) tp.local[tris[i]] = static_cast<int>(i);
    std::map<int, int> vid;
    auto vertex = [&](int i, int c) {
        auto [it, inserted] = vid.try_emplace(surf.glued_vertex_of(tp.tris[static_cast<std::size_t>(i)], c), static_cast<int>(vid.size()));
        return it->second;
    };
    const int n = static_cast<int>(tris.size());
    tp.edge.assign(static_cast<std::size_t>(n), {-1, -1, -1});
    tp.sign.assign(static_cast<std::size_t>(n), {0, 0, 0});
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < 3; ++k) {
            if (tp.edge[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] >= 0) continue;
            const auto& g = surf.triangles().at(static_cast<std::size_t>(tris[static_cast<std::size_t>(i)])).gluing[static_cast<std::size_t>(k)];
            if (!g) throw Error(ErrorCode::NotTorusBoundary, "boundary component is not closed");
            const int e = static_cast<int>(tp.ends.size());
            const auto ev = tri_edge_vertices(k);
            const int j = tp.local.at(g->tri);
            tp.ends.emplace_back(vertex(i, ev[0]), vertex(i, ev[1]));
            tp.slots.push_back({std::pair{i, k}, std::pair{j, g->edge}});
            tp.edge[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = e;
            tp.sign[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = 1;
            tp.edge[static_cast<std::size_t>(j)][static_cast<std::size_t>(g->edge)] = e;
            tp.sign[static_cast<std::size_t>(j)][static_cast<std::size_t>(g->edge)] = g->perm[static_cast<std::size_t>(ev[0])] == tri_edge_vertices(g->edge)[0] ? 1 : -1;
        }
    }
    tp.vertex_count = static_cast<int>(vid.size());
    return tp;
}

/// Integer cocycles omega[i] dual to cycles cycle[j] (omega[i](cycle[j]) = δij),
/// from a spanning tree, a dual spanning tree and the two leftover edges.
struct TorusCohomology {
    std::array<std::vector<long long>, 2> omega;
    std::array<std::map<int, long long>, 2> cycle;
};

inline TorusCohomology torus_cohomology(const TorusPatch& tp)
{
    const int ne = static_cast<int>(tp.ends.size());
    const int nt = static_cast<int>(tp.tris.size());
    std::vector<char> tree(static_cast<std::size_t>(ne), 0), cotree(static_cast<std::size_t>(ne), 0);
    std::vector<int> up(static_cast<std::size_t>(tp.vertex_count), -1); // edge towards the root
    std::vector<char> reached(static_cast<std::size_t>(tp.vertex_count), 0);
    std::vector<std::vector<int>> at(static_cast<std::size_t>(tp.vertex_count));
    for (int e = 0; e < ne; ++e) {
        at[static_cast<std::size_t>(tp.ends[static_cast<std::size_t>(e)].first)].push_back(e);
        at[static_cast<std::size_t>(tp.ends[static_cast<std::size_t>(e)].second)].push_back(e);
    }
    std::vector<int> queue{0};
    reached[0] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        for (int e : at[static_cast<std::size_t>(queue[h])]) {
            auto [a, b] = tp.ends[static_cast<std::size_t>(e)];
            int other = a == queue[h] ? b : a;
            if (reached[static_cast<std::size_t>(other)]) continue;
            reached[static_cast<std::size_t>(other)] = 1;
            tree[static_cast<std::size_t>(e)] = 1;
            up[static_cast<std::size_t>(other)] = e;
            queue.push_back(other);
        }
    }
    std::vector<char> seen(static_cast<std::size_t>(nt), 0);
    queue = {0};
    seen[0] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        for (int k = 0; k < 3; ++k) {
            int e = tp.edge[static_cast<std::size_t>(queue[h])][static_cast<std::size_t>(k)];
            if (tree[static_cast<std::size_t>(e)] || cotree[static_cast<std::size_t>(e)]) continue;
            const auto& s = tp.slots[static_cast<std::size_t>(e)];
            int other = s[0].first == queue[h] && s[0].second == k ? s[1].first : s[0].first;
            if (seen[static_cast<std::size_t>(other)]) continue;
            seen[static_cast<std::size_t>(other)] = 1;
            cotree[static_cast<std::size_t>(e)] = 1;
            queue.push_back(other);
        }
    }
    std::vector<int> gens;
    for (int e = 0; e < ne; ++e) {
        if (!tree[static_cast<std::size_t>(e)] && !cotree[static_cast<std::size_t>(e)]) gens.push_back(e);
    }
    if (gens.size() != 2) throw Error(ErrorCode::NotTorusBoundary, "boundary component does not have the homology of a torus");
    TorusCohomology out;
    for (int g = 0; g < 2; ++g) {
        std::vector<long long> w(static_cast<std::size_t>(ne), 0);
        std::vector<char> known(static_cast<std::size_t>(ne), 0);
        for (int e = 0; e < ne; ++e) known[static_cast<std::size_t>(e)] = !cotree[static_cast<std::size_t>(e)];
        w[static_cast<std::size_t>(gens[static_cast<std::size_t>(g)])] = 1;
        // boundary of triangle i: corner 0 -> 1 -> 2 -> 0, i.e. +slot2 +slot0 -slot1
        constexpr std::array<int, 3> orient{1, -1, 1};
        for (bool progress = true; progress;) {
            progress = false;
            for (int i = 0; i < nt; ++i) {
                int unknown = -1;
                int count = 0;
                long long sum = 0;
                for (int k = 0; k < 3; ++k) {
                    int e = tp.edge[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
                    long long s = orient[static_cast<std::size_t>(k)] * tp.sign[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
                    if (known[static_cast<std::size_t>(e)]) {
                        sum += s * w[static_cast<std::size_t>(e)];
                    } else {
                        unknown = k;
                        ++count;
                    }
                }
                if (count != 1) continue;
                int e = tp.edge[static_cast<std::size_t>(i)][static_cast<std::size_t>(unknown)];
                long long s = orient[static_cast<std::size_t>(unknown)] * tp.sign[static_cast<std::size_t>(i)][static_cast<std::size_t>(unknown)];
                w[static_cast<std::size_t>(e)] = -sum * s;
                known[static_cast<std::size_t>(e)] = 1;
                progress = true;
            }
        }
        out.omega[static_cast<std::size_t>(g)] = std::move(w);
        // gens[g] followed by the tree path from its head back to its tail
        auto& c = out.cycle[static_cast<std::size_t>(g)];
        c[gens[static_cast<std::size_t>(g)]] += 1;
        auto climb = [&](int v, long long dir) {
            while (up[static_cast<std::size_t>(v)] >= 0) {
                int e = up[static_cast<std::size_t>(v)];
                bool forward = tp.ends[static_cast<std::size_t>(e)].first == v;
                c[e] += forward ? dir : -dir;
                v = forward ? tp.ends[static_cast<std::size_t>(e)].second : tp.ends[static_cast<std::size_t>(e)].first;
            }
        };
        climb(tp.ends[static_cast<std::size_t>(gens[static_cast<std::size_t>(g)])].second, 1);
        climb(tp.ends[static_cast<std::size_t>(gens[static_cast<std::size_t>(g)])].first, -1);
    }
    return out;
}

constexpr std::uint64_t kPrime = 2147483647ULL;

inline std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e)
{
    std::uint64_t r = 1;
    for (b %= kPrime; e; e >>= 1, b = b * b % kPrime) {
        if (e & 1) r = r * b % kPrime;
    }
    return r;
}

inline std::uint64_t to_mod(long long x) { return static_cast<std::uint64_t>(((x % static_cast<long long>(kPrime)) + static_cast<long long>(kPrime)) % static_cast<long long>(kPrime)); }

/// Span of integer vectors reduced mod a large prime, in echelon form.
class ModSpan {
public:
    explicit ModSpan(std::size_t dim) : dim_(dim) {}

    /// Normal form of v modulo the span: zero at every pivot.
    std::vector<std::uint64_t> reduce(std::vector<std::uint64_t> v) const
    {
        for (const auto& [p, row] : rows_) {
            std::uint64_t c = v[static_cast<std::size_t>(p)];
            if (!c) continue;
            for (std::size_t i = static_cast<std::size_t>(p); i < dim_; ++i) v[i] = (v[i] + (kPrime - c) * row[i]) % kPrime;
        }
        return v;
    }

    void add(const std::vector<std::uint64_t>& v)
    {
        auto r = reduce(v);
        auto it = std::find_if(r.begin(), r.end(), [](std::uint64_t x) { return x != 0; });
        if (it == r.end()) return;
        std::uint64_t inv = mod_pow(*it, kPrime - 2);
        for (auto& x : r) x = x * inv % kPrime;
        rows_.emplace(static_cast<int>(it - r.begin()), std::move(r));
    }

private:
    std::size_t dim_;
    std::map<int, std::vector<std::uint64_t>> rows_;
};

/// Shortest nonzero integer vector congruent to a multiple of (u, v) mod the prime.
inline std::array<long long, 2> lift_direction(std::uint64_t u, std::uint64_t v)
{
    if (v == 0) return {1, 0};
    using I = __int128;
    std::array<I, 2> b1{static_cast<I>(kPrime), 0};
    std::array<I, 2> b2{static_cast<I>(u * mod_pow(v, kPrime - 2) % kPrime), 1};
    auto dot = [](const std::array<I, 2>& x, const std::array<I, 2>& y) { return x[0] * y[0] + x[1] * y[1]; };
    while (true) {
        if (dot(b2, b2) < dot(b1, b1)) std::swap(b1, b2);
        I n = dot(b1, b1);
        I num = 2 * dot(b1, b2) + n;
        I den = 2 * n;
        I mu = num / den - ((num % den != 0) && ((num < 0) != (den < 0)) ? 1 : 0);
        if (mu == 0) break;
        b2 = {b2[0] - mu * b1[0], b2[1] - mu * b1[1]};
    }
    return {static_cast<long long>(b1[0]), static_cast<long long>(b1[1])};
}

/// Coordinates (in the cycle basis) of a primitive class of the torus that
/// bounds rationally in t, or nullopt when none or every class does.
inline std::optional<std::array<long long, 2>> meridian(const Triangulation& t, const BoundarySurface& bs, const TorusPatch& tp,
                                                        const TorusCohomology& h)
{
    const std::size_t ne = static_cast<std::size_t>(t.edge_count());
    ModSpan span(ne);
    for (int f = 0; f < t.face_count(); ++f) {
        auto [tet, face] = t.face_slots(f).front();
        auto fv = face_vertices(face);
        std::vector<std::uint64_t> col(ne, 0);
        auto put = [&](int x, int y, long long c) {
            int e = edge_index(x, y);
            long long s = t.slot_vertex_is_tail(tet, e, x) ? c : -c;
            auto& slot = col[static_cast<std::size_t>(t.edge_of(tet, e))];
            slot = (slot + to_mod(s)) % kPrime;
        };
        put(fv[1], fv[2], 1);
        put(fv[0], fv[2], -1);
        put(fv[0], fv[1], 1);
        span.add(col);
    }
    std::array<std::vector<std::uint64_t>, 2> r;
    for (int g = 0; g < 2; ++g) {
        std::vector<std::uint64_t> v(ne, 0);
        for (auto [e, c] : h.cycle[static_cast<std::size_t>(g)]) {
            auto [i, k] = tp.slots[static_cast<std::size_t>(e)][0];
            auto [tet, face] = bs.faces[static_cast<std::size_t>(tp.tris[static_cast<std::size_t>(i)])];
            auto fv = face_vertices(face);
            auto ev = tri_edge_vertices(k);
            int x = fv[static_cast<std::size_t>(ev[0])];
            int y = fv[static_cast<std::size_t>(ev[1])];
            int te = edge_index(x, y);
            long long s = c * tp.sign[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * (t.slot_vertex_is_tail(tet, te, x) ? 1 : -1);
            auto& slot = v[static_cast<std::size_t>(t.edge_of(tet, te))];
            slot = (slot + to_mod(s)) % kPrime;
        }
        r[static_cast<std::size_t>(g)] = span.reduce(std::move(v));
    }
    auto zero = [](const std::vector<std::uint64_t>& v) { return std::all_of(v.begin(), v.end(), [](std::uint64_t x) { return x == 0; }); };
    if (zero(r[0]) && zero(r[1])) return std::nullopt;
    if (zero(r[0])) return std::array<long long, 2>{1, 0};
    if (zero(r[1])) return std::array<long long, 2>{0, 1};
    std::size_t i = 0;
    while (r[0][i] == 0) ++i;
    // u r0 + v r1 = 0 with v = -1
    std::uint64_t u = r[1][i] * mod_pow(r[0][i], kPrime - 2) % kPrime;
    for (std::size_t j = 0; j < ne; ++j) {
        if (u * r[0][j] % kPrime != r[1][j]) return std::nullopt;
    }
    return lift_direction(u, kPrime - 1);
}

inline long long floor_mod(long long x, long long m) { return ((x % m) + m) % m; }

inline long long ext_gcd(long long a, long long b, long long& s, long long& t)
{
    if (b == 0) {
        s = a >= 0 ? 1 : -1;
        t = 0;
        return std::abs(a);
    }
    long long s1 = 0;
    long long t1 = 0;
    long long g = ext_gcd(b, a % b, s1, t1);
    s = t1;
    t = s1 - (a / b) * t1;
    return g;
}

} // namespace detail

/// Attach the mapping cylinder of the degree-k projection of the chosen torus
/// boundary component onto a new circle of m edges.  The collapsed direction
/// is the class φ with ψ(φ) = 0, where ψ is an integer cocycle taking the
/// value 1 on the meridian (the primitive class bounding rationally in t).
/// Every boundary edge advances k·m·ψ core edges, smoothed by a vertex
/// potential, and the cylinder over each boundary triangle is a ball coned
/// from its middle-height corner.  Any triangulation of the torus works.
inline Triangulation mapping_cylinder_attach(const Triangulation& t, int component, int k, int m)
{
    if (k < 1 || m < 3) throw Error(ErrorCode::GridIncompatible, "need k >= 1 and m >= 3");
    auto map = boundary_components(t);
    if (map.components.empty()) throw Error(ErrorCode::NotTorusBoundary, "complex has no boundary");
    if (component < 0 || component >= static_cast<int>(map.components.size())) {
        throw Error(ErrorCode::InvalidId, "boundary component " + std::to_string(component));
    }
    const auto& comp = map.components[static_cast<std::size_t>(component)];
    if (!comp.is_torus()) {
        throw Error(ErrorCode::NotTorusBoundary, "boundary component " + std::to_string(component) + " is not a torus (chi=" +
                                                     std::to_string(comp.euler) + (comp.orientable ? "" : ", non-orientable") + ")");
    }
    const auto& surf = map.surface.surface;
    const detail::TorusPatch tp = detail::torus_patch(surf, comp.triangles);
    const detail::TorusCohomology coh = detail::torus_cohomology(tp);
    const auto mu = detail::meridian(t, map.surface, tp, coh).value_or(std::array<long long, 2>{0, 1});

    // ψ = a·ω0 + b·ω1 with ψ(μ) = 1, smallest |a|+|b|
    long long s = 0;
    long long r = 0;
    long long g = detail::ext_gcd(mu[0], mu[1], s, r);
    if (g != 1) throw Error(ErrorCode::NotTorusBoundary, "meridian class is not primitive");
    std::array<long long, 2> coef{s, r};
    for (long long n = -(std::abs(s) + std::abs(r) + 2); n <= std::abs(s) + std::abs(r) + 2; ++n) {
        std::array<long long, 2> c{s + n * mu[1], r - n * mu[0]};
        if (std::abs(c[0]) + std::abs(c[1]) < std::abs(coef[0]) + std::abs(coef[1])) coef = c;
    }
    const int ne = static_cast<int>(tp.ends.size());
    const long long n_core = static_cast<long long>(k) * m;
    std::vector<double> c(static_cast<std::size_t>(ne));
    for (int e = 0; e < ne; ++e) {
        c[static_cast<std::size_t>(e)] = static_cast<double>(n_core * (coef[0] * coh.omega[0][static_cast<std::size_t>(e)] + coef[1] * coh.omega[1][static_cast<std::size_t>(e)]));
    }
    // least-squares vertex potential, pinned at vertex 0
    const int nv = tp.vertex_count;
    std::vector<std::vector<double>> A(static_cast<std::size_t>(nv), std::vector<double>(static_cast<std::size_t>(nv) + 1, 0.0));
    for (int e = 0; e < ne; ++e) {
        auto [a, b] = tp.ends[static_cast<std::size_t>(e)];
        if (a == b) continue;
        double ce = c[static_cast<std::size_t>(e)];
        // residual ce + x_b - x_a
        A[static_cast<std::size_t>(b)][static_cast<std::size_t>(b)] += 1;
        A[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] -= 1;
        A[static_cast<std::size_t>(b)][static_cast<std::size_t>(nv)] -= ce;
        A[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)] += 1;
        A[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] -= 1;
        A[static_cast<std::size_t>(a)][static_cast<std::size_t>(nv)] += ce;
    }
    std::fill(A[0].begin(), A[0].end(), 0.0);
    A[0][0] = 1.0;
    for (int col = 0; col < nv; ++col) {
        int piv = col;
        for (int row = col + 1; row < nv; ++row) {
            if (std::abs(A[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]) > std::abs(A[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)])) piv = row;
        }
        std::swap(A[static_cast<std::size_t>(col)], A[static_cast<std::size_t>(piv)]);
        for (int row = 0; row < nv; ++row) {
            if (row == col) continue;
            double f = A[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] / A[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
            if (f == 0.0) continue;
            for (int j = col; j <= nv; ++j) A[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] -= f * A[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
        }
    }
    std::vector<long long> pot(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) pot[static_cast<std::size_t>(v)] = std::llround(A[static_cast<std::size_t>(v)][static_cast<std::size_t>(nv)] / A[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)]);
    std::vector<long long> advance(static_cast<std::size_t>(ne));
    for (int e = 0; e < ne; ++e) {
        auto [a, b] = tp.ends[static_cast<std::size_t>(e)];
        advance[static_cast<std::size_t>(e)] = std::llround(c[static_cast<std::size_t>(e)]) + pot[static_cast<std::size_t>(b)] - pot[static_cast<std::size_t>(a)];
    }

    // core height of every triangle corner, consistent across each glued edge
    const int nt = static_cast<int>(tp.tris.size());
    std::vector<std::array<long long, 3>> height(static_cast<std::size_t>(nt));
    std::vector<char> placed(static_cast<std::size_t>(nt), 0);
    auto step = [&](int i, int kk) { return tp.sign[static_cast<std::size_t>(i)][static_cast<std::size_t>(kk)] * advance[static_cast<std::size_t>(tp.edge[static_cast<std::size_t>(i)][static_cast<std::size_t>(kk)])]; };
    auto place = [&](int i, int corner, long long h) {
        auto& H = height[static_cast<std::size_t>(i)];
        H[static_cast<std::size_t>(corner)] = h;
        long long base = corner == 0 ? h : corner == 1 ? h - step(i, 2) : h - step(i, 1);
        H = {base, base + step(i, 2), base + step(i, 1)};
        if (H[2] - H[1] != step(i, 0)) throw Error(ErrorCode::NotTorusBoundary, "boundary heights are inconsistent");
        placed[static_cast<std::size_t>(i)] = 1;
    };
    place(0, 0, 0);
    std::vector<int> queue{0};
    for (std::size_t q = 0; q < queue.size(); ++q) {
        const int i = queue[q];
        for (int kk = 0; kk < 3; ++kk) {
            const auto& gl = *surf.triangles().at(static_cast<std::size_t>(tp.tris[static_cast<std::size_t>(i)])).gluing[static_cast<std::size_t>(kk)];
            const int j = tp.local.at(gl.tri);
            if (placed[static_cast<std::size_t>(j)]) continue;
            int corner = tri_edge_vertices(kk)[0];
            place(j, gl.perm[static_cast<std::size_t>(corner)], height[static_cast<std::size_t>(i)][static_cast<std::size_t>(corner)]);
            queue.push_back(j);
        }
    }

    Label next_label = t.max_label() + 1;
    std::vector<Label> core_label;
    for (int i = 0; i < m; ++i) core_label.push_back(next_label++);
    const std::int64_t tag0 = detail::max_tag(t) + 1;

    // A region vertex is a triangle corner or a core vertex at some height.
    struct RV {
        bool core = false;
        long long v = 0;
        bool operator==(const RV&) const = default;
    };
    struct Realized {
        int tet = -1;
        int face = -1;
    };
    std::vector<Tetrahedron> tets = t.tetrahedra();
    const int base = static_cast<int>(tets.size());
    std::vector<std::array<RV, 4>> roles; // per new tetrahedron
    auto glue = [&](Realized x, Realized y, const std::function<RV(const RV&)>& to_y) {
        Perm4 p;
        p.image[static_cast<std::size_t>(x.face)] = static_cast<std::uint8_t>(y.face);
        for (int sx = 0; sx < 4; ++sx) {
            if (sx == x.face) continue;
            RV want = to_y(roles[static_cast<std::size_t>(x.tet - base)][static_cast<std::size_t>(sx)]);
            int hit = -1;
            for (int sy = 0; sy < 4; ++sy) {
                if (sy != y.face && roles[static_cast<std::size_t>(y.tet - base)][static_cast<std::size_t>(sy)] == want) hit = sy;
            }
            if (hit < 0) throw Error(ErrorCode::GridIncompatible, "mapping cylinder faces do not match");
            p.image[static_cast<std::size_t>(sx)] = static_cast<std::uint8_t>(hit);
        }
        tets[static_cast<std::size_t>(x.tet)].gluing[static_cast<std::size_t>(x.face)] = FaceGluing{y.tet, y.face, p};
        tets[static_cast<std::size_t>(y.tet)].gluing[static_cast<std::size_t>(y.face)] = FaceGluing{x.tet, x.face, p.inverse()};
    };
    // per triangle: the bottom face, and per slot the polygon triangles in fan order
    std::vector<Realized> bottom(static_cast<std::size_t>(nt));
    std::vector<std::array<std::vector<Realized>, 3>> polygon(static_cast<std::size_t>(nt));

    for (int i = 0; i < nt; ++i) {
        const auto& H = height[static_cast<std::size_t>(i)];
        const auto& tri = surf.triangles().at(static_cast<std::size_t>(tp.tris[static_cast<std::size_t>(i)]));
        std::array<int, 3> ord{0, 1, 2};
        std::sort(ord.begin(), ord.end(), [&](int x, int y) { return std::pair{H[static_cast<std::size_t>(x)], x} < std::pair{H[static_cast<std::size_t>(y)], y}; });
        const int lo = ord[0], mid = ord[1], hi = ord[2];
        auto hc = [&](int corner) { return H[static_cast<std::size_t>(corner)]; };

        // edge identities on the boundary sphere of the region
        using EdgeKey = std::array<long long, 3>;
        auto vert = [](int corner) { return EdgeKey{0, corner, 0}; };
        auto core = [](long long h) { return EdgeKey{1, h, 0}; };
        auto bot = [](int slot) { return EdgeKey{2, slot, 0}; };
        auto fan = [](int slot, long long h) { return EdgeKey{3, slot, h}; };
        struct Tri {
            std::array<RV, 3> v;
            std::array<EdgeKey, 3> opp; // edge opposite v[x]
            int slot = -1;              // polygon slot, -1 for the bottom
            int index = 0;
        };
        // the polygon over a slot, fanned from its lower endpoint
        auto polygon_tris = [&](int kk) {
            auto ev = tri_edge_vertices(kk);
            int u = ev[0], w = ev[1];
            if (hc(w) < hc(u)) std::swap(u, w);
            std::vector<Tri> out;
            const RV U{false, u}, W{false, w};
            for (long long h = hc(u); h < hc(w); ++h) {
                EdgeKey low = h == hc(u) ? vert(u) : fan(kk, h);
                out.push_back(Tri{{U, RV{true, h}, RV{true, h + 1}}, {core(h), fan(kk, h + 1), low}, kk, static_cast<int>(out.size())});
            }
            EdgeKey last = hc(u) == hc(w) ? vert(u) : fan(kk, hc(w));
            out.push_back(Tri{{U, W, RV{true, hc(w)}}, {vert(w), last, bot(kk)}, kk, static_cast<int>(out.size())});
            return out;
        };
        // cone from mid over the disk of boundary triangles away from mid
        std::vector<Tri> disk = polygon_tris(tri_edge_index(lo, hi));
        const auto lm = polygon_tris(tri_edge_index(lo, mid));
        disk.insert(disk.end(), lm.begin(), lm.end() - 1);
        std::map<EdgeKey, int> uses;
        for (const auto& d : disk) {
            for (const auto& e : d.opp) ++uses[e];
        }
        std::map<EdgeKey, Tri> star; // star(mid) keyed by the edge away from mid
        star.emplace(bot(tri_edge_index(lo, hi)), Tri{{RV{false, 0}, RV{false, 1}, RV{false, 2}}, {bot(0), bot(1), bot(2)}, -1, 0});
        star.emplace(lm.back().opp[1], lm.back());
        for (const auto& x : polygon_tris(tri_edge_index(mid, hi))) star.emplace(x.opp[0], x);

        auto record = [&](const Tri& tr, Realized rz) {
            if (tr.slot < 0) {
                bottom[static_cast<std::size_t>(i)] = rz;
                return;
            }
            auto& list = polygon[static_cast<std::size_t>(i)][static_cast<std::size_t>(tr.slot)];
            if (list.size() <= static_cast<std::size_t>(tr.index)) list.resize(static_cast<std::size_t>(tr.index) + 1);
            list[static_cast<std::size_t>(tr.index)] = rz;
        };
        std::map<EdgeKey, Realized> inner;
        for (const auto& d : disk) {
            const int n = static_cast<int>(tets.size());
            const std::array<RV, 4> slots{RV{false, mid}, d.v[0], d.v[1], d.v[2]};
            Tetrahedron tet;
            for (int x = 0; x < 4; ++x) {
                const RV& rv = slots[static_cast<std::size_t>(x)];
                tet.labels[static_cast<std::size_t>(x)] =
                    rv.core ? core_label[static_cast<std::size_t>(detail::floor_mod(rv.v, m))] : tri.labels[static_cast<std::size_t>(rv.v)];
            }
            for (int x = 1; x < 4; ++x) {
                for (int y = x + 1; y < 4; ++y) {
                    const RV& p = slots[static_cast<std::size_t>(x)];
                    const RV& q = slots[static_cast<std::size_t>(y)];
                    if (p.core && q.core) tet.edge_tags[static_cast<std::size_t>(edge_index(x, y))] = EdgeTag{tag0 + detail::floor_mod(std::min(p.v, q.v), m), p.v > q.v};
                }
            }
            tets.push_back(tet);
            roles.push_back(slots);
            record(d, Realized{n, 0});
            for (int x = 0; x < 3; ++x) {
                const EdgeKey& e = d.opp[static_cast<std::size_t>(x)];
                const Realized here{n, x + 1};
                if (uses.at(e) == 1) {
                    record(star.at(e), here);
                    continue;
                }
                auto it = inner.find(e);
                if (it == inner.end()) {
                    inner.emplace(e, here);
                    continue;
                }
                glue(here, it->second, [](const RV& v) { return v; });
                inner.erase(it);
            }
        }
        if (!inner.empty()) throw Error(ErrorCode::GridIncompatible, "mapping cylinder region did not close up");
    }

    for (int i = 0; i < nt; ++i) {
        // bottom against the original boundary face
        auto [tet, f] = map.surface.faces[static_cast<std::size_t>(tp.tris[static_cast<std::size_t>(i)])];
        const Realized b = bottom[static_cast<std::size_t>(i)];
        auto fv = face_vertices(f);
        Perm4 p;
        p.image[static_cast<std::size_t>(b.face)] = static_cast<std::uint8_t>(f);
        for (int sx = 0; sx < 4; ++sx) {
            if (sx == b.face) continue;
            p.image[static_cast<std::size_t>(sx)] = static_cast<std::uint8_t>(fv[static_cast<std::size_t>(roles[static_cast<std::size_t>(b.tet - base)][static_cast<std::size_t>(sx)].v)]);
        }
        tets[static_cast<std::size_t>(b.tet)].gluing[static_cast<std::size_t>(b.face)] = FaceGluing{tet, f, p};
        tets[static_cast<std::size_t>(tet)].gluing[static_cast<std::size_t>(f)] = FaceGluing{b.tet, b.face, p.inverse()};
        // polygons against the neighbouring regions, each pair once
        for (int kk = 0; kk < 3; ++kk) {
            const auto& gl = *surf.triangles().at(static_cast<std::size_t>(tp.tris[static_cast<std::size_t>(i)])).gluing[static_cast<std::size_t>(kk)];
            const int j = tp.local.at(gl.tri);
            if (std::pair{j, static_cast<int>(gl.edge)} < std::pair{i, kk}) continue;
            const int corner = tri_edge_vertices(kk)[0];
            const long long shift = height[static_cast<std::size_t>(j)][gl.perm[static_cast<std::size_t>(corner)]] - height[static_cast<std::size_t>(i)][static_cast<std::size_t>(corner)];
            const auto& mine = polygon[static_cast<std::size_t>(i)][static_cast<std::size_t>(kk)];
            const auto& theirs = polygon[static_cast<std::size_t>(j)][static_cast<std::size_t>(gl.edge)];
            if (mine.size() != theirs.size()) throw Error(ErrorCode::GridIncompatible, "mapping cylinder polygons do not match");
            for (std::size_t x = 0; x < mine.size(); ++x) {
                glue(mine[x], theirs[x], [&](const RV& v) { return v.core ? RV{true, v.v + shift} : RV{false, gl.perm[static_cast<std::size_t>(v.v)]}; });
            }
        }
    }
    return Triangulation(std::move(tets));
}

// ---------------------------------------------------------------- examples

namespace detail {

inline Triangulation example_bd4simplex()
{
    std::vector<std::array<Label, 4>> tuples;
    for (int skip = 4; skip >= 0; --skip) {
        std::array<Label, 4> tuple{};
        int k = 0;
        for (int i = 0; i < 5; ++i) {
            if (i != skip) tuple[static_cast<std::size_t>(k++)] = i;
        }
        tuples.push_back(tuple);
    }
    return Triangulation::from_vertex_tuples(tuples);
}

inline Triangulation example_two_tet()
{
    std::vector<GluingRecord> g;
    for (int f = 0; f < 4; ++f) g.push_back({0, f, 1, f, {0, 1, 2}});
    return Triangulation::from_gluings(2, g);
}

inline Complex2 example_torus7()
{
    std::vector<std::array<Label, 3>> tri;
    for (int i = 0; i < 7; ++i) {
        tri.push_back({i, (i + 1) % 7, (i + 3) % 7});
        tri.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return Complex2::from_vertex_triples(tri);
}

inline Complex2 example_sphere_bd_tet()
{
    std::vector<std::array<Label, 3>> tri{{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
    return Complex2::from_vertex_triples(tri);
}

/// One tetrahedron with face 012 glued to face 123 by 0→1, 1→2, 2→3: a solid
/// torus whose boundary is a one-vertex torus.
inline Triangulation example_layered_solid_torus()
{
    std::vector<GluingRecord> g{{0, 3, 0, 0, {0, 1, 2}}};
    return Triangulation::from_gluings(1, g);
}

/// Cone on a p-gon times a directed n-cycle, each prism cut into the three
/// staircase tetrahedra.  Disk vertex x (0 = centre) at level l has label
/// l*(p+1)+x.
inline Triangulation example_prism_solid_torus(int p = 3, int n = 3)
{
    auto label = [&](int x, int l) { return static_cast<Label>(((l % n) + n) % n * (p + 1) + x); };
    std::vector<std::array<Label, 4>> tuples;
    for (int l = 0; l < n; ++l) {
        for (int j = 0; j < p; ++j) {
            int v0 = 0;
            int v1 = 1 + std::min(j, (j + 1) % p);
            int v2 = 1 + std::max(j, (j + 1) % p);
            tuples.push_back({label(v0, l), label(v1, l), label(v2, l), label(v2, l + 1)});
            tuples.push_back({label(v0, l), label(v1, l), label(v1, l + 1), label(v2, l + 1)});
            tuples.push_back({label(v0, l), label(v0, l + 1), label(v1, l + 1), label(v2, l + 1)});
        }
    }
    return Triangulation::from_vertex_tuples(tuples);
}

} // namespace detail

using ExampleComplex = std::variant<Triangulation, Complex2>;

inline const std::vector<std::string>& example_names()
{
    static const std::vector<std::string> names{"s3-bd4simplex", "s3-two-tet", "torus7", "solid-torus", "sphere-bd-tet", "pinched-s3", "susp-torus"};
    return names;
}

inline ExampleComplex example(const std::string& name)
{
    if (name == "s3-bd4simplex") return detail::example_bd4simplex();
    if (name == "s3-two-tet") return detail::example_two_tet();
    if (name == "torus7") return detail::example_torus7();
    if (name == "sphere-bd-tet") return detail::example_sphere_bd_tet();
    if (name == "solid-torus") return detail::example_layered_solid_torus();
    if (name == "pinched-s3") return identify_vertices(detail::example_bd4simplex(), {{0, 1}});
    if (name == "susp-torus") return suspension(detail::example_torus7());
    throw Error(ErrorCode::UnknownExample, "no example named '" + name + "'");
}

inline Triangulation example_triangulation(const std::string& name)
{
    auto e = example(name);
    if (auto* t = std::get_if<Triangulation>(&e)) return *t;
    throw Error(ErrorCode::UnknownExample, "'" + name + "' is a 2-complex");
}

inline Complex2 example_surface(const std::string& name)
{
    auto e = example(name);
    if (auto* s = std::get_if<Complex2>(&e)) return *s;
    throw Error(ErrorCode::UnknownExample, "'" + name + "' is a 3-complex");
}

} // namespace ptv
