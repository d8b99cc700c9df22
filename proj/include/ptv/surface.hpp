#pragma once

#include "ptv/core.hpp"
#include "ptv/detail/union_find.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace ptv {

/// Edge k of a triangle is opposite vertex slot k.  `perm` maps the triangle's
/// vertex slots to the partner's, perm[own edge] == partner edge.
struct EdgeGluing2 {
    int tri = -1;
    int edge = -1;
    std::array<std::uint8_t, 3> perm{0, 1, 2};

    bool operator==(const EdgeGluing2&) const = default;
};

struct Triangle2 {
    std::array<std::optional<EdgeGluing2>, 3> gluing{};
    std::array<Label, 3> labels{};

    bool operator==(const Triangle2&) const = default;
};

/// File form of a triangle gluing: the k-th ascending slot of `edge` goes to
/// the perm[k]-th ascending slot of `other_edge`.
struct TriGluingRecord {
    int tri = -1;
    int edge = -1;
    int other_tri = -1;
    int other_edge = -1;
    std::array<int, 2> perm{0, 1};
};

constexpr std::array<int, 2> tri_edge_vertices(int e)
{
    return e == 0 ? std::array<int, 2>{1, 2} : e == 1 ? std::array<int, 2>{0, 2} : std::array<int, 2>{0, 1};
}

constexpr int tri_edge_index(int a, int b) { return 3 - a - b; }

inline bool perm3_odd(const std::array<std::uint8_t, 3>& p)
{
    int inv = 0;
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)]) ++inv;
        }
    }
    return inv % 2 == 1;
}

inline std::array<std::uint8_t, 3> perm3_inverse(const std::array<std::uint8_t, 3>& p)
{
    std::array<std::uint8_t, 3> out{};
    for (std::uint8_t i = 0; i < 3; ++i) out[p[i]] = i;
    return out;
}

/// A 2-dimensional Δ-complex.  Used for vertex links, boundary surfaces and
/// suspension inputs.  Equal labels identify vertices beyond the gluings.
class Complex2 {
public:
    Complex2() = default;

    explicit Complex2(std::vector<Triangle2> tris) : tris_(std::move(tris)) { build(); }

    static Complex2 from_vertex_triples(std::span<const std::array<Label, 3>> triples)
    {
        std::vector<Triangle2> tris(triples.size());
        std::map<std::pair<Label, Label>, std::vector<std::pair<int, int>>> edges;
        for (std::size_t t = 0; t < triples.size(); ++t) {
            const auto& tr = triples[t];
            if (tr[0] == tr[1] || tr[0] == tr[2] || tr[1] == tr[2]) {
                throw Error(ErrorCode::BadTuple, "triangle " + std::to_string(t) + " repeats a vertex label");
            }
            tris[t].labels = tr;
            for (int e = 0; e < 3; ++e) {
                auto ev = tri_edge_vertices(e);
                auto key = std::minmax(tr[static_cast<std::size_t>(ev[0])], tr[static_cast<std::size_t>(ev[1])]);
                auto& list = edges[{key.first, key.second}];
                list.emplace_back(static_cast<int>(t), e);
                if (list.size() > 2) {
                    throw Error(ErrorCode::TripleOvershared, "vertex pair (" + std::to_string(key.first) + "," +
                                                                 std::to_string(key.second) + ") lies in three or more triangles");
                }
            }
        }
        for (const auto& [key, list] : edges) {
            if (list.size() != 2) continue;
            auto [ta, ea] = list[0];
            auto [tb, eb] = list[1];
            std::array<std::uint8_t, 3> p{};
            p[static_cast<std::size_t>(ea)] = static_cast<std::uint8_t>(eb);
            for (int v : tri_edge_vertices(ea)) {
                for (int w = 0; w < 3; ++w) {
                    if (triples[static_cast<std::size_t>(tb)][static_cast<std::size_t>(w)] == triples[static_cast<std::size_t>(ta)][static_cast<std::size_t>(v)]) {
                        p[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(w);
                    }
                }
            }
            tris[static_cast<std::size_t>(ta)].gluing[static_cast<std::size_t>(ea)] = EdgeGluing2{tb, eb, p};
            tris[static_cast<std::size_t>(tb)].gluing[static_cast<std::size_t>(eb)] = EdgeGluing2{ta, ea, perm3_inverse(p)};
        }
        return Complex2(std::move(tris));
    }

    static Complex2 from_gluings(int tri_count, std::span<const TriGluingRecord> gluings, std::span<const std::array<Label, 3>> labels = {})
    {
        if (tri_count < 0) throw Error(ErrorCode::InvalidId, "negative triangle count");
        if (!labels.empty() && labels.size() != static_cast<std::size_t>(tri_count)) {
            throw Error(ErrorCode::Format, "label list does not match triangle count");
        }
        std::vector<Triangle2> tris(static_cast<std::size_t>(tri_count));
        for (std::size_t t = 0; t < tris.size(); ++t) {
            for (int v = 0; v < 3; ++v) {
                tris[t].labels[static_cast<std::size_t>(v)] = labels.empty() ? static_cast<Label>(3 * t + static_cast<std::size_t>(v)) : labels[t][static_cast<std::size_t>(v)];
            }
        }
        for (const auto& g : gluings) {
            if (g.tri < 0 || g.tri >= tri_count || g.other_tri < 0 || g.other_tri >= tri_count || g.edge < 0 || g.edge > 2 ||
                g.other_edge < 0 || g.other_edge > 2) {
                throw Error(ErrorCode::InvalidId, "gluing references a nonexistent edge slot");
            }
            if (g.tri == g.other_tri && g.edge == g.other_edge) throw Error(ErrorCode::SelfGluedFace, "edge glued to itself");
            if (!((g.perm[0] == 0 && g.perm[1] == 1) || (g.perm[0] == 1 && g.perm[1] == 0))) {
                throw Error(ErrorCode::BadPermutation, "gluing permutation is not a permutation of {0,1}");
            }
            auto src = tri_edge_vertices(g.edge);
            auto dst = tri_edge_vertices(g.other_edge);
            std::array<std::uint8_t, 3> p{};
            p[static_cast<std::size_t>(g.edge)] = static_cast<std::uint8_t>(g.other_edge);
            for (int k = 0; k < 2; ++k) p[static_cast<std::size_t>(src[static_cast<std::size_t>(k)])] = static_cast<std::uint8_t>(dst[static_cast<std::size_t>(g.perm[static_cast<std::size_t>(k)])]);
            auto place = [&](int t, int e, const EdgeGluing2& value) {
                auto& slot = tris[static_cast<std::size_t>(t)].gluing[static_cast<std::size_t>(e)];
                if (slot && !(*slot == value)) throw Error(ErrorCode::SlotReused, "edge " + std::to_string(e) + " of triangle " + std::to_string(t) + " glued twice");
                slot = value;
            };
            place(g.tri, g.edge, EdgeGluing2{g.other_tri, g.other_edge, p});
            place(g.other_tri, g.other_edge, EdgeGluing2{g.tri, g.edge, perm3_inverse(p)});
        }
        Complex2 raw(std::move(tris));
        if (!labels.empty()) return raw;
        std::vector<Triangle2> named = raw.tris_;
        for (std::size_t t = 0; t < named.size(); ++t) {
            for (int v = 0; v < 3; ++v) named[t].labels[static_cast<std::size_t>(v)] = raw.vertex_of(static_cast<int>(t), v);
        }
        return Complex2(std::move(named));
    }

    int tri_count() const { return static_cast<int>(tris_.size()); }
    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return edge_count_; }
    bool closed() const { return boundary_edges_ == 0; }
    int euler_characteristic() const { return vertex_count_ - edge_count_ + tri_count(); }

    const std::vector<Triangle2>& triangles() const { return tris_; }
    const Triangle2& tri(int t) const { return tris_.at(static_cast<std::size_t>(t)); }
    int vertex_of(int t, int v) const { return vertex_of_[static_cast<std::size_t>(3 * t + v)]; }
    /// Class of the slot when only gluings identify vertices.
    int glued_vertex_of(int t, int v) const { return glued_of_[static_cast<std::size_t>(3 * t + v)]; }
    int glued_vertex_count() const { return glued_count_; }
    Label vertex_label(int v) const { return labels_.at(static_cast<std::size_t>(v)); }

    bool operator==(const Complex2& other) const { return tris_ == other.tris_; }

private:
    void build()
    {
        const std::size_t n = tris_.size();
        boundary_edges_ = 0;
        edge_count_ = 0;
        for (std::size_t t = 0; t < n; ++t) {
            for (int e = 0; e < 3; ++e) {
                const auto& g = tris_[t].gluing[static_cast<std::size_t>(e)];
                if (!g) {
                    ++boundary_edges_;
                    ++edge_count_;
                    continue;
                }
                if (g->tri < 0 || static_cast<std::size_t>(g->tri) >= n || g->edge < 0 || g->edge > 2 || g->perm[static_cast<std::size_t>(e)] != g->edge) {
                    throw Error(ErrorCode::BadGluing, "triangle gluing out of range");
                }
                const auto& back = tris_[static_cast<std::size_t>(g->tri)].gluing[static_cast<std::size_t>(g->edge)];
                if (!back || static_cast<std::size_t>(back->tri) != t || back->edge != e || back->perm != perm3_inverse(g->perm)) {
                    throw Error(ErrorCode::BadGluing, "triangle gluing is not an involution");
                }
                if (static_cast<std::size_t>(g->tri) == t && g->edge == e) throw Error(ErrorCode::SelfGluedFace, "edge glued to itself");
                if (std::make_pair(static_cast<int>(t), e) < std::make_pair(g->tri, g->edge)) ++edge_count_;
            }
        }
        detail::ParityUnionFind glued(3 * n);
        for (std::size_t t = 0; t < n; ++t) {
            for (int e = 0; e < 3; ++e) {
                const auto& g = tris_[t].gluing[static_cast<std::size_t>(e)];
                if (!g) continue;
                for (int v : tri_edge_vertices(e)) glued.unite(3 * t + static_cast<std::size_t>(v), 3 * static_cast<std::size_t>(g->tri) + g->perm[static_cast<std::size_t>(v)]);
            }
        }
        glued_of_.assign(3 * n, -1);
        {
            std::unordered_map<std::size_t, int> ids;
            for (std::size_t s = 0; s < 3 * n; ++s) {
                auto [it, inserted] = ids.try_emplace(glued.find(s), static_cast<int>(ids.size()));
                glued_of_[s] = it->second;
            }
            glued_count_ = static_cast<int>(ids.size());
        }
        detail::ParityUnionFind full = glued;
        {
            std::unordered_map<Label, std::size_t> first;
            for (std::size_t s = 0; s < 3 * n; ++s) {
                auto [it, inserted] = first.try_emplace(tris_[s / 3].labels[s % 3], s);
                if (!inserted) full.unite(s, it->second);
            }
        }
        vertex_of_.assign(3 * n, -1);
        labels_.clear();
        std::unordered_map<std::size_t, int> ids;
        for (std::size_t s = 0; s < 3 * n; ++s) {
            auto [it, inserted] = ids.try_emplace(full.find(s), static_cast<int>(ids.size()));
            if (inserted) labels_.push_back(tris_[s / 3].labels[s % 3]);
            vertex_of_[s] = it->second;
            auto& best = labels_[static_cast<std::size_t>(it->second)];
            best = std::min(best, tris_[s / 3].labels[s % 3]);
        }
        vertex_count_ = static_cast<int>(labels_.size());
        for (std::size_t s = 0; s < 3 * n; ++s) tris_[s / 3].labels[s % 3] = labels_[static_cast<std::size_t>(vertex_of_[s])];
    }

    std::vector<Triangle2> tris_;
    std::vector<int> vertex_of_;
    std::vector<int> glued_of_;
    std::vector<Label> labels_;
    int vertex_count_ = 0;
    int glued_count_ = 0;
    int edge_count_ = 0;
    int boundary_edges_ = 0;
};

struct SurfaceComponent {
    bool orientable = true;
    int euler = 0;
    int triangles = 0;
    std::vector<int> triangle_ids;
};

/// A vertex of the 2-complex whose neighbourhood is several discs glued at a point.
struct PinchPoint {
    int vertex = -1;
    Label label = 0;
    int circles = 0;
    std::vector<int> components; // component of each copy after ungluing, one entry per circle
};

struct SurfaceClassification {
    std::vector<SurfaceComponent> components;
    std::vector<PinchPoint> pinches;
    int raw_euler = 0;

    bool is_sphere() const { return components.size() == 1 && pinches.empty() && components[0].orientable && components[0].euler == 2; }
};

/// Unglue pinch points and classify each resulting closed surface by
/// orientability and Euler characteristic.
inline SurfaceClassification classify_surface(const Complex2& s)
{
    if (!s.closed()) throw Error(ErrorCode::NotClosedSurfaceComplex, "2-complex has unpaired edges");
    const int n = s.tri_count();
    SurfaceClassification out;
    out.raw_euler = s.euler_characteristic();

    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    std::vector<int> sign(static_cast<std::size_t>(n), 0);
    for (int start = 0; start < n; ++start) {
        if (comp[static_cast<std::size_t>(start)] >= 0) continue;
        int id = static_cast<int>(out.components.size());
        SurfaceComponent c;
        std::vector<int> queue{start};
        comp[static_cast<std::size_t>(start)] = id;
        sign[static_cast<std::size_t>(start)] = 1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int t = queue[qi];
            for (int e = 0; e < 3; ++e) {
                const auto& g = s.tri(t).gluing[static_cast<std::size_t>(e)];
                int want = perm3_odd(g->perm) ? sign[static_cast<std::size_t>(t)] : -sign[static_cast<std::size_t>(t)];
                int u = g->tri;
                if (comp[static_cast<std::size_t>(u)] < 0) {
                    comp[static_cast<std::size_t>(u)] = id;
                    sign[static_cast<std::size_t>(u)] = want;
                    queue.push_back(u);
                } else if (sign[static_cast<std::size_t>(u)] != want) {
                    c.orientable = false;
                }
            }
        }
        std::sort(queue.begin(), queue.end());
        c.triangles = static_cast<int>(queue.size());
        c.triangle_ids = std::move(queue);
        out.components.push_back(std::move(c));
    }

    // per component: unglued vertices, edges (3F/2), faces
    std::vector<std::vector<char>> seen_vertex(out.components.size(), std::vector<char>(static_cast<std::size_t>(s.glued_vertex_count()), 0));
    std::vector<int> vcount(out.components.size(), 0);
    // raw vertex -> gluing classes -> component
    std::map<int, std::map<int, int>> copies;
    for (int t = 0; t < n; ++t) {
        int c = comp[static_cast<std::size_t>(t)];
        for (int v = 0; v < 3; ++v) {
            int gv = s.glued_vertex_of(t, v);
            if (!seen_vertex[static_cast<std::size_t>(c)][static_cast<std::size_t>(gv)]) {
                seen_vertex[static_cast<std::size_t>(c)][static_cast<std::size_t>(gv)] = 1;
                ++vcount[static_cast<std::size_t>(c)];
            }
            copies[s.vertex_of(t, v)].emplace(gv, c);
        }
    }
    for (std::size_t c = 0; c < out.components.size(); ++c) {
        int f = out.components[c].triangles;
        out.components[c].euler = vcount[c] - (3 * f) / 2 + f;
    }
    for (const auto& [raw, glued_classes] : copies) {
        if (glued_classes.size() < 2) continue;
        PinchPoint p;
        p.vertex = raw;
        p.label = s.vertex_label(raw);
        p.circles = static_cast<int>(glued_classes.size());
        for (const auto& [gv, c] : glued_classes) p.components.push_back(c);
        out.pinches.push_back(std::move(p));
    }
    return out;
}

} // namespace ptv
