#pragma once

#include "ptv/surface.hpp"
#include "ptv/triangulation.hpp"

#include <map>
#include <vector>

namespace ptv {

/// Link of a vertex class: one triangle per tetrahedron corner at the vertex.
/// Link vertices are labelled 2*edge+end, end 0 for the tail of the edge class.
struct VertexLink {
    Complex2 surface;
    std::vector<TetCorner> corners; // triangle i sits at corners[i]
};

inline VertexLink vertex_link(const Triangulation& t, int v)
{
    if (v < 0 || v >= t.vertex_count()) throw Error(ErrorCode::InvalidId, "vertex " + std::to_string(v));
    if (!t.closed()) throw Error(ErrorCode::ComplexNotClosed, "vertex links need a closed complex");
    VertexLink out;
    out.corners = t.vertex_corners(v);
    std::map<TetCorner, int> index;
    for (std::size_t i = 0; i < out.corners.size(); ++i) index[out.corners[i]] = static_cast<int>(i);
    std::vector<Triangle2> tris(out.corners.size());
    for (std::size_t i = 0; i < out.corners.size(); ++i) {
        auto [tet, s] = out.corners[i];
        auto w = face_vertices(s);
        for (int k = 0; k < 3; ++k) {
            int wk = w[static_cast<std::size_t>(k)];
            int e = edge_index(s, wk);
            tris[i].labels[static_cast<std::size_t>(k)] = 2 * static_cast<Label>(t.edge_of(tet, e)) + (t.slot_vertex_is_tail(tet, e, s) ? 0 : 1);
            const auto& g = *t.gluing(tet, wk);
            int s2 = g.perm[s];
            EdgeGluing2 eg;
            eg.tri = index.at(TetCorner{g.tet, s2});
            eg.edge = face_position(s2, g.face);
            for (int j = 0; j < 3; ++j) eg.perm[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(face_position(s2, g.perm[w[static_cast<std::size_t>(j)]]));
            tris[i].gluing[static_cast<std::size_t>(k)] = eg;
        }
    }
    out.surface = Complex2(std::move(tris));
    return out;
}

/// The unglued faces as a 2-complex, paired along boundary edges by walking
/// each edge's link arc.  Labels are the vertex labels of the 3-complex.
struct BoundarySurface {
    Complex2 surface;
    std::vector<TetFace> faces; // triangle i is unglued face faces[i]
};

inline BoundarySurface boundary_surface(const Triangulation& t)
{
    BoundarySurface out;
    std::map<TetFace, int> index;
    for (int tet = 0; tet < t.tet_count(); ++tet) {
        for (int f = 0; f < 4; ++f) {
            if (!t.gluing(tet, f)) {
                index[{tet, f}] = static_cast<int>(out.faces.size());
                out.faces.push_back({tet, f});
            }
        }
    }
    std::vector<Triangle2> tris(out.faces.size());
    for (std::size_t i = 0; i < out.faces.size(); ++i) {
        auto [tet, f] = out.faces[i];
        auto fv = face_vertices(f);
        for (int k = 0; k < 3; ++k) {
            tris[i].labels[static_cast<std::size_t>(k)] = t.tet(tet).labels[static_cast<std::size_t>(fv[static_cast<std::size_t>(k)])];
            int wk = fv[static_cast<std::size_t>(k)];
            auto ev = tri_edge_vertices(k);
            int a = fv[static_cast<std::size_t>(ev[0])];
            int b = fv[static_cast<std::size_t>(ev[1])];
            TetEdge cur{tet, edge_index(a, b)};
            int exit = wk;
            while (true) {
                auto step = detail::rotate_edge(t.tetrahedra(), cur, exit);
                if (!step) break;
                const auto& g = *t.gluing(cur.tet, exit);
                a = g.perm[a];
                b = g.perm[b];
                cur = step->first;
                exit = detail::other_side(cur.edge, step->second);
            }
            int pa = face_position(exit, a);
            int pb = face_position(exit, b);
            EdgeGluing2 eg;
            eg.tri = index.at(TetFace{cur.tet, exit});
            eg.edge = tri_edge_index(pa, pb);
            eg.perm[static_cast<std::size_t>(ev[0])] = static_cast<std::uint8_t>(pa);
            eg.perm[static_cast<std::size_t>(ev[1])] = static_cast<std::uint8_t>(pb);
            eg.perm[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(eg.edge);
            tris[i].gluing[static_cast<std::size_t>(k)] = eg;
        }
    }
    out.surface = Complex2(std::move(tris));
    return out;
}

} // namespace ptv
