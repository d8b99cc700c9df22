#pragma once

#include "ptv/links.hpp"
#include "ptv/triangulation.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace ptv {

enum class MoveKind { m14, m41, m23, m32 };

inline std::string_view to_string(MoveKind k)
{
    switch (k) {
    case MoveKind::m14: return "1-4";
    case MoveKind::m41: return "4-1";
    case MoveKind::m23: return "2-3";
    case MoveKind::m32: return "3-2";
    }
    return "?";
}

/// target: tetrahedron (1-4), vertex class (4-1), face class (2-3), edge class (3-2).
struct MoveDescriptor {
    MoveKind kind = MoveKind::m14;
    int target = -1;

    bool operator==(const MoveDescriptor&) const = default;
};

namespace detail {

/// One face of a replacement tetrahedron: either glued to another new
/// tetrahedron, or taking the place of an old face on the cluster boundary.
struct NewFace {
    bool outer = false;
    int tet = -1;  // new index (internal) or old tetrahedron (outer)
    int face = -1; // partner face (internal) or old face (outer)
    Perm4 perm;    // internal: this -> partner slots; outer: this -> old slots
};

struct NewTet {
    std::array<Label, 4> labels{};
    std::array<NewFace, 4> faces{};
};

inline NewFace internal_face(int tet, int face, Perm4 perm) { return {false, tet, face, perm}; }
inline NewFace outer_face(int tet, int face, Perm4 perm) { return {true, tet, face, perm}; }

/// Replace the tetrahedra in `removed` by `added`.  Kept tetrahedra keep their
/// relative order; new ones are appended.  Edges on the cluster boundary keep
/// their identifications, interior edges of the new cluster start fresh.
inline Triangulation replace_cluster(const Triangulation& t, const std::vector<int>& removed, const std::vector<NewTet>& added)
{
    const int n = t.tet_count();
    std::vector<int> new_index(static_cast<std::size_t>(n), -1);
    std::vector<char> is_removed(static_cast<std::size_t>(n), 0);
    for (int r : removed) is_removed[static_cast<std::size_t>(r)] = 1;
    int kept = 0;
    for (int i = 0; i < n; ++i) {
        if (!is_removed[static_cast<std::size_t>(i)]) new_index[static_cast<std::size_t>(i)] = kept++;
    }
    struct Slot {
        int tet;
        int face;
        Perm4 map;
    };
    std::map<TetFace, Slot> outer;
    for (std::size_t k = 0; k < added.size(); ++k) {
        for (int f = 0; f < 4; ++f) {
            const auto& nf = added[k].faces[static_cast<std::size_t>(f)];
            if (nf.outer) outer[TetFace{nf.tet, nf.face}] = Slot{kept + static_cast<int>(k), f, nf.perm};
        }
    }
    std::vector<Tetrahedron> out;
    out.reserve(static_cast<std::size_t>(kept) + added.size());
    for (int i = 0; i < n; ++i) {
        if (is_removed[static_cast<std::size_t>(i)]) continue;
        Tetrahedron tet = t.tet(i);
        for (int f = 0; f < 4; ++f) {
            auto& g = tet.gluing[static_cast<std::size_t>(f)];
            if (!g) continue;
            if (is_removed[static_cast<std::size_t>(g->tet)]) {
                const Slot& s = outer.at(TetFace{g->tet, g->face});
                g = FaceGluing{s.tet, s.face, s.map.inverse() * g->perm};
            } else {
                g->tet = new_index[static_cast<std::size_t>(g->tet)];
            }
        }
        out.push_back(tet);
    }
    for (std::size_t k = 0; k < added.size(); ++k) {
        Tetrahedron tet;
        tet.labels = added[k].labels;
        for (int f = 0; f < 4; ++f) {
            const auto& nf = added[k].faces[static_cast<std::size_t>(f)];
            if (!nf.outer) {
                tet.gluing[static_cast<std::size_t>(f)] = FaceGluing{kept + nf.tet, nf.face, nf.perm};
                continue;
            }
            const auto& g = t.gluing(nf.tet, nf.face);
            if (!g) continue;
            if (is_removed[static_cast<std::size_t>(g->tet)]) {
                const Slot& s = outer.at(TetFace{g->tet, g->face});
                tet.gluing[static_cast<std::size_t>(f)] = FaceGluing{s.tet, s.face, s.map.inverse() * g->perm * nf.perm};
            } else {
                tet.gluing[static_cast<std::size_t>(f)] = FaceGluing{new_index[static_cast<std::size_t>(g->tet)], g->face, g->perm * nf.perm};
            }
        }
        for (int e = 0; e < 6; ++e) {
            int a = kEdgeVertices[static_cast<std::size_t>(e)][0];
            int b = kEdgeVertices[static_cast<std::size_t>(e)][1];
            for (int f = 0; f < 4; ++f) {
                const auto& nf = added[k].faces[static_cast<std::size_t>(f)];
                if (!nf.outer || f == a || f == b) continue;
                int oa = nf.perm[a];
                int ob = nf.perm[b];
                EdgeTag tag = t.tet(nf.tet).edge_tags[static_cast<std::size_t>(edge_index(oa, ob))];
                if (oa > ob) tag.flip = !tag.flip;
                tet.edge_tags[static_cast<std::size_t>(e)] = tag;
                break;
            }
        }
        out.push_back(tet);
    }
    return Triangulation(std::move(out));
}

inline Perm4 transposition(int x, int y)
{
    Perm4 p;
    p.image[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(y);
    p.image[static_cast<std::size_t>(y)] = static_cast<std::uint8_t>(x);
    return p;
}

/// Link vertex id (2*edge + end) seen from slot w of the corner (tet, s).
inline Label link_point(const Triangulation& t, int tet, int s, int w)
{
    int e = edge_index(s, w);
    return 2 * static_cast<Label>(t.edge_of(tet, e)) + (t.slot_vertex_is_tail(tet, e, s) ? 0 : 1);
}

} // namespace detail

/// Reason the move cannot be applied, or nullopt when it is legal.
inline std::optional<ErrorCode> check_41(const Triangulation& t, int v)
{
    if (v < 0 || v >= t.vertex_count()) return ErrorCode::InvalidId;
    const auto& corners = t.vertex_corners(v);
    if (corners.size() != 4) return ErrorCode::NotFourValent;
    std::set<int> tets;
    for (const auto& c : corners) tets.insert(c.tet);
    if (tets.size() != 4) return ErrorCode::RepeatedTetrahedron;
    for (const auto& c : corners) {
        for (int f = 0; f < 4; ++f) {
            if (!t.gluing(c.tet, f)) return ErrorCode::BoundaryFace;
        }
    }
    std::set<Label> points;
    std::set<Label> missing;
    std::set<int> edges;
    for (const auto& c : corners) {
        std::set<Label> tri;
        for (int w : face_vertices(c.vertex)) {
            Label p = detail::link_point(t, c.tet, c.vertex, w);
            tri.insert(p);
            points.insert(p);
            edges.insert(t.edge_of(c.tet, edge_index(c.vertex, w)));
        }
        if (tri.size() != 3) return ErrorCode::LinkNotSphere;
    }
    if (points.size() != 4 || edges.size() != 4) return ErrorCode::LinkNotSphere;
    for (const auto& c : corners) {
        std::set<Label> tri;
        for (int w : face_vertices(c.vertex)) tri.insert(detail::link_point(t, c.tet, c.vertex, w));
        for (Label p : points) {
            if (!tri.count(p)) missing.insert(p);
        }
    }
    if (missing.size() != 4) return ErrorCode::LinkNotSphere;
    for (int e : edges) {
        const auto& info = t.edge(e);
        if (info.circles.size() != 1 || !info.arcs.empty() || info.circles[0].size() != 3 || info.is_loop()) return ErrorCode::LinkNotSphere;
    }
    return std::nullopt;
}

inline std::optional<ErrorCode> check_23(const Triangulation& t, int f)
{
    if (f < 0 || f >= t.face_count()) return ErrorCode::InvalidId;
    const auto& slots = t.face_slots(f);
    if (slots.size() != 2) return ErrorCode::BoundaryFace;
    if (slots[0].tet == slots[1].tet) return ErrorCode::SameTetrahedron;
    return std::nullopt;
}

inline std::optional<ErrorCode> check_32(const Triangulation& t, int e)
{
    if (e < 0 || e >= t.edge_count()) return ErrorCode::InvalidId;
    const auto& info = t.edge(e);
    if (info.circles.size() >= 2) return ErrorCode::SingularEdge;
    if (!info.arcs.empty()) return ErrorCode::BoundaryFace;
    if (info.circles[0].size() != 3) return ErrorCode::EdgeDegreeNot3;
    const auto& c = info.circles[0];
    if (c[0].tet == c[1].tet || c[1].tet == c[2].tet || c[0].tet == c[2].tet) return ErrorCode::RepeatedTetrahedron;
    return std::nullopt;
}

inline Triangulation move_14(const Triangulation& t, int tet)
{
    if (tet < 0 || tet >= t.tet_count()) throw Error(ErrorCode::InvalidId, "tetrahedron " + std::to_string(tet));
    const Label apex = t.max_label() + 1;
    std::vector<detail::NewTet> added(4);
    for (int i = 0; i < 4; ++i) {
        auto& nt = added[static_cast<std::size_t>(i)];
        nt.labels = t.tet(tet).labels;
        nt.labels[static_cast<std::size_t>(i)] = apex;
        for (int j = 0; j < 4; ++j) {
            nt.faces[static_cast<std::size_t>(j)] = j == i ? detail::outer_face(tet, i, Perm4{}) : detail::internal_face(j, i, detail::transposition(i, j));
        }
    }
    return detail::replace_cluster(t, {tet}, added);
}

inline Triangulation move_41(const Triangulation& t, int v)
{
    if (auto err = check_41(t, v)) throw Error(*err, "4-1 move at vertex " + std::to_string(v));
    const auto& corners = t.vertex_corners(v);
    const auto [t0, s0] = corners[0];
    // new slot y of the replacement tetrahedron stands for link point point[y]
    std::array<Label, 4> point{};
    std::array<Label, 4> labels{};
    std::set<Label> seen;
    for (int w : face_vertices(s0)) {
        point[static_cast<std::size_t>(w)] = detail::link_point(t, t0, s0, w);
        labels[static_cast<std::size_t>(w)] = t.tet(t0).labels[static_cast<std::size_t>(w)];
        seen.insert(point[static_cast<std::size_t>(w)]);
    }
    for (std::size_t ci = 1; ci < corners.size(); ++ci) {
        auto [tc, sc] = corners[ci];
        for (int w : face_vertices(sc)) {
            Label p = detail::link_point(t, tc, sc, w);
            if (!seen.count(p)) {
                seen.insert(p);
                point[static_cast<std::size_t>(s0)] = p;
                labels[static_cast<std::size_t>(s0)] = t.tet(tc).labels[static_cast<std::size_t>(w)];
            }
        }
    }
    detail::NewTet nt;
    nt.labels = labels;
    for (const auto& [tc, sc] : corners) {
        Perm4 map;
        int face = -1;
        std::set<Label> on_face;
        for (int w : face_vertices(sc)) on_face.insert(detail::link_point(t, tc, sc, w));
        for (int y = 0; y < 4; ++y) {
            if (!on_face.count(point[static_cast<std::size_t>(y)])) face = y;
        }
        map.image[static_cast<std::size_t>(face)] = static_cast<std::uint8_t>(sc);
        for (int w : face_vertices(sc)) {
            Label p = detail::link_point(t, tc, sc, w);
            for (int y = 0; y < 4; ++y) {
                if (point[static_cast<std::size_t>(y)] == p) map.image[static_cast<std::size_t>(y)] = static_cast<std::uint8_t>(w);
            }
        }
        nt.faces[static_cast<std::size_t>(face)] = detail::outer_face(tc, sc, map);
    }
    std::vector<int> removed;
    for (const auto& c : corners) removed.push_back(c.tet);
    return detail::replace_cluster(t, removed, {nt});
}

inline Triangulation move_23(const Triangulation& t, int f)
{
    if (auto err = check_23(t, f)) throw Error(*err, "2-3 move at face " + std::to_string(f));
    const auto [ta, fa] = t.face_slots(f)[0];
    const auto& g = *t.gluing(ta, fa);
    const int tb = g.tet;
    const Perm4 p = g.perm;
    auto fv = face_vertices(fa);
    std::vector<detail::NewTet> added(3);
    for (int xi = 0; xi < 3; ++xi) {
        int x = fv[static_cast<std::size_t>(xi)];
        auto& nt = added[static_cast<std::size_t>(xi)];
        nt.labels = t.tet(ta).labels;
        nt.labels[static_cast<std::size_t>(x)] = t.tet(tb).labels[static_cast<std::size_t>(p[fa])];
        nt.faces[static_cast<std::size_t>(x)] = detail::outer_face(ta, x, Perm4{});
        nt.faces[static_cast<std::size_t>(fa)] = detail::outer_face(tb, p[x], p * detail::transposition(x, fa));
        for (int yi = 0; yi < 3; ++yi) {
            if (yi == xi) continue;
            int y = fv[static_cast<std::size_t>(yi)];
            nt.faces[static_cast<std::size_t>(y)] = detail::internal_face(yi, x, detail::transposition(x, y));
        }
    }
    return detail::replace_cluster(t, {ta, tb}, added);
}

inline Triangulation move_32(const Triangulation& t, int e)
{
    if (auto err = check_32(t, e)) throw Error(*err, "3-2 move at edge " + std::to_string(e));
    const TetEdge s0 = t.edge(e).circles[0][0];
    const int t0 = s0.tet;
    const int a = kEdgeVertices[static_cast<std::size_t>(s0.edge)][0]; // N
    const int b = kEdgeVertices[static_cast<std::size_t>(s0.edge)][1]; // S
    const auto comp = edge_complement(s0.edge);
    const int c0 = comp[0]; // P
    const int c1 = comp[1]; // Q
    const auto& g1 = *t.gluing(t0, c0);
    const auto& g2 = *t.gluing(t0, c1);
    const int t1 = g1.tet;
    const int t2 = g2.tet;
    const int n1 = g1.perm[a], s1 = g1.perm[b], q1 = g1.perm[c1], r1 = g1.perm[c0];
    const int n2 = g2.perm[a], s2 = g2.perm[b], p2 = g2.perm[c0], r2 = g2.perm[c1];
    auto make = [](std::initializer_list<std::pair<int, int>> pairs) {
        Perm4 m;
        for (auto [x, y] : pairs) m.image[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(y);
        return m;
    };
    const Label r_label = t.tet(t1).labels[static_cast<std::size_t>(r1)];
    detail::NewTet u; // N R P Q in slots a b c0 c1
    u.labels = t.tet(t0).labels;
    u.labels[static_cast<std::size_t>(b)] = r_label;
    u.faces[static_cast<std::size_t>(a)] = detail::internal_face(1, b, detail::transposition(a, b));
    u.faces[static_cast<std::size_t>(b)] = detail::outer_face(t0, b, Perm4{});
    u.faces[static_cast<std::size_t>(c0)] = detail::outer_face(t1, s1, make({{a, n1}, {b, r1}, {c0, s1}, {c1, q1}}));
    u.faces[static_cast<std::size_t>(c1)] = detail::outer_face(t2, s2, make({{a, n2}, {b, r2}, {c0, p2}, {c1, s2}}));
    detail::NewTet v; // R S P Q in slots a b c0 c1
    v.labels = t.tet(t0).labels;
    v.labels[static_cast<std::size_t>(a)] = r_label;
    v.faces[static_cast<std::size_t>(b)] = detail::internal_face(0, a, detail::transposition(a, b));
    v.faces[static_cast<std::size_t>(a)] = detail::outer_face(t0, a, Perm4{});
    v.faces[static_cast<std::size_t>(c0)] = detail::outer_face(t1, n1, make({{a, r1}, {b, s1}, {c0, n1}, {c1, q1}}));
    v.faces[static_cast<std::size_t>(c1)] = detail::outer_face(t2, n2, make({{a, r2}, {b, s2}, {c0, p2}, {c1, n2}}));
    return detail::replace_cluster(t, {t0, t1, t2}, {u, v});
}

inline Triangulation apply_move(const Triangulation& t, const MoveDescriptor& m)
{
    switch (m.kind) {
    case MoveKind::m14: return move_14(t, m.target);
    case MoveKind::m41: return move_41(t, m.target);
    case MoveKind::m23: return move_23(t, m.target);
    case MoveKind::m32: return move_32(t, m.target);
    }
    throw Error(ErrorCode::InvalidId, "unknown move kind");
}

/// Every legal target of the given kind, ascending.
inline std::vector<int> legal_targets(const Triangulation& t, MoveKind kind)
{
    std::vector<int> out;
    switch (kind) {
    case MoveKind::m14:
        for (int i = 0; i < t.tet_count(); ++i) out.push_back(i);
        break;
    case MoveKind::m41:
        for (int v = 0; v < t.vertex_count(); ++v) {
            if (!check_41(t, v)) out.push_back(v);
        }
        break;
    case MoveKind::m23:
        for (int f = 0; f < t.face_count(); ++f) {
            if (!check_23(t, f)) out.push_back(f);
        }
        break;
    case MoveKind::m32:
        for (int e = 0; e < t.edge_count(); ++e) {
            if (!check_32(t, e)) out.push_back(e);
        }
        break;
    }
    return out;
}

struct MoveWeights {
    double m14 = 1.0;
    double m41 = 1.0;
    double m23 = 1.0;
    double m32 = 1.0;
};

struct WalkStep {
    int step = 0;
    MoveDescriptor move;
    int tets = 0;
    int edges = 0;
};

struct WalkResult {
    Triangulation result;
    std::vector<WalkStep> trace;
};

namespace detail {

/// Uniform draw in [0, n) by rejection, identical on every platform.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n)
{
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % n;
}

inline double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace detail

/// Seeded random walk.  `on_step` sees each intermediate triangulation.
inline WalkResult random_walk(const Triangulation& t, int steps, std::uint64_t seed, const MoveWeights& weights = {},
                              const std::function<void(const WalkStep&, const Triangulation&)>& on_step = {})
{
    if (!t.closed()) throw Error(ErrorCode::NotClosed, "random walks need a closed complex");
    WalkResult out{t, {}};
    std::mt19937_64 rng(seed);
    const std::array<std::pair<MoveKind, double>, 4> kinds{{{MoveKind::m14, weights.m14}, {MoveKind::m41, weights.m41},
                                                           {MoveKind::m23, weights.m23}, {MoveKind::m32, weights.m32}}};
    for (int step = 0; step < steps; ++step) {
        std::vector<std::pair<MoveKind, std::vector<int>>> options;
        double total = 0;
        for (auto [kind, w] : kinds) {
            if (w <= 0) continue;
            auto targets = legal_targets(out.result, kind);
            if (targets.empty()) continue;
            total += w;
            options.emplace_back(kind, std::move(targets));
        }
        if (options.empty()) throw Error(ErrorCode::NoLegalMove, "no legal move at step " + std::to_string(step));
        double u = detail::unit(rng) * total;
        std::size_t pick = options.size() - 1;
        for (std::size_t i = 0; i < options.size(); ++i) {
            double w = 0;
            for (auto [kind, kw] : kinds) {
                if (kind == options[i].first) w = kw;
            }
            if (u < w) {
                pick = i;
                break;
            }
            u -= w;
        }
        const auto& targets = options[pick].second;
        MoveDescriptor m{options[pick].first, targets[detail::bounded(rng, targets.size())]};
        out.result = apply_move(out.result, m);
        WalkStep ws{step + 1, m, out.result.tet_count(), out.result.edge_count()};
        out.trace.push_back(ws);
        if (on_step) on_step(ws, out.result);
    }
    return out;
}

} // namespace ptv
