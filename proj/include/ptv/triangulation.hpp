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
#include <utility>
#include <vector>

namespace ptv {

/// Face `face` of one tetrahedron is identified with face `face` of tetrahedron
/// `tet` (the partner); `perm` carries vertex slots across, perm[own face] == partner face.
struct FaceGluing {
    int tet = -1;
    int face = -1;
    Perm4 perm;

    bool operator==(const FaceGluing&) const = default;
};

/// Extra identification of edge slots beyond face gluings.  Slots carrying the
/// same id are one edge; `flip` records whether the slot's ascending direction
/// runs against the tag's direction.
struct EdgeTag {
    std::int64_t id = -1;
    bool flip = false;

    bool operator==(const EdgeTag&) const = default;
};

/// Raw tetrahedron record.  Vertex slots carrying equal labels are the same
/// vertex even when no chain of gluings connects them.
struct Tetrahedron {
    std::array<std::optional<FaceGluing>, 4> gluing{};
    std::array<Label, 4> labels{};
    std::array<EdgeTag, 6> edge_tags{};

    bool operator==(const Tetrahedron&) const = default;
};

struct TetEdge {
    int tet = -1;
    int edge = -1;
    bool operator==(const TetEdge&) const = default;
    auto operator<=>(const TetEdge&) const = default;
};

struct TetCorner {
    int tet = -1;
    int vertex = -1;
    bool operator==(const TetCorner&) const = default;
    auto operator<=>(const TetCorner&) const = default;
};

struct TetFace {
    int tet = -1;
    int face = -1;
    bool operator==(const TetFace&) const = default;
    auto operator<=>(const TetFace&) const = default;
};

/// An edge class with its link decomposed into circles (closed rotation
/// orbits) and arcs (orbits that stop at unglued faces).
struct EdgeClassInfo {
    int id = -1;
    TetEdge reference;
    int tail = -1; // vertex class at the reference slot's lower vertex
    int head = -1;
    std::vector<TetEdge> slots;
    std::vector<std::vector<TetEdge>> circles;
    std::vector<std::vector<TetEdge>> arcs;

    std::size_t circle_count() const { return circles.size(); }
    bool is_loop() const { return tail == head; }
};

/// One gluing as written in files: the k-th ascending vertex slot of `face`
/// goes to the perm[k]-th ascending vertex slot of `other_face`.
struct GluingRecord {
    int tet = -1;
    int face = -1;
    int other_tet = -1;
    int other_face = -1;
    std::array<int, 3> perm{0, 1, 2};
};

inline Perm4 perm_from_record(const GluingRecord& g)
{
    std::array<int, 3> src = face_vertices(g.face);
    std::array<int, 3> dst = face_vertices(g.other_face);
    Perm4 p;
    p.image[static_cast<std::size_t>(g.face)] = static_cast<std::uint8_t>(g.other_face);
    for (int k = 0; k < 3; ++k) {
        p.image[static_cast<std::size_t>(src[static_cast<std::size_t>(k)])] =
            static_cast<std::uint8_t>(dst[static_cast<std::size_t>(g.perm[static_cast<std::size_t>(k)])]);
    }
    return p;
}

inline std::array<int, 3> record_perm(int face, int other_face, const Perm4& p)
{
    std::array<int, 3> src = face_vertices(face);
    std::array<int, 3> out{};
    for (int k = 0; k < 3; ++k) out[static_cast<std::size_t>(k)] = face_position(other_face, p[src[static_cast<std::size_t>(k)]]);
    return out;
}

/// A 3-dimensional Δ-complex: tetrahedra, partial face pairings, and optional
/// extra vertex/edge identifications.  Immutable once built; all class data is
/// derived eagerly.
class Triangulation {
public:
    Triangulation() = default;

    explicit Triangulation(std::vector<Tetrahedron> tets) : tets_(std::move(tets)) { build(); }

    /// Simplicial ingestion: faces sharing a vertex triple are glued, edges
    /// sharing a label pair are identified.
    static Triangulation from_vertex_tuples(std::span<const std::array<Label, 4>> tuples)
    {
        std::vector<Tetrahedron> tets(tuples.size());
        std::map<std::array<Label, 3>, std::vector<TetFace>> faces;
        std::map<std::pair<Label, Label>, std::int64_t> edge_ids;
        for (std::size_t t = 0; t < tuples.size(); ++t) {
            const auto& tuple = tuples[t];
            for (int i = 0; i < 4; ++i) {
                for (int j = i + 1; j < 4; ++j) {
                    if (tuple[static_cast<std::size_t>(i)] == tuple[static_cast<std::size_t>(j)]) {
                        throw Error(ErrorCode::BadTuple, "tetrahedron " + std::to_string(t) + " repeats a vertex label");
                    }
                }
            }
            tets[t].labels = tuple;
            for (int f = 0; f < 4; ++f) {
                std::array<Label, 3> key{};
                auto fv = face_vertices(f);
                for (int k = 0; k < 3; ++k) key[static_cast<std::size_t>(k)] = tuple[static_cast<std::size_t>(fv[static_cast<std::size_t>(k)])];
                std::sort(key.begin(), key.end());
                auto& list = faces[key];
                list.push_back({static_cast<int>(t), f});
                if (list.size() > 2) {
                    throw Error(ErrorCode::TripleOvershared, "vertex triple (" + std::to_string(key[0]) + "," +
                                                                 std::to_string(key[1]) + "," + std::to_string(key[2]) +
                                                                 ") lies in three or more tetrahedra");
                }
            }
            for (int e = 0; e < 6; ++e) {
                Label a = tuple[static_cast<std::size_t>(kEdgeVertices[static_cast<std::size_t>(e)][0])];
                Label b = tuple[static_cast<std::size_t>(kEdgeVertices[static_cast<std::size_t>(e)][1])];
                auto key = std::minmax(a, b);
                auto [it, inserted] = edge_ids.try_emplace({key.first, key.second}, static_cast<std::int64_t>(edge_ids.size()));
                tets[t].edge_tags[static_cast<std::size_t>(e)] = EdgeTag{it->second, a > b};
            }
        }
        for (const auto& [key, list] : faces) {
            if (list.size() != 2) continue;
            const TetFace x = list[0];
            const TetFace y = list[1];
            Perm4 p;
            p.image[static_cast<std::size_t>(x.face)] = static_cast<std::uint8_t>(y.face);
            for (int v : face_vertices(x.face)) {
                Label lab = tuples[static_cast<std::size_t>(x.tet)][static_cast<std::size_t>(v)];
                for (int w = 0; w < 4; ++w) {
                    if (tuples[static_cast<std::size_t>(y.tet)][static_cast<std::size_t>(w)] == lab) {
                        p.image[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(w);
                    }
                }
            }
            tets[static_cast<std::size_t>(x.tet)].gluing[static_cast<std::size_t>(x.face)] = FaceGluing{y.tet, y.face, p};
            tets[static_cast<std::size_t>(y.tet)].gluing[static_cast<std::size_t>(y.face)] = FaceGluing{x.tet, x.face, p.inverse()};
        }
        return Triangulation(std::move(tets));
    }

    /// Δ-complex ingestion.  Each pairing may be listed once or in both
    /// directions (consistently).  Without labels, vertices are anonymous and
    /// only gluings identify them.  `edge_classes` (optional) lists, per
    /// tetrahedron, a signed class key for each edge slot: k >= 0 means aligned
    /// with class k, ~k (negative) means reversed.
    static Triangulation from_gluings(int tet_count, std::span<const GluingRecord> gluings,
                                      std::span<const std::array<Label, 4>> labels = {},
                                      std::span<const std::array<std::int64_t, 6>> edge_classes = {})
    {
        if (tet_count < 0) throw Error(ErrorCode::InvalidId, "negative tetrahedron count");
        if (!labels.empty() && labels.size() != static_cast<std::size_t>(tet_count)) {
            throw Error(ErrorCode::Format, "label list does not match tetrahedron count");
        }
        if (!edge_classes.empty() && edge_classes.size() != static_cast<std::size_t>(tet_count)) {
            throw Error(ErrorCode::Format, "edge class list does not match tetrahedron count");
        }
        std::vector<Tetrahedron> tets(static_cast<std::size_t>(tet_count));
        for (std::size_t t = 0; t < tets.size(); ++t) {
            for (int v = 0; v < 4; ++v) {
                tets[t].labels[static_cast<std::size_t>(v)] =
                    labels.empty() ? static_cast<Label>(4 * t + static_cast<std::size_t>(v)) : labels[t][static_cast<std::size_t>(v)];
            }
            if (!edge_classes.empty()) {
                for (int e = 0; e < 6; ++e) {
                    std::int64_t k = edge_classes[t][static_cast<std::size_t>(e)];
                    tets[t].edge_tags[static_cast<std::size_t>(e)] = k >= 0 ? EdgeTag{k, false} : EdgeTag{~k, true};
                }
            }
        }
        for (const auto& g : gluings) {
            if (g.tet < 0 || g.tet >= tet_count || g.other_tet < 0 || g.other_tet >= tet_count || g.face < 0 || g.face > 3 ||
                g.other_face < 0 || g.other_face > 3) {
                throw Error(ErrorCode::InvalidId, "gluing references a nonexistent face slot");
            }
            if (g.tet == g.other_tet && g.face == g.other_face) {
                throw Error(ErrorCode::SelfGluedFace,
                            "face " + std::to_string(g.face) + " of tetrahedron " + std::to_string(g.tet) + " glued to itself");
            }
            std::array<int, 3> sorted = g.perm;
            std::sort(sorted.begin(), sorted.end());
            if (sorted != std::array<int, 3>{0, 1, 2}) {
                throw Error(ErrorCode::BadPermutation, "gluing permutation is not a permutation of {0,1,2}");
            }
            Perm4 p = perm_from_record(g);
            FaceGluing fwd{g.other_tet, g.other_face, p};
            FaceGluing back{g.tet, g.face, p.inverse()};
            auto place = [&](int t, int f, const FaceGluing& value) {
                auto& slot = tets[static_cast<std::size_t>(t)].gluing[static_cast<std::size_t>(f)];
                if (slot && !(*slot == value)) {
                    throw Error(ErrorCode::SlotReused,
                                "face " + std::to_string(f) + " of tetrahedron " + std::to_string(t) + " glued twice");
                }
                slot = value;
            };
            place(g.tet, g.face, fwd);
            place(g.other_tet, g.other_face, back);
        }
        Triangulation raw(std::move(tets));
        if (!labels.empty()) return raw;
        // anonymous vertices: name each class by its index
        std::vector<Tetrahedron> named = raw.tets_;
        for (std::size_t t = 0; t < named.size(); ++t) {
            for (int v = 0; v < 4; ++v) named[t].labels[static_cast<std::size_t>(v)] = raw.vertex_of(static_cast<int>(t), v);
        }
        return Triangulation(std::move(named));
    }

    int tet_count() const { return static_cast<int>(tets_.size()); }
    int vertex_count() const { return static_cast<int>(vertex_corners_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int face_count() const { return static_cast<int>(face_slots_.size()); }

    const std::vector<Tetrahedron>& tetrahedra() const { return tets_; }
    const Tetrahedron& tet(int t) const { return tets_.at(static_cast<std::size_t>(t)); }
    const std::optional<FaceGluing>& gluing(int t, int f) const { return tets_[static_cast<std::size_t>(t)].gluing[static_cast<std::size_t>(f)]; }

    int vertex_of(int t, int v) const { return vertex_of_[static_cast<std::size_t>(4 * t + v)]; }
    int edge_of(int t, int e) const { return edge_of_[static_cast<std::size_t>(6 * t + e)]; }
    /// True when the slot's ascending direction agrees with its class reference.
    bool edge_aligned(int t, int e) const { return edge_aligned_[static_cast<std::size_t>(6 * t + e)] != 0; }
    int face_of(int t, int f) const { return face_of_[static_cast<std::size_t>(4 * t + f)]; }

    const std::vector<TetCorner>& vertex_corners(int v) const { return vertex_corners_.at(static_cast<std::size_t>(v)); }
    Label vertex_label(int v) const
    {
        const auto& c = vertex_corners_.at(static_cast<std::size_t>(v)).front();
        return tets_[static_cast<std::size_t>(c.tet)].labels[static_cast<std::size_t>(c.vertex)];
    }
    const EdgeClassInfo& edge(int e) const
    {
        if (e < 0 || e >= edge_count()) throw Error(ErrorCode::InvalidId, "edge " + std::to_string(e));
        return edges_[static_cast<std::size_t>(e)];
    }
    const std::vector<EdgeClassInfo>& edges() const { return edges_; }
    const std::vector<TetFace>& face_slots(int f) const { return face_slots_.at(static_cast<std::size_t>(f)); }

    /// Vertex class at the given end of an edge slot, seen from the class: true = tail.
    bool slot_vertex_is_tail(int t, int e, int v) const
    {
        bool low = v == kEdgeVertices[static_cast<std::size_t>(e)][0];
        return low == edge_aligned(t, e);
    }

    bool closed() const { return boundary_faces_ == 0; }
    int boundary_face_count() const { return boundary_faces_; }
    /// Edge classes identified with themselves in reverse.
    const std::vector<int>& folded_edges() const { return folded_edges_; }

    int euler_characteristic() const { return vertex_count() - edge_count() + face_count() - tet_count(); }

    /// Vertex label of each slot, for callers that rebuild tuples.
    std::array<Label, 4> slot_labels(int t) const { return tets_[static_cast<std::size_t>(t)].labels; }

    Label max_label() const
    {
        Label m = -1;
        for (const auto& t : tets_) {
            for (Label l : t.labels) m = std::max(m, l);
        }
        return m;
    }

    /// True when some edge class contains more than one gluing orbit, so the
    /// identification cannot be recovered from face pairings alone.
    bool has_edge_joins() const
    {
        for (const auto& e : edges_) {
            if (e.circles.size() + e.arcs.size() > 1) return true;
        }
        return false;
    }

    bool operator==(const Triangulation& other) const { return tets_ == other.tets_; }

private:
    void build();
    void compute_edge_links();

    std::vector<Tetrahedron> tets_;
    std::vector<int> vertex_of_;
    std::vector<int> edge_of_;
    std::vector<std::uint8_t> edge_aligned_;
    std::vector<int> face_of_;
    std::vector<std::vector<TetCorner>> vertex_corners_;
    std::vector<EdgeClassInfo> edges_;
    std::vector<std::vector<TetFace>> face_slots_;
    std::vector<int> folded_edges_;
    int boundary_faces_ = 0;
};

namespace detail {

/// Step across face `exit` of the slot's tetrahedron, rotating around the edge.
/// Returns the reached slot and the face through which it was entered.
inline std::optional<std::pair<TetEdge, int>> rotate_edge(const std::vector<Tetrahedron>& tets, TetEdge slot, int exit)
{
    const auto& g = tets[static_cast<std::size_t>(slot.tet)].gluing[static_cast<std::size_t>(exit)];
    if (!g) return std::nullopt;
    const auto& ev = kEdgeVertices[static_cast<std::size_t>(slot.edge)];
    int e2 = edge_index(g->perm[ev[0]], g->perm[ev[1]]);
    return std::make_pair(TetEdge{g->tet, e2}, g->perm[exit]);
}

inline int other_side(int edge, int face)
{
    auto comp = edge_complement(edge);
    return comp[0] == face ? comp[1] : comp[0];
}

} // namespace detail

inline void Triangulation::build()
{
    const std::size_t n = tets_.size();
    // gluing consistency
    for (std::size_t t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            const auto& g = tets_[t].gluing[static_cast<std::size_t>(f)];
            if (!g) continue;
            if (g->tet < 0 || static_cast<std::size_t>(g->tet) >= n || g->face < 0 || g->face > 3) {
                throw Error(ErrorCode::BadGluing, "gluing target out of range");
            }
            if (!g->perm.is_valid() || g->perm[f] != g->face) {
                throw Error(ErrorCode::BadPermutation, "gluing permutation does not map the face to its partner");
            }
            if (static_cast<std::size_t>(g->tet) == t && g->face == f) {
                throw Error(ErrorCode::SelfGluedFace, "face glued to itself");
            }
            const auto& back = tets_[static_cast<std::size_t>(g->tet)].gluing[static_cast<std::size_t>(g->face)];
            if (!back || static_cast<std::size_t>(back->tet) != t || back->face != f || !(back->perm == g->perm.inverse())) {
                throw Error(ErrorCode::BadGluing, "gluing is not an involution");
            }
        }
    }

    // edges: gluings + tags, with orientation parity
    detail::ParityUnionFind edge_uf(6 * n);
    std::vector<std::uint8_t> folded_root(6 * n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> folds;
    for (std::size_t t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            const auto& g = tets_[t].gluing[static_cast<std::size_t>(f)];
            if (!g) continue;
            for (int e = 0; e < 6; ++e) {
                const auto& ev = kEdgeVertices[static_cast<std::size_t>(e)];
                if (ev[0] == f || ev[1] == f) continue;
                int a = g->perm[ev[0]];
                int b = g->perm[ev[1]];
                std::size_t x = 6 * t + static_cast<std::size_t>(e);
                std::size_t y = 6 * static_cast<std::size_t>(g->tet) + static_cast<std::size_t>(edge_index(a, b));
                if (!edge_uf.unite(x, y, a > b ? 1 : 0)) folds.emplace_back(x, y);
            }
        }
    }
    {
        std::unordered_map<std::int64_t, std::size_t> first;
        for (std::size_t t = 0; t < n; ++t) {
            for (int e = 0; e < 6; ++e) {
                const auto& tag = tets_[t].edge_tags[static_cast<std::size_t>(e)];
                if (tag.id < 0) continue;
                std::size_t x = 6 * t + static_cast<std::size_t>(e);
                auto [it, inserted] = first.try_emplace(tag.id, x);
                if (inserted) continue;
                const auto& other = tets_[it->second / 6].edge_tags[it->second % 6];
                if (!edge_uf.unite(x, it->second, (tag.flip != other.flip) ? 1 : 0)) folds.emplace_back(x, it->second);
            }
        }
    }

    // vertices: gluings + labels + edge endpoints
    detail::ParityUnionFind vert_uf(4 * n);
    for (std::size_t t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            const auto& g = tets_[t].gluing[static_cast<std::size_t>(f)];
            if (!g) continue;
            for (int v : face_vertices(f)) vert_uf.unite(4 * t + static_cast<std::size_t>(v), 4 * static_cast<std::size_t>(g->tet) + static_cast<std::size_t>(g->perm[v]));
        }
    }
    {
        std::unordered_map<Label, std::size_t> first;
        for (std::size_t t = 0; t < n; ++t) {
            for (int v = 0; v < 4; ++v) {
                auto [it, inserted] = first.try_emplace(tets_[t].labels[static_cast<std::size_t>(v)], 4 * t + static_cast<std::size_t>(v));
                if (!inserted) vert_uf.unite(4 * t + static_cast<std::size_t>(v), it->second);
            }
        }
    }
    {
        // endpoints of identified edges coincide
        std::unordered_map<std::size_t, std::pair<std::size_t, int>> root_rep;
        for (std::size_t x = 0; x < 6 * n; ++x) {
            int par = 0;
            std::size_t root = edge_uf.find(x, par);
            const auto& ev = kEdgeVertices[x % 6];
            std::size_t lo = 4 * (x / 6) + static_cast<std::size_t>(ev[0]);
            std::size_t hi = 4 * (x / 6) + static_cast<std::size_t>(ev[1]);
            auto [it, inserted] = root_rep.try_emplace(root, x, par);
            if (inserted) continue;
            std::size_t y = it->second.first;
            int ypar = it->second.second;
            const auto& ew = kEdgeVertices[y % 6];
            std::size_t ylo = 4 * (y / 6) + static_cast<std::size_t>(ew[0]);
            std::size_t yhi = 4 * (y / 6) + static_cast<std::size_t>(ew[1]);
            if (par == ypar) {
                vert_uf.unite(lo, ylo);
                vert_uf.unite(hi, yhi);
            } else {
                vert_uf.unite(lo, yhi);
                vert_uf.unite(hi, ylo);
            }
        }
    }
    for (auto [x, y] : folds) {
        std::size_t root = edge_uf.find(x);
        folded_root[root] = 1;
        (void)y;
    }

    // number vertex classes by first appearance
    vertex_of_.assign(4 * n, -1);
    vertex_corners_.clear();
    {
        std::unordered_map<std::size_t, int> ids;
        for (std::size_t s = 0; s < 4 * n; ++s) {
            std::size_t root = vert_uf.find(s);
            auto [it, inserted] = ids.try_emplace(root, static_cast<int>(ids.size()));
            if (inserted) vertex_corners_.emplace_back();
            vertex_of_[s] = it->second;
            vertex_corners_[static_cast<std::size_t>(it->second)].push_back({static_cast<int>(s / 4), static_cast<int>(s % 4)});
        }
    }
    // normalize labels: a class is named by its smallest label
    {
        std::vector<Label> best(vertex_corners_.size());
        for (std::size_t v = 0; v < vertex_corners_.size(); ++v) {
            Label m = tets_[static_cast<std::size_t>(vertex_corners_[v][0].tet)].labels[static_cast<std::size_t>(vertex_corners_[v][0].vertex)];
            for (const auto& c : vertex_corners_[v]) m = std::min(m, tets_[static_cast<std::size_t>(c.tet)].labels[static_cast<std::size_t>(c.vertex)]);
            best[v] = m;
        }
        for (std::size_t s = 0; s < 4 * n; ++s) tets_[s / 4].labels[s % 4] = best[static_cast<std::size_t>(vertex_of_[s])];
    }

    // edge classes
    edge_of_.assign(6 * n, -1);
    edge_aligned_.assign(6 * n, 1);
    edges_.clear();
    folded_edges_.clear();
    {
        std::unordered_map<std::size_t, int> ids;
        std::vector<int> ref_parity;
        for (std::size_t x = 0; x < 6 * n; ++x) {
            int par = 0;
            std::size_t root = edge_uf.find(x, par);
            auto [it, inserted] = ids.try_emplace(root, static_cast<int>(ids.size()));
            if (inserted) {
                EdgeClassInfo info;
                info.id = it->second;
                info.reference = {static_cast<int>(x / 6), static_cast<int>(x % 6)};
                const auto& ev = kEdgeVertices[x % 6];
                info.tail = vertex_of_[4 * (x / 6) + static_cast<std::size_t>(ev[0])];
                info.head = vertex_of_[4 * (x / 6) + static_cast<std::size_t>(ev[1])];
                edges_.push_back(std::move(info));
                ref_parity.push_back(par);
                if (folded_root[root]) folded_edges_.push_back(it->second);
            }
            edge_of_[x] = it->second;
            edge_aligned_[x] = (par == ref_parity[static_cast<std::size_t>(it->second)]) ? 1 : 0;
            edges_[static_cast<std::size_t>(it->second)].slots.push_back({static_cast<int>(x / 6), static_cast<int>(x % 6)});
        }
    }
    for (std::size_t x = 0; x < 6 * n; ++x) {
        tets_[x / 6].edge_tags[x % 6] = EdgeTag{edge_of_[x], edge_aligned_[x] == 0};
    }

    // face classes
    face_of_.assign(4 * n, -1);
    face_slots_.clear();
    boundary_faces_ = 0;
    for (std::size_t t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            std::size_t s = 4 * t + static_cast<std::size_t>(f);
            if (face_of_[s] >= 0) continue;
            int id = static_cast<int>(face_slots_.size());
            face_slots_.push_back({{static_cast<int>(t), f}});
            face_of_[s] = id;
            const auto& g = tets_[t].gluing[static_cast<std::size_t>(f)];
            if (g) {
                face_of_[4 * static_cast<std::size_t>(g->tet) + static_cast<std::size_t>(g->face)] = id;
                face_slots_.back().push_back({g->tet, g->face});
            } else {
                ++boundary_faces_;
            }
        }
    }

    compute_edge_links();
}

inline void Triangulation::compute_edge_links()
{
    std::vector<std::uint8_t> visited(6 * tets_.size(), 0);
    auto mark = [&](TetEdge s) { visited[static_cast<std::size_t>(6 * s.tet + s.edge)] = 1; };
    auto seen = [&](TetEdge s) { return visited[static_cast<std::size_t>(6 * s.tet + s.edge)] != 0; };
    for (auto& info : edges_) {
        for (const TetEdge start : info.slots) {
            if (seen(start)) continue;
            auto comp = edge_complement(start.edge);
            std::vector<TetEdge> forward{start};
            mark(start);
            bool closed_orbit = false;
            TetEdge cur = start;
            int exit = comp[0];
            while (true) {
                auto step = detail::rotate_edge(tets_, cur, exit);
                if (!step) break;
                auto [next, entered] = *step;
                if (next == start && entered == comp[1]) {
                    closed_orbit = true;
                    break;
                }
                forward.push_back(next);
                mark(next);
                cur = next;
                exit = detail::other_side(next.edge, entered);
            }
            if (closed_orbit) {
                info.circles.push_back(std::move(forward));
                continue;
            }
            std::vector<TetEdge> backward;
            cur = start;
            exit = comp[1];
            while (true) {
                auto step = detail::rotate_edge(tets_, cur, exit);
                if (!step) break;
                auto [next, entered] = *step;
                backward.push_back(next);
                mark(next);
                cur = next;
                exit = detail::other_side(next.edge, entered);
            }
            std::reverse(backward.begin(), backward.end());
            backward.insert(backward.end(), forward.begin(), forward.end());
            info.arcs.push_back(std::move(backward));
        }
    }
}

/// Link of an edge class: its circles and arcs.
inline const EdgeClassInfo& edge_link(const Triangulation& t, int e) { return t.edge(e); }

} // namespace ptv
