#pragma once

#include "ptv/links.hpp"
#include "ptv/triangulation.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace ptv {

enum class Validity { closedPseudomanifold, pseudomanifoldWithBoundary, invalid };

struct ValidationResult {
    Validity status = Validity::invalid;
    std::string reason;
};

inline std::string_view to_string(Validity v)
{
    switch (v) {
    case Validity::closedPseudomanifold: return "closed pseudomanifold";
    case Validity::pseudomanifoldWithBoundary: return "pseudomanifold with boundary";
    case Validity::invalid: return "invalid";
    }
    return "invalid";
}

/// Every face class of a triangulation has at most two slots by construction;
/// the remaining failure is an edge identified with itself reversed.
inline ValidationResult validate(const Triangulation& t)
{
    if (t.tet_count() == 0) return {Validity::invalid, "empty complex"};
    if (!t.folded_edges().empty()) {
        return {Validity::invalid, "edge " + std::to_string(t.folded_edges().front()) + " is identified with itself reversed"};
    }
    if (t.closed()) return {Validity::closedPseudomanifold, {}};
    return {Validity::pseudomanifoldWithBoundary, {}};
}

inline SurfaceClassification classify_vertex_link(const Triangulation& t, int v) { return classify_surface(vertex_link(t, v).surface); }

enum class VertexNature { manifoldPoint, x1NotX0, x0Point };

inline std::string_view to_string(VertexNature n)
{
    switch (n) {
    case VertexNature::manifoldPoint: return "manifold";
    case VertexNature::x1NotX0: return "x1";
    case VertexNature::x0Point: return "x0";
    }
    return "x0";
}

/// Decide from a classified link whether it is S², a suspension of k >= 2
/// circles, or anything else.  `k` receives the number of circles.
inline VertexNature nature_of_link(const SurfaceClassification& c, int* k = nullptr)
{
    if (c.is_sphere()) return VertexNature::manifoldPoint;
    const std::size_t n = c.components.size();
    if (c.pinches.size() != 2 || n < 2) return VertexNature::x0Point;
    for (const auto& comp : c.components) {
        if (!comp.orientable || comp.euler != 2) return VertexNature::x0Point;
    }
    for (const auto& p : c.pinches) {
        if (static_cast<std::size_t>(p.circles) != n) return VertexNature::x0Point;
        std::vector<int> hits(n, 0);
        for (int comp : p.components) ++hits[static_cast<std::size_t>(comp)];
        for (int h : hits) {
            if (h != 1) return VertexNature::x0Point;
        }
    }
    if (k) *k = static_cast<int>(n);
    return VertexNature::x1NotX0;
}

inline VertexNature vertex_nature(const Triangulation& t, int v) { return nature_of_link(classify_vertex_link(t, v)); }

struct GammaNode {
    bool circle = false; // a closed singular circle rather than an X(0) point
    int vertex = -1;     // X(0) vertex class, or -1
    Label label = 0;
};

struct GammaArc {
    int from = -1; // node ids; a closed circle is a loop at its own node
    int to = -1;
    int k = 0;
    std::vector<int> edges;
    std::vector<int> interior; // vertex classes strictly inside the chain
    std::vector<Label> path;   // vertex labels along the chain, endpoints included

    int interior_vertices() const { return static_cast<int>(interior.size()); }
};

struct GammaSignature {
    std::vector<GammaNode> nodes;
    std::vector<GammaArc> arcs;
    std::string canonical; // isomorphism class of the weighted multigraph
    std::string labeled;   // same data in terms of vertex labels
};

struct SkeletonReport {
    std::vector<VertexNature> nature;
    std::vector<int> edge_circles;
    std::vector<int> x0_vertices;
    std::vector<int> x1_vertices;
    std::vector<int> x1_edges;
    std::vector<SurfaceClassification> links;
    GammaSignature gamma;
};

namespace detail {

inline std::string canonical_gamma(const GammaSignature& g)
{
    const std::size_t n = g.nodes.size();
    // arc weight tuples between node pairs
    using Weight = std::tuple<int, int, int>; // (interior, k, closed)
    std::vector<std::vector<std::vector<Weight>>> adj(n, std::vector<std::vector<Weight>>(n));
    for (const auto& a : g.arcs) {
        Weight w{a.interior_vertices(), a.k, g.nodes[static_cast<std::size_t>(a.from)].circle ? 1 : 0};
        adj[static_cast<std::size_t>(a.from)][static_cast<std::size_t>(a.to)].push_back(w);
        if (a.from != a.to) adj[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(a.from)].push_back(w);
    }
    for (auto& row : adj) {
        for (auto& cell : row) std::sort(cell.begin(), cell.end());
    }
    // refine by a local invariant, then permute inside invariant classes
    std::vector<std::pair<std::string, std::size_t>> keyed;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Weight> inc;
        std::vector<Weight> loops = adj[i][i];
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) inc.insert(inc.end(), adj[i][j].begin(), adj[i][j].end());
        }
        std::sort(inc.begin(), inc.end());
        std::ostringstream key;
        key << (g.nodes[i].circle ? 'c' : 'p');
        for (auto [a, b, c] : loops) key << "L" << a << "," << b << "," << c;
        for (auto [a, b, c] : inc) key << "E" << a << "," << b << "," << c;
        keyed.emplace_back(key.str(), i);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::size_t> order;
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && keyed[j].first == keyed[i].first) ++j;
        blocks.emplace_back(i, j);
        i = j;
    }
    for (const auto& kv : keyed) order.push_back(kv.second);
    std::string header;
    for (const auto& kv : keyed) header += kv.first + "|";
    std::string best;
    bool have = false;
    auto emit = [&]() {
        std::ostringstream s;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                const auto& cell = adj[order[i]][order[j]];
                if (cell.empty()) continue;
                s << i << "-" << j << ":";
                for (auto [a, b, c] : cell) s << a << "," << b << "," << c << ";";
            }
        }
        std::string str = s.str();
        if (!have || str < best) {
            best = std::move(str);
            have = true;
        }
    };
    auto rec = [&](auto&& self, std::size_t block) -> void {
        if (block == blocks.size()) {
            emit();
            return;
        }
        auto [lo, hi] = blocks[block];
        std::sort(order.begin() + static_cast<std::ptrdiff_t>(lo), order.begin() + static_cast<std::ptrdiff_t>(hi));
        do {
            self(self, block + 1);
        } while (std::next_permutation(order.begin() + static_cast<std::ptrdiff_t>(lo), order.begin() + static_cast<std::ptrdiff_t>(hi)));
    };
    rec(rec, 0);
    return header + "#" + best;
}

inline std::string labeled_gamma(const GammaSignature& g)
{
    std::vector<std::string> parts;
    for (const auto& n : g.nodes) {
        if (!n.circle) parts.push_back("v" + std::to_string(n.label));
    }
    for (const auto& a : g.arcs) {
        std::vector<Label> path = a.path;
        bool closed = g.nodes[static_cast<std::size_t>(a.from)].circle;
        std::vector<Label> best;
        if (closed) {
            // path repeats its first label at the end; normalize the cycle
            std::vector<Label> cyc(path.begin(), path.end() - 1);
            for (int dir = 0; dir < 2; ++dir) {
                for (std::size_t r = 0; r < cyc.size(); ++r) {
                    std::vector<Label> cand(cyc.begin() + static_cast<std::ptrdiff_t>(r), cyc.end());
                    cand.insert(cand.end(), cyc.begin(), cyc.begin() + static_cast<std::ptrdiff_t>(r));
                    if (best.empty() || cand < best) best = cand;
                }
                std::reverse(cyc.begin(), cyc.end());
            }
        } else {
            std::vector<Label> rev(path.rbegin(), path.rend());
            best = std::min(path, rev);
        }
        std::string s = closed ? "c" : "a";
        s += std::to_string(a.k) + ":";
        for (Label l : best) s += std::to_string(l) + ",";
        parts.push_back(s);
    }
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto& p : parts) out += p + ";";
    return out;
}

} // namespace detail

/// X(1), X(0) and the Γ-signature of a closed complex.
inline SkeletonReport skeletons(const Triangulation& t)
{
    if (!t.closed()) throw Error(ErrorCode::ComplexNotClosed, "skeleton analysis needs a closed complex");
    if (!t.folded_edges().empty()) throw Error(ErrorCode::BadGluing, "complex has an edge identified with itself reversed");
    SkeletonReport rep;
    const int nv = t.vertex_count();
    const int ne = t.edge_count();
    rep.nature.resize(static_cast<std::size_t>(nv));
    rep.links.resize(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) {
        rep.links[static_cast<std::size_t>(v)] = classify_vertex_link(t, v);
        rep.nature[static_cast<std::size_t>(v)] = nature_of_link(rep.links[static_cast<std::size_t>(v)]);
        if (rep.nature[static_cast<std::size_t>(v)] != VertexNature::manifoldPoint) rep.x1_vertices.push_back(v);
        if (rep.nature[static_cast<std::size_t>(v)] == VertexNature::x0Point) rep.x0_vertices.push_back(v);
    }
    // singular edge ends at each vertex: (edge, is_head)
    std::vector<std::vector<std::pair<int, int>>> ends(static_cast<std::size_t>(nv));
    for (int e = 0; e < ne; ++e) {
        const auto& info = t.edge(e);
        rep.edge_circles.push_back(static_cast<int>(info.circle_count()));
        if (info.circle_count() < 2) continue;
        rep.x1_edges.push_back(e);
        ends[static_cast<std::size_t>(info.tail)].emplace_back(e, 0);
        ends[static_cast<std::size_t>(info.head)].emplace_back(e, 1);
        for (int v : {info.tail, info.head}) {
            if (rep.nature[static_cast<std::size_t>(v)] == VertexNature::manifoldPoint) {
                throw Error(ErrorCode::InconsistentSkeleton, "singular edge " + std::to_string(e) + " ends at a manifold vertex");
            }
        }
    }
    for (int v = 0; v < nv; ++v) {
        if (rep.nature[static_cast<std::size_t>(v)] == VertexNature::x1NotX0 && ends[static_cast<std::size_t>(v)].size() != 2) {
            throw Error(ErrorCode::InconsistentSkeleton, "vertex " + std::to_string(v) + " on a singular arc has " +
                                                             std::to_string(ends[static_cast<std::size_t>(v)].size()) + " singular edge ends");
        }
    }

    auto& g = rep.gamma;
    std::vector<int> node_of(static_cast<std::size_t>(nv), -1);
    for (int v : rep.x0_vertices) {
        node_of[static_cast<std::size_t>(v)] = static_cast<int>(g.nodes.size());
        g.nodes.push_back({false, v, t.vertex_label(v)});
    }
    std::vector<char> used(static_cast<std::size_t>(ne), 0);
    // follow a chain from (v, edge end) until an X(0) vertex or back to the start
    auto walk = [&](int v, std::pair<int, int> end, GammaArc& arc) {
        std::pair<int, int> start = end;
        arc.path.push_back(t.vertex_label(v));
        while (true) {
            auto [e, is_head] = end;
            used[static_cast<std::size_t>(e)] = 1;
            arc.edges.push_back(e);
            const auto& info = t.edge(e);
            int w = is_head ? info.tail : info.head;
            std::pair<int, int> arrival{e, is_head ? 0 : 1};
            arc.path.push_back(t.vertex_label(w));
            if (rep.nature[static_cast<std::size_t>(w)] != VertexNature::x1NotX0) return w;
            const auto& at = ends[static_cast<std::size_t>(w)];
            std::pair<int, int> next = at[0] == arrival ? at[1] : at[0];
            if (next == start) return w;
            arc.interior.push_back(w);
            end = next;
        }
    };
    for (int v : rep.x0_vertices) {
        for (auto end : ends[static_cast<std::size_t>(v)]) {
            if (used[static_cast<std::size_t>(end.first)]) continue;
            GammaArc arc;
            arc.k = static_cast<int>(t.edge(end.first).circle_count());
            arc.from = node_of[static_cast<std::size_t>(v)];
            int w = walk(v, end, arc);
            arc.to = node_of[static_cast<std::size_t>(w)];
            g.arcs.push_back(std::move(arc));
        }
    }
    for (int e : rep.x1_edges) {
        if (used[static_cast<std::size_t>(e)]) continue;
        int node = static_cast<int>(g.nodes.size());
        g.nodes.push_back({true, -1, 0});
        GammaArc arc;
        arc.k = static_cast<int>(t.edge(e).circle_count());
        arc.from = arc.to = node;
        int v = t.edge(e).tail;
        walk(v, {e, 0}, arc);
        arc.interior.insert(arc.interior.begin(), v);
        g.arcs.push_back(std::move(arc));
    }
    g.canonical = detail::canonical_gamma(g);
    g.labeled = detail::labeled_gamma(g);
    return rep;
}

inline bool same_gamma_class(const SkeletonReport& a, const SkeletonReport& b) { return a.gamma.canonical == b.gamma.canonical; }

} // namespace ptv
