#pragma once

#include "ptv/triangulation.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace ptv {

/// Renumber tetrahedra (old t becomes tet_map[t]) and vertex slots inside each
/// tetrahedron (old slot s of t becomes slot_maps[t][s]).
inline Triangulation relabel(const Triangulation& t, const std::vector<int>& tet_map, const std::vector<Perm4>& slot_maps)
{
    const std::size_t n = static_cast<std::size_t>(t.tet_count());
    if (tet_map.size() != n || slot_maps.size() != n) throw Error(ErrorCode::InvalidId, "relabel map has the wrong size");
    std::vector<Tetrahedron> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& old = t.tet(static_cast<int>(i));
        const Perm4& rho = slot_maps[i];
        auto& dst = out[static_cast<std::size_t>(tet_map[i])];
        for (int s = 0; s < 4; ++s) dst.labels[static_cast<std::size_t>(rho[s])] = old.labels[static_cast<std::size_t>(s)];
        for (int f = 0; f < 4; ++f) {
            const auto& g = old.gluing[static_cast<std::size_t>(f)];
            if (!g) continue;
            const Perm4& sigma = slot_maps[static_cast<std::size_t>(g->tet)];
            dst.gluing[static_cast<std::size_t>(rho[f])] = FaceGluing{tet_map[static_cast<std::size_t>(g->tet)], sigma[g->face], sigma * g->perm * rho.inverse()};
        }
        for (int e = 0; e < 6; ++e) {
            int a = rho[kEdgeVertices[static_cast<std::size_t>(e)][0]];
            int b = rho[kEdgeVertices[static_cast<std::size_t>(e)][1]];
            EdgeTag tag = old.edge_tags[static_cast<std::size_t>(e)];
            if (a > b) tag.flip = !tag.flip;
            dst.edge_tags[static_cast<std::size_t>(edge_index(a, b))] = tag;
        }
    }
    return Triangulation(std::move(out));
}

namespace detail {

struct Traversal {
    std::vector<int> code;
    std::vector<int> order;      // old tet ids in new order
    std::vector<Perm4> rho;      // per old tet: old slot -> new slot (valid for tets in order)
};

/// Breadth-first canonical numbering of one gluing-connected component.
inline Traversal traverse(const Triangulation& t, int start, const Perm4& start_rho, std::vector<int>& scratch_index)
{
    Traversal tr;
    tr.order.push_back(start);
    scratch_index[static_cast<std::size_t>(start)] = 0;
    std::vector<Perm4> rho_of;
    rho_of.push_back(start_rho);
    for (std::size_t i = 0; i < tr.order.size(); ++i) {
        int old = tr.order[i];
        const Perm4 rho = rho_of[i];
        const Perm4 rinv = rho.inverse();
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.gluing(old, rinv[f]);
            if (!g) {
                tr.code.push_back(-1);
                continue;
            }
            int& idx = scratch_index[static_cast<std::size_t>(g->tet)];
            if (idx < 0) {
                idx = static_cast<int>(tr.order.size());
                tr.order.push_back(g->tet);
                rho_of.push_back(rho * g->perm.inverse());
                tr.code.push_back(-2);
            }
            Perm4 glue = rho_of[static_cast<std::size_t>(idx)] * g->perm * rinv;
            tr.code.push_back(idx);
            tr.code.push_back(glue.index());
        }
    }
    for (int old : tr.order) scratch_index[static_cast<std::size_t>(old)] = -1;
    tr.rho.assign(static_cast<std::size_t>(t.tet_count()), Perm4{});
    for (std::size_t i = 0; i < tr.order.size(); ++i) tr.rho[static_cast<std::size_t>(tr.order[i])] = rho_of[i];
    return tr;
}

inline std::string encode_ints(const std::vector<int>& values)
{
    static constexpr char kDigits[] = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+-";
    long long hi = 0;
    for (int v : values) hi = std::max<long long>(hi, static_cast<long long>(v) + 2);
    int width = 1;
    for (long long cap = 64; cap <= hi; cap *= 64) ++width;
    std::string out(1, kDigits[width]);
    for (int v : values) {
        long long x = static_cast<long long>(v) + 2;
        std::string chunk(static_cast<std::size_t>(width), 'a');
        for (int k = width - 1; k >= 0; --k) {
            chunk[static_cast<std::size_t>(k)] = kDigits[x % 64];
            x /= 64;
        }
        out += chunk;
    }
    return out;
}

} // namespace detail

/// Canonical string: equal iff the complexes are combinatorially isomorphic,
/// including extra vertex and edge identifications.
inline std::string isomorphism_signature(const Triangulation& t)
{
    const int n = t.tet_count();
    if (n == 0) return "a";
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<int>> members;
    for (int s = 0; s < n; ++s) {
        if (comp[static_cast<std::size_t>(s)] >= 0) continue;
        int id = static_cast<int>(members.size());
        members.push_back({s});
        comp[static_cast<std::size_t>(s)] = id;
        for (std::size_t i = 0; i < members.back().size(); ++i) {
            int x = members.back()[i];
            for (int f = 0; f < 4; ++f) {
                const auto& g = t.gluing(x, f);
                if (g && comp[static_cast<std::size_t>(g->tet)] < 0) {
                    comp[static_cast<std::size_t>(g->tet)] = id;
                    members.back().push_back(g->tet);
                }
            }
        }
    }

    struct Component {
        std::vector<int> best;
        std::vector<detail::Traversal> candidates;
    };
    std::vector<Component> comps(members.size());
    std::vector<int> scratch(static_cast<std::size_t>(n), -1);
    for (std::size_t c = 0; c < members.size(); ++c) {
        for (int start : members[c]) {
            for (int pi = 0; pi < 24; ++pi) {
                auto tr = detail::traverse(t, start, Perm4::from_index(pi), scratch);
                if (comps[c].candidates.empty() || tr.code < comps[c].best) {
                    comps[c].best = tr.code;
                    comps[c].candidates.clear();
                    comps[c].candidates.push_back(std::move(tr));
                } else if (tr.code == comps[c].best) {
                    comps[c].candidates.push_back(std::move(tr));
                }
            }
        }
    }
    std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
        if (a.best.size() != b.best.size()) return a.best.size() < b.best.size();
        return a.best < b.best;
    });

    std::vector<int> head;
    head.push_back(n);
    for (const auto& c : comps) {
        head.push_back(static_cast<int>(c.best.size()));
        head.insert(head.end(), c.best.begin(), c.best.end());
    }

    // Class partition under a concrete ordering: first-appearance ids, and an
    // orientation bit for each edge slot relative to its class's first slot.
    auto partition_code = [&](const std::vector<const detail::Traversal*>& chosen) {
        std::vector<int> code;
        std::vector<int> vid(static_cast<std::size_t>(t.vertex_count()), -1);
        std::vector<int> eid(static_cast<std::size_t>(t.edge_count()), -1);
        std::vector<int> eref(static_cast<std::size_t>(t.edge_count()), 0);
        int nv = 0;
        int ne = 0;
        for (const auto* tr : chosen) {
            for (int old : tr->order) {
                Perm4 rinv = tr->rho[static_cast<std::size_t>(old)].inverse();
                for (int s = 0; s < 4; ++s) {
                    int v = t.vertex_of(old, rinv[s]);
                    if (vid[static_cast<std::size_t>(v)] < 0) vid[static_cast<std::size_t>(v)] = nv++;
                    code.push_back(vid[static_cast<std::size_t>(v)]);
                }
                for (int e = 0; e < 6; ++e) {
                    int a = rinv[kEdgeVertices[static_cast<std::size_t>(e)][0]];
                    int b = rinv[kEdgeVertices[static_cast<std::size_t>(e)][1]];
                    int oe = edge_index(a, b);
                    int cls = t.edge_of(old, oe);
                    int dir = (t.edge_aligned(old, oe) ? 0 : 1) ^ (a > b ? 1 : 0);
                    if (eid[static_cast<std::size_t>(cls)] < 0) {
                        eid[static_cast<std::size_t>(cls)] = ne++;
                        eref[static_cast<std::size_t>(cls)] = dir;
                    }
                    code.push_back(2 * eid[static_cast<std::size_t>(cls)] + (dir ^ eref[static_cast<std::size_t>(cls)]));
                }
            }
        }
        return code;
    };

    // Enumerate orders of components with equal codes and candidate starts.
    std::vector<int> perm(comps.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    for (std::size_t i = 0; i < comps.size();) {
        std::size_t j = i;
        while (j < comps.size() && comps[j].best == comps[i].best) ++j;
        blocks.emplace_back(i, j);
        i = j;
    }
    std::vector<int> best_tail;
    bool have = false;
    std::vector<const detail::Traversal*> chosen(comps.size());
    auto over_starts = [&](auto&& self, std::size_t pos) -> void {
        if (pos == comps.size()) {
            auto code = partition_code(chosen);
            if (!have || code < best_tail) {
                best_tail = std::move(code);
                have = true;
            }
            return;
        }
        for (const auto& cand : comps[static_cast<std::size_t>(perm[pos])].candidates) {
            chosen[pos] = &cand;
            self(self, pos + 1);
        }
    };
    auto over_orders = [&](auto&& self, std::size_t block) -> void {
        if (block == blocks.size()) {
            over_starts(over_starts, 0);
            return;
        }
        auto [lo, hi] = blocks[block];
        std::sort(perm.begin() + static_cast<std::ptrdiff_t>(lo), perm.begin() + static_cast<std::ptrdiff_t>(hi));
        do {
            self(self, block + 1);
        } while (std::next_permutation(perm.begin() + static_cast<std::ptrdiff_t>(lo), perm.begin() + static_cast<std::ptrdiff_t>(hi)));
    };
    over_orders(over_orders, 0);

    head.insert(head.end(), best_tail.begin(), best_tail.end());
    return detail::encode_ints(head);
}

} // namespace ptv
