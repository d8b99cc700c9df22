#pragma once

#include "ptv/analysis.hpp"
#include "ptv/moves.hpp"
#include "ptv/quantum.hpp"
#include "ptv/triangulation.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <thread>
#include <vector>

namespace ptv {

/// Key of a tetrahedron for the per-edge colors `colors` (indexed by edge class),
/// with vertex slots 0,1,2,3 playing A,B,C,D.
inline SixJKey tet_key(const Triangulation& t, int tet, const std::vector<int>& colors)
{
    auto c = [&](int a, int b) { return colors[static_cast<std::size_t>(t.edge_of(tet, edge_index(a, b)))]; };
    return {c(0, 1), c(1, 2), c(0, 2), c(2, 3), c(0, 3), c(1, 3)};
}

inline cplx tet_weight(const Triangulation& t, int tet, const std::vector<int>& colors, const QuantumParams& p)
{
    return p.sixj(tet_key(t, tet, colors));
}

struct StateSumOptions {
    int jobs = 1;
    std::uint64_t branch_cap = 100000000; // transitions before Overflow
    std::vector<int> order;                 // explicit edge order; empty = heuristic
};

struct StateSumResult {
    cplx value;
    double magnitude = 0.0; // Σ |term| with the same normalization as value
    int a = 0;              // vertex count
    int edges = 0;
    std::uint64_t colorings = 0; // admissible colorings (saturating)
    std::uint64_t pruned = 0;    // branches cut by an inadmissible face
    std::uint64_t transitions = 0;
    int max_frontier = 0;
    std::size_t max_states = 0;
    double seconds = 0.0;
};

namespace detail {

/// Static description of the contraction: edge order plus, for each step,
/// what becomes checkable and which earlier edges can be forgotten.
struct ContractionPlan {
    std::vector<int> order;                         // edge classes in assignment order
    std::vector<std::vector<std::array<int, 3>>> faces; // per step: faces completed (edge classes)
    std::vector<std::vector<int>> tets;             // per step: tetrahedra completed
    std::vector<std::vector<int>> frontier;         // per step: edges kept after the step, in layout order
    double cost = 0.0;                              // Σ |I|^(frontier before + 1), in log space
};

struct Incidence {
    std::vector<std::vector<int>> tets_of_edge;
    std::vector<std::array<int, 6>> edges_of_tet;
    std::vector<std::array<int, 3>> face_edges; // per face class
    std::vector<std::vector<int>> faces_of_edge;
};

inline Incidence build_incidence(const Triangulation& t)
{
    Incidence inc;
    inc.tets_of_edge.resize(static_cast<std::size_t>(t.edge_count()));
    inc.faces_of_edge.resize(static_cast<std::size_t>(t.edge_count()));
    for (int tet = 0; tet < t.tet_count(); ++tet) {
        std::array<int, 6> es{};
        for (int e = 0; e < 6; ++e) {
            es[static_cast<std::size_t>(e)] = t.edge_of(tet, e);
            auto& list = inc.tets_of_edge[static_cast<std::size_t>(es[static_cast<std::size_t>(e)])];
            if (list.empty() || list.back() != tet) list.push_back(tet);
        }
        inc.edges_of_tet.push_back(es);
    }
    for (int f = 0; f < t.face_count(); ++f) {
        auto [tet, face] = t.face_slots(f)[0];
        auto fv = face_vertices(face);
        std::array<int, 3> es{t.edge_of(tet, edge_index(fv[0], fv[1])), t.edge_of(tet, edge_index(fv[0], fv[2])), t.edge_of(tet, edge_index(fv[1], fv[2]))};
        inc.face_edges.push_back(es);
        for (int e : es) {
            auto& list = inc.faces_of_edge[static_cast<std::size_t>(e)];
            if (list.empty() || list.back() != f) list.push_back(f);
        }
    }
    return inc;
}

/// Greedy elimination order from one starting edge: always take the edge that
/// leaves the smallest frontier (ties: most tetrahedra completed, lowest id).
inline std::vector<int> greedy_order(const Incidence& inc, int start)
{
    const std::size_t ne = inc.tets_of_edge.size();
    const std::size_t nt = inc.edges_of_tet.size();
    std::vector<char> assigned(ne, 0);
    std::vector<int> missing(nt, 0); // unassigned distinct edges per tet
    for (std::size_t tet = 0; tet < nt; ++tet) {
        auto es = inc.edges_of_tet[tet];
        std::sort(es.begin(), es.end());
        missing[tet] = static_cast<int>(std::unique(es.begin(), es.end()) - es.begin());
    }
    std::vector<int> open_tets(ne, 0); // incomplete tets per edge
    for (std::size_t e = 0; e < ne; ++e) open_tets[e] = static_cast<int>(inc.tets_of_edge[e].size());
    std::vector<char> in_frontier(ne, 0);
    std::vector<int> frontier;
    std::vector<int> order;
    // how many tets containing e are missing only e, and how the frontier changes
    auto evaluate = [&](int e, int& delta, int& completed) {
        completed = 0;
        delta = 1;
        std::vector<int> touched;
        for (int tet : inc.tets_of_edge[static_cast<std::size_t>(e)]) {
            if (missing[static_cast<std::size_t>(tet)] == 1) ++completed;
        }
        // edges retiring: frontier edges whose every open tet is completed now
        if (completed > 0) {
            for (int tet : inc.tets_of_edge[static_cast<std::size_t>(e)]) {
                if (missing[static_cast<std::size_t>(tet)] != 1) continue;
                for (int x : inc.edges_of_tet[static_cast<std::size_t>(tet)]) touched.push_back(x);
            }
            std::sort(touched.begin(), touched.end());
            touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
            for (int x : touched) {
                int closing = 0;
                for (int tet : inc.tets_of_edge[static_cast<std::size_t>(x)]) {
                    if (missing[static_cast<std::size_t>(tet)] == 1) {
                        bool has_e = false;
                        for (int y : inc.edges_of_tet[static_cast<std::size_t>(tet)]) has_e = has_e || y == e;
                        if (has_e) ++closing;
                    }
                }
                if (closing == open_tets[static_cast<std::size_t>(x)]) {
                    if (x == e || in_frontier[static_cast<std::size_t>(x)]) --delta;
                }
            }
        }
    };
    auto assign = [&](int e) {
        assigned[static_cast<std::size_t>(e)] = 1;
        order.push_back(e);
        in_frontier[static_cast<std::size_t>(e)] = 1;
        frontier.push_back(e);
        for (int tet : inc.tets_of_edge[static_cast<std::size_t>(e)]) {
            if (--missing[static_cast<std::size_t>(tet)] == 0) {
                auto es = inc.edges_of_tet[static_cast<std::size_t>(tet)];
                std::sort(es.begin(), es.end());
                auto end = std::unique(es.begin(), es.end());
                for (auto it = es.begin(); it != end; ++it) --open_tets[static_cast<std::size_t>(*it)];
            }
        }
        std::erase_if(frontier, [&](int x) {
            if (open_tets[static_cast<std::size_t>(x)] == 0) {
                in_frontier[static_cast<std::size_t>(x)] = 0;
                return true;
            }
            return false;
        });
    };
    assign(start);
    while (order.size() < ne) {
        // candidates: unassigned edges adjacent to the frontier, else any
        std::vector<int> cand;
        for (int f : frontier) {
            for (int tet : inc.tets_of_edge[static_cast<std::size_t>(f)]) {
                for (int x : inc.edges_of_tet[static_cast<std::size_t>(tet)]) {
                    if (!assigned[static_cast<std::size_t>(x)]) cand.push_back(x);
                }
            }
        }
        if (cand.empty()) {
            for (std::size_t x = 0; x < ne; ++x) {
                if (!assigned[x]) {
                    cand.push_back(static_cast<int>(x));
                    break;
                }
            }
        }
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        int best = -1;
        int best_delta = 0;
        int best_completed = 0;
        for (int x : cand) {
            int delta = 0;
            int completed = 0;
            evaluate(x, delta, completed);
            if (best < 0 || delta < best_delta || (delta == best_delta && completed > best_completed)) {
                best = x;
                best_delta = delta;
                best_completed = completed;
            }
        }
        assign(best);
    }
    return order;
}

inline ContractionPlan make_plan(const Triangulation& t, const Incidence& inc, const std::vector<int>& order, int colors)
{
    ContractionPlan plan;
    plan.order = order;
    const std::size_t ne = order.size();
    std::vector<int> pos(static_cast<std::size_t>(t.edge_count()), -1);
    for (std::size_t d = 0; d < ne; ++d) pos[static_cast<std::size_t>(order[d])] = static_cast<int>(d);
    plan.faces.resize(ne);
    plan.tets.resize(ne);
    plan.frontier.resize(ne);
    for (std::size_t f = 0; f < inc.face_edges.size(); ++f) {
        const auto& es = inc.face_edges[f];
        int last = std::max({pos[static_cast<std::size_t>(es[0])], pos[static_cast<std::size_t>(es[1])], pos[static_cast<std::size_t>(es[2])]});
        plan.faces[static_cast<std::size_t>(last)].push_back(es);
    }
    std::vector<int> retire(static_cast<std::size_t>(t.edge_count()), -1); // step after which the edge is no longer needed
    for (std::size_t tet = 0; tet < inc.edges_of_tet.size(); ++tet) {
        int last = 0;
        for (int e : inc.edges_of_tet[tet]) last = std::max(last, pos[static_cast<std::size_t>(e)]);
        plan.tets[static_cast<std::size_t>(last)].push_back(static_cast<int>(tet));
        for (int e : inc.edges_of_tet[tet]) retire[static_cast<std::size_t>(e)] = std::max(retire[static_cast<std::size_t>(e)], last);
    }
    std::vector<int> current;
    const double log_colors = std::log(static_cast<double>(std::max(colors, 2)));
    double cost = 0.0;
    bool first = true;
    for (std::size_t d = 0; d < ne; ++d) {
        double term = static_cast<double>(current.size() + 1) * log_colors;
        cost = first ? term : std::max(cost, term) + std::log1p(std::exp(-std::abs(cost - term)));
        first = false;
        current.push_back(order[d]);
        std::erase_if(current, [&](int e) { return retire[static_cast<std::size_t>(e)] <= static_cast<int>(d); });
        plan.frontier[d] = current;
    }
    plan.cost = cost;
    return plan;
}

inline ContractionPlan best_plan(const Triangulation& t, int colors)
{
    Incidence inc = build_incidence(t);
    const int ne = t.edge_count();
    const int tries = std::min(ne, 32);
    ContractionPlan best;
    bool have = false;
    for (int i = 0; i < tries; ++i) {
        int start = static_cast<int>(static_cast<long long>(i) * ne / tries);
        auto plan = make_plan(t, inc, greedy_order(inc, start), colors);
        if (!have || plan.cost < best.cost) {
            best = std::move(plan);
            have = true;
        }
    }
    return best;
}

struct PackedKey {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    bool operator==(const PackedKey&) const = default;
};

inline std::uint64_t hash_key(const PackedKey& k)
{
    std::uint64_t h = k.lo * 0x9E3779B97F4A7C15ULL ^ (k.hi + 0x632BE59BD9B4E019ULL + (k.lo << 6) + (k.lo >> 2));
    h ^= h >> 31;
    h *= 0xBF58476D1CE4E5B9ULL;
    h ^= h >> 29;
    return h;
}

/// Insertion-ordered accumulator keyed by packed frontier colors.
class StateTable {
public:
    void clear()
    {
        keys_.clear();
        values_.clear();
        mags_.clear();
        counts_.clear();
        std::fill(slots_.begin(), slots_.end(), 0);
    }

    std::size_t size() const { return keys_.size(); }
    const PackedKey& key(std::size_t i) const { return keys_[i]; }
    cplx value(std::size_t i) const { return values_[i]; }
    double magnitude(std::size_t i) const { return mags_[i]; }
    std::uint64_t count(std::size_t i) const { return counts_[i]; }

    void add(const PackedKey& k, cplx v, double mag, std::uint64_t c)
    {
        if ((keys_.size() + 1) * 2 > slots_.size()) rehash(std::max<std::size_t>(64, slots_.size() * 2));
        std::size_t mask = slots_.size() - 1;
        std::size_t s = static_cast<std::size_t>(hash_key(k)) & mask;
        while (true) {
            std::uint32_t idx = slots_[s];
            if (idx == 0) {
                slots_[s] = static_cast<std::uint32_t>(keys_.size() + 1);
                keys_.push_back(k);
                values_.push_back(v);
                mags_.push_back(mag);
                counts_.push_back(c);
                return;
            }
            if (keys_[idx - 1] == k) {
                values_[idx - 1] += v;
                mags_[idx - 1] += mag;
                counts_[idx - 1] = saturating_add(counts_[idx - 1], c);
                return;
            }
            s = (s + 1) & mask;
        }
    }

    static std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b)
    {
        return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
    }

private:
    void rehash(std::size_t cap)
    {
        if (keys_.size() >= std::numeric_limits<std::uint32_t>::max() / 2) throw Error(ErrorCode::Overflow, "state table too large");
        slots_.assign(cap, 0);
        std::size_t mask = cap - 1;
        for (std::size_t i = 0; i < keys_.size(); ++i) {
            std::size_t s = static_cast<std::size_t>(hash_key(keys_[i])) & mask;
            while (slots_[s] != 0) s = (s + 1) & mask;
            slots_[s] = static_cast<std::uint32_t>(i + 1);
        }
    }

    std::vector<PackedKey> keys_;
    std::vector<cplx> values_;
    std::vector<double> mags_;
    std::vector<std::uint64_t> counts_;
    std::vector<std::uint32_t> slots_;
};

struct Packing {
    int bits = 1;
    int per_word = 64;
    std::uint64_t mask = 1;

    explicit Packing(int colors)
    {
        bits = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(std::max(colors - 1, 1)))));
        per_word = 64 / bits;
        mask = (std::uint64_t{1} << bits) - 1;
    }

    int capacity() const { return 2 * per_word; }

    int get(const PackedKey& k, int slot) const
    {
        std::uint64_t w = slot < per_word ? k.lo : k.hi;
        int s = slot < per_word ? slot : slot - per_word;
        return static_cast<int>((w >> (s * bits)) & mask);
    }

    void set(PackedKey& k, int slot, int c) const
    {
        std::uint64_t& w = slot < per_word ? k.lo : k.hi;
        int s = slot < per_word ? slot : slot - per_word;
        w |= static_cast<std::uint64_t>(c) << (s * bits);
    }
};

} // namespace detail

/// (rank²)^{-a} Σ_φ Π_e qdim(φ(e)) Π_T |T^φ| by frontier contraction along a
/// greedy edge order.  Source states are processed in fixed blocks whose
/// partial sums are merged in block order, so the result does not depend on
/// `jobs`.
inline StateSumResult state_sum(const Triangulation& t, const QuantumParams& p, const StateSumOptions& opt = {})
{
    if (!t.closed()) throw Error(ErrorCode::NotClosed, "state sum needs a closed complex");
    if (!t.folded_edges().empty()) throw Error(ErrorCode::BadGluing, "complex has an edge identified with itself reversed");
    auto start_time = std::chrono::steady_clock::now();
    StateSumResult res;
    res.a = t.vertex_count();
    res.edges = t.edge_count();
    const int nc = p.color_count();
    if (!opt.order.empty()) {
        std::vector<int> sorted = opt.order;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i] != static_cast<int>(i) || sorted.size() != static_cast<std::size_t>(t.edge_count())) {
                throw Error(ErrorCode::InvalidId, "explicit edge order is not a permutation of the edge classes");
            }
        }
    }
    const detail::ContractionPlan plan =
        opt.order.empty() ? detail::best_plan(t, nc) : detail::make_plan(t, detail::build_incidence(t), opt.order, nc);
    const detail::Packing pack(nc);
    for (const auto& f : plan.frontier) {
        res.max_frontier = std::max(res.max_frontier, static_cast<int>(f.size()));
    }
    if (res.max_frontier > pack.capacity()) {
        throw Error(ErrorCode::Overflow, "contraction frontier of " + std::to_string(res.max_frontier) + " edges exceeds the packed key");
    }
    std::vector<double> qd(static_cast<std::size_t>(nc));
    for (int c = 0; c < nc; ++c) qd[static_cast<std::size_t>(c)] = p.qdim_real(c);

    constexpr std::size_t kBlock = 2048;
    const int jobs = std::max(1, opt.jobs);
    const std::size_t ne = plan.order.size();

    detail::StateTable current;
    current.add({}, cplx{1.0, 0.0}, 1.0, 1);
    std::vector<int> prev_frontier;

    for (std::size_t d = 0; d < ne; ++d) {
        const int edge = plan.order[d];
        const auto& next_frontier = plan.frontier[d];
        const std::size_t nsrc = current.size();
        const std::size_t nblocks = (nsrc + kBlock - 1) / kBlock;
        std::vector<detail::StateTable> partial(nblocks);
        std::vector<std::uint64_t> pruned(nblocks, 0);
        std::vector<std::uint64_t> visits(nblocks, 0);

        auto run_block = [&](std::size_t b, std::vector<int>& colors) {
            auto& out = partial[b];
            std::size_t lo = b * kBlock;
            std::size_t hi = std::min(nsrc, lo + kBlock);
            for (std::size_t s = lo; s < hi; ++s) {
                const auto& key = current.key(s);
                for (std::size_t q = 0; q < prev_frontier.size(); ++q) colors[static_cast<std::size_t>(prev_frontier[q])] = pack.get(key, static_cast<int>(q));
                const cplx base = current.value(s);
                const double base_mag = current.magnitude(s);
                const std::uint64_t cnt = current.count(s);
                for (int c = 0; c < nc; ++c) {
                    ++visits[b];
                    colors[static_cast<std::size_t>(edge)] = c;
                    bool ok = true;
                    for (const auto& f : plan.faces[d]) {
                        if (!p.admissible(colors[static_cast<std::size_t>(f[0])], colors[static_cast<std::size_t>(f[1])], colors[static_cast<std::size_t>(f[2])])) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) {
                        ++pruned[b];
                        continue;
                    }
                    cplx w = base * qd[static_cast<std::size_t>(c)];
                    double mag = base_mag * std::abs(qd[static_cast<std::size_t>(c)]);
                    for (int tet : plan.tets[d]) {
                        const cplx x = p.sixj_fast(tet_key(t, tet, colors));
                        w *= x;
                        mag *= std::abs(x);
                    }
                    detail::PackedKey nk;
                    for (std::size_t q = 0; q < next_frontier.size(); ++q) pack.set(nk, static_cast<int>(q), colors[static_cast<std::size_t>(next_frontier[q])]);
                    out.add(nk, w, mag, cnt);
                }
            }
        };

        if (jobs == 1 || nblocks < 2) {
            std::vector<int> colors(static_cast<std::size_t>(t.edge_count()), 0);
            for (std::size_t b = 0; b < nblocks; ++b) run_block(b, colors);
        } else {
            const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), nblocks);
            std::vector<std::thread> pool;
            for (std::size_t w = 0; w < workers; ++w) {
                pool.emplace_back([&, w]() {
                    std::vector<int> colors(static_cast<std::size_t>(t.edge_count()), 0);
                    for (std::size_t b = w; b < nblocks; b += workers) run_block(b, colors);
                });
            }
            for (auto& th : pool) th.join();
        }

        detail::StateTable next;
        for (std::size_t b = 0; b < nblocks; ++b) {
            res.pruned += pruned[b];
            res.transitions += visits[b];
            for (std::size_t i = 0; i < partial[b].size(); ++i) next.add(partial[b].key(i), partial[b].value(i), partial[b].magnitude(i), partial[b].count(i));
        }
        if (res.transitions > opt.branch_cap) {
            throw Error(ErrorCode::Overflow, "state sum exceeded the branch cap of " + std::to_string(opt.branch_cap));
        }
        current = std::move(next);
        res.max_states = std::max(res.max_states, current.size());
        prev_frontier = next_frontier;
    }

    cplx total{0.0, 0.0};
    double magnitude = 0.0;
    for (std::size_t i = 0; i < current.size(); ++i) {
        total += current.value(i);
        magnitude += current.magnitude(i);
        res.colorings = detail::StateTable::saturating_add(res.colorings, current.count(i));
    }
    const double norm = std::pow(p.rank_squared_real(), -static_cast<double>(res.a));
    res.value = total * norm;
    res.magnitude = magnitude * norm;
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
    return res;
}

/// Depth-first enumeration of admissible colorings (per edge class), cutting a
/// branch as soon as a fully colored face is inadmissible.  The callback gets
/// each coloring with Π_e qdim Π_T |T^φ| (without the (rank²)^{-a} factor).
inline void enumerate_colorings(const Triangulation& t, const QuantumParams& p,
                                const std::function<void(const std::vector<int>&, cplx)>& emit)
{
    if (!t.closed()) throw Error(ErrorCode::NotClosed, "colorings need a closed complex");
    const int nc = p.color_count();
    const detail::ContractionPlan plan = detail::best_plan(t, nc);
    std::vector<int> colors(static_cast<std::size_t>(t.edge_count()), 0);
    const std::size_t ne = plan.order.size();
    auto rec = [&](auto&& self, std::size_t d, cplx w) -> void {
        if (d == ne) {
            emit(colors, w);
            return;
        }
        const int edge = plan.order[d];
        for (int c = 0; c < nc; ++c) {
            colors[static_cast<std::size_t>(edge)] = c;
            bool ok = true;
            for (const auto& f : plan.faces[d]) {
                ok = ok && p.admissible(colors[static_cast<std::size_t>(f[0])], colors[static_cast<std::size_t>(f[1])], colors[static_cast<std::size_t>(f[2])]);
            }
            if (!ok) continue;
            cplx v = w * p.qdim(c);
            for (int tet : plan.tets[d]) v *= p.sixj(tet_key(t, tet, colors));
            self(self, d + 1, v);
        }
    };
    rec(rec, 0, cplx{1.0, 0.0});
}

/// Relative deviation of two state sums.  A value that cancels to below 1e-9
/// of its absolute term sum is indistinguishable from zero in double
/// precision, so the comparison scale never drops under that level.
inline double state_sum_deviation(const StateSumResult& x, const StateSumResult& y)
{
    const double floor = 1e-9 * std::max(x.magnitude, y.magnitude);
    const double scale = std::max({std::abs(x.value), std::abs(y.value), floor});
    const double diff = std::abs(x.value - y.value);
    return scale > 0 ? diff / scale : diff;
}

struct InvarianceReport {
    StateSumResult initial;
    std::vector<StateSumResult> snapshots; // one per step
    std::vector<std::string> gammas;       // labeled Γ after each step
    double max_deviation = 0.0;
};

/// Random walk with a state sum after every step; reports the largest
/// deviation from the starting value.
inline InvarianceReport invariance_check(const Triangulation& t, const QuantumParams& p, int steps, std::uint64_t seed,
                                         const StateSumOptions& opt = {})
{
    InvarianceReport rep;
    rep.initial = state_sum(t, p, opt);
    random_walk(t, steps, seed, {}, [&](const WalkStep&, const Triangulation& snap) {
        rep.snapshots.push_back(state_sum(snap, p, opt));
        rep.gammas.push_back(skeletons(snap).gamma.labeled);
        rep.max_deviation = std::max(rep.max_deviation, state_sum_deviation(rep.snapshots.back(), rep.initial));
    });
    return rep;
}

} // namespace ptv
