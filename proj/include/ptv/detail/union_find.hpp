#pragma once

#include <numeric>
#include <vector>

namespace ptv::detail {

/// Disjoint sets with a Z/2 "parity" relative to the set root.  A merge that
/// contradicts an existing parity is reported instead of applied.
class ParityUnionFind {
public:
    explicit ParityUnionFind(std::size_t n) : parent_(n), parity_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t size() const { return parent_.size(); }

    /// Root of x; `parity` receives x's parity relative to the root.
    std::size_t find(std::size_t x, int& parity)
    {
        int acc = 0;
        std::size_t root = x;
        while (parent_[root] != root) {
            acc ^= parity_[root];
            root = parent_[root];
        }
        // path compression
        int running = acc;
        while (parent_[x] != x) {
            std::size_t next = parent_[x];
            int p = parity_[x];
            parent_[x] = root;
            parity_[x] = running;
            running ^= p;
            x = next;
        }
        parity = acc;
        return root;
    }

    std::size_t find(std::size_t x)
    {
        int p = 0;
        return find(x, p);
    }

    /// Declare parity(a) xor parity(b) == rel.  Returns false on contradiction.
    bool unite(std::size_t a, std::size_t b, int rel = 0)
    {
        int pa = 0;
        int pb = 0;
        std::size_t ra = find(a, pa);
        std::size_t rb = find(b, pb);
        if (ra == rb) return ((pa ^ pb) == rel);
        if (rb < ra) {
            std::swap(ra, rb);
            std::swap(pa, pb);
        }
        parent_[rb] = ra;
        parity_[rb] = pa ^ pb ^ rel;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<int> parity_;
};

} // namespace ptv::detail
