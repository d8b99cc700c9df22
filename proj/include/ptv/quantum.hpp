#pragma once

#include "ptv/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace ptv {

using cplx = std::complex<double>;

/// Colors (i,j,k,l,m,n) of the edges AB, BC, AC, CD, AD, BD of a tetrahedron ABCD.
using SixJKey = std::array<int, 6>;

/// Root-of-unity data for U_q(sl2): a = exp(2πi c / 4r), colors I = {0..r-2}.
/// Immutable after construction, so it can be shared across threads.
class QuantumParams {
public:
    explicit QuantumParams(int r, int root = 1, double tol = 1e-9) : r_(r), c_(root), tol_(tol)
    {
        if (r < 2) throw Error(ErrorCode::InvalidRoot, "level r must be at least 2");
        if (std::gcd(root, 4 * r) != 1) {
            throw Error(ErrorCode::InvalidRoot, "root exponent " + std::to_string(root) + " is not coprime to 4r = " + std::to_string(4 * r));
        }
        const int top = 2 * r + 2;
        qint_.resize(static_cast<std::size_t>(top + 1));
        qfact_.resize(static_cast<std::size_t>(top + 1));
        const double base = std::sin(std::numbers::pi * c_ / r_);
        for (int n = 0; n <= top; ++n) {
            // sin(πcn/r)/sin(πc/r) equals (a^{2n}-a^{-2n})/(a^2-a^{-2}); exact zero at multiples of r
            qint_[static_cast<std::size_t>(n)] = (static_cast<long long>(c_) * n) % r_ == 0 ? 0.0 : std::sin(std::numbers::pi * c_ * n / r_) / base;
            qfact_[static_cast<std::size_t>(n)] = n == 0 ? 1.0 : qfact_[static_cast<std::size_t>(n - 1)] * qint_[static_cast<std::size_t>(n)];
        }
        const int nc = color_count();
        gamma_root_.assign(static_cast<std::size_t>(nc * nc * nc), cplx{});
        for (int i = 0; i < nc; ++i) {
            for (int j = i; j < nc; ++j) {
                for (int k = j; k < nc; ++k) {
                    if (!admissible(i, j, k)) continue;
                    cplx root_value = std::sqrt(cplx(gamma(i, j, k), 0.0));
                    for (auto [x, y, z] : std::array<std::array<int, 3>, 6>{{{i, j, k}, {i, k, j}, {j, i, k}, {j, k, i}, {k, i, j}, {k, j, i}}}) {
                        gamma_root_[static_cast<std::size_t>((x * nc + y) * nc + z)] = root_value;
                    }
                }
            }
        }
        std::size_t keys = 1;
        for (int d = 0; d < 6; ++d) keys *= static_cast<std::size_t>(nc);
        if (keys <= kTableLimit) {
            table_.assign(keys, cplx{});
            for (std::size_t idx = 0; idx < keys; ++idx) {
                SixJKey key{};
                std::size_t rest = idx;
                for (int d = 5; d >= 0; --d) {
                    key[static_cast<std::size_t>(d)] = static_cast<int>(rest % static_cast<std::size_t>(nc));
                    rest /= static_cast<std::size_t>(nc);
                }
                table_[idx] = compute_sixj(key);
            }
        }
    }

    int r() const { return r_; }
    int root() const { return c_; }
    double tol() const { return tol_; }
    int color_count() const { return r_ - 1; }

    cplx a() const { return std::polar(1.0, std::numbers::pi * c_ / (2.0 * r_)); }

    /// [n]; negative n uses [-n] = -[n].
    double qint_real(int n) const
    {
        if (n < 0) return -qint_real(-n);
        if (n < static_cast<int>(qint_.size())) return qint_[static_cast<std::size_t>(n)];
        return (static_cast<long long>(c_) * n) % r_ == 0 ? 0.0 : std::sin(std::numbers::pi * c_ * n / r_) / std::sin(std::numbers::pi * c_ / r_);
    }
    cplx qint(int n) const { return {qint_real(n), 0.0}; }

    double qfact(int n) const
    {
        if (n < 0) throw Error(ErrorCode::InvalidId, "negative quantum factorial");
        if (n < static_cast<int>(qfact_.size())) return qfact_[static_cast<std::size_t>(n)];
        double v = qfact_.back();
        for (int k = static_cast<int>(qfact_.size()); k <= n; ++k) v *= qint_real(k);
        return v;
    }

    bool in_range(int i) const { return i >= 0 && i < color_count(); }

    double qdim_real(int i) const
    {
        if (!in_range(i)) throw Error(ErrorCode::ColorOutOfRange, "color " + std::to_string(i));
        return (i % 2 == 0 ? 1.0 : -1.0) * qint_real(i + 1);
    }
    cplx qdim(int i) const { return {qdim_real(i), 0.0}; }

    /// -2r (a^2 - a^-2)^-2 = r / (2 sin^2(πc/r))
    double rank_squared_real() const
    {
        double s = std::sin(std::numbers::pi * c_ / r_);
        return r_ / (2.0 * s * s);
    }
    cplx rank_squared() const { return {rank_squared_real(), 0.0}; }

    bool admissible(int i, int j, int k) const
    {
        if (!in_range(i) || !in_range(j) || !in_range(k)) return false;
        if ((i + j + k) % 2 != 0) return false;
        if (i + j + k > 2 * r_ - 4) return false;
        return std::abs(i - j) <= k && k <= i + j;
    }

    /// Γ(i,j,k) for an admissible triple.
    double gamma(int i, int j, int k) const
    {
        int s = (i + j + k) / 2;
        double sign = s % 2 == 0 ? 1.0 : -1.0;
        return sign * qfact(s + 1) * qfact(s - k) * qfact(s - j) * qfact(s - i) / (qfact(i) * qfact(j) * qfact(k));
    }

    /// The fixed square root Γ' of Γ for an admissible triple (principal branch).
    cplx gamma_root(int i, int j, int k) const
    {
        const int nc = color_count();
        return gamma_root_[static_cast<std::size_t>((i * nc + j) * nc + k)];
    }

    /// <i,j,k> = [s-k]! [s-j]! [s-i]! / Γ'(i,j,k)
    cplx bracket(int i, int j, int k) const
    {
        int s = (i + j + k) / 2;
        return qfact(s - k) * qfact(s - j) * qfact(s - i) / gamma_root(i, j, k);
    }

    cplx sixj(const SixJKey& key) const
    {
        for (int c : key) {
            if (!in_range(c)) throw Error(ErrorCode::ColorOutOfRange, "color " + std::to_string(c));
        }
        if (!table_.empty()) return table_[table_index(key)];
        return compute_sixj(key);
    }
    cplx sixj(int i, int j, int k, int l, int m, int n) const { return sixj(SixJKey{i, j, k, l, m, n}); }

    /// Unchecked lookup for the contraction kernel (colors assumed in range).
    cplx sixj_fast(const SixJKey& key) const { return table_.empty() ? compute_sixj(key) : table_[table_index(key)]; }

    bool has_table() const { return !table_.empty(); }

    /// Size of the z-sum terms behind sixj(key); round-off in sixj is relative to this.
    double sixj_magnitude(const SixJKey& key) const
    {
        double mag = 0.0;
        evaluate(key, &mag);
        return mag;
    }

private:
    static constexpr std::size_t kTableLimit = 300000;

    std::size_t table_index(const SixJKey& key) const
    {
        std::size_t idx = 0;
        for (int c : key) idx = idx * static_cast<std::size_t>(color_count()) + static_cast<std::size_t>(c);
        return idx;
    }

    cplx compute_sixj(const SixJKey& key) const { return evaluate(key, nullptr); }

    /// The z-sum formula; `magnitude` (optional) receives the same expression
    /// with every term taken in absolute value.
    cplx evaluate(const SixJKey& key, double* magnitude) const
    {
        const auto [i, j, k, l, m, n] = key;
        if (magnitude) *magnitude = 0.0;
        if (!admissible(i, j, k) || !admissible(i, m, n) || !admissible(j, l, n) || !admissible(k, l, m)) return {0.0, 0.0};
        // face half-sums and the three "opposite pair" half-sums
        const std::array<int, 4> lo{(i + j + k) / 2, (i + m + n) / 2, (j + l + n) / 2, (k + l + m) / 2};
        const std::array<int, 3> hi{(i + j + l + m) / 2, (j + k + m + n) / 2, (i + k + l + n) / 2};
        int zmin = *std::max_element(lo.begin(), lo.end());
        int zmax = *std::min_element(hi.begin(), hi.end());
        double sum = 0.0;
        double abs_sum = 0.0;
        for (int z = zmin; z <= zmax; ++z) {
            double den = 1.0;
            for (int a : lo) den *= qfact(z - a);
            for (int b : hi) den *= qfact(b - z);
            double term = qfact(z + 1) / den;
            sum += (z % 2 == 0) ? term : -term;
            abs_sum += std::abs(term);
        }
        cplx pre = bracket(i, j, k) * bracket(i, m, n) * bracket(j, l, n) * bracket(k, l, m);
        pre /= qfact(i) * qfact(j) * qfact(k) * qfact(l) * qfact(m) * qfact(n);
        if (magnitude) *magnitude = std::abs(pre) * abs_sum;
        return pre * sum;
    }

    int r_;
    int c_;
    double tol_;
    std::vector<double> qint_;
    std::vector<double> qfact_;
    std::vector<cplx> gamma_root_;
    std::vector<cplx> table_;
};

inline cplx qint(const QuantumParams& p, int n) { return p.qint(n); }
inline cplx qdim(const QuantumParams& p, int i) { return p.qdim(i); }
inline cplx rank_squared(const QuantumParams& p) { return p.rank_squared(); }
inline bool admissible(const QuantumParams& p, int i, int j, int k) { return p.admissible(i, j, k); }
inline cplx sixj(const QuantumParams& p, const SixJKey& key) { return p.sixj(key); }

/// Key of the same tetrahedron after relabelling its vertices A,B,C,D -> σ.
inline SixJKey permute_key(const SixJKey& key, const Perm4& sigma)
{
    // edge colors indexed by unordered vertex pair, vertices 0..3 = A..D
    std::array<std::array<int, 4>, 4> col{};
    auto set = [&](int x, int y, int c) {
        col[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = c;
        col[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = c;
    };
    set(0, 1, key[0]);
    set(1, 2, key[1]);
    set(0, 2, key[2]);
    set(2, 3, key[3]);
    set(0, 3, key[4]);
    set(1, 3, key[5]);
    auto at = [&](int x, int y) { return col[static_cast<std::size_t>(sigma[x])][static_cast<std::size_t>(sigma[y])]; };
    return {at(0, 1), at(1, 2), at(0, 2), at(2, 3), at(0, 3), at(1, 3)};
}

inline double relative_deviation(cplx x, cplx y)
{
    double scale = std::max(std::abs(x), std::abs(y));
    double diff = std::abs(x - y);
    return scale > 1e-300 ? diff / scale : diff;
}

struct PentagonReport {
    int samples = 0;
    double max_deviation = 0.0;
    int nonzero = 0; // samples with a non-vanishing left-hand side
};

/// Colors on the nine boundary edges of the 2-3 configuration ABCD ∪ A'BCD.
struct PentagonSample {
    int ab = 0, ac = 0, ad = 0, xb = 0, xc = 0, xd = 0, bc = 0, bd = 0, cd = 0;
};

/// Both sides of the 2-3 identity: two tetrahedra versus the sum over the
/// color of the new edge AA' of three tetrahedra weighted by its dimension.
/// `scale` bounds the size of the terms entering either side, the yardstick
/// for round-off when the sides themselves cancel to zero.
struct PentagonSides {
    cplx lhs;
    cplx rhs;
    double scale = 0.0;
};

inline PentagonSides pentagon_sides(const QuantumParams& p, const PentagonSample& s)
{
    PentagonSides out;
    double lhs_scale = 1.0;
    auto w = [&](int ab, int bc, int ac, int cd, int ad, int bd, double& scale) {
        SixJKey key{ab, bc, ac, cd, ad, bd};
        scale *= p.sixj_magnitude(key);
        return p.sixj(key);
    };
    out.lhs = w(s.ab, s.bc, s.ac, s.cd, s.ad, s.bd, lhs_scale) * w(s.xb, s.bc, s.xc, s.cd, s.xd, s.bd, lhs_scale);
    double rhs_scale = 0.0;
    for (int x = 0; x < p.color_count(); ++x) {
        // tetrahedra A A' B C, A A' B D, A A' C D with A, A' first
        double term_scale = std::abs(p.qdim_real(x));
        cplx t1 = w(x, s.xb, s.ab, s.bc, s.ac, s.xc, term_scale);
        cplx t2 = w(x, s.xb, s.ab, s.bd, s.ad, s.xd, term_scale);
        cplx t3 = w(x, s.xc, s.ac, s.cd, s.ad, s.xd, term_scale);
        out.rhs += p.qdim(x) * t1 * t2 * t3;
        rhs_scale += term_scale;
    }
    out.scale = std::max(lhs_scale, rhs_scale);
    return out;
}

inline PentagonReport verify_pentagon(const QuantumParams& p, int samples, std::uint64_t seed)
{
    PentagonReport rep;
    std::mt19937_64 rng(seed);
    const int nc = p.color_count();
    auto draw = [&]() { return static_cast<int>(rng() % static_cast<std::uint64_t>(nc)); };
    for (int s = 0; s < samples; ++s) {
        PentagonSample cs;
        for (int attempt = 0; attempt < 10000; ++attempt) {
            cs = {draw(), draw(), draw(), draw(), draw(), draw(), draw(), draw(), draw()};
            if (p.admissible(cs.ab, cs.bc, cs.ac) && p.admissible(cs.ab, cs.bd, cs.ad) && p.admissible(cs.ac, cs.cd, cs.ad) &&
                p.admissible(cs.xb, cs.bc, cs.xc) && p.admissible(cs.xb, cs.bd, cs.xd) && p.admissible(cs.xc, cs.cd, cs.xd)) {
                break;
            }
        }
        auto sides = pentagon_sides(p, cs);
        double scale = std::max({std::abs(sides.lhs), std::abs(sides.rhs), sides.scale});
        double dev = scale > 0.0 ? std::abs(sides.lhs - sides.rhs) / scale : 0.0;
        rep.max_deviation = std::max(rep.max_deviation, dev);
        if (std::abs(sides.lhs) > 1e-12 * scale) ++rep.nonzero;
        ++rep.samples;
    }
    return rep;
}

struct AlgebraCheck {
    double rank_deviation = 0.0;
    bool gate_ok = true;       // every inadmissible key gives exactly zero
    int accidental_zeros = 0;  // admissible keys whose value still vanishes
    double symmetry_deviation = 0.0;
    PentagonReport pentagon;
    bool passed = false;
};

/// The identity suite: rank against Σ qdim², the admissibility gate on every
/// key, tetrahedral symmetry on random admissible keys, and the 2-3 identity.
inline AlgebraCheck check_identities(const QuantumParams& p, int samples = 100, std::uint64_t seed = 1)
{
    AlgebraCheck out;
    double sum = 0.0;
    for (int i = 0; i < p.color_count(); ++i) sum += p.qdim_real(i) * p.qdim_real(i);
    out.rank_deviation = std::abs(sum - p.rank_squared_real()) / p.rank_squared_real();
    const int nc = p.color_count();
    std::size_t keys = 1;
    for (int d = 0; d < 6; ++d) keys *= static_cast<std::size_t>(nc);
    if (keys <= 300000) {
        for (std::size_t idx = 0; idx < keys; ++idx) {
            SixJKey key{};
            std::size_t rest = idx;
            for (int d = 5; d >= 0; --d) {
                key[static_cast<std::size_t>(d)] = static_cast<int>(rest % static_cast<std::size_t>(nc));
                rest /= static_cast<std::size_t>(nc);
            }
            bool adm = p.admissible(key[0], key[1], key[2]) && p.admissible(key[0], key[4], key[5]) &&
                       p.admissible(key[1], key[3], key[5]) && p.admissible(key[2], key[3], key[4]);
            bool zero = p.sixj(key) == cplx{0.0, 0.0};
            if (!adm && !zero) out.gate_ok = false;
            if (adm && zero) ++out.accidental_zeros;
        }
    }
    std::mt19937_64 rng(seed);
    int found = 0;
    for (int attempt = 0; found < samples && attempt < samples * 10000; ++attempt) {
        SixJKey key{};
        for (auto& c : key) c = static_cast<int>(rng() % static_cast<std::uint64_t>(nc));
        cplx v = p.sixj(key);
        if (v == cplx{0.0, 0.0}) continue;
        ++found;
        double scale = std::max(std::abs(v), p.sixj_magnitude(key));
        for (int pi = 0; pi < 24; ++pi) {
            cplx w = p.sixj(permute_key(key, Perm4::from_index(pi)));
            out.symmetry_deviation = std::max(out.symmetry_deviation, std::abs(v - w) / scale);
        }
    }
    out.pentagon = verify_pentagon(p, samples, seed);
    out.passed = out.rank_deviation < p.tol() && out.gate_ok && out.symmetry_deviation < p.tol() && out.pentagon.max_deviation < p.tol();
    return out;
}

} // namespace ptv
