#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "tvlab/complexes.hpp"
#include "tvlab/error.hpp"
#include "tvlab/poset.hpp"
#include "tvlab/rational.hpp"

namespace tvlab {

using Simplex = std::vector<std::uint32_t>;

/// Abstract simplicial complex, closed under taking faces. simplices[q]
/// holds the q-simplices, each a sorted vertex list, in sorted order.
class SimplicialComplex
{
public:
    /// Downward closure of the given simplices (each is sorted internally).
    static SimplicialComplex from_faces(const std::vector<Simplex>& generators, std::size_t max_simplices = 2'000'000)
    {
        std::vector<std::set<Simplex>> levels;
        std::size_t total = 0;
        for (Simplex s : generators) {
            if (s.empty()) continue;
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            const std::size_t q = s.size() - 1;
            if (levels.size() <= q) levels.resize(q + 1);
            if (levels[q].insert(std::move(s)).second) ++total;
        }
        for (std::size_t q = levels.size(); q-- > 1;) {
            for (const auto& s : levels[q]) {
                for (std::size_t i = 0; i < s.size(); ++i) {
                    Simplex f;
                    f.reserve(s.size() - 1);
                    for (std::size_t j = 0; j < s.size(); ++j)
                        if (j != i) f.push_back(s[j]);
                    if (levels[q - 1].insert(std::move(f)).second) ++total;
                }
            }
            if (total > max_simplices)
                throw SizeCapExceeded("simplicial complex exceeds " + std::to_string(max_simplices) + " simplices");
        }
        SimplicialComplex K;
        for (auto& lv : levels) K.simplices_.emplace_back(lv.begin(), lv.end());
        return K;
    }

    /// Dimension of the top simplices; -1 for the void complex.
    int dimension() const { return static_cast<int>(simplices_.size()) - 1; }
    const std::vector<std::vector<Simplex>>& simplices() const { return simplices_; }
    std::size_t count(std::size_t q) const { return q < simplices_.size() ? simplices_[q].size() : 0; }

    std::size_t size() const
    {
        std::size_t s = 0;
        for (const auto& lv : simplices_) s += lv.size();
        return s;
    }

    /// Sum over simplices of (-1)^q.
    long long euler_characteristic() const
    {
        long long chi = 0;
        for (std::size_t q = 0; q < simplices_.size(); ++q)
            chi += (q % 2 ? -1 : 1) * static_cast<long long>(simplices_[q].size());
        return chi;
    }

private:
    std::vector<std::vector<Simplex>> simplices_;
};

/// Sparse integer boundary matrix d_q : C_q -> C_{q-1}, stored by column.
struct BoundaryMatrix
{
    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<std::pair<std::size_t, long long>>> columns;
};

/// Integer chain complex of a simplicial complex; boundaries[q] is d_q
/// (boundaries[0] is the zero map to C_{-1} = 0).
struct ChainComplex
{
    std::vector<BoundaryMatrix> boundaries;

    static ChainComplex of(const SimplicialComplex& K)
    {
        ChainComplex cc;
        const auto& S = K.simplices();
        for (std::size_t q = 0; q < S.size(); ++q) {
            BoundaryMatrix d;
            d.cols = S[q].size();
            d.rows = q == 0 ? 0 : S[q - 1].size();
            d.columns.resize(d.cols);
            if (q > 0) {
                for (std::size_t c = 0; c < S[q].size(); ++c) {
                    const auto& s = S[q][c];
                    for (std::size_t i = 0; i < s.size(); ++i) {
                        Simplex f;
                        for (std::size_t j = 0; j < s.size(); ++j)
                            if (j != i) f.push_back(s[j]);
                        auto it = std::lower_bound(S[q - 1].begin(), S[q - 1].end(), f);
                        d.columns[c].emplace_back(static_cast<std::size_t>(it - S[q - 1].begin()), i % 2 ? -1 : 1);
                    }
                }
            }
            cc.boundaries.push_back(std::move(d));
        }
        return cc;
    }

    /// Exact check that d_{q} d_{q+1} = 0 for every q.
    bool boundary_squared_zero() const
    {
        for (std::size_t q = 1; q + 1 < boundaries.size(); ++q) {
            const auto& lo = boundaries[q];
            const auto& hi = boundaries[q + 1];
            for (const auto& col : hi.columns) {
                std::map<std::size_t, long long> acc;
                for (const auto& [mid, a] : col)
                    for (const auto& [low, b] : lo.columns[mid]) acc[low] += a * b;
                for (const auto& [idx, v] : acc)
                    if (v != 0) return false;
            }
        }
        return true;
    }
};

namespace detail {

inline long long checked_mul_add(long long acc, long long a, long long b)
{
    long long prod = 0, sum = 0;
    if (__builtin_mul_overflow(a, b, &prod) || __builtin_add_overflow(acc, prod, &sum))
        throw SizeCapExceeded("integer overflow during sparse elimination");
    return sum;
}

// Smith normal form of a small dense integer matrix; pivots on the entry of
// minimal absolute value. Returns the nonzero invariant factors.
inline std::vector<Integer> dense_smith(std::vector<std::vector<Integer>> a)
{
    std::vector<Integer> diag;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        for (;;) {
            // Minimal nonzero entry of the trailing block.
            std::size_t pr = rows, pc = cols;
            for (std::size_t r = t; r < rows; ++r)
                for (std::size_t c = t; c < cols; ++c)
                    if (a[r][c] != 0 && (pr == rows || abs(a[r][c]) < abs(a[pr][pc]))) pr = r, pc = c;
            if (pr == rows) return diag;
            std::swap(a[t], a[pr]);
            for (auto& row : a) std::swap(row[t], row[pc]);

            bool clean = true;
            for (std::size_t r = t + 1; r < rows; ++r) {
                if (a[r][t] == 0) continue;
                Integer q = a[r][t] / a[t][t];
                for (std::size_t c = t; c < cols; ++c) a[r][c] -= q * a[t][c];
                if (a[r][t] != 0) clean = false;
            }
            for (std::size_t c = t + 1; c < cols; ++c) {
                if (a[t][c] == 0) continue;
                Integer q = a[t][c] / a[t][t];
                for (std::size_t r = t; r < rows; ++r) a[r][c] -= q * a[r][t];
                if (a[t][c] != 0) clean = false;
            }
            if (!clean) continue;
            // Pivot must divide the rest of the block; otherwise fold a row in and retry.
            std::size_t bad = rows;
            for (std::size_t r = t + 1; r < rows && bad == rows; ++r)
                for (std::size_t c = t + 1; c < cols; ++c)
                    if (a[r][c] % a[t][t] != 0) {
                        bad = r;
                        break;
                    }
            if (bad == rows) break;
            for (std::size_t c = t; c < cols; ++c) a[t][c] += a[bad][c];
        }
        diag.push_back(abs(a[t][t]));
    }
    return diag;
}

}  // namespace detail

/// Nonzero invariant factors of an integer matrix. Unit pivots are
/// eliminated sparsely first; whatever remains is reduced densely.
inline std::vector<Integer> smith_invariants(const BoundaryMatrix& m)
{
    std::vector<std::map<std::size_t, long long>> rows(m.rows);
    std::vector<std::set<std::size_t>> colrows(m.cols);
    for (std::size_t c = 0; c < m.cols; ++c)
        for (const auto& [r, v] : m.columns[c])
            if (v != 0) {
                rows[r][c] = v;
                colrows[c].insert(r);
            }

    std::vector<Integer> diag;
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t c = 0; c < m.cols; ++c) {
            if (colrows[c].empty()) continue;
            std::size_t piv = m.rows;
            for (std::size_t r : colrows[c]) {
                const long long v = rows[r].at(c);
                if ((v == 1 || v == -1) && (piv == m.rows || rows[r].size() < rows[piv].size())) piv = r;
            }
            if (piv == m.rows) continue;
            const long long u = rows[piv].at(c);
            const auto prow = rows[piv];
            std::vector<std::size_t> others(colrows[c].begin(), colrows[c].end());
            for (std::size_t r : others) {
                if (r == piv) continue;
                const long long f = -rows[r].at(c) * u;
                for (const auto& [pc, pv] : prow) {
                    long long nv = detail::checked_mul_add(rows[r].count(pc) ? rows[r][pc] : 0, f, pv);
                    if (nv == 0) {
                        rows[r].erase(pc);
                        colrows[pc].erase(r);
                    } else {
                        rows[r][pc] = nv;
                        colrows[pc].insert(r);
                    }
                }
            }
            for (const auto& [pc, pv] : prow) colrows[pc].erase(piv);
            rows[piv].clear();
            diag.emplace_back(1);
            progress = true;
        }
    }

    std::vector<std::size_t> live_rows, live_cols;
    for (std::size_t r = 0; r < m.rows; ++r)
        if (!rows[r].empty()) live_rows.push_back(r);
    for (std::size_t c = 0; c < m.cols; ++c)
        if (!colrows[c].empty()) live_cols.push_back(c);
    if (!live_rows.empty()) {
        if (live_rows.size() * live_cols.size() > 4'000'000)
            throw SizeCapExceeded("dense Smith block too large");
        std::vector<std::vector<Integer>> dense(live_rows.size(), std::vector<Integer>(live_cols.size()));
        for (std::size_t i = 0; i < live_rows.size(); ++i)
            for (const auto& [c, v] : rows[live_rows[i]])
                dense[i][static_cast<std::size_t>(std::lower_bound(live_cols.begin(), live_cols.end(), c) -
                                                  live_cols.begin())] = v;
        for (auto& f : detail::dense_smith(std::move(dense))) diag.push_back(std::move(f));
    }
    return diag;
}

struct HomologyReport
{
    std::vector<std::size_t> betti;               // rank of H_q
    std::vector<std::vector<Integer>> torsion;    // invariant factors > 1 of H_q
    std::vector<std::size_t> simplex_counts;
    bool boundary_squared_zero = true;

    long long euler_characteristic() const
    {
        long long chi = 0;
        for (std::size_t q = 0; q < betti.size(); ++q) chi += (q % 2 ? -1 : 1) * static_cast<long long>(betti[q]);
        return chi;
    }

    /// Betti numbers without trailing zeros; at least one entry.
    std::vector<std::size_t> betti_trimmed() const
    {
        std::vector<std::size_t> b = betti;
        while (b.size() > 1 && b.back() == 0) b.pop_back();
        return b;
    }

    /// Reduced homology vanishes in degrees 0..degree (free and torsion parts).
    bool reduced_acyclic_through(int degree) const
    {
        for (int q = 0; q <= degree; ++q) {
            const auto uq = static_cast<std::size_t>(q);
            const std::size_t b = uq < betti.size() ? betti[uq] : 0;
            if (b != (q == 0 ? 1u : 0u)) return false;
            if (uq < torsion.size() && !torsion[uq].empty()) return false;
        }
        return true;
    }
};

/// Integral homology via Smith normal form of the boundary matrices.
inline HomologyReport homology(const SimplicialComplex& K)
{
    ChainComplex cc = ChainComplex::of(K);
    HomologyReport r;
    r.boundary_squared_zero = cc.boundary_squared_zero();
    if (!r.boundary_squared_zero) throw InternalError("boundary of a boundary is nonzero");

    const std::size_t top = cc.boundaries.size();
    std::vector<std::vector<Integer>> inv(top + 1);
    for (std::size_t q = 1; q < top; ++q) inv[q] = smith_invariants(cc.boundaries[q]);
    for (std::size_t q = 0; q < top; ++q) {
        r.simplex_counts.push_back(K.count(q));
        const std::size_t rank_out = inv[q].size();
        const std::size_t rank_in = inv[q + 1].size();
        r.betti.push_back(K.count(q) - rank_out - rank_in);
        std::vector<Integer> tors;
        for (const auto& f : inv[q + 1])
            if (f > 1) tors.push_back(f);
        r.torsion.push_back(std::move(tors));
    }
    return r;
}

/// K_{n,k} as a simplicial complex on the indices of its vertices.
inline SimplicialComplex simplicial_complex_of(const KComplex& K)
{
    std::vector<Simplex> gens(K.faces.begin(), K.faces.end());
    return SimplicialComplex::from_faces(gens);
}

/// Order complex of a poset with the given elements removed (e.g. the empty
/// cell): its simplices are the chains. Vertex labels are element indices.
inline SimplicialComplex order_complex(const Poset& P, const std::vector<std::size_t>& excluded = {},
                                       std::size_t max_simplices = 2'000'000)
{
    std::vector<char> skip(P.size(), 0);
    for (auto e : excluded) skip[e] = 1;
    const auto above = P.strictly_above();
    std::vector<Simplex> chains;
    Simplex chain;
    auto extend = [&](auto&& self, std::size_t top) -> void {
        chains.push_back(chain);
        if (chains.size() > max_simplices) throw SizeCapExceeded("order complex exceeds simplex cap");
        for (std::size_t nxt : above[top]) {
            if (skip[nxt]) continue;
            chain.push_back(static_cast<std::uint32_t>(nxt));
            self(self, nxt);
            chain.pop_back();
        }
    };
    for (std::size_t e = 0; e < P.size(); ++e) {
        if (skip[e]) continue;
        chain.assign(1, static_cast<std::uint32_t>(e));
        extend(extend, e);
    }
    return SimplicialComplex::from_faces(chains, max_simplices);
}

/// Order complex of C_{n,k} minus its empty cell, a subdivision of the cell complex.
inline SimplicialComplex order_complex(const CellPoset& C) { return order_complex(C.poset, {0}); }

}  // namespace tvlab
