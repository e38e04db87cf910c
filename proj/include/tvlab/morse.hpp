#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tvlab/complexes.hpp"
#include "tvlab/error.hpp"
#include "tvlab/poset.hpp"

namespace tvlab {

/// Vertex-disjoint Hasse-cover pairs (lower, upper), as element indices.
struct Matching
{
    std::vector<std::pair<std::size_t, std::size_t>> pairs;

    void sort() { std::sort(pairs.begin(), pairs.end()); }
};

struct MorseReport
{
    bool acyclic = false;
    std::vector<std::size_t> critical;  // unmatched elements, ascending
    std::vector<int> critical_dims;
    long long euler_critical = 0;       // sum over critical cells of (-1)^dim
    long long euler_total = 0;          // sum over all elements of (-1)^dim
    bool euler_balanced() const { return euler_critical == euler_total; }
};

namespace detail {

inline int sign_of_dim(int dim) { return (dim % 2 == 0) ? 1 : -1; }

// Throws unless every pair is a cover and no element is used twice.
inline std::vector<std::optional<std::size_t>> partner_table(const Poset& P, const Matching& M)
{
    std::vector<std::optional<std::size_t>> partner(P.size());
    for (const auto& [lo, hi] : M.pairs) {
        if (lo >= P.size() || hi >= P.size()) throw InputError("matching refers to an element outside the poset");
        if (!P.covers(lo, hi)) throw InputError("matched pair is not a covering relation");
        if (partner[lo] || partner[hi]) throw InputError("matching uses an element twice");
        partner[lo] = hi;
        partner[hi] = lo;
    }
    return partner;
}

}  // namespace detail

/// Orients every Hasse edge downward except matched edges, which point up;
/// the matching is acyclic iff that digraph has no directed cycle.
inline MorseReport verify_acyclic(const Poset& P, const Matching& M)
{
    const auto partner = detail::partner_table(P, M);
    const std::size_t n = P.size();
    auto out_edges = [&](std::size_t v, std::vector<std::size_t>& out) {
        out.clear();
        if (partner[v] && P.rank[*partner[v]] > P.rank[v]) out.push_back(*partner[v]);
        for (std::size_t w : P.down[v])
            if (!(partner[v] && *partner[v] == w)) out.push_back(w);
    };

    MorseReport r;
    r.acyclic = true;
    std::vector<char> color(n, 0);  // 0 new, 1 on stack, 2 done
    std::vector<std::pair<std::size_t, std::size_t>> stack;
    std::vector<std::vector<std::size_t>> succ(n);
    for (std::size_t v = 0; v < n; ++v) out_edges(v, succ[v]);
    for (std::size_t s = 0; s < n && r.acyclic; ++s) {
        if (color[s]) continue;
        stack.emplace_back(s, 0);
        color[s] = 1;
        while (!stack.empty() && r.acyclic) {
            auto& [v, i] = stack.back();
            if (i < succ[v].size()) {
                const std::size_t w = succ[v][i++];
                if (color[w] == 1) {
                    r.acyclic = false;
                } else if (color[w] == 0) {
                    color[w] = 1;
                    stack.emplace_back(w, 0);
                }
            } else {
                color[v] = 2;
                stack.pop_back();
            }
        }
        stack.clear();
    }

    for (std::size_t v = 0; v < n; ++v) {
        r.euler_total += detail::sign_of_dim(P.rank[v]);
        if (partner[v]) continue;
        r.critical.push_back(v);
        r.critical_dims.push_back(P.rank[v]);
        r.euler_critical += detail::sign_of_dim(P.rank[v]);
    }
    return r;
}

/// A family of subsets of a ground set, as bitmasks, ordered by inclusion.
struct SubsetFamily
{
    std::vector<std::uint32_t> members;
    Poset poset;  // rank = |sigma| - 1

    explicit SubsetFamily(std::vector<std::uint32_t> sets) : members(std::move(sets))
    {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        std::vector<int> ranks;
        for (auto s : members) ranks.push_back(__builtin_popcount(s) - 1);
        poset = Poset::from_order(std::move(ranks), [this](std::size_t a, std::size_t b) {
            return members[a] != members[b] && (members[a] & members[b]) == members[a];
        });
    }

    std::optional<std::size_t> find(std::uint32_t s) const
    {
        auto it = std::lower_bound(members.begin(), members.end(), s);
        if (it == members.end() || *it != s) return std::nullopt;
        return static_cast<std::size_t>(it - members.begin());
    }

    /// The whole power set of `ground`.
    static SubsetFamily power_set(std::uint32_t ground)
    {
        std::vector<std::uint32_t> sets;
        for (std::uint32_t s = ground;; s = (s - 1) & ground) {
            sets.push_back(s);
            if (s == 0) break;
        }
        return SubsetFamily(std::move(sets));
    }
};

/// Pairs sigma - x with sigma + x whenever both lie in P. The result is
/// checked for acyclicity before returning.
inline Matching element_matching(const SubsetFamily& P, unsigned x)
{
    if (x >= 32) throw InputError("element_matching: element out of range");
    const std::uint32_t bit = std::uint32_t{1} << x;
    Matching M;
    for (std::size_t i = 0; i < P.members.size(); ++i) {
        const std::uint32_t s = P.members[i];
        if (s & bit) continue;
        if (auto j = P.find(s | bit)) M.pairs.emplace_back(i, *j);
    }
    if (!verify_acyclic(P.poset, M).acyclic) throw InternalError("element matching came out cyclic");
    return M;
}

/// Union of matchings living on the fibers of an order-preserving map h
/// from (part of) P to a poset Q. h[e] == nullopt marks elements outside
/// the domain. `q_leq` is the (non-strict) order of Q.
inline Matching patchwork_compose(const Poset& P, const std::vector<std::optional<std::size_t>>& h,
                                  const std::function<bool(std::size_t, std::size_t)>& q_leq,
                                  const std::vector<Matching>& fiber_matchings)
{
    if (h.size() != P.size()) throw InputError("patchwork_compose: map size differs from poset size");
    for (std::size_t a = 0; a < P.size(); ++a) {
        if (!h[a]) continue;
        for (std::size_t b : P.up[a])
            if (h[b] && !q_leq(*h[a], *h[b])) throw InputError("patchwork_compose: map is not order-preserving");
    }
    Matching M;
    std::vector<char> used(P.size(), 0);
    for (const auto& Mq : fiber_matchings) {
        for (const auto& [lo, hi] : Mq.pairs) {
            if (lo >= P.size() || hi >= P.size() || !h[lo] || !h[hi] || *h[lo] != *h[hi])
                throw InputError("patchwork_compose: pair not confined to one fiber");
            if (used[lo] || used[hi]) throw InputError("patchwork_compose: fibers' matchings overlap");
            used[lo] = used[hi] = 1;
            M.pairs.emplace_back(lo, hi);
        }
    }
    if (!verify_acyclic(P, M).acyclic) throw InputError("patchwork_compose: composed matching is cyclic");
    M.sort();
    return M;
}

namespace detail {

// Cells of C_{n,k} as k-tuples of preimage bitmasks; the empty cell is all zeros.
using CellBlocks = std::vector<std::uint32_t>;


inline std::size_t cell_index(const CellPoset& C, const CellBlocks& X)
{
    std::vector<int> vals(static_cast<std::size_t>(C.n), PartialSurjection::kUndefined);
    for (std::size_t j = 0; j < X.size(); ++j)
        for (int x = 0; x < C.n; ++x)
            if (X[j] >> x & 1) vals[static_cast<std::size_t>(x)] = static_cast<int>(j);
    auto idx = C.find(vals);
    if (!idx) throw InternalError("recursive matching produced a non-cell");
    return *idx;
}

// Groups the elements of `domain` by key; returns the fibers keyed in order.
template <typename Key>
std::map<Key, std::vector<std::size_t>> fibers_by(const std::vector<std::size_t>& domain,
                                                  const std::function<Key(std::size_t)>& key)
{
    std::map<Key, std::vector<std::size_t>> out;
    for (std::size_t e : domain) out[key(e)].push_back(e);
    return out;
}

// On a fiber isomorphic to a family of subsets (given by `subset_of`), run
// the element matching for element x and translate back to cell indices.
inline Matching matching_on_fiber(const std::vector<std::size_t>& fiber,
                                  const std::function<std::uint32_t(std::size_t)>& subset_of, unsigned x)
{
    std::vector<std::uint32_t> subsets;
    std::map<std::uint32_t, std::size_t> back;
    for (std::size_t e : fiber) {
        subsets.push_back(subset_of(e));
        back[subsets.back()] = e;
    }
    SubsetFamily fam(subsets);
    Matching local = element_matching(fam, x);
    Matching M;
    for (const auto& [lo, hi] : local.pairs) M.pairs.emplace_back(back.at(fam.members[lo]), back.at(fam.members[hi]));
    return M;
}

inline int top_bit(std::uint32_t s) { return 31 - __builtin_clz(s); }

// Projection forgetting component i; the target (2^[n-1])^(k-1) is ordered componentwise.
inline bool componentwise_leq(const CellBlocks& a, const CellBlocks& b)
{
    for (std::size_t j = 0; j < a.size(); ++j)
        if ((a[j] & b[j]) != a[j]) return false;
    return true;
}

inline CellBlocks forget(const CellBlocks& X, std::size_t i)
{
    CellBlocks out;
    for (std::size_t j = 0; j < X.size(); ++j)
        if (j != i) out.push_back(X[j]);
    return out;
}

// Patchwork over the fibers of a projection with element matchings inside
// each fiber; keys are the projected tuples.
inline Matching project_and_match(const CellPoset& C, const std::vector<std::size_t>& domain, std::size_t forget_i,
                                  const std::function<std::optional<unsigned>(const CellBlocks&)>& pick_element,
                                  const std::function<std::uint32_t(const CellBlocks&)>& subset_of)
{
    auto fibers = fibers_by<CellBlocks>(domain, [&](std::size_t e) { return forget(C.cells[e].blocks(), forget_i); });
    std::vector<CellBlocks> keys;
    std::vector<std::optional<std::size_t>> h(C.cells.size());
    std::vector<Matching> matchings;
    for (const auto& [key, fiber] : fibers) {
        const std::size_t q = keys.size();
        keys.push_back(key);
        for (std::size_t e : fiber) h[e] = q;
        auto x = pick_element(key);
        if (!x) continue;
        matchings.push_back(matching_on_fiber(
            fiber, [&](std::size_t e) { return subset_of(C.cells[e].blocks()); }, *x));
    }
    return patchwork_compose(
        C.poset, h, [&](std::size_t a, std::size_t b) { return componentwise_leq(keys[a], keys[b]); }, matchings);
}

// Matching on C_{n,k}, following the inductive construction on k.
inline Matching recursive_matching_on(const CellPoset& C)
{
    const int n = C.n, k = C.k;
    const std::uint32_t top = std::uint32_t{1} << (n - 1);  // the element n
    const std::uint32_t below = top - 1;                    // {1..n-1}

    if (k == 1) {
        // C_{n,1} is the power set of [n]; match on the element n.
        std::vector<std::size_t> all(C.cells.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        return matching_on_fiber(
            all, [&](std::size_t e) { return C.cells[e].empty() ? 0u : C.cells[e].blocks()[0]; },
            static_cast<unsigned>(n - 1));
    }

    // h1: a_i if n lies in X_i (i < k), otherwise a_k; a_k is below every a_i.
    const auto ak = static_cast<std::size_t>(k - 1);
    std::vector<std::optional<std::size_t>> h1(C.cells.size());
    std::vector<std::vector<std::size_t>> A(static_cast<std::size_t>(k));
    for (std::size_t e = 0; e < C.cells.size(); ++e) {
        std::size_t label = ak;
        if (!C.cells[e].empty()) {
            const auto X = C.cells[e].blocks();
            for (std::size_t i = 0; i + 1 < X.size(); ++i)
                if (X[i] & top) label = i;
        }
        h1[e] = label;
        A[label].push_back(e);
    }
    auto q1_leq = [ak](std::size_t a, std::size_t b) { return a == b || a == ak; };

    std::vector<Matching> parts;
    // A_i, i < k: fibers of p_i are 2^{Y_i}, Y_i = [n-1] minus the other blocks.
    for (std::size_t i = 0; i < ak; ++i) {
        parts.push_back(project_and_match(
            C, A[i], i,
            [&](const CellBlocks& rest) -> std::optional<unsigned> {
                std::uint32_t used = 0;
                for (auto b : rest) used |= b;
                const std::uint32_t Y = below & ~used;
                if (!Y) return std::nullopt;  // the single cell left here is critical
                return static_cast<unsigned>(top_bit(Y));
            },
            [&](const CellBlocks& X) { return X[i] & ~top; }));
    }

    // A_k splits by h2 into A (X_k = {n} or the empty cell) below B (the rest).
    std::vector<std::size_t> partA, partB;
    std::vector<std::optional<std::size_t>> h2(C.cells.size());
    for (std::size_t e : A[ak]) {
        const bool in_a = C.cells[e].empty() || C.cells[e].blocks()[ak] == top;
        (in_a ? partA : partB).push_back(e);
        h2[e] = in_a ? 0 : 1;
    }

    // A is C_{n-1,k-1} after dropping the block {n}.
    Matching onA;
    {
        const CellPoset smaller = build_Cnk(n - 1, k - 1);
        const Matching sub = recursive_matching_on(smaller);
        auto lift = [&](std::size_t e) {
            const auto& cell = smaller.cells[e];
            if (cell.empty()) return std::size_t{0};
            CellBlocks X = cell.blocks();
            X.push_back(top);
            return cell_index(C, X);
        };
        for (const auto& [lo, hi] : sub.pairs) onA.pairs.emplace_back(lift(lo), lift(hi));
    }
    // B: fibers of p_k are 2^{Y_k} minus {∅, {n}}; match on n.
    Matching onB = project_and_match(
        C, partB, ak, [&](const CellBlocks&) -> std::optional<unsigned> { return static_cast<unsigned>(n - 1); },
        [&](const CellBlocks& X) { return X[ak]; });

    parts.push_back(patchwork_compose(
        C.poset, h2, [](std::size_t a, std::size_t b) { return a <= b; }, {onA, onB}));

    return patchwork_compose(C.poset, h1, q1_leq, parts);
}

}  // namespace detail

struct Lemma8Result
{
    CellPoset complex;
    Matching matching;
    MorseReport report;
    bool critical_dims_ok = false;  // every critical cell has dimension n - k
};

/// Acyclic matching on C_{n,k} (empty cell included) whose critical cells
/// are all full partitions of [n], built by induction on k: the element
/// matching on C_{n,1} = 2^[n], and for k > 1 the patchwork of element
/// matchings on the fibers of h1, h2 and the projections, with the piece
/// isomorphic to C_{n-1,k-1} handled recursively.
inline Lemma8Result lemma8_matching(int n, int k)
{
    if (k < 1 || n <= k) throw InputError("lemma8_matching: need n > k >= 1");
    Lemma8Result r;
    r.complex = build_Cnk(n, k);
    r.matching = detail::recursive_matching_on(r.complex);
    r.report = verify_acyclic(r.complex.poset, r.matching);
    r.critical_dims_ok = std::all_of(r.report.critical_dims.begin(), r.report.critical_dims.end(),
                                     [&](int d) { return d == n - k; });
    return r;
}

}  // namespace tvlab
