#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "tvlab/error.hpp"
#include "tvlab/poset.hpp"

namespace tvlab {

using Permutation = std::vector<int>;
using Injection = std::vector<int>;

/// Surjective map {0..n-1} -> {0..k-1}; a vertex of the configuration complex.
struct Surjection
{
    std::vector<int> values;
    int k = 0;

    Surjection() = default;
    Surjection(std::vector<int> vals, int k_) : values(std::move(vals)), k(k_)
    {
        std::vector<char> hit(static_cast<std::size_t>(std::max(k, 0)), 0);
        for (int v : values) {
            if (v < 0 || v >= k) throw InputError("Surjection: value out of range");
            hit[static_cast<std::size_t>(v)] = 1;
        }
        if (std::find(hit.begin(), hit.end(), 0) != hit.end()) throw InputError("Surjection: not surjective");
    }

    std::size_t n() const { return values.size(); }
    int operator()(std::size_t x) const { return values[x]; }

    /// 1-based value string, e.g. "112".
    std::string str() const
    {
        std::string s;
        for (int v : values) {
            if (!s.empty() && k > 9) s += ',';
            s += std::to_string(v + 1);
        }
        return s;
    }

    friend auto operator<=>(const Surjection&, const Surjection&) = default;
};

/// Partial surjection: undefined entries hold kUndefined. Either every entry
/// is undefined (the empty cell) or every label has a nonempty preimage.
struct PartialSurjection
{
    static constexpr int kUndefined = -1;

    std::vector<int> values;
    int k = 0;

    PartialSurjection() = default;
    PartialSurjection(std::vector<int> vals, int k_) : values(std::move(vals)), k(k_)
    {
        std::vector<char> hit(static_cast<std::size_t>(std::max(k, 0)), 0);
        bool any = false;
        for (int v : values) {
            if (v == kUndefined) continue;
            if (v < 0 || v >= k) throw InputError("PartialSurjection: value out of range");
            hit[static_cast<std::size_t>(v)] = 1;
            any = true;
        }
        if (any && std::find(hit.begin(), hit.end(), 0) != hit.end())
            throw InputError("PartialSurjection: defined part is not surjective");
    }

    bool empty() const
    {
        return std::all_of(values.begin(), values.end(), [](int v) { return v == kUndefined; });
    }
    int defined_count() const
    {
        return static_cast<int>(std::count_if(values.begin(), values.end(), [](int v) { return v != kUndefined; }));
    }
    /// |defined| - k for a nonempty cell, -1 for the empty cell.
    int dimension() const { return empty() ? -1 : defined_count() - k; }

    /// gamma extends *this: agrees wherever *this is defined.
    bool extended_by(const PartialSurjection& gamma) const
    {
        for (std::size_t i = 0; i < values.size(); ++i)
            if (values[i] != kUndefined && gamma.values[i] != values[i]) return false;
        return true;
    }

    /// Preimage of each label as a bitmask over {0..n-1}.
    std::vector<std::uint32_t> blocks() const
    {
        std::vector<std::uint32_t> b(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < values.size(); ++i)
            if (values[i] != kUndefined) b[static_cast<std::size_t>(values[i])] |= std::uint32_t{1} << i;
        return b;
    }

    /// 1-based bar notation over preimages, "(125|3|46)"; "()" for the empty cell.
    std::string str() const
    {
        if (empty()) return "()";
        std::string s = "(";
        const bool commas = values.size() > 9;
        for (int j = 0; j < k; ++j) {
            if (j) s += '|';
            bool first = true;
            for (std::size_t i = 0; i < values.size(); ++i) {
                if (values[i] != j) continue;
                if (!first && commas) s += ',';
                s += std::to_string(i + 1);
                first = false;
            }
        }
        return s + ")";
    }

    friend auto operator<=>(const PartialSurjection&, const PartialSurjection&) = default;
};

/// All surjections {0..n-1} -> {0..k-1}, lexicographic. Empty when n < k.
inline std::vector<Surjection> build_Vnk(int n, int k)
{
    if (k < 1 || n < 0) throw InputError("build_Vnk: need k >= 1 and n >= 0");
    std::vector<Surjection> out;
    if (n < k) return out;
    std::vector<int> vals(static_cast<std::size_t>(n), 0);
    for (;;) {
        std::vector<char> hit(static_cast<std::size_t>(k), 0);
        for (int v : vals) hit[static_cast<std::size_t>(v)] = 1;
        if (std::find(hit.begin(), hit.end(), 0) == hit.end()) out.emplace_back(vals, k);
        std::size_t pos = vals.size();
        while (pos > 0 && ++vals[pos - 1] == k) vals[--pos] = 0;
        if (pos == 0) break;
    }
    return out;
}

/// All permutations of {0..k-1} in lexicographic order; the identity first.
inline std::vector<Permutation> all_permutations(int k)
{
    Permutation g(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) g[static_cast<std::size_t>(i)] = i;
    std::vector<Permutation> out;
    do out.push_back(g);
    while (std::next_permutation(g.begin(), g.end()));
    return out;
}

inline Permutation compose(const Permutation& g, const Permutation& h)
{
    Permutation gh(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) gh[i] = g[static_cast<std::size_t>(h[i])];
    return gh;
}

/// Left action of S_k relabelling the parts: (g phi)(x) = g(phi(x)), so the
/// part labelled i in phi is labelled g(i) in g phi, and (gh)phi = g(h phi).
inline Surjection group_action(const Permutation& g, const Surjection& phi)
{
    if (g.size() != static_cast<std::size_t>(phi.k)) throw InputError("group_action: permutation of wrong degree");
    std::vector<int> vals(phi.values.size());
    for (std::size_t x = 0; x < vals.size(); ++x) vals[x] = g[static_cast<std::size_t>(phi.values[x])];
    return Surjection(std::move(vals), phi.k);
}

/// Lexicographically smallest surjection in the S_k orbit of phi: labels in
/// order of first appearance.
inline Surjection orbit_representative(const Surjection& phi)
{
    std::vector<int> relabel(static_cast<std::size_t>(phi.k), -1);
    int next = 0;
    std::vector<int> vals(phi.values.size());
    for (std::size_t x = 0; x < vals.size(); ++x) {
        auto& r = relabel[static_cast<std::size_t>(phi.values[x])];
        if (r < 0) r = next++;
        vals[x] = r;
    }
    return Surjection(std::move(vals), phi.k);
}

/// Face of K_{n,k} together with its tuple of common preimages
/// X_i = ∩ phi^{-1}(i), as bitmasks.
struct KFace
{
    std::vector<Surjection> vertices;
    std::vector<std::uint32_t> common_preimages;
};

/// A set of surjections is a face iff all k common preimages are nonempty.
inline std::optional<KFace> face_check_Knk(std::vector<Surjection> sigma)
{
    if (sigma.empty()) return std::nullopt;
    const int k = sigma.front().k;
    const std::size_t n = sigma.front().n();
    for (const auto& phi : sigma)
        if (phi.k != k || phi.n() != n) throw InputError("face_check_Knk: surjections of different shapes");
    if (n > 32) throw InputError("face_check_Knk: n > 32 unsupported");
    std::sort(sigma.begin(), sigma.end());
    sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());

    const std::uint32_t all = n == 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1);
    std::vector<std::uint32_t> X(static_cast<std::size_t>(k), all);
    for (const auto& phi : sigma) {
        std::vector<std::uint32_t> pre(static_cast<std::size_t>(k), 0);
        for (std::size_t x = 0; x < n; ++x) pre[static_cast<std::size_t>(phi(x))] |= std::uint32_t{1} << x;
        for (std::size_t i = 0; i < X.size(); ++i) X[i] &= pre[i];
    }
    for (auto xi : X)
        if (xi == 0) return std::nullopt;
    return KFace{std::move(sigma), std::move(X)};
}

/// Injections {0..k-1} -> {0..n-1}, lexicographic.
inline std::vector<Injection> all_injections(int n, int k)
{
    std::vector<Injection> out;
    Injection rho(static_cast<std::size_t>(k), 0);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, std::size_t j) -> void {
        if (j == rho.size()) {
            out.push_back(rho);
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[static_cast<std::size_t>(v)]) continue;
            used[static_cast<std::size_t>(v)] = 1;
            rho[j] = v;
            self(self, j + 1);
            used[static_cast<std::size_t>(v)] = 0;
        }
    };
    rec(rec, 0);
    return out;
}

/// Vertices of the facet of rho: every phi with phi(rho(j)) = j.
inline std::vector<Surjection> facet_of(int n, const Injection& rho)
{
    const int k = static_cast<int>(rho.size());
    std::vector<int> free_pos;
    std::vector<int> vals(static_cast<std::size_t>(n), -1);
    for (int j = 0; j < k; ++j) {
        if (rho[static_cast<std::size_t>(j)] < 0 || rho[static_cast<std::size_t>(j)] >= n)
            throw InputError("facet_of: injection value out of range");
        if (vals[static_cast<std::size_t>(rho[static_cast<std::size_t>(j)])] != -1)
            throw InputError("facet_of: map is not injective");
        vals[static_cast<std::size_t>(rho[static_cast<std::size_t>(j)])] = j;
    }
    for (int x = 0; x < n; ++x)
        if (vals[static_cast<std::size_t>(x)] == -1) free_pos.push_back(x);
    std::vector<Surjection> out;
    for (int x : free_pos) vals[static_cast<std::size_t>(x)] = 0;
    for (;;) {
        out.emplace_back(vals, k);
        std::size_t pos = free_pos.size();
        while (pos > 0 && ++vals[static_cast<std::size_t>(free_pos[pos - 1])] == k)
            vals[static_cast<std::size_t>(free_pos[--pos])] = 0;
        if (pos == 0) break;
    }
    return out;
}

struct KFacet
{
    Injection rho;
    std::vector<Surjection> vertices;
};

/// The n!/(n-k)! facets of K_{n,k}, each with k^(n-k) vertices.
inline std::vector<KFacet> facets_Knk(int n, int k)
{
    if (k < 1 || n < k) throw InputError("facets_Knk: need n >= k >= 1");
    std::vector<KFacet> out;
    for (auto& rho : all_injections(n, k)) {
        auto verts = facet_of(n, rho);
        out.push_back({std::move(rho), std::move(verts)});
    }
    return out;
}

/// Enumeration guard for K_{n,k}: the complex is only materialized when
/// |V_{n,k}| <= max_vertices. TVLAB_SIZE_CAP overrides the default of 60.
struct SizeCap
{
    std::size_t max_vertices = 60;

    static SizeCap from_env()
    {
        SizeCap cap;
        if (const char* env = std::getenv("TVLAB_SIZE_CAP")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end == env || *end != '\0') throw InputError("TVLAB_SIZE_CAP must be a nonnegative integer");
            cap.max_vertices = static_cast<std::size_t>(v);
        }
        return cap;
    }
};

/// K_{n,k} with every nonempty face listed as a sorted list of indices into
/// `vertices`. Faces are sorted by size, then lexicographically.
struct KComplex
{
    int n = 0, k = 0;
    std::vector<Surjection> vertices;
    std::vector<std::vector<std::uint32_t>> faces;

    std::size_t index_of(const Surjection& phi) const
    {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), phi);
        if (it == vertices.end() || *it != phi) throw InputError("surjection is not a vertex of this complex");
        return static_cast<std::size_t>(it - vertices.begin());
    }
};

/// Every face lies in some facet and every subset of a facet is a face, so
/// the faces are the nonempty subsets of facets.
inline KComplex build_Knk(int n, int k, SizeCap cap = SizeCap::from_env())
{
    if (k < 1 || n < k) throw InputError("build_Knk: need n >= k >= 1");
    KComplex K;
    K.n = n;
    K.k = k;
    K.vertices = build_Vnk(n, k);
    if (K.vertices.size() > cap.max_vertices)
        throw SizeCapExceeded("K_{" + std::to_string(n) + "," + std::to_string(k) + "} has " +
                              std::to_string(K.vertices.size()) + " vertices, cap is " +
                              std::to_string(cap.max_vertices));
    std::set<std::vector<std::uint32_t>> faces;
    for (const auto& facet : facets_Knk(n, k)) {
        std::vector<std::uint32_t> idx;
        for (const auto& phi : facet.vertices) idx.push_back(static_cast<std::uint32_t>(K.index_of(phi)));
        std::sort(idx.begin(), idx.end());
        if (idx.size() > 30) throw SizeCapExceeded("facet too large to enumerate subsets");
        for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << idx.size()); ++mask) {
            std::vector<std::uint32_t> f;
            for (std::size_t b = 0; b < idx.size(); ++b)
                if (mask >> b & 1) f.push_back(idx[b]);
            faces.insert(std::move(f));
        }
    }
    K.faces.assign(faces.begin(), faces.end());
    std::stable_sort(K.faces.begin(), K.faces.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return K;
}

/// C_{n,k} as a face poset: the empty cell (index 0) plus every partial
/// surjection, ordered by extension. Cells are sorted by dimension, then
/// lexicographically by value array.
struct CellPoset
{
    int n = 0, k = 0;
    std::vector<PartialSurjection> cells;
    Poset poset;

    std::size_t index_of(const PartialSurjection& eta) const
    {
        auto it = lookup.find(key(eta.values));
        if (it == lookup.end()) throw InputError("cell " + eta.str() + " is not in this complex");
        return it->second;
    }
    std::optional<std::size_t> find(const std::vector<int>& values) const
    {
        auto it = lookup.find(key(values));
        if (it == lookup.end()) return std::nullopt;
        return it->second;
    }

    /// Cells by dimension: result[s] counts cells of dimension s - 1 (s = 0 is the empty cell).
    std::vector<std::size_t> census() const
    {
        std::vector<std::size_t> c;
        for (const auto& cell : cells) {
            const auto slot = static_cast<std::size_t>(cell.dimension() + 1);
            if (c.size() <= slot) c.resize(slot + 1, 0);
            ++c[slot];
        }
        return c;
    }

    std::uint64_t key(const std::vector<int>& values) const
    {
        std::uint64_t h = 0;
        for (int v : values) h = h * static_cast<std::uint64_t>(k + 1) + static_cast<std::uint64_t>(v + 1);
        return h;
    }

    std::unordered_map<std::uint64_t, std::size_t> lookup;
};

/// Builds C_{n,k}; Hasse covers are single-element extensions, plus the
/// empty cell under every vertex.
inline CellPoset build_Cnk(int n, int k)
{
    if (k < 1 || n < k) throw InputError("build_Cnk: need n >= k >= 1");
    if (n > 16) throw SizeCapExceeded("build_Cnk: n > 16");
    CellPoset C;
    C.n = n;
    C.k = k;

    std::vector<int> vals(static_cast<std::size_t>(n), PartialSurjection::kUndefined);
    for (;;) {
        std::vector<char> hit(static_cast<std::size_t>(k), 0);
        bool any = false;
        for (int v : vals)
            if (v >= 0) hit[static_cast<std::size_t>(v)] = 1, any = true;
        if (!any || std::find(hit.begin(), hit.end(), 0) == hit.end()) C.cells.emplace_back(vals, k);
        std::size_t pos = vals.size();
        while (pos > 0 && ++vals[pos - 1] == k) vals[--pos] = PartialSurjection::kUndefined;
        if (pos == 0) break;
    }
    std::stable_sort(C.cells.begin(), C.cells.end(), [](const auto& a, const auto& b) {
        if (a.dimension() != b.dimension()) return a.dimension() < b.dimension();
        return a.values < b.values;
    });

    std::vector<int> ranks;
    for (std::size_t i = 0; i < C.cells.size(); ++i) {
        C.lookup.emplace(C.key(C.cells[i].values), i);
        ranks.push_back(C.cells[i].dimension());
    }
    C.poset = Poset::with_ranks(std::move(ranks));
    for (std::size_t i = 0; i < C.cells.size(); ++i) {
        const auto& cell = C.cells[i];
        if (cell.empty()) continue;
        if (cell.dimension() == 0) C.poset.add_cover(0, i);
        std::vector<int> ext = cell.values;
        for (std::size_t p = 0; p < ext.size(); ++p) {
            if (ext[p] != PartialSurjection::kUndefined) continue;
            for (int v = 0; v < k; ++v) {
                ext[p] = v;
                C.poset.add_cover(i, C.lookup.at(C.key(ext)));
            }
            ext[p] = PartialSurjection::kUndefined;
        }
    }
    return C;
}

/// Number of surjections from an s-set onto a k-set, for s = 0..n.
inline std::vector<std::size_t> count_surjections_table(int n, int k)
{
    std::vector<std::size_t> out;
    for (int s = 0; s <= n; ++s) {
        // inclusion-exclusion: sum_j (-1)^j C(k,j) (k-j)^s
        long long total = 0;
        long long binom = 1;
        for (int j = 0; j <= k; ++j) {
            long long pw = 1;
            for (int e = 0; e < s; ++e) pw *= (k - j);
            total += (j % 2 ? -1 : 1) * binom * pw;
            binom = binom * (k - j) / (j + 1);
        }
        out.push_back(static_cast<std::size_t>(total));
    }
    return out;
}

/// Cell eta_sigma of a face: eta^{-1}(j) is the common preimage X_j.
inline PartialSurjection face_to_cell(const KComplex& K, const std::vector<std::uint32_t>& face)
{
    std::vector<int> vals(static_cast<std::size_t>(K.n), PartialSurjection::kUndefined);
    for (std::size_t x = 0; x < vals.size(); ++x) {
        int common = K.vertices[face.front()](x);
        for (auto v : face)
            if (K.vertices[v](x) != common) {
                common = PartialSurjection::kUndefined;
                break;
            }
        vals[x] = common;
    }
    return PartialSurjection(std::move(vals), K.k);
}

struct QuillenReport
{
    int n = 0, k = 0;
    std::size_t faces = 0;
    std::size_t cells = 0;           // nonempty cells
    std::size_t covers_checked = 0;  // face pairs tau ⊂ sigma with |sigma| = |tau| + 1
    bool order_reversing = true;
    bool surjective = true;
    std::size_t fibers_checked = 0;
    bool fibers_are_simplices = true;
    std::size_t setwise_fixed_faces = 0;
    std::vector<std::string> violations;

    bool ok() const { return order_reversing && surjective && fibers_are_simplices && violations.empty(); }
};

/// Checks the map g(sigma) = eta_sigma from K_{n,k} to C_{n,k}: it reverses
/// order, hits every nonempty cell, and the preimage of each upper set
/// C_{>= eta} is exactly the full simplex on {phi : phi extends eta}.
/// Also counts faces setwise fixed by some nontrivial relabelling.
inline QuillenReport quillen_map_and_fibers(int n, int k, SizeCap cap = SizeCap::from_env())
{
    KComplex K = build_Knk(n, k, cap);
    CellPoset C = build_Cnk(n, k);
    QuillenReport r;
    r.n = n;
    r.k = k;
    r.faces = K.faces.size();
    r.cells = C.cells.size() - 1;

    std::map<std::vector<std::uint32_t>, std::size_t> face_index;
    std::vector<std::size_t> image(K.faces.size());
    std::vector<char> hit(C.cells.size(), 0);
    for (std::size_t f = 0; f < K.faces.size(); ++f) {
        face_index.emplace(K.faces[f], f);
        image[f] = C.index_of(face_to_cell(K, K.faces[f]));
        hit[image[f]] = 1;
    }
    for (std::size_t c = 1; c < C.cells.size(); ++c) {
        if (!hit[c]) {
            r.surjective = false;
            r.violations.push_back("cell " + C.cells[c].str() + " is not in the image");
        }
    }

    // tau = sigma minus one vertex  =>  eta_tau extends eta_sigma.
    for (std::size_t f = 0; f < K.faces.size(); ++f) {
        const auto& sigma = K.faces[f];
        if (sigma.size() < 2) continue;
        for (std::size_t drop = 0; drop < sigma.size(); ++drop) {
            std::vector<std::uint32_t> tau;
            for (std::size_t i = 0; i < sigma.size(); ++i)
                if (i != drop) tau.push_back(sigma[i]);
            const std::size_t t = face_index.at(tau);
            ++r.covers_checked;
            if (!C.cells[image[f]].extended_by(C.cells[image[t]])) {
                r.order_reversing = false;
                r.violations.push_back("order not reversed at " + C.cells[image[f]].str());
            }
        }
    }

    for (std::size_t c = 1; c < C.cells.size(); ++c) {
        const auto& eta = C.cells[c];
        std::vector<std::uint32_t> sigma_eta;
        for (std::size_t v = 0; v < K.vertices.size(); ++v) {
            bool ext = true;
            for (std::size_t x = 0; x < eta.values.size() && ext; ++x)
                if (eta.values[x] != PartialSurjection::kUndefined && K.vertices[v](x) != eta.values[x]) ext = false;
            if (ext) sigma_eta.push_back(static_cast<std::uint32_t>(v));
        }
        std::size_t fiber = 0;
        bool inside = true;
        for (std::size_t f = 0; f < K.faces.size(); ++f) {
            if (!eta.extended_by(C.cells[image[f]])) continue;
            ++fiber;
            if (!std::includes(sigma_eta.begin(), sigma_eta.end(), K.faces[f].begin(), K.faces[f].end()))
                inside = false;
        }
        ++r.fibers_checked;
        const std::size_t expected = sigma_eta.size() >= 63 ? 0 : (std::size_t{1} << sigma_eta.size()) - 1;
        if (!inside || fiber != expected) {
            r.fibers_are_simplices = false;
            r.violations.push_back("fiber over " + eta.str() + " is not the full simplex on its extensions");
        }
    }

    const auto perms = all_permutations(k);
    for (const auto& sigma : K.faces) {
        for (std::size_t g = 1; g < perms.size(); ++g) {
            std::vector<std::uint32_t> img;
            for (auto v : sigma)
                img.push_back(static_cast<std::uint32_t>(K.index_of(group_action(perms[g], K.vertices[v]))));
            std::sort(img.begin(), img.end());
            if (img == sigma) {
                ++r.setwise_fixed_faces;
                break;
            }
        }
    }
    return r;
}

}  // namespace tvlab
