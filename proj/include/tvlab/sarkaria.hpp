#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tvlab/complexes.hpp"
#include "tvlab/error.hpp"
#include "tvlab/geometry.hpp"
#include "tvlab/lp.hpp"
#include "tvlab/partitions.hpp"
#include "tvlab/rational.hpp"
#include "tvlab/tverberg.hpp"

namespace tvlab {

/// v_i = e_i - (1/k) 1 in Q^k, for a 0-based part index i.
inline Vector basis_vector(int i, int k)
{
    if (k < 1 || i < 0 || i >= k) throw InputError("basis_vector: index out of range");
    Vector v(static_cast<std::size_t>(k), Rational(Integer(-1), Integer(k)));
    v[static_cast<std::size_t>(i)] += 1;
    return v;
}

/// (x, 1) ⊗ v_i as a (d+1) x k matrix; part index i is 0-based.
inline RationalMatrix lift(const Point& x, int i, int k)
{
    const Vector v = basis_vector(i, k);
    RationalMatrix L(x.size() + 1, static_cast<std::size_t>(k));
    for (std::size_t r = 0; r <= x.size(); ++r) {
        const Rational& xr = r < x.size() ? x[r] : Rational(1);
        for (std::size_t c = 0; c < v.size(); ++c) L(r, c) = xr * v[c];
    }
    return L;
}

/// Every row of the matrix sums to zero (the matrix lies in Y).
inline bool in_Y(const RationalMatrix& a)
{
    for (std::size_t r = 0; r < a.rows(); ++r) {
        Rational s = 0;
        for (std::size_t c = 0; c < a.cols(); ++c) s += a(r, c);
        if (s != 0) return false;
    }
    return true;
}

/// Column action of S_k on matrices: column c of a moves to column g(c),
/// so g · lift(x, i) = lift(x, g(i)).
inline RationalMatrix permute_columns(const Permutation& g, const RationalMatrix& a)
{
    if (g.size() != a.cols()) throw InputError("permute_columns: permutation of wrong degree");
    RationalMatrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, static_cast<std::size_t>(g[c])) = a(r, c);
    return out;
}

/// Lifted vertex set of F under phi: every vertex v of C_i becomes
/// lift(v, phi(i)), listed by (set index, canonical vertex order).
inline std::vector<RationalMatrix> lifted_vertices(const Family& F, const std::vector<int>& labels, int k)
{
    if (labels.size() != F.size()) throw InputError("lifted_vertices: label count differs from family size");
    std::vector<RationalMatrix> out;
    for (std::size_t i = 0; i < F.size(); ++i)
        for (const auto& v : F.sets[i].vertices()) out.push_back(lift(v, labels[i], k));
    return out;
}

namespace detail {

// Columns: vectorized lifted vertices; rows: (d+1)k coordinates, then sum = 1.
inline std::pair<RationalMatrix, Vector> zero_in_hull_lp(const std::vector<RationalMatrix>& lifted)
{
    const std::size_t dim = lifted.front().rows() * lifted.front().cols();
    RationalMatrix A(dim + 1, lifted.size());
    Vector b(dim + 1);
    for (std::size_t j = 0; j < lifted.size(); ++j) {
        const auto& e = lifted[j].entries();
        for (std::size_t r = 0; r < dim; ++r) A(r, j) = e[r];
        A(dim, j) = 1;
    }
    b[dim] = 1;
    return {std::move(A), std::move(b)};
}

}  // namespace detail

/// Convex coefficients expressing 0 as a combination of the lifted vertex
/// set of F under the partition P (aligned with lifted_vertices), or nullopt.
inline std::optional<Vector> sarkaria_zero_in_hull(const Family& F, const KPartition& P)
{
    if (P.size() != F.size()) throw InputError("sarkaria_zero_in_hull: partition size differs from family size");
    const int k = static_cast<int>(P.k());
    auto [A, b] = detail::zero_in_hull_lp(lifted_vertices(F, P.labels(), k));
    auto res = solve_feasibility(A, b);
    if (auto* f = std::get_if<Feasible>(&res)) return f->x;
    return std::nullopt;
}

/// a_phi for every surjection phi of [n] onto [k], with a_{g phi} = g · a_phi.
struct SeparatorAssignment
{
    int n = 0, k = 0;
    std::size_t d = 0;
    std::map<Surjection, RationalMatrix> functionals;
    std::vector<Surjection> representatives;

    const RationalMatrix& at(const Surjection& phi) const
    {
        auto it = functionals.find(phi);
        if (it == functionals.end()) throw InputError("no functional for surjection " + phi.str());
        return it->second;
    }
};

/// Builds equivariant separating functionals for a family with no Tverberg
/// k-partition. Each orbit representative (the lexicographically smallest
/// surjection) takes the Farkas certificate of its infeasible zero-in-hull
/// LP, negated and projected onto Y; the rest of the orbit takes column
/// permutations of it. Strict separation a_phi · lift(v, phi(i)) > 0 is
/// re-checked for every phi, set and vertex.
inline SeparatorAssignment equivariant_separators(const Family& F, int k)
{
    const int n = static_cast<int>(F.size());
    if (k < 1 || n < k) throw InputError("equivariant_separators: need 1 <= k <= n");
    SeparatorAssignment S;
    S.n = n;
    S.k = k;
    S.d = F.dimension();
    const auto perms = all_permutations(k);

    PartitionEnumerator parts(n, k);
    while (auto P = parts.next()) {
        Surjection rep(P->labels(), k);
        auto [A, b] = detail::zero_in_hull_lp(lifted_vertices(F, rep.values, k));
        auto res = solve_feasibility(A, b);
        const auto* cert = std::get_if<Infeasible>(&res);
        if (!cert)
            throw InputError("equivariant_separators: partition " + P->notation() + " is a Tverberg partition");

        // y^T [vec(L); 1] <= 0 with y_last > 0, so -y gives a strictly positive pairing.
        RationalMatrix a(S.d + 1, static_cast<std::size_t>(k));
        for (std::size_t r = 0; r <= S.d; ++r)
            for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c)
                a(r, c) = -cert->y[r * static_cast<std::size_t>(k) + c];
        for (std::size_t r = 0; r <= S.d; ++r) {
            Rational mean = 0;
            for (std::size_t c = 0; c < a.cols(); ++c) mean += a(r, c);
            mean /= k;
            for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) -= mean;
        }
        S.representatives.push_back(rep);
        for (const auto& g : perms) S.functionals.emplace(group_action(g, rep), permute_columns(g, a));
    }

    for (const auto& [phi, a] : S.functionals) {
        if (!in_Y(a)) throw InternalError("separator left the subspace Y");
        for (std::size_t i = 0; i < F.size(); ++i)
            for (const auto& v : F.sets[i].vertices())
                if (pairing(a, lift(v, phi(i), k)) <= 0)
                    throw InternalError("separator for " + phi.str() + " fails strict separation");
    }
    return S;
}

struct MarginEntry
{
    std::size_t family = 0;
    Surjection phi;
    int part = 0;      // j, 0-based
    Rational margin;   // a_phi · lift(x_j, j)
};

struct AvoidBReport
{
    std::vector<Point> colorful_points;  // x_j for each j
    std::vector<MarginEntry> margins;
    bool all_positive = false;
    bool image_meets_B = true;           // whether conv{a_phi : phi in the join facet} meets B
};

/// For the join facet given by one injection per family: picks x_j in the
/// intersection of the sets rho_i(j) across families, then checks
/// a_phi · lift(x_j, j) > 0 for every vertex phi of every facet and every
/// j. Also decides directly by LP whether the convex hull of the facet's
/// functionals meets B = e_{d+1} ⊗ R^k.
inline AvoidBReport facet_avoids_B(const ColorSystem& S, const std::vector<Injection>& injections,
                                   const std::vector<SeparatorAssignment>& assignments)
{
    const std::size_t m = S.m();
    const int n = static_cast<int>(S.n());
    if (injections.size() != m || assignments.size() != m)
        throw InputError("facet_avoids_B: need one injection and one assignment per family");
    const int k = static_cast<int>(injections.front().size());
    for (const auto& rho : injections) {
        if (static_cast<int>(rho.size()) != k) throw InputError("facet_avoids_B: injections of different lengths");
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        for (int v : rho) {
            if (v < 0 || v >= n) throw InputError("facet_avoids_B: injection value out of range");
            if (seen[static_cast<std::size_t>(v)]) throw InputError("facet_avoids_B: map is not injective");
            seen[static_cast<std::size_t>(v)] = 1;
        }
    }
    for (const auto& a : assignments)
        if (a.k != k || a.n != n || a.d != S.dimension) throw InputError("facet_avoids_B: assignment shape mismatch");

    AvoidBReport r;
    for (int j = 0; j < k; ++j) {
        std::vector<std::vector<Point>> parts;
        for (std::size_t i = 0; i < m; ++i)
            parts.push_back(S.families[i].sets[static_cast<std::size_t>(injections[i][static_cast<std::size_t>(j)])].vertices());
        auto hw = hulls_common_point(parts);
        if (!hw) throw InputError("facet_avoids_B: chosen sets have empty intersection (colorful property fails)");
        r.colorful_points.push_back(hw->point);
    }

    std::vector<const RationalMatrix*> image;
    r.all_positive = true;
    for (std::size_t i = 0; i < m; ++i) {
        for (const auto& phi : facet_of(n, injections[i])) {
            const auto& a = assignments[i].at(phi);
            image.push_back(&a);
            for (int j = 0; j < k; ++j) {
                Rational margin = pairing(a, lift(r.colorful_points[static_cast<std::size_t>(j)], j, k));
                if (margin <= 0) r.all_positive = false;
                r.margins.push_back({i, phi, j, std::move(margin)});
            }
        }
    }

    // conv(image) ∩ B ≠ ∅  iff  some convex combination has rows 1..d equal to zero.
    const std::size_t d = S.dimension;
    RationalMatrix A(d * static_cast<std::size_t>(k) + 1, image.size());
    Vector b(A.rows());
    for (std::size_t col = 0; col < image.size(); ++col) {
        for (std::size_t row = 0; row < d; ++row)
            for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c)
                A(row * static_cast<std::size_t>(k) + c, col) = (*image[col])(row, c);
        A(A.rows() - 1, col) = 1;
    }
    b.back() = 1;
    r.image_meets_B = is_feasible(solve_feasibility(A, b));
    return r;
}

struct SubspaceDims
{
    std::size_t ambient = 0;         // (d+1)k
    std::size_t dim_Y = 0;           // via spanning set
    std::size_t dim_B = 0;
    std::size_t dim_Y_perp_B = 0;    // Y ∩ B^⊥ via spanning set
    std::size_t dim_Y_perp_B_by_constraints = 0;  // ambient - rank(constraints)
};

/// Dimensions of Y, B and Y ∩ B^⊥ inside R^{(d+1)×k}, by rank computations
/// on explicit spanning sets, with Y ∩ B^⊥ also obtained as a null space.
inline SubspaceDims subspace_dims(std::size_t d, std::size_t k)
{
    if (k < 1) throw InputError("subspace_dims: k must be positive");
    const std::size_t rows = d + 1, N = rows * k;
    auto unit = [&](std::size_t r, std::size_t c) {
        Vector v(N);
        v[r * k + c] = 1;
        return v;
    };
    std::vector<Vector> Y, B, YB;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c + 1 < k; ++c) {
            Vector v = unit(r, c);
            v[r * k + k - 1] = -1;
            Y.push_back(v);
            if (r < d) YB.push_back(v);
        }
    for (std::size_t c = 0; c < k; ++c) B.push_back(unit(d, c));

    SubspaceDims s;
    s.ambient = N;
    auto rk = [&](const std::vector<Vector>& vs) { return vs.empty() ? std::size_t{0} : rank(RationalMatrix::from_rows(vs)); };
    s.dim_Y = rk(Y);
    s.dim_B = rk(B);
    s.dim_Y_perp_B = rk(YB);

    // Y: each row of the matrix sums to zero. B^⊥: the last row vanishes.
    std::vector<Vector> constraints;
    for (std::size_t r = 0; r < rows; ++r) {
        Vector v(N);
        for (std::size_t c = 0; c < k; ++c) v[r * k + c] = 1;
        constraints.push_back(v);
    }
    for (std::size_t c = 0; c < k; ++c) constraints.push_back(unit(d, c));
    s.dim_Y_perp_B_by_constraints = N - rk(constraints);
    return s;
}

}  // namespace tvlab
