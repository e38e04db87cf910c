#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "tvlab/error.hpp"
#include "tvlab/lp.hpp"
#include "tvlab/rational.hpp"

namespace tvlab {

using Point = Vector;

/// Convex hull of a finite vertex list. Vertices are stored in canonical
/// form: deduplicated and sorted lexicographically.
class VPolytope
{
public:
    explicit VPolytope(std::vector<Point> vertices) : vertices_(std::move(vertices))
    {
        if (vertices_.empty()) throw InputError("VPolytope needs at least one vertex");
        const std::size_t d = vertices_.front().size();
        for (const auto& v : vertices_)
            if (v.size() != d) throw InputError("VPolytope vertices have mixed dimensions");
        std::sort(vertices_.begin(), vertices_.end());
        vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
    }

    std::size_t dimension() const { return vertices_.front().size(); }
    const std::vector<Point>& vertices() const { return vertices_; }

    friend bool operator==(const VPolytope&, const VPolytope&) = default;

private:
    std::vector<Point> vertices_;
};

/// base + span(directions); directions are linearly independent.
struct AffineFlat
{
    Point base;
    std::vector<Vector> directions;

    std::size_t dimension() const { return directions.size(); }
    std::size_t ambient_dimension() const { return base.size(); }
};

/// A common point of k convex hulls, with the convex coefficients that
/// certify membership in each hull. coefficients[j] is aligned with parts[j].
struct HullWitness
{
    Point point;
    std::vector<Vector> coefficients;
};

inline Point combine(const std::vector<Point>& points, const Vector& weights)
{
    Point x(points.front().size());
    for (std::size_t i = 0; i < points.size(); ++i)
        if (weights[i] != 0)
            for (std::size_t c = 0; c < x.size(); ++c) x[c] += weights[i] * points[i][c];
    return x;
}

inline bool verifies_hull_witness(const std::vector<std::vector<Point>>& parts, const HullWitness& w)
{
    if (w.coefficients.size() != parts.size()) return false;
    for (std::size_t j = 0; j < parts.size(); ++j) {
        const auto& lam = w.coefficients[j];
        if (lam.size() != parts[j].size()) return false;
        Rational total = 0;
        for (const auto& l : lam) {
            if (l < 0) return false;
            total += l;
        }
        if (total != 1) return false;
        if (combine(parts[j], lam) != w.point) return false;
    }
    return true;
}

/// Decides whether conv(parts[0]) ∩ ... ∩ conv(parts[k-1]) is nonempty.
///
/// One standard-form LP: variables are the convex coefficients, in order of
/// (part, point); rows equate the combination of part 0 with that of every
/// other part, then normalize each part. Bland's rule makes the witness a
/// deterministic function of the input order.
inline std::optional<HullWitness> hulls_common_point(const std::vector<std::vector<Point>>& parts)
{
    if (parts.empty()) throw InputError("hulls_common_point: no parts");
    for (const auto& p : parts)
        if (p.empty()) throw InputError("hulls_common_point: empty part");
    const std::size_t d = parts.front().front().size();
    for (const auto& p : parts)
        for (const auto& x : p)
            if (x.size() != d) throw InputError("hulls_common_point: mixed dimensions");

    const std::size_t k = parts.size();
    std::vector<std::size_t> offset(k + 1, 0);
    for (std::size_t j = 0; j < k; ++j) offset[j + 1] = offset[j] + parts[j].size();

    RationalMatrix A(d * (k - 1) + k, offset[k]);
    Vector b(A.rows());
    for (std::size_t j = 1; j < k; ++j) {
        for (std::size_t c = 0; c < d; ++c) {
            const std::size_t row = (j - 1) * d + c;
            for (std::size_t i = 0; i < parts[0].size(); ++i) A(row, offset[0] + i) = parts[0][i][c];
            for (std::size_t i = 0; i < parts[j].size(); ++i) A(row, offset[j] + i) = -parts[j][i][c];
        }
    }
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t row = d * (k - 1) + j;
        for (std::size_t i = offset[j]; i < offset[j + 1]; ++i) A(row, i) = 1;
        b[row] = 1;
    }

    auto result = solve_feasibility(A, b);
    const auto* sol = std::get_if<Feasible>(&result);
    if (!sol) return std::nullopt;

    HullWitness w;
    for (std::size_t j = 0; j < k; ++j)
        w.coefficients.emplace_back(sol->x.begin() + static_cast<std::ptrdiff_t>(offset[j]),
                                    sol->x.begin() + static_cast<std::ptrdiff_t>(offset[j + 1]));
    w.point = combine(parts[0], w.coefficients[0]);
    if (!verifies_hull_witness(parts, w)) throw InternalError("hull witness failed re-verification");
    return w;
}

namespace detail {

// Incremental independence test: keeps a reduced row-echelon basis.
class EchelonBasis
{
public:
    /// Returns true (and absorbs v) iff v is independent of the vectors so far.
    bool add(Vector v)
    {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const std::size_t c = pivots_[r];
            if (v[c] == 0) continue;
            Rational f = v[c];
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * rows_[r][j];
        }
        std::size_t c = 0;
        while (c < v.size() && v[c] == 0) ++c;
        if (c == v.size()) return false;
        Rational p = v[c];
        for (auto& e : v) e /= p;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (rows_[r][c] == 0) continue;
            Rational f = rows_[r][c];
            for (std::size_t j = 0; j < v.size(); ++j) rows_[r][j] -= f * v[j];
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(c);
        return true;
    }

private:
    std::vector<Vector> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace detail

/// Affine hull of a point set. The base is the first point; directions are
/// the differences p_i - p_0 that increase the rank, in input order.
inline AffineFlat affine_flat_of(const std::vector<Point>& points)
{
    if (points.empty()) throw InputError("affine_flat_of: no points");
    const std::size_t d = points.front().size();
    AffineFlat flat{points.front(), {}};
    detail::EchelonBasis basis;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].size() != d) throw InputError("affine_flat_of: mixed dimensions");
        Vector diff(d);
        for (std::size_t c = 0; c < d; ++c) diff[c] = points[i][c] - points[0][c];
        if (basis.add(diff)) flat.directions.push_back(std::move(diff));
    }
    return flat;
}

/// Some point of flat ∩ conv(P), or nullopt. The LP has variables
/// (t+, t-, lambda) with base + D (t+ - t-) = sum lambda_i v_i, sum lambda = 1.
inline std::optional<Point> flat_intersects_polytope(const AffineFlat& flat, const VPolytope& P)
{
    const std::size_t d = flat.ambient_dimension();
    if (P.dimension() != d) throw InputError("flat_intersects_polytope: dimension mismatch");
    for (const auto& dir : flat.directions)
        if (dir.size() != d) throw InputError("flat_intersects_polytope: direction of wrong length");

    const std::size_t r = flat.dimension();
    const auto& verts = P.vertices();
    RationalMatrix A(d + 1, 2 * r + verts.size());
    Vector b(d + 1);
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t s = 0; s < r; ++s) {
            A(c, s) = flat.directions[s][c];
            A(c, r + s) = -flat.directions[s][c];
        }
        for (std::size_t i = 0; i < verts.size(); ++i) A(c, 2 * r + i) = -verts[i][c];
        b[c] = -flat.base[c];
    }
    for (std::size_t i = 0; i < verts.size(); ++i) A(d, 2 * r + i) = 1;
    b[d] = 1;

    auto result = solve_feasibility(A, b);
    const auto* sol = std::get_if<Feasible>(&result);
    if (!sol) return std::nullopt;
    Vector lam(sol->x.begin() + static_cast<std::ptrdiff_t>(2 * r), sol->x.end());
    return combine(verts, lam);
}

}  // namespace tvlab
