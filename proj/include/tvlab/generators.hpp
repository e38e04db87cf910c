#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tvlab/error.hpp"
#include "tvlab/geometry.hpp"
#include "tvlab/random.hpp"
#include "tvlab/tverberg.hpp"

namespace tvlab {

namespace detail {

inline VPolytope box(const std::vector<Rational>& lo, const std::vector<Rational>& hi)
{
    const std::size_t d = lo.size();
    std::vector<Point> verts;
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        Point v(d);
        for (std::size_t c = 0; c < d; ++c) v[c] = ((mask >> c) & 1) ? hi[c] : lo[c];
        verts.push_back(std::move(v));
    }
    return VPolytope(std::move(verts));
}

// Family i pins axis i mod d to a short interval. An axis owned by a single
// family (with m >= 2) gets free interval centers; a shared axis, or m = 1,
// gets intervals around 0 so any choice of sets still meets.
inline std::vector<Family> axis_slabs(std::size_t d, std::size_t m, std::size_t n, SeededGenerator& gen)
{
    std::vector<std::size_t> owners(d, 0);
    for (std::size_t i = 0; i < m; ++i) ++owners[i % d];
    const Rational R = Rational(static_cast<long long>(n) + 10);
    std::vector<Family> out;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t axis = i % d;
        const bool free = m >= 2 && owners[axis] == 1;
        std::vector<VPolytope> sets;
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Rational> lo(d, -R), hi(d, R);
            if (free) {
                const Rational c = Rational(static_cast<long long>(2 * j) - static_cast<long long>(n)) + gen.rational(0, 1, 100) / 2;
                const Rational w = Rational(gen.uniform(1, 40), 100);
                lo[axis] = c - w;
                hi[axis] = c + w;
            } else {
                lo[axis] = -Rational(gen.uniform(1, 300), 100);
                hi[axis] = Rational(gen.uniform(1, 300), 100);
            }
            sets.push_back(box(lo, hi));
        }
        out.emplace_back("F" + std::to_string(i + 1), std::move(sets));
    }
    return out;
}

// Every set is a box around one shared random anchor.
inline std::vector<Family> shifted_boxes(std::size_t d, std::size_t m, std::size_t n, SeededGenerator& gen)
{
    Point anchor(d);
    for (auto& c : anchor) c = gen.rational(-5, 5, 10);
    std::vector<Family> out;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<VPolytope> sets;
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Rational> lo(d), hi(d);
            for (std::size_t c = 0; c < d; ++c) {
                const Rational shift = gen.rational(-3, 3, 10);
                const Rational half = Rational(gen.uniform(1, 20), 10);
                lo[c] = std::min(anchor[c], anchor[c] + shift - half);
                hi[c] = std::max(anchor[c], anchor[c] + shift + half);
            }
            sets.push_back(box(lo, hi));
        }
        out.emplace_back("F" + std::to_string(i + 1), std::move(sets));
    }
    return out;
}

// Random points g_tau indexed by tau in [n]^m; set j of family i is the hull
// of the points with tau_i = j, so sets chosen one per family share g_tau.
inline std::vector<Family> random_points_fattened(std::size_t d, std::size_t m, std::size_t n, SeededGenerator& gen)
{
    std::size_t total = 1;
    for (std::size_t i = 0; i < m; ++i) {
        if (total > 100000 / n) throw InputError("random-points-fattened: n^m too large");
        total *= n;
    }
    std::vector<Point> grid(total, Point(d));
    for (auto& p : grid)
        for (auto& c : p) c = gen.rational(-10, 10, 100);
    std::vector<std::vector<std::vector<Point>>> members(m, std::vector<std::vector<Point>>(n));
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        for (std::size_t i = 0; i < m; ++i) {
            members[i][rest % n].push_back(grid[idx]);
            rest /= n;
        }
    }
    std::vector<Family> out;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<VPolytope> sets;
        for (auto& pts : members[i]) sets.emplace_back(std::move(pts));
        out.emplace_back("F" + std::to_string(i + 1), std::move(sets));
    }
    return out;
}

}  // namespace detail

inline const std::vector<std::string>& generator_schemes()
{
    static const std::vector<std::string> schemes{"axis-slabs", "shifted-boxes", "random-points-fattened"};
    return schemes;
}

/// Random m x n color system in R^d with the colorful intersection property
/// built in; the property is re-checked before returning. k is accepted for
/// symmetry with the experiment drivers and does not change the output.
inline ColorSystem generate_random_colorful_system(std::size_t d, std::size_t m, int k, std::size_t n, std::uint64_t seed,
                                                   std::string_view scheme)
{
    if (d < 1 || m < 1 || n < 1) throw InputError("generate_random_colorful_system: d, m, n must be positive");
    if (k < 1) throw InputError("generate_random_colorful_system: k must be positive");
    SeededGenerator gen(seed);
    std::vector<Family> fams;
    if (scheme == "axis-slabs")
        fams = detail::axis_slabs(d, m, n, gen);
    else if (scheme == "shifted-boxes")
        fams = detail::shifted_boxes(d, m, n, gen);
    else if (scheme == "random-points-fattened")
        fams = detail::random_points_fattened(d, m, n, gen);
    else
        throw InputError("unknown scheme '" + std::string(scheme) + "'");
    ColorSystem S(d, std::move(fams));
    if (check_colorful_intersection(S)) throw InternalError("generated system lacks the colorful property");
    return S;
}

/// Random point set of the given size with small rational coordinates.
inline std::vector<Point> random_points(std::size_t count, std::size_t d, SeededGenerator& gen, std::int64_t den = 10)
{
    std::vector<Point> pts(count, Point(d));
    for (auto& p : pts)
        for (auto& c : p) c = gen.rational(-5, 5, den);
    return pts;
}

}  // namespace tvlab
