#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tvlab/error.hpp"
#include "tvlab/geometry.hpp"
#include "tvlab/partitions.hpp"
#include "tvlab/random.hpp"
#include "tvlab/rational.hpp"

namespace tvlab {

struct Family
{
    std::string label;
    std::vector<VPolytope> sets;

    Family() = default;
    Family(std::string label_, std::vector<VPolytope> sets_) : label(std::move(label_)), sets(std::move(sets_))
    {
        if (sets.empty()) throw InputError("Family '" + label + "' is empty");
        for (const auto& s : sets)
            if (s.dimension() != sets.front().dimension())
                throw InputError("Family '" + label + "' mixes ambient dimensions");
    }

    std::size_t size() const { return sets.size(); }
    std::size_t dimension() const { return sets.front().dimension(); }

    /// A family of single points.
    static Family of_points(std::string label, const std::vector<Point>& points)
    {
        std::vector<VPolytope> sets;
        for (const auto& p : points) sets.emplace_back(std::vector<Point>{p});
        return Family(std::move(label), std::move(sets));
    }

    friend bool operator==(const Family&, const Family&) = default;
};

/// m families of equal size n in a common R^d.
struct ColorSystem
{
    std::size_t dimension = 0;
    std::vector<Family> families;

    ColorSystem() = default;
    ColorSystem(std::size_t d, std::vector<Family> fams) : dimension(d), families(std::move(fams))
    {
        if (families.empty()) throw InputError("ColorSystem needs at least one family");
        for (const auto& f : families) {
            if (f.dimension() != d) throw InputError("family '" + f.label + "' is not in dimension " + std::to_string(d));
            if (f.size() != families.front().size()) throw InputError("families have different sizes");
        }
    }

    std::size_t m() const { return families.size(); }
    std::size_t n() const { return families.front().size(); }

    friend bool operator==(const ColorSystem&, const ColorSystem&) = default;
};

/// Pooled vertex lists of each block, in (set index, canonical vertex) order,
/// with the owning set of every pooled vertex.
struct PooledBlocks
{
    std::vector<std::vector<Point>> vertices;
    std::vector<std::vector<int>> owner;
};

inline PooledBlocks pool_blocks(const Family& F, const KPartition& P)
{
    if (P.size() != F.size()) throw InputError("partition size does not match family size");
    PooledBlocks pooled;
    for (const auto& block : P.blocks()) {
        auto& verts = pooled.vertices.emplace_back();
        auto& own = pooled.owner.emplace_back();
        for (int i : block) {
            for (const auto& v : F.sets[static_cast<std::size_t>(i)].vertices()) {
                verts.push_back(v);
                own.push_back(i);
            }
        }
    }
    return pooled;
}

struct TverbergWitness
{
    KPartition partition;
    Point point;
    /// Per block, aligned with pool_blocks(F, partition).vertices.
    std::vector<Vector> coefficients;
};

inline bool verify_witness(const Family& F, const TverbergWitness& w)
{
    if (w.partition.size() != F.size()) return false;
    auto pooled = pool_blocks(F, w.partition);
    return verifies_hull_witness(pooled.vertices, HullWitness{w.point, w.coefficients});
}

/// Whether the k-partition P of F is a Tverberg partition; the witness is
/// computed for the canonical block order.
inline std::optional<TverbergWitness> is_tverberg(const Family& F, const KPartition& P)
{
    KPartition canon = P.canonical();
    auto pooled = pool_blocks(F, canon);
    auto hw = hulls_common_point(pooled.vertices);
    if (!hw) return std::nullopt;
    return TverbergWitness{std::move(canon), std::move(hw->point), std::move(hw->coefficients)};
}

/// First Tverberg k-partition in restricted-growth order, or nullopt after
/// all S(n,k) candidates fail.
inline std::optional<TverbergWitness> find_tverberg(const Family& F, int k)
{
    if (k < 1) throw InputError("find_tverberg: k must be positive");
    PartitionEnumerator e(static_cast<int>(F.size()), k);
    while (auto P = e.next())
        if (auto w = is_tverberg(F, *P)) return w;
    return std::nullopt;
}

/// Lexicographically first m-tuple (one set per family) with empty
/// intersection, or nullopt when the colorful intersection property holds.
inline std::optional<std::vector<std::size_t>> check_colorful_intersection(const ColorSystem& S)
{
    const std::size_t m = S.m(), n = S.n();
    std::vector<std::size_t> tuple(m, 0);
    for (;;) {
        std::vector<std::vector<Point>> parts;
        parts.reserve(m);
        for (std::size_t i = 0; i < m; ++i) parts.push_back(S.families[i].sets[tuple[i]].vertices());
        if (!hulls_common_point(parts)) return tuple;
        std::size_t pos = m;
        while (pos > 0 && ++tuple[pos - 1] == n) tuple[--pos] = 0;
        if (pos == 0) return std::nullopt;
    }
}

inline bool is_prime_power(long long k)
{
    if (k < 2) return false;
    for (long long p = 2; p * p <= k; ++p) {
        if (k % p) continue;
        while (k % p == 0) k /= p;
        return k == 1;
    }
    return true;
}

/// Size bound of the interpolation theorem: n > (d/m + 1)(k - 1).
inline Rational theorem1_bound(std::size_t d, std::size_t m, int k)
{
    if (m == 0) throw InputError("m must be positive");
    return (Rational(Integer(d), Integer(m)) + 1) * (k - 1);
}

struct JoinBoundReport
{
    Rational size_bound;          // (d/m + 1)(k - 1)
    bool size_hypothesis = false; // n > size_bound
    long long join_connectivity = 0; // m(n - k + 1) - 2
    long long target = 0;            // d(k - 1) - 2
    bool join_inequality = false;    // join_connectivity > target
    bool equivalent = false;
};

/// Evaluates the size hypothesis and the join-connectivity inequality it
/// is used for, and whether they agree for these integers.
inline JoinBoundReport join_bound_check(long long d, long long m, long long k, long long n)
{
    if (m <= 0) throw InputError("join_bound_check: m must be positive");
    JoinBoundReport r;
    r.size_bound = (Rational(Integer(d), Integer(m)) + 1) * (k - 1);
    r.size_hypothesis = Rational(n) > r.size_bound;
    r.join_connectivity = m * (n - k + 1) - 2;
    r.target = d * (k - 1) - 2;
    r.join_inequality = r.join_connectivity > r.target;
    r.equivalent = r.size_hypothesis == r.join_inequality;
    return r;
}

enum class Verdict { Success, HypothesisNotMet, TheoremViolation, ConjectureCounterexample };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Success: return "SUCCESS";
    case Verdict::HypothesisNotMet: return "HYPOTHESIS_NOT_MET";
    case Verdict::TheoremViolation: return "THEOREM_VIOLATION";
    case Verdict::ConjectureCounterexample: return "CONJECTURE_COUNTEREXAMPLE";
    }
    return "?";
}

struct Theorem1Report
{
    std::size_t d = 0, m = 0, n = 0;
    int k = 0;
    std::optional<std::vector<std::size_t>> colorful_violation;
    Rational size_bound;
    bool size_hypothesis = false;
    bool dimension_hypothesis = false;  // d >= m >= 1
    bool k_prime_power = false;
    std::vector<std::optional<TverbergWitness>> family_results;
    std::optional<std::size_t> successful_family;
    Verdict verdict = Verdict::HypothesisNotMet;

    bool hypotheses_met() const { return !colorful_violation && size_hypothesis && dimension_hypothesis; }
};

/// Runs the interpolation theorem on one instance. Hypotheses are judged
/// first: an instance that misses any of them is HYPOTHESIS_NOT_MET even if
/// some family happens to succeed. Every family is searched regardless.
inline Theorem1Report theorem1_experiment(const ColorSystem& S, int k)
{
    if (k < 1) throw InputError("theorem1_experiment: k must be positive");
    Theorem1Report r;
    r.d = S.dimension;
    r.m = S.m();
    r.n = S.n();
    r.k = k;
    r.colorful_violation = check_colorful_intersection(S);
    r.size_bound = theorem1_bound(r.d, r.m, k);
    r.size_hypothesis = Rational(Integer(r.n)) > r.size_bound;
    r.dimension_hypothesis = r.d >= r.m && r.m >= 1;
    r.k_prime_power = is_prime_power(k);
    for (std::size_t i = 0; i < S.m(); ++i) {
        r.family_results.push_back(find_tverberg(S.families[i], k));
        if (r.family_results.back() && !r.successful_family) r.successful_family = i;
    }
    if (!r.hypotheses_met())
        r.verdict = Verdict::HypothesisNotMet;
    else if (r.successful_family)
        r.verdict = Verdict::Success;
    else
        r.verdict = r.k_prime_power ? Verdict::TheoremViolation : Verdict::ConjectureCounterexample;
    return r;
}

/// Draws a base set of (t+1)(k-1) integer points in R^t with no Tverberg
/// k-partition, retrying until the exhaustive check passes.
inline std::vector<Point> random_tverberg_free_base(std::size_t t, int k, std::uint64_t seed, int max_attempts = 10000)
{
    SeededGenerator gen(seed);
    const std::size_t count = (t + 1) * static_cast<std::size_t>(k - 1);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<Point> pts(count, Point(t));
        for (auto& p : pts)
            for (auto& c : p) c = Rational(gen.uniform(-9, 9));
        if (!find_tverberg(Family::of_points("base", pts), k)) return pts;
    }
    throw InternalError("could not draw a Tverberg-free base set");
}

/// Tight instance for the size bound: with t = d/m and X a Tverberg-free set
/// of (t+1)(k-1) points in R^t, family i consists of the sets
/// B x ... x {x} x ... x B (x in the i-th factor, x in X), where
/// B = [-M, M]^t stands in for R^t and M = 1 + max |coordinate of X|.
inline ColorSystem build_extremal(std::size_t d, std::size_t m, int k,
                                  std::optional<std::vector<Point>> base = std::nullopt, std::uint64_t seed = 1)
{
    if (m == 0 || d == 0 || d % m != 0) throw InputError("build_extremal: m must divide d");
    if (k < 2) throw InputError("build_extremal: k must be at least 2");
    const std::size_t t = d / m;
    const std::size_t count = (t + 1) * static_cast<std::size_t>(k - 1);
    std::vector<Point> X;
    if (base) {
        X = *base;
        if (X.size() != count) throw InputError("build_extremal: base must have (d/m + 1)(k - 1) points");
        for (const auto& p : X)
            if (p.size() != t) throw InputError("build_extremal: base points must lie in R^(d/m)");
        if (find_tverberg(Family::of_points("base", X), k))
            throw InputError("build_extremal: base admits a Tverberg partition");
    } else {
        X = random_tverberg_free_base(t, k, seed);
    }

    Rational M = 0;
    for (const auto& p : X)
        for (const auto& c : p) M = std::max(M, Rational(abs(c)));
    M += 1;

    const std::size_t free_coords = t * (m - 1);
    std::vector<Family> families;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<VPolytope> sets;
        for (const auto& x : X) {
            std::vector<Point> verts;
            for (std::size_t mask = 0; mask < (std::size_t{1} << free_coords); ++mask) {
                Point v(d);
                std::size_t bit = 0;
                for (std::size_t f = 0; f < m; ++f) {
                    for (std::size_t c = 0; c < t; ++c) {
                        if (f == i)
                            v[f * t + c] = x[c];
                        else
                            v[f * t + c] = ((mask >> bit++) & 1) ? M : Rational(-M);
                    }
                }
                verts.push_back(std::move(v));
            }
            sets.emplace_back(std::move(verts));
        }
        families.emplace_back("F" + std::to_string(i + 1), std::move(sets));
    }
    return ColorSystem(d, std::move(families));
}

/// Affine flat through one point of each set, assembled from a Tverberg
/// witness. Set i in block j contributes its weighted vertex average (or its
/// first vertex when it carries no weight). The flat has dimension at most
/// n - k and meets every set; both facts are checked before returning.
inline AffineFlat extract_flat_transversal(const Family& F, const TverbergWitness& w)
{
    if (!verify_witness(F, w)) throw InputError("extract_flat_transversal: witness does not verify");
    const std::size_t n = F.size(), d = F.dimension();
    auto pooled = pool_blocks(F, w.partition);

    std::vector<Point> weighted(n, Point(d));
    std::vector<Rational> mass(n);
    for (std::size_t j = 0; j < pooled.vertices.size(); ++j) {
        for (std::size_t v = 0; v < pooled.vertices[j].size(); ++v) {
            const auto owner = static_cast<std::size_t>(pooled.owner[j][v]);
            const Rational& lam = w.coefficients[j][v];
            if (lam == 0) continue;
            mass[owner] += lam;
            for (std::size_t c = 0; c < d; ++c) weighted[owner][c] += lam * pooled.vertices[j][v][c];
        }
    }
    std::vector<Point> reps(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (mass[i] > 0) {
            reps[i] = weighted[i];
            for (auto& c : reps[i]) c /= mass[i];
        } else {
            reps[i] = F.sets[i].vertices().front();
        }
    }

    AffineFlat flat = affine_flat_of(reps);
    if (flat.dimension() > n - w.partition.k())
        throw InternalError("transversal flat exceeds dimension n - k");
    for (const auto& C : F.sets)
        if (!flat_intersects_polytope(flat, C)) throw InternalError("transversal flat misses a set");
    return flat;
}

}  // namespace tvlab
