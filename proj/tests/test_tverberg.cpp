#include <gtest/gtest.h>

#include <algorithm>

#include "tvlab/generators.hpp"
#include "tvlab/tverberg.hpp"

using namespace tvlab;

namespace {

Rational q(long long p, long long d = 1) { return Rational(Integer(p), Integer(d)); }

VPolytope seg(Point a, Point b) { return VPolytope({std::move(a), std::move(b)}); }

// 3 horizontal segments y = 0, 1, 2 and 3 vertical segments x = 0, 1, 2 over [-1, 3].
ColorSystem crossing_grid()
{
    std::vector<VPolytope> h, v;
    for (int j = 0; j < 3; ++j) {
        h.push_back(seg({q(-1), q(j)}, {q(3), q(j)}));
        v.push_back(seg({q(j), q(-1)}, {q(j), q(3)}));
    }
    return ColorSystem(2, {Family("horizontal", h), Family("vertical", v)});
}

// In R^1 a partition is Tverberg iff the block intervals overlap.
bool interval_oracle(const Family& F, const KPartition& P)
{
    Rational lo = -1000, hi = 1000;
    for (const auto& block : P.blocks()) {
        Rational bmin = 1000, bmax = -1000;
        for (int i : block)
            for (const auto& v : F.sets[static_cast<std::size_t>(i)].vertices()) {
                bmin = std::min(bmin, v[0]);
                bmax = std::max(bmax, v[0]);
            }
        lo = std::max(lo, bmin);
        hi = std::min(hi, bmax);
    }
    return lo <= hi;
}

bool on_segment(const Point& p, const Point& a, const Point& b)
{
    Rational cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
    if (cross != 0) return false;
    return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) && std::min(a[1], b[1]) <= p[1] &&
           p[1] <= std::max(a[1], b[1]);
}

}  // namespace

TEST(IsTverberg, MiddlePointOnALine)
{
    auto F = Family::of_points("X", {{q(0)}, {q(1)}, {q(2)}});
    auto w = is_tverberg(F, parse_partition("13|2", 3));
    ASSERT_TRUE(w);
    EXPECT_EQ(w->point, Point{q(1)});
    EXPECT_TRUE(verify_witness(F, *w));
}

TEST(IsTverberg, DisjointSegments)
{
    Family F("F", {seg({q(0)}, {q(1)}), seg({q(2)}, {q(3)})});
    EXPECT_FALSE(is_tverberg(F, parse_partition("1|2", 2)));
}

TEST(IsTverberg, RadonConfiguration)
{
    auto F = Family::of_points("R", {{q(0), q(0)}, {q(2), q(0)}, {q(0), q(2)}, {q(1, 2), q(1, 2)}});
    auto w = is_tverberg(F, parse_partition("123|4", 4));
    ASSERT_TRUE(w);
    EXPECT_EQ(w->point, (Point{q(1, 2), q(1, 2)}));
}

TEST(IsTverberg, BlockOrderDoesNotMatter)
{
    auto F = Family::of_points("X", {{q(0)}, {q(1)}, {q(2)}});
    auto w = is_tverberg(F, KPartition(3, {{1}, {0, 2}}));
    ASSERT_TRUE(w);
    EXPECT_EQ(w->partition.notation(), "13|2");
}

TEST(FindTverberg, Examples)
{
    auto line = Family::of_points("X", {{q(0)}, {q(1)}, {q(2)}});
    auto w = find_tverberg(line, 2);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->partition.notation(), "13|2");  // 12|3 fails, 13|2 is next
    EXPECT_FALSE(find_tverberg(Family::of_points("Y", {{q(0)}, {q(1)}}), 2));
}

TEST(FindTverbergProperty, IntervalOracle)
{
    SeededGenerator g(21);
    for (int t = 0; t < 60; ++t) {
        const auto n = static_cast<std::size_t>(g.uniform(2, 5));
        const int k = static_cast<int>(g.uniform(2, static_cast<std::int64_t>(n)));
        std::vector<VPolytope> sets;
        for (std::size_t i = 0; i < n; ++i) {
            Rational a = g.rational(-6, 6, 2);
            sets.push_back(g.uniform(0, 1) ? VPolytope({{a}}) : seg({a}, {a + g.rational(0, 2, 2)}));
        }
        Family F("F", sets);
        bool any = false;
        for (const auto& P : enumerate_partitions(static_cast<int>(n), k)) {
            bool oracle = interval_oracle(F, P);
            any = any || oracle;
            EXPECT_EQ(is_tverberg(F, P).has_value(), oracle);
        }
        EXPECT_EQ(find_tverberg(F, k).has_value(), any);
    }
}

TEST(FindTverbergProperty, TverbergNumberAlwaysSuffices)
{
    SeededGenerator g(31);
    for (auto [d, k] : {std::pair{1, 2}, {2, 2}, {1, 3}, {2, 3}}) {
        for (int t = 0; t < 10; ++t) {
            auto pts = random_points(static_cast<std::size_t>((d + 1) * (k - 1) + 1), static_cast<std::size_t>(d), g);
            auto w = find_tverberg(Family::of_points("X", pts), k);
            ASSERT_TRUE(w);
            EXPECT_TRUE(verify_witness(Family::of_points("X", pts), *w));
        }
    }
}

TEST(Colorful, CrossingGridHasProperty) { EXPECT_FALSE(check_colorful_intersection(crossing_grid())); }

TEST(Colorful, DisjointSingletons)
{
    ColorSystem S(1, {Family("A", {seg({q(0)}, {q(1)})}), Family("B", {seg({q(2)}, {q(3)})})});
    auto v = check_colorful_intersection(S);
    ASSERT_TRUE(v);
    EXPECT_EQ(*v, (std::vector<std::size_t>{0, 0}));
}

TEST(Interpolation, CrossingGridSucceedsInTheFirstFamily)
{
    auto r = theorem1_experiment(crossing_grid(), 2);
    EXPECT_EQ(r.verdict, Verdict::Success);
    ASSERT_TRUE(r.successful_family);
    EXPECT_EQ(*r.successful_family, 0u);
    EXPECT_EQ(r.family_results[0]->partition.notation(), "13|2");
}

TEST(Interpolation, ExtremalInstanceMissesTheBound)
{
    auto S = build_extremal(2, 2, 2, std::vector<Point>{{q(0)}, {q(1)}});
    auto r = theorem1_experiment(S, 2);
    EXPECT_EQ(r.verdict, Verdict::HypothesisNotMet);
    EXPECT_FALSE(r.size_hypothesis);
    EXPECT_FALSE(r.successful_family);
}

TEST(Interpolation, ColorfulFailureIsReported)
{
    ColorSystem S(2, {Family::of_points("A", {{q(0), q(0)}, {q(5), q(5)}, {q(1), q(0)}}),
                      Family::of_points("B", {{q(0), q(0)}, {q(9), q(9)}, {q(2), q(0)}})});
    auto r = theorem1_experiment(S, 2);
    EXPECT_EQ(r.verdict, Verdict::HypothesisNotMet);
    ASSERT_TRUE(r.colorful_violation);
    EXPECT_EQ(*r.colorful_violation, (std::vector<std::size_t>{0, 1}));
}

TEST(Interpolation, DimensionBelowFamilyCountIsOutsideTheTheorem)
{
    // d = 1 < m = 2: intervals that all contain 0.
    ColorSystem S(1, {Family("A", {seg({q(-1)}, {q(1)}), seg({q(-2)}, {q(1)}), seg({q(-1)}, {q(3)})}),
                      Family("B", {seg({q(-1)}, {q(2)}), seg({q(-3)}, {q(1)}), seg({q(0)}, {q(1)})})});
    auto r = theorem1_experiment(S, 2);
    EXPECT_FALSE(r.dimension_hypothesis);
    EXPECT_EQ(r.verdict, Verdict::HypothesisNotMet);
}

TEST(PrimePower, Values)
{
    for (int k : {2, 3, 4, 5, 7, 8, 9, 16, 27, 49}) EXPECT_TRUE(is_prime_power(k)) << k;
    for (int k : {0, 1, 6, 10, 12, 15, 36}) EXPECT_FALSE(is_prime_power(k)) << k;
}

TEST(Extremal, PlanarSegments)
{
    auto S = build_extremal(2, 2, 2, std::vector<Point>{{q(0)}, {q(1)}});
    ASSERT_EQ(S.m(), 2u);
    EXPECT_EQ(S.families[0].sets[0], seg({q(0), q(-2)}, {q(0), q(2)}));
    EXPECT_EQ(S.families[0].sets[1], seg({q(1), q(-2)}, {q(1), q(2)}));
    EXPECT_EQ(S.families[1].sets[0], seg({q(-2), q(0)}, {q(2), q(0)}));
    EXPECT_FALSE(check_colorful_intersection(S));
    for (const auto& F : S.families) EXPECT_FALSE(find_tverberg(F, 2));
}

TEST(Extremal, SingleFamilyOfThreePlanarPoints)
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto S = build_extremal(2, 1, 2, std::nullopt, seed);
        ASSERT_EQ(S.n(), 3u);
        std::vector<Point> p;
        for (const auto& C : S.families[0].sets) p.push_back(C.vertices().front());
        // Three points have a Tverberg 2-partition iff one lies on the segment of the others.
        bool oracle = on_segment(p[0], p[1], p[2]) || on_segment(p[1], p[0], p[2]) || on_segment(p[2], p[0], p[1]);
        EXPECT_FALSE(oracle);
    }
}

TEST(Extremal, FourDimensionalBoxes)
{
    auto S = build_extremal(4, 2, 2, std::vector<Point>{{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}});
    ASSERT_EQ(S.n(), 3u);
    // [-M,M]^2 x {x} has 2^{t(m-1)} = 4 vertices.
    for (const auto& F : S.families)
        for (const auto& C : F.sets) EXPECT_EQ(C.vertices().size(), 4u);
    EXPECT_FALSE(check_colorful_intersection(S));
    for (const auto& F : S.families) EXPECT_FALSE(find_tverberg(F, 2));
}

TEST(Extremal, RejectsBadArguments)
{
    EXPECT_THROW(build_extremal(3, 2, 2), InputError);
    EXPECT_THROW(build_extremal(2, 2, 2, std::vector<Point>{{q(0)}, {q(0)}}), InputError);  // Tverberg base
    EXPECT_THROW(build_extremal(2, 2, 2, std::vector<Point>{{q(0)}}), InputError);
}

TEST(Transversal, SingletonBlocksGiveAPoint)
{
    auto F = Family::of_points("P", {{q(1), q(1)}, {q(1), q(1)}});
    auto w = find_tverberg(F, 2);
    ASSERT_TRUE(w);
    auto flat = extract_flat_transversal(F, *w);
    EXPECT_EQ(flat.dimension(), 0u);
    EXPECT_EQ(flat.base, w->point);
}

TEST(Transversal, CollinearPointsGiveTheirLine)
{
    auto F = Family::of_points("L", {{q(0), q(0)}, {q(1), q(1)}, {q(2), q(2)}});
    auto w = find_tverberg(F, 2);
    ASSERT_TRUE(w);
    auto flat = extract_flat_transversal(F, *w);
    ASSERT_EQ(flat.dimension(), 1u);
    EXPECT_EQ(flat.directions[0][0], flat.directions[0][1]);
}

TEST(Transversal, RejectsForgedWitness)
{
    auto F = Family::of_points("L", {{q(0)}, {q(1)}, {q(2)}});
    auto w = *find_tverberg(F, 2);
    w.point = {q(5)};
    EXPECT_THROW(extract_flat_transversal(F, w), InputError);
}

TEST(JoinBound, Examples)
{
    auto a = join_bound_check(2, 2, 2, 3);
    EXPECT_TRUE(a.size_hypothesis && a.join_inequality && a.equivalent);
    auto b = join_bound_check(2, 2, 2, 2);
    EXPECT_TRUE(!b.size_hypothesis && !b.join_inequality && b.equivalent);
    auto c = join_bound_check(4, 2, 2, 4);
    EXPECT_TRUE(c.size_hypothesis && c.join_inequality);
    EXPECT_EQ(c.join_connectivity, 4);
    EXPECT_EQ(c.target, 2);
}

TEST(JoinBoundProperty, EquivalentWheneverMDividesD)
{
    for (long long m = 1; m <= 4; ++m)
        for (long long d = m; d <= 8; d += m)
            for (long long k = 2; k <= 5; ++k)
                for (long long n = 1; n <= 20; ++n) EXPECT_TRUE(join_bound_check(d, m, k, n).equivalent);
}
