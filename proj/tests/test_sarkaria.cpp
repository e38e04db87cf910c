#include <gtest/gtest.h>

#include "tvlab/generators.hpp"
#include "tvlab/sarkaria.hpp"

using namespace tvlab;

namespace {

Rational q(long long p, long long d = 1) { return Rational(Integer(p), Integer(d)); }

Family line3() { return Family::of_points("X", {{q(0)}, {q(1)}, {q(2)}}); }

}  // namespace

TEST(Lift, OriginOnTheLine)
{
    auto L = lift({q(0)}, 0, 2);
    EXPECT_EQ(L, RationalMatrix::from_rows({{q(0), q(0)}, {q(1, 2), q(-1, 2)}}));
}

TEST(LiftProperty, PartsSumToZeroAndRowsBalance)
{
    SeededGenerator g(8);
    for (int t = 0; t < 50; ++t) {
        const auto d = static_cast<std::size_t>(g.uniform(1, 3));
        const int k = static_cast<int>(g.uniform(1, 4));
        Point x = random_points(1, d, g).front();
        RationalMatrix sum(d + 1, static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
            auto L = lift(x, i, k);
            EXPECT_TRUE(in_Y(L));
            for (std::size_t r = 0; r <= d; ++r)
                for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c) sum(r, c) += L(r, c);
        }
        EXPECT_EQ(sum, RationalMatrix(d + 1, static_cast<std::size_t>(k)));
    }
}

TEST(LiftProperty, AffineInThePoint)
{
    SeededGenerator g(12);
    for (int t = 0; t < 50; ++t) {
        auto pts = random_points(3, 2, g);
        Vector lam{q(g.uniform(0, 5)), q(g.uniform(0, 5)), q(g.uniform(1, 5))};
        Rational total = lam[0] + lam[1] + lam[2];
        for (auto& l : lam) l /= total;
        const int k = 3, i = static_cast<int>(g.uniform(0, 2));
        Point x(2);
        for (int j = 0; j < 3; ++j)
            for (int c = 0; c < 2; ++c) x[static_cast<std::size_t>(c)] += lam[static_cast<std::size_t>(j)] * pts[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
        RationalMatrix combo(3, 3);
        for (int j = 0; j < 3; ++j) {
            auto L = lift(pts[static_cast<std::size_t>(j)], i, k);
            for (std::size_t r = 0; r < 3; ++r)
                for (std::size_t c = 0; c < 3; ++c) combo(r, c) += lam[static_cast<std::size_t>(j)] * L(r, c);
        }
        EXPECT_EQ(combo, lift(x, i, k));
    }
}

TEST(ZeroInHull, MiddlePointSystem)
{
    auto lam = sarkaria_zero_in_hull(line3(), parse_partition("13|2", 3));
    ASSERT_TRUE(lam);
    // Order: L_1(0), L_2(1), L_1(2).
    EXPECT_EQ(*lam, (Vector{q(1, 4), q(1, 2), q(1, 4)}));
}

TEST(ZeroInHull, TwoPointsHaveNoCertificate)
{
    EXPECT_FALSE(sarkaria_zero_in_hull(Family::of_points("Y", {{q(0)}, {q(1)}}), parse_partition("1|2", 2)));
}

TEST(ZeroInHull, PlanarRadon)
{
    auto F = Family::of_points("R", {{q(0), q(0)}, {q(2), q(0)}, {q(0), q(2)}, {q(1, 2), q(1, 2)}});
    EXPECT_TRUE(sarkaria_zero_in_hull(F, parse_partition("123|4", 4)));
}

TEST(ZeroInHullProperty, AgreesWithTverberg)
{
    SeededGenerator g(40);
    for (int t = 0; t < 25; ++t) {
        const auto n = static_cast<std::size_t>(g.uniform(2, 5));
        const int k = static_cast<int>(g.uniform(2, std::min<std::int64_t>(3, static_cast<std::int64_t>(n))));
        const auto d = static_cast<std::size_t>(g.uniform(1, 2));
        std::vector<VPolytope> sets;
        for (std::size_t i = 0; i < n; ++i) sets.emplace_back(random_points(static_cast<std::size_t>(g.uniform(1, 2)), d, g));
        Family F("F", sets);
        for (const auto& P : enumerate_partitions(static_cast<int>(n), k))
            EXPECT_EQ(sarkaria_zero_in_hull(F, P).has_value(), is_tverberg(F, P).has_value()) << P.notation();
    }
}

TEST(Separators, TwoPointsOnALine)
{
    auto F = Family::of_points("Y", {{q(0)}, {q(1)}});
    auto A = equivariant_separators(F, 2);
    ASSERT_EQ(A.functionals.size(), 2u);
    EXPECT_EQ(A.representatives.size(), 1u);
    Surjection id({0, 1}, 2), swap({1, 0}, 2);
    EXPECT_EQ(permute_columns({1, 0}, A.at(id)), A.at(swap));
    EXPECT_GT(pairing(A.at(id), lift({q(0)}, 0, 2)), 0);
    EXPECT_GT(pairing(A.at(id), lift({q(1)}, 1, 2)), 0);
}

TEST(Separators, OrbitCountIsStirling)
{
    auto S = build_extremal(2, 1, 3, std::nullopt, 3);
    const auto& F = S.families[0];
    auto A = equivariant_separators(F, 3);
    EXPECT_EQ(A.representatives.size(), stirling2(static_cast<int>(F.size()), 3));
    EXPECT_EQ(A.functionals.size(), build_Vnk(static_cast<int>(F.size()), 3).size());
}

TEST(Separators, EquivariantOnExtremalInstance)
{
    auto S = build_extremal(2, 2, 2, std::vector<Point>{{q(0)}, {q(1)}});
    for (const auto& F : S.families) {
        auto A = equivariant_separators(F, 2);
        for (const auto& g : all_permutations(2))
            for (const auto& [phi, a] : A.functionals) EXPECT_EQ(permute_columns(g, a), A.at(group_action(g, phi)));
    }
}

TEST(Separators, TverbergFamilyIsRejected) { EXPECT_THROW(equivariant_separators(line3(), 2), InputError); }

TEST(AvoidB, TwoPointsIdentityFacet)
{
    auto F = Family::of_points("Y", {{q(0)}, {q(1)}});
    ColorSystem S(1, {F});
    auto r = facet_avoids_B(S, {{0, 1}}, {equivariant_separators(F, 2)});
    EXPECT_EQ(r.margins.size(), 2u);
    EXPECT_TRUE(r.all_positive);
    EXPECT_FALSE(r.image_meets_B);
}

TEST(AvoidB, EveryFacetOfTheExtremalInstance)
{
    auto S = build_extremal(2, 2, 2, std::vector<Point>{{q(0)}, {q(1)}});
    std::vector<SeparatorAssignment> A;
    for (const auto& F : S.families) A.push_back(equivariant_separators(F, 2));
    int choices = 0;
    for (const auto& r1 : all_injections(2, 2))
        for (const auto& r2 : all_injections(2, 2)) {
            auto r = facet_avoids_B(S, {r1, r2}, A);
            EXPECT_TRUE(r.all_positive);
            EXPECT_FALSE(r.image_meets_B);
            ++choices;
        }
    EXPECT_EQ(choices, 4);
}

TEST(AvoidB, RejectsNonInjectiveMaps)
{
    auto F = Family::of_points("Y", {{q(0)}, {q(1)}});
    ColorSystem S(1, {F});
    EXPECT_THROW(facet_avoids_B(S, {{0, 0}}, {equivariant_separators(F, 2)}), InputError);
}

TEST(SubspaceDims, Examples)
{
    auto a = subspace_dims(1, 2);
    EXPECT_EQ(a.dim_Y, 2u);
    EXPECT_EQ(a.dim_Y_perp_B, 1u);
    EXPECT_EQ(subspace_dims(2, 2).dim_Y_perp_B, 2u);
    EXPECT_EQ(subspace_dims(2, 3).dim_Y_perp_B, 4u);
}

TEST(SubspaceDimsProperty, MatchesFormulas)
{
    for (std::size_t d = 0; d <= 4; ++d)
        for (std::size_t k = 1; k <= 5; ++k) {
            auto s = subspace_dims(d, k);
            EXPECT_EQ(s.ambient, (d + 1) * k);
            EXPECT_EQ(s.dim_Y, (d + 1) * (k - 1));
            EXPECT_EQ(s.dim_B, k);
            EXPECT_EQ(s.dim_Y_perp_B, d * (k - 1));
            EXPECT_EQ(s.dim_Y_perp_B_by_constraints, d * (k - 1));
        }
}
