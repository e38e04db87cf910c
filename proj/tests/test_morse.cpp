#include <gtest/gtest.h>

#include "tvlab/morse.hpp"

using namespace tvlab;

namespace {

long long reduced_euler_by_census(const CellPoset& C)
{
    long long chi = 0;
    auto c = C.census();
    for (std::size_t s = 0; s < c.size(); ++s) chi += ((s + 1) % 2 == 0 ? 1 : -1) * static_cast<long long>(c[s]);
    return chi;  // slot s holds dimension s - 1
}

// Vertices and edges of the hexagon C_{3,2} in cyclic order v0 e0 v1 e1 ...
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> hexagon_walk(const CellPoset& C)
{
    std::vector<std::size_t> vs, es;
    std::size_t v = 0;
    for (std::size_t i = 0; i < C.cells.size(); ++i)
        if (C.cells[i].dimension() == 0) {
            v = i;
            break;
        }
    std::size_t prev_edge = SIZE_MAX;
    for (int step = 0; step < 6; ++step) {
        vs.push_back(v);
        std::size_t e = C.poset.up[v][0] == prev_edge ? C.poset.up[v][1] : C.poset.up[v][0];
        es.push_back(e);
        v = C.poset.down[e][0] == v ? C.poset.down[e][1] : C.poset.down[e][0];
        prev_edge = e;
    }
    return {vs, es};
}

}  // namespace

TEST(ElementMatching, PowerSetOfTwo)
{
    auto P = SubsetFamily::power_set(0b11);
    auto M = element_matching(P, 1);
    ASSERT_EQ(M.pairs.size(), 2u);
    std::set<std::pair<std::uint32_t, std::uint32_t>> got;
    for (auto [lo, hi] : M.pairs) got.insert({P.members[lo], P.members[hi]});
    EXPECT_EQ(got, (std::set<std::pair<std::uint32_t, std::uint32_t>>{{0b00, 0b10}, {0b01, 0b11}}));
    auto r = verify_acyclic(P.poset, M);
    EXPECT_TRUE(r.acyclic);
    EXPECT_TRUE(r.critical.empty());
}

TEST(ElementMatching, SingletonWithoutEmptySet)
{
    SubsetFamily P({0b1});
    auto M = element_matching(P, 0);
    EXPECT_TRUE(M.pairs.empty());
    EXPECT_EQ(verify_acyclic(P.poset, M).critical.size(), 1u);
}

TEST(ElementMatchingProperty, PowerSetsAreCompletelyMatched)
{
    for (unsigned n = 1; n <= 6; ++n) {
        auto P = SubsetFamily::power_set((1u << n) - 1);
        for (unsigned x = 0; x < n; ++x) {
            auto M = element_matching(P, x);
            EXPECT_EQ(M.pairs.size() * 2, P.members.size());
            EXPECT_TRUE(verify_acyclic(P.poset, M).acyclic);
        }
    }
}

TEST(Patchwork, SinglePointTargetIsIdentity)
{
    auto P = SubsetFamily::power_set(0b111);
    auto M = element_matching(P, 2);
    std::vector<std::optional<std::size_t>> h(P.members.size(), std::size_t{0});
    auto composed = patchwork_compose(P.poset, h, [](std::size_t, std::size_t) { return true; }, {M});
    M.sort();
    EXPECT_EQ(composed.pairs, M.pairs);
}

TEST(Patchwork, RejectsCyclicFiberInput)
{
    auto C = build_Cnk(3, 2);
    auto [vs, es] = hexagon_walk(C);
    Matching M;
    for (int i = 0; i < 6; ++i) M.pairs.emplace_back(vs[static_cast<std::size_t>(i)], es[static_cast<std::size_t>(i)]);
    std::vector<std::optional<std::size_t>> h(C.cells.size(), std::size_t{0});
    EXPECT_THROW(patchwork_compose(C.poset, h, [](std::size_t, std::size_t) { return true; }, {M}), InputError);
}

TEST(Patchwork, RejectsNonMonotoneMapAndStrayPairs)
{
    auto P = SubsetFamily::power_set(0b11);
    // Rank-reversing map into the chain 0 < 1.
    std::vector<std::optional<std::size_t>> h(P.members.size());
    for (std::size_t i = 0; i < P.members.size(); ++i) h[i] = P.members[i] == 0 ? 1 : 0;
    auto leq = [](std::size_t a, std::size_t b) { return a <= b; };
    EXPECT_THROW(patchwork_compose(P.poset, h, leq, {}), InputError);

    // Pair crossing two fibers.
    for (std::size_t i = 0; i < P.members.size(); ++i) h[i] = (P.members[i] & 0b10) ? 1 : 0;
    Matching cross;
    cross.pairs.emplace_back(*P.find(0b00), *P.find(0b10));
    EXPECT_THROW(patchwork_compose(P.poset, h, leq, {cross}), InputError);

    // Two fiber matchings sharing an element.
    Matching a, b;
    a.pairs.emplace_back(*P.find(0b00), *P.find(0b01));
    b.pairs.emplace_back(*P.find(0b01), *P.find(0b11));
    std::vector<std::optional<std::size_t>> one(P.members.size(), std::size_t{0});
    EXPECT_THROW(patchwork_compose(P.poset, one, leq, {a, b}), InputError);
}

TEST(VerifyAcyclic, HexagonClockwiseIsCyclic)
{
    auto C = build_Cnk(3, 2);
    auto [vs, es] = hexagon_walk(C);
    Matching M;
    for (int i = 0; i < 6; ++i) M.pairs.emplace_back(vs[static_cast<std::size_t>(i)], es[static_cast<std::size_t>(i)]);
    EXPECT_FALSE(verify_acyclic(C.poset, M).acyclic);
}

TEST(VerifyAcyclic, RejectsInvalidMatchings)
{
    auto C = build_Cnk(3, 2);
    auto [vs, es] = hexagon_walk(C);
    Matching not_cover;
    not_cover.pairs.emplace_back(0, es[0]);  // empty cell to an edge skips a rank
    EXPECT_THROW(verify_acyclic(C.poset, not_cover), InputError);
    Matching twice;
    twice.pairs.emplace_back(vs[0], es[0]);
    twice.pairs.emplace_back(vs[1], es[0]);
    EXPECT_THROW(verify_acyclic(C.poset, twice), InputError);
}

TEST(RecursiveMatching, ThreeTwo)
{
    auto r = lemma8_matching(3, 2);
    EXPECT_EQ(r.matching.pairs.size(), 6u);
    EXPECT_EQ(r.complex.cells.size(), 13u);
    EXPECT_TRUE(r.report.acyclic);
    ASSERT_EQ(r.report.critical.size(), 1u);
    EXPECT_EQ(r.complex.cells[r.report.critical[0]].str(), "(3|12)");
    EXPECT_EQ(r.report.critical_dims[0], 1);
}

TEST(RecursiveMatching, FourTwo)
{
    auto r = lemma8_matching(4, 2);
    EXPECT_EQ(r.matching.pairs.size(), 25u);
    EXPECT_TRUE(r.report.acyclic);
    ASSERT_EQ(r.report.critical.size(), 1u);
    EXPECT_EQ(r.report.critical_dims[0], 2);
    EXPECT_EQ(reduced_euler_by_census(r.complex), 1);
}

TEST(RecursiveMatching, FourThreeHasOnlyEdgesCritical)
{
    auto r = lemma8_matching(4, 3);
    EXPECT_TRUE(r.report.acyclic);
    EXPECT_TRUE(r.critical_dims_ok);
    for (int d : r.report.critical_dims) EXPECT_EQ(d, 1);
}

TEST(RecursiveMatching, OnePartIsCompletelyMatched)
{
    for (int n = 2; n <= 6; ++n) {
        auto r = lemma8_matching(n, 1);
        EXPECT_TRUE(r.report.acyclic);
        EXPECT_TRUE(r.report.critical.empty()) << n;
    }
}

TEST(RecursiveMatching, RejectsBadShape)
{
    EXPECT_THROW(lemma8_matching(3, 3), InputError);
    EXPECT_THROW(lemma8_matching(3, 0), InputError);
}

TEST(RecursiveMatchingProperty, CriticalCellsAreFullPartitions)
{
    for (int n = 2; n <= 5; ++n)
        for (int k = 1; k < n && k <= 4; ++k) {
            auto r = lemma8_matching(n, k);
            EXPECT_TRUE(r.report.acyclic) << n << "," << k;
            EXPECT_TRUE(r.critical_dims_ok) << n << "," << k;
            for (auto c : r.report.critical) EXPECT_EQ(r.complex.cells[c].defined_count(), n);
            EXPECT_EQ(r.report.euler_critical, reduced_euler_by_census(r.complex));
            EXPECT_TRUE(r.report.euler_balanced());
        }
}
