#include <gtest/gtest.h>

#include <set>

#include "tvlab/partitions.hpp"

using namespace tvlab;

namespace {

// All restricted-growth strings with exactly k labels, by brute force over k^n words.
std::vector<std::vector<int>> brute_rgs(int n, int k)
{
    std::vector<std::vector<int>> out;
    std::vector<int> w(static_cast<std::size_t>(n), 0);
    while (true) {
        int mx = -1;
        bool ok = true;
        for (int v : w) {
            if (v > mx + 1) {
                ok = false;
                break;
            }
            mx = std::max(mx, v);
        }
        if (ok && mx == k - 1) out.push_back(w);
        int pos = n - 1;
        while (pos >= 0 && ++w[static_cast<std::size_t>(pos)] == k) w[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
    }
    return out;
}

}  // namespace

TEST(Partitions, ThreeIntoTwo)
{
    auto ps = enumerate_partitions(3, 2);
    ASSERT_EQ(ps.size(), 3u);
    EXPECT_EQ(ps[0].notation(), "12|3");
    EXPECT_EQ(ps[1].notation(), "13|2");
    EXPECT_EQ(ps[2].notation(), "1|23");
}

TEST(Partitions, FourIntoTwo) { EXPECT_EQ(enumerate_partitions(4, 2).size(), 7u); }

TEST(Partitions, AllSingletons)
{
    for (int n = 1; n <= 6; ++n) {
        auto ps = enumerate_partitions(n, n);
        ASSERT_EQ(ps.size(), 1u);
        for (const auto& b : ps[0].blocks()) EXPECT_EQ(b.size(), 1u);
    }
}

TEST(Partitions, DegenerateArguments)
{
    EXPECT_THROW(enumerate_partitions(3, 0), InputError);
    EXPECT_TRUE(enumerate_partitions(2, 3).empty());
}

TEST(PartitionsProperty, MatchesBruteForceInOrder)
{
    for (int n = 1; n <= 7; ++n) {
        for (int k = 1; k <= n; ++k) {
            auto expected = brute_rgs(n, k);
            PartitionEnumerator e(n, k);
            std::size_t i = 0;
            while (auto p = e.next()) {
                ASSERT_LT(i, expected.size());
                EXPECT_EQ(p->labels(), expected[i]) << "n=" << n << " k=" << k << " i=" << i;
                EXPECT_EQ(*p, p->canonical());
                ++i;
            }
            EXPECT_EQ(i, expected.size());
            EXPECT_EQ(stirling2(n, k), expected.size());
        }
    }
}

TEST(Partitions, ParseAndNotationRoundTrip)
{
    auto P = parse_partition("13|2", 3);
    EXPECT_EQ(P.blocks(), (std::vector<std::vector<int>>{{0, 2}, {1}}));
    EXPECT_EQ(P.notation(), "13|2");
    auto Q = parse_partition("1,10|2,3,4,5,6,7,8,9", 10);
    EXPECT_EQ(Q.notation(), "1,10|2,3,4,5,6,7,8,9");
    EXPECT_EQ(parse_partition(Q.notation(), 10), Q);
}

TEST(Partitions, ParseRejects)
{
    EXPECT_THROW(parse_partition("12", 3), InputError);     // does not cover
    EXPECT_THROW(parse_partition("12|2|3", 3), InputError); // overlap
    EXPECT_THROW(parse_partition("14|23", 3), InputError);  // out of range
    EXPECT_THROW(parse_partition("1||23", 3), InputError);  // empty block
    EXPECT_THROW(parse_partition("1a|23", 3), InputError);
}

TEST(Partitions, CanonicalSortsBlocks)
{
    KPartition P(3, {{1}, {2, 0}});
    EXPECT_EQ(P.canonical().notation(), "13|2");
    EXPECT_EQ(KPartition::from_labels({0, 1, 0}, 2), P.canonical());
}

TEST(Stirling, KnownValues)
{
    EXPECT_EQ(stirling2(0, 0), 1u);
    EXPECT_EQ(stirling2(5, 0), 0u);
    EXPECT_EQ(stirling2(6, 3), 90u);
    EXPECT_EQ(stirling2(10, 4), 34105u);
}
