#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tvlab/error.hpp"

namespace tvlab {

/// Ordered partition of {0, ..., n-1} into nonempty blocks. Canonical form:
/// each block sorted, blocks sorted by their minimum element.
class KPartition
{
public:
    KPartition() = default;

    /// Validates that blocks are nonempty, disjoint and cover {0..n-1}. The
    /// block order is kept as given; see canonical().
    KPartition(std::size_t n, std::vector<std::vector<int>> blocks) : n_(n), blocks_(std::move(blocks))
    {
        std::vector<char> seen(n, 0);
        for (auto& b : blocks_) {
            if (b.empty()) throw InputError("KPartition: empty block");
            std::sort(b.begin(), b.end());
            for (int e : b) {
                if (e < 0 || static_cast<std::size_t>(e) >= n) throw InputError("KPartition: index out of range");
                if (seen[static_cast<std::size_t>(e)]) throw InputError("KPartition: blocks overlap");
                seen[static_cast<std::size_t>(e)] = 1;
            }
        }
        if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw InputError("KPartition: blocks do not cover");
    }

    std::size_t size() const { return n_; }
    std::size_t k() const { return blocks_.size(); }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }

    KPartition canonical() const
    {
        KPartition p = *this;
        std::sort(p.blocks_.begin(), p.blocks_.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        return p;
    }

    /// Block index of each element.
    std::vector<int> labels() const
    {
        std::vector<int> lab(n_);
        for (std::size_t j = 0; j < blocks_.size(); ++j)
            for (int e : blocks_[j]) lab[static_cast<std::size_t>(e)] = static_cast<int>(j);
        return lab;
    }

    static KPartition from_labels(const std::vector<int>& labels, std::size_t k)
    {
        std::vector<std::vector<int>> blocks(k);
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= k)
                throw InputError("KPartition::from_labels: label out of range");
            blocks[static_cast<std::size_t>(labels[i])].push_back(static_cast<int>(i));
        }
        return KPartition(labels.size(), std::move(blocks));
    }

    /// 1-based bar notation, e.g. "13|2".
    std::string notation() const
    {
        std::string s;
        for (std::size_t j = 0; j < blocks_.size(); ++j) {
            if (j) s += '|';
            for (std::size_t i = 0; i < blocks_[j].size(); ++i) {
                if (i && n_ > 9) s += ',';
                s += std::to_string(blocks_[j][i] + 1);
            }
        }
        return s;
    }

    friend bool operator==(const KPartition&, const KPartition&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::vector<int>> blocks_;
};

/// Parses 1-based bar notation "1,3|2" (commas optional when n <= 9).
inline KPartition parse_partition(const std::string& text, std::size_t n)
{
    std::vector<std::vector<int>> blocks(1);
    std::string num;
    bool commas = text.find(',') != std::string::npos;
    auto flush = [&] {
        if (num.empty()) return;
        int v = std::stoi(num);
        blocks.back().push_back(v - 1);
        num.clear();
    };
    for (char ch : text) {
        if (ch == '|') {
            flush();
            blocks.emplace_back();
        } else if (ch == ',' || ch == ' ') {
            flush();
        } else if (ch >= '0' && ch <= '9') {
            num += ch;
            if (!commas) flush();
        } else {
            throw InputError("malformed partition '" + text + "'");
        }
    }
    flush();
    return KPartition(n, std::move(blocks));
}

/// Stirling number of the second kind S(n, k).
inline unsigned long long stirling2(int n, int k)
{
    if (n < 0 || k < 0) return 0;
    std::vector<std::vector<unsigned long long>> s(static_cast<std::size_t>(n) + 1,
                                                    std::vector<unsigned long long>(static_cast<std::size_t>(k) + 1, 0));
    s[0][0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= std::min(i, k); ++j)
            s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                static_cast<unsigned long long>(j) * s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] +
                s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
    return s[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

/// Streams the S(n,k) canonical k-partitions of {0..n-1} in lexicographic
/// order of their restricted-growth strings (a_0 = 0, a_i <= 1 + max a_<i).
class PartitionEnumerator
{
public:
    PartitionEnumerator(int n, int k) : n_(n), k_(k)
    {
        if (k <= 0) throw InputError("enumerate_partitions: k must be positive");
        if (n < 0) throw InputError("enumerate_partitions: n must be nonnegative");
        done_ = k > n;
        if (!done_) {
            // Smallest string with k blocks: 0...0 1 2 ... (k-1).
            rgs_.assign(static_cast<std::size_t>(n), 0);
            for (int i = 0; i < k; ++i) rgs_[static_cast<std::size_t>(n - k + i)] = i;
        }
    }

    std::optional<KPartition> next()
    {
        if (done_) return std::nullopt;
        KPartition out = KPartition::from_labels(rgs_, static_cast<std::size_t>(k_));
        advance();
        return out;
    }

    const std::vector<int>& current_string() const { return rgs_; }

private:
    // Next restricted-growth string with exactly k blocks, lexicographically.
    void advance()
    {
        const auto n = static_cast<std::size_t>(n_);
        for (std::size_t i = n; i-- > 1;) {
            int m = -1;
            for (std::size_t j = 0; j < i; ++j) m = std::max(m, rgs_[j]);
            // Bump position i; the suffix is then the smallest fill that still
            // introduces every missing label, placed at the very end.
            for (int v = rgs_[i] + 1; v <= std::min(m + 1, k_ - 1); ++v) {
                const int reach = std::max(m, v);
                const auto rest = static_cast<int>(n - i - 1);
                if (reach + 1 + rest < k_) continue;
                rgs_[i] = v;
                const int need = k_ - 1 - reach;
                for (std::size_t j = i + 1; j < n; ++j) {
                    const auto left = static_cast<int>(n - j);
                    rgs_[j] = (left <= need) ? reach + 1 + (need - left) : 0;
                }
                return;
            }
        }
        done_ = true;
    }

    int n_, k_;
    bool done_ = false;
    std::vector<int> rgs_;
};

inline std::vector<KPartition> enumerate_partitions(int n, int k)
{
    std::vector<KPartition> out;
    PartitionEnumerator e(n, k);
    while (auto p = e.next()) out.push_back(std::move(*p));
    return out;
}

}  // namespace tvlab
