#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

#include "tvlab/error.hpp"

namespace tvlab {

/// Finite graded poset stored as its Hasse diagram. rank is the cell
/// dimension (-1 for an empty face); covers always raise rank by one in the
/// posets built here.
struct Poset
{
    std::vector<int> rank;
    std::vector<std::vector<std::size_t>> up;    // elements covering i
    std::vector<std::vector<std::size_t>> down;  // elements covered by i

    std::size_t size() const { return rank.size(); }

    bool covers(std::size_t lower, std::size_t upper) const
    {
        const auto& u = up[lower];
        return std::find(u.begin(), u.end(), upper) != u.end();
    }

    void add_cover(std::size_t lower, std::size_t upper)
    {
        up[lower].push_back(upper);
        down[upper].push_back(lower);
    }

    std::size_t edge_count() const
    {
        std::size_t e = 0;
        for (const auto& u : up) e += u.size();
        return e;
    }

    static Poset with_ranks(std::vector<int> ranks)
    {
        Poset p;
        p.up.resize(ranks.size());
        p.down.resize(ranks.size());
        p.rank = std::move(ranks);
        return p;
    }

    /// Hasse diagram of the strict order `less` on {0..size-1}. Quadratic in
    /// the number of elements per cover test; meant for small posets.
    static Poset from_order(std::vector<int> ranks, const std::function<bool(std::size_t, std::size_t)>& less)
    {
        Poset p = with_ranks(std::move(ranks));
        const std::size_t n = p.size();
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                if (!less(a, b)) continue;
                bool cover = true;
                for (std::size_t c = 0; c < n && cover; ++c)
                    if (less(a, c) && less(c, b)) cover = false;
                if (cover) p.add_cover(a, b);
            }
        }
        return p;
    }

    /// Elements strictly above each element (transitive closure of up).
    std::vector<std::vector<std::size_t>> strictly_above() const
    {
        const std::size_t n = size();
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rank[a] > rank[b]; });
        std::vector<std::vector<std::size_t>> above(n);
        for (std::size_t i : order) {
            std::vector<std::size_t> acc;
            for (std::size_t u : up[i]) {
                if (rank[u] <= rank[i]) throw InputError("strictly_above: covers must raise rank");
                acc.push_back(u);
                acc.insert(acc.end(), above[u].begin(), above[u].end());
            }
            std::sort(acc.begin(), acc.end());
            acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
            above[i] = std::move(acc);
        }
        return above;
    }
};

}  // namespace tvlab
