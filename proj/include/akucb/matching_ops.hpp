#ifndef AKUCB_MATCHING_OPS_HPP
#define AKUCB_MATCHING_OPS_HPP

#include <algorithm>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "akucb/graph.hpp"

namespace akucb {

using WeightVector = std::vector<double>;

// Largest graph enumerate_matchings accepts; the matching count grows
// exponentially past this.
inline constexpr int kEnumerationMaxLinks = 24;

// Comparison slack for weight-ratio checks; raw sums use a fixed
// accumulation order (ascending link id) and compare exactly.
inline constexpr double kWeightEps = 1e-12;

// Sum of w over the given links, accumulated in ascending link-id order so
// equal sets always produce bit-identical sums.
inline double weight_sum(std::span<const int> sorted_links, const WeightVector& w) {
    double s = 0.0;
    for (int id : sorted_links) s += w[id];
    return s;
}

inline double weight_sum(const Matching& m, const WeightVector& w) {
    return weight_sum(std::span<const int>(m.links()), w);
}

// All matchings of g, each exactly once (the empty matching included).
inline std::vector<Matching> enumerate_matchings(const NetworkGraph& g) {
    if (g.link_count() > kEnumerationMaxLinks)
        throw std::invalid_argument("graph too large for matching enumeration");
    std::vector<Matching> out;
    Matching cur(g);
    const int n = g.link_count();
    // Depth-first over link ids: at each id, branch exclude / include.
    auto rec = [&](auto&& self, int id) -> void {
        if (id == n) {
            out.push_back(cur);
            return;
        }
        self(self, id + 1);
        if (cur.can_add(id)) {
            cur.add(id);
            self(self, id + 1);
            cur.remove(id);
        }
    };
    rec(rec, 0);
    return out;
}

// Greedy maximal matching: repeatedly add the heaviest compatible link,
// breaking weight ties toward the lowest link id.
inline Matching greedy_matching(const NetworkGraph& g, const WeightVector& w) {
    std::vector<int> order(g.link_count());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (w[a] != w[b]) return w[a] > w[b];
        return a < b;
    });
    Matching m(g);
    for (int id : order)
        if (m.can_add(id)) m.add(id);
    return m;
}

} // namespace akucb

#endif
