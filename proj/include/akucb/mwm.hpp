#ifndef AKUCB_MWM_HPP
#define AKUCB_MWM_HPP

#include <algorithm>
#include <numeric>
#include <tuple>
#include <vector>

#include "akucb/blossom.hpp"
#include "akucb/graph.hpp"
#include "akucb/matching_ops.hpp"

namespace akucb {

// Largest link count solved by branch-and-bound; larger graphs go through
// the blossom solver.
inline constexpr int kBranchBoundMaxLinks = 30;

namespace detail {

struct BnbState {
    const NetworkGraph* g;
    const WeightVector* w;
    std::vector<int> order;      // positive-weight links, weight desc / id asc
    std::vector<double> cumsum;  // cumsum[i] = sum of order[0..i) weights
    std::vector<char> node_used;
    std::vector<int> picked;
    std::vector<int> best;
    double best_value = 0.0;
    int free_nodes = 0;

    void run(int idx, double value) {
        if (value > best_value) {
            best_value = value;
            best = picked;
        }
        const int n = static_cast<int>(order.size());
        if (idx == n) return;
        // Upper bound: the suffix is weight-sorted, so the best conceivable
        // completion takes its top floor(free/2) links.
        const int cap = std::min(n, idx + free_nodes / 2);
        if (value + (cumsum[cap] - cumsum[idx]) <= best_value) return;

        const int id = order[idx];
        const Link l = g->link(id);
        if (!node_used[l.u] && !node_used[l.v]) {
            node_used[l.u] = node_used[l.v] = 1;
            free_nodes -= 2;
            picked.push_back(id);
            run(idx + 1, value + (*w)[id]);
            picked.pop_back();
            free_nodes += 2;
            node_used[l.u] = node_used[l.v] = 0;
        }
        run(idx + 1, value);
    }
};

inline std::pair<Matching, double> mwm_branch_bound(const NetworkGraph& g, const WeightVector& w) {
    BnbState st;
    st.g = &g;
    st.w = &w;
    for (int id = 0; id < g.link_count(); ++id)
        if (w[id] > 0.0) st.order.push_back(id);
    std::sort(st.order.begin(), st.order.end(), [&](int a, int b) {
        if (w[a] != w[b]) return w[a] > w[b];
        return a < b;
    });
    st.cumsum.resize(st.order.size() + 1, 0.0);
    for (size_t i = 0; i < st.order.size(); ++i) st.cumsum[i + 1] = st.cumsum[i] + w[st.order[i]];
    st.node_used.assign(g.node_count(), 0);
    st.free_nodes = g.node_count();
    st.run(0, 0.0);

    Matching m(g);
    std::sort(st.best.begin(), st.best.end());
    for (int id : st.best) m.add(id);
    return {std::move(m), weight_sum(m, w)};
}

inline std::pair<Matching, double> mwm_blossom(const NetworkGraph& g, const WeightVector& w) {
    std::vector<std::tuple<int, int, double>> edges;
    std::vector<int> edge_link;
    for (int id = 0; id < g.link_count(); ++id) {
        if (w[id] > 0.0) {
            const Link l = g.link(id);
            edges.emplace_back(l.u, l.v, w[id]);
            edge_link.push_back(id);
        }
    }
    const std::vector<int> mate = max_weight_matching_mates(g.node_count(), edges);
    Matching m(g);
    for (size_t e = 0; e < edges.size(); ++e) {
        const auto& [u, v, wt] = edges[e];
        if (mate[u] == v && !m.contains(edge_link[e])) m.add(edge_link[e]);
    }
    return {std::move(m), weight_sum(m, w)};
}

} // namespace detail

// Exact maximum weight matching and its value r*_w. Branch-and-bound up to
// kBranchBoundMaxLinks links, blossom beyond.
inline std::pair<Matching, double> max_weight_matching(const NetworkGraph& g,
                                                       const WeightVector& w) {
    if (g.link_count() <= kBranchBoundMaxLinks) return detail::mwm_branch_bound(g, w);
    return detail::mwm_blossom(g, w);
}

// Near-optimal matchings {S : r_w(S) >= alpha * r*_w}; needs enumeration.
inline std::vector<Matching> near_optimal_set(const NetworkGraph& g, const WeightVector& w,
                                              double alpha) {
    std::vector<Matching> all = enumerate_matchings(g);
    double rstar = 0.0;
    for (const Matching& m : all) rstar = std::max(rstar, weight_sum(m, w));
    const double bar = alpha * rstar;
    std::vector<Matching> out;
    for (Matching& m : all)
        if (weight_sum(m, w) >= bar - kWeightEps) out.push_back(std::move(m));
    return out;
}

} // namespace akucb

#endif
