#ifndef AKUCB_AUGMENTATION_HPP
#define AKUCB_AUGMENTATION_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "akucb/graph.hpp"
#include "akucb/matching_ops.hpp"

namespace akucb {

// Alternating path or cycle relative to a previous schedule. links is
// ordered along the path; nodes is the node sequence covered by links
// (equal length for a cycle, one longer for a path).
struct Augmentation {
    std::vector<int> links;
    std::vector<int> nodes;
    int seed_node = -1;
    int terminus_node = -1;
    int size = 0;       // Z = |links - s_prev|
    int size_cap = 0;   // Z-bar
    bool is_cycle = false;
    bool applied = false;
    double gain = 0.0;        // accumulated G (centralized)
    double gain_reward = 0.0; // G'_1 (distributed)
    double gain_conf = 0.0;   // G'_2 (distributed)
};

// Weight of the new links minus weight of the links already scheduled, both
// parts accumulated in ascending link-id order.
inline double augmentation_gain(std::span<const int> links, const Matching& s_prev,
                                const WeightVector& w) {
    std::vector<int> added, removed;
    for (int id : links) (s_prev.contains(id) ? removed : added).push_back(id);
    std::sort(added.begin(), added.end());
    std::sort(removed.begin(), removed.end());
    return weight_sum(added, w) - weight_sum(removed, w);
}

inline double augmentation_gain(const Augmentation& a, const Matching& s_prev,
                                const WeightVector& w) {
    return augmentation_gain(std::span<const int>(a.links), s_prev, w);
}

// Checks that consecutive links share exactly the node sequence and that
// membership in s_prev alternates along the walk.
inline bool is_valid_alternating(const NetworkGraph& g, const Augmentation& a,
                                 const Matching& s_prev) {
    const auto& ls = a.links;
    if (ls.empty()) return false;
    const size_t expect_nodes = a.is_cycle ? ls.size() : ls.size() + 1;
    if (a.nodes.size() != expect_nodes) return false;
    for (size_t i = 0; i < ls.size(); ++i) {
        const int from = a.nodes[i];
        const int to = a.nodes[(i + 1) % a.nodes.size()];
        const Link l = g.link(ls[i]);
        if (!((l.u == from && l.v == to) || (l.v == from && l.u == to))) return false;
        if (i > 0 && s_prev.contains(ls[i]) == s_prev.contains(ls[i - 1])) return false;
    }
    if (a.is_cycle && s_prev.contains(ls.front()) == s_prev.contains(ls.back())) return false;
    int z = 0;
    for (int id : ls)
        if (!s_prev.contains(id)) ++z;
    return z == a.size;
}

// Applies the augment/keep outcome of a set of augmentations: the scheduled
// links of every applied augmentation are switched off, its new links
// switched on, and untouched links keep their previous state. Switching is
// idempotent, so an s_prev link shared by two augmentations is safe.
inline Matching apply_augmentations(const Matching& s_prev,
                                    std::span<const Augmentation> augs) {
    Matching out = s_prev;
    for (const Augmentation& a : augs) {
        if (!a.applied) continue;
        for (int id : a.links)
            if (s_prev.contains(id)) out.remove(id);
    }
    for (const Augmentation& a : augs) {
        if (!a.applied) continue;
        for (int id : a.links)
            if (!s_prev.contains(id) && !out.contains(id)) out.add(id);
    }
    return out;
}

namespace detail {

struct DiffComponent {
    std::vector<int> links; // ordered along the path / cycle
    std::vector<int> nodes;
    bool is_cycle = false;
};

// Connected components of the symmetric difference s_prev XOR s_target.
// Every node has degree <= 2 there, so each component is a simple path or an
// even alternating cycle. Paths start at their lowest-id endpoint node;
// cycles start at their lowest-id node.
inline std::vector<DiffComponent> symmetric_difference_components(const NetworkGraph& g,
                                                                  const Matching& s_prev,
                                                                  const Matching& s_target) {
    std::vector<int> diff;
    for (int id = 0; id < g.link_count(); ++id)
        if (s_prev.contains(id) != s_target.contains(id)) diff.push_back(id);

    std::vector<std::vector<int>> inc(g.node_count());
    for (int id : diff) {
        const Link l = g.link(id);
        inc[l.u].push_back(id);
        inc[l.v].push_back(id);
    }
    std::vector<char> link_done(g.link_count(), 0);

    auto walk = [&](int start_node, int first_link, DiffComponent& c) {
        int node = start_node;
        int lk = first_link;
        c.nodes.push_back(node);
        while (lk != -1) {
            link_done[lk] = 1;
            c.links.push_back(lk);
            node = g.other_end(lk, node);
            if (node == start_node) {
                c.is_cycle = true;
                return;
            }
            c.nodes.push_back(node);
            int next = -1;
            for (int cand : inc[node])
                if (!link_done[cand]) {
                    next = cand;
                    break;
                }
            lk = next;
        }
    };

    std::vector<DiffComponent> out;
    // Path components first: start from degree-1 nodes in ascending order.
    for (int v = 0; v < g.node_count(); ++v) {
        if (inc[v].size() != 1) continue;
        const int first = inc[v][0];
        if (link_done[first]) continue;
        DiffComponent c;
        walk(v, first, c);
        out.push_back(std::move(c));
    }
    // Remaining links belong to cycles.
    for (int v = 0; v < g.node_count(); ++v) {
        if (inc[v].size() != 2) continue;
        int first = -1;
        for (int cand : inc[v])
            if (!link_done[cand]) {
                first = cand;
                break;
            }
        if (first == -1) continue;
        DiffComponent c;
        walk(v, first, c);
        out.push_back(std::move(c));
    }
    return out;
}

inline Augmentation make_piece(const DiffComponent& c, size_t link_begin, size_t link_end,
                               const Matching& s_prev, const WeightVector& w, int k,
                               bool cycle_piece) {
    Augmentation a;
    a.links.assign(c.links.begin() + link_begin, c.links.begin() + link_end);
    if (cycle_piece) {
        a.nodes = c.nodes;
        a.is_cycle = true;
    } else {
        a.nodes.assign(c.nodes.begin() + link_begin, c.nodes.begin() + link_end + 1);
    }
    a.seed_node = a.nodes.front();
    a.terminus_node = a.nodes.back();
    for (int id : a.links)
        if (!s_prev.contains(id)) ++a.size;
    a.size_cap = k;
    a.gain = augmentation_gain(a, s_prev, w);
    return a;
}

// Splits one path component whose target-link count exceeds k into <= k
// sized pieces: of the k+1 removal phases (drop target link i and every
// (k+1)-th target link after it), keep the one with the largest total gain.
inline void split_path_component(const DiffComponent& c, const Matching& s_prev,
                                 const Matching& s_target, const WeightVector& w, int k,
                                 std::vector<Augmentation>& out) {
    std::vector<size_t> target_pos;
    for (size_t i = 0; i < c.links.size(); ++i)
        if (s_target.contains(c.links[i])) target_pos.push_back(i);
    const int m = static_cast<int>(target_pos.size());

    if (m <= k) {
        out.push_back(make_piece(c, 0, c.links.size(), s_prev, w, k, false));
        return;
    }

    int best_phase = 0;
    double best_gain = 0.0;
    std::vector<std::pair<size_t, size_t>> best_pieces;
    for (int phase = 0; phase < k + 1; ++phase) {
        std::vector<char> removed(c.links.size(), 0);
        for (int t = phase; t < m; t += k + 1) removed[target_pos[t]] = 1;
        std::vector<std::pair<size_t, size_t>> pieces;
        double gain = 0.0;
        size_t begin = 0;
        for (size_t i = 0; i <= c.links.size(); ++i) {
            if (i == c.links.size() || removed[i]) {
                if (i > begin) {
                    pieces.emplace_back(begin, i);
                    std::vector<int> slice(c.links.begin() + begin, c.links.begin() + i);
                    gain += augmentation_gain(std::span<const int>(slice), s_prev, w);
                }
                begin = i + 1;
            }
        }
        if (phase == 0 || gain > best_gain + kWeightEps) {
            best_phase = phase;
            best_gain = gain;
            best_pieces = std::move(pieces);
        }
    }
    (void)best_phase;
    for (auto [b, e] : best_pieces) out.push_back(make_piece(c, b, e, s_prev, w, k, false));
}

} // namespace detail

// Constructive decomposition of s_prev XOR s_target into pairwise disjoint
// augmentations of size <= k. Path components larger than k are split by the
// best of the k+1 removal phases; a cycle component larger than k first
// drops its smallest-weight target link (lowest id on ties) and is then
// treated as a path. The total gain over the returned set is at least
// (k-1)/(k+1) * r_w(s_target) - r_w(s_prev).
inline std::vector<Augmentation> optimal_augmentation_set(const NetworkGraph& g,
                                                          const Matching& s_prev,
                                                          const Matching& s_target, int k,
                                                          const WeightVector& w) {
    if (k < 2) throw std::invalid_argument("augmentation size bound must be >= 2");
    if (!is_matching(g, s_prev.links()) || !is_matching(g, s_target.links()))
        throw std::invalid_argument("inputs must be matchings");

    std::vector<Augmentation> out;
    for (detail::DiffComponent& c :
         detail::symmetric_difference_components(g, s_prev, s_target)) {
        int m = 0;
        for (int id : c.links)
            if (s_target.contains(id)) ++m;

        if (!c.is_cycle) {
            detail::split_path_component(c, s_prev, s_target, w, k, out);
            continue;
        }
        if (m <= k) {
            out.push_back(detail::make_piece(c, 0, c.links.size(), s_prev, w, k, true));
            continue;
        }
        // Open the cycle at its smallest-weight target link, then split.
        int drop = -1;
        for (int id : c.links)
            if (s_target.contains(id) && (drop == -1 || w[id] < w[drop])) drop = id;
        size_t drop_pos = 0;
        while (c.links[drop_pos] != drop) ++drop_pos;

        detail::DiffComponent path;
        const size_t n = c.links.size();
        for (size_t i = 1; i < n; ++i) path.links.push_back(c.links[(drop_pos + i) % n]);
        for (size_t i = 1; i <= n; ++i) path.nodes.push_back(c.nodes[(drop_pos + i) % n]);
        // Orient from the endpoint with the lower node id.
        if (path.nodes.back() < path.nodes.front()) {
            std::reverse(path.links.begin(), path.links.end());
            std::reverse(path.nodes.begin(), path.nodes.end());
        }
        detail::split_path_component(path, s_prev, s_target, w, k, out);
    }
    return out;
}

} // namespace akucb

#endif
