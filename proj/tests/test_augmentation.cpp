#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "akucb/augmentation.hpp"
#include "akucb/mwm.hpp"

using namespace akucb;

namespace {

// No two augmentations may have adjacent new links.
bool new_links_disjoint(const NetworkGraph& g, const std::vector<Augmentation>& set,
                        const Matching& s_prev) {
    std::vector<char> node_used(g.node_count(), 0);
    for (const Augmentation& a : set)
        for (int id : a.links) {
            if (s_prev.contains(id)) continue;
            const Link l = g.link(id);
            if (node_used[l.u] || node_used[l.v]) return false;
            node_used[l.u] = node_used[l.v] = 1;
        }
    return true;
}

double total_gain(const std::vector<Augmentation>& set) {
    double s = 0.0;
    for (const Augmentation& a : set) s += a.gain;
    return s;
}

} // namespace

TEST_CASE("augmentation gain arithmetic") {
    const NetworkGraph p = NetworkGraph::from_links(4, {{0, 1}, {1, 2}, {2, 3}});
    const Matching empty(p);
    const std::vector<int> all = {0, 1, 2};
    CHECK(augmentation_gain(std::span<const int>(all), empty, {0.5, 0.25, 0.5}) ==
          doctest::Approx(1.25));

    // new 0.9, scheduled 0.4, new 0.7 -> 0.9 + 0.7 - 0.4.
    const Matching mid = make_matching(p, {1});
    CHECK(augmentation_gain(std::span<const int>(all), mid, {0.9, 0.4, 0.7}) ==
          doctest::Approx(1.2));
}

TEST_CASE("decomposition of equal matchings is empty") {
    const NetworkGraph r6 = ring_topology(6);
    const Matching m = make_matching(r6, {0, 3});
    CHECK(optimal_augmentation_set(r6, m, m, 2, WeightVector(6, 1.0)).empty());
}

TEST_CASE("decomposition of two disjoint target links") {
    const NetworkGraph p = NetworkGraph::from_links(4, {{0, 1}, {1, 2}, {2, 3}});
    const Matching prev(p);
    const Matching target = make_matching(p, {0, 2});
    const WeightVector w = {0.6, 0.9, 0.8};
    std::vector<Augmentation> set = optimal_augmentation_set(p, prev, target, 2, w);
    // Links 0 and 2 share no node, so they form two components.
    REQUIRE(set.size() == 2);
    CHECK(total_gain(set) == doctest::Approx(w[0] + w[2]));
    for (Augmentation& a : set) {
        CHECK(a.size <= 2);
        CHECK(is_valid_alternating(p, a, prev));
        a.applied = true;
    }
    CHECK(apply_augmentations(prev, set).links() == std::vector<int>{0, 2});
}

TEST_CASE("alternating six-cycle decomposition meets the k=2 bound") {
    const NetworkGraph r6 = ring_topology(6);
    const Matching prev = make_matching(r6, {0, 2, 4});
    const Matching target = make_matching(r6, {1, 3, 5});
    const WeightVector w(6, 1.0);
    std::vector<Augmentation> set = optimal_augmentation_set(r6, prev, target, 2, w);
    // Guarantee: total gain >= (k-1)/(k+1) * r(target) - r(prev) = 1 - 3.
    CHECK(total_gain(set) >= (1.0 / 3.0) * 3.0 - 3.0 - 1e-12);
    for (const Augmentation& a : set) {
        CHECK(a.size <= 2);
        CHECK(is_valid_alternating(r6, a, prev));
    }
    CHECK(new_links_disjoint(r6, set, prev));

    // Applying everything still beats the Lemma bound relative to r*.
    for (Augmentation& a : set) a.applied = true;
    const Matching after = apply_augmentations(prev, set);
    CHECK(weight_sum(after, w) >= (1.0 / 3.0) * 3.0 - 1e-12);
}

TEST_CASE("small cycle component is returned whole") {
    const NetworkGraph r4 = ring_topology(4);
    const Matching prev = make_matching(r4, {0, 2});
    const Matching target = make_matching(r4, {1, 3});
    const WeightVector w = {1.0, 2.0, 1.0, 2.0};
    std::vector<Augmentation> set = optimal_augmentation_set(r4, prev, target, 2, w);
    REQUIRE(set.size() == 1);
    CHECK(set[0].is_cycle);
    CHECK(set[0].links.size() == 4);
    CHECK(set[0].size == 2);
    CHECK(set[0].gain == doctest::Approx(2.0)); // 4 - 2
    CHECK(is_valid_alternating(r4, set[0], prev));
}

TEST_CASE("long path split keeps pieces small and gain above the path bound") {
    // P11: 10 links alternating prev/target, target = even positions.
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < 10; ++i) pairs.emplace_back(i, i + 1);
    const NetworkGraph p = NetworkGraph::from_links(11, pairs);
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        Matching prev(p), target(p);
        for (int i = 0; i < 10; i += 2) target.add(i);
        for (int i = 1; i < 10; i += 2) prev.add(i);
        WeightVector w(10);
        for (double& x : w) x = rng.next_double();
        const int k = 2 + rng.next_below(3);
        std::vector<Augmentation> set = optimal_augmentation_set(p, prev, target, k, w);
        double copt = 0.0, cprev = 0.0;
        for (int i = 0; i < 10; i += 2) copt += w[i];
        for (int i = 1; i < 10; i += 2) cprev += w[i];
        // Path components satisfy the stronger k/(k+1) factor.
        CHECK(total_gain(set) >= (static_cast<double>(k) / (k + 1)) * copt - cprev - 1e-9);
        for (const Augmentation& a : set) CHECK(a.size <= k);
        CHECK(new_links_disjoint(p, set, prev));
    }
}

TEST_CASE("random instances satisfy the decomposition guarantee against the exact optimum") {
    Rng rng(909);
    for (int trial = 0; trial < 80; ++trial) {
        const int nodes = 5 + rng.next_below(4);
        const int max_links = nodes * (nodes - 1) / 2;
        const int links = std::min(max_links, nodes - 1 + rng.next_below(5));
        const NetworkGraph g = random_topology(nodes, links, rng.next_u64());
        WeightVector w(g.link_count());
        for (double& x : w) x = rng.next_double();
        const int k = 2 + rng.next_below(3);
        const std::vector<Matching> all = enumerate_matchings(g);
        const Matching& prev = all[rng.next_below(static_cast<int>(all.size()))];
        const auto [target, rstar] = max_weight_matching(g, w);

        std::vector<Augmentation> set = optimal_augmentation_set(g, prev, target, k, w);
        for (Augmentation& a : set) {
            CHECK(a.size <= k);
            CHECK(is_valid_alternating(g, a, prev));
            a.applied = true;
        }
        CHECK(new_links_disjoint(g, set, prev));
        const Matching after = apply_augmentations(prev, set);
        CHECK(is_matching(g, after.links()));
        const double alpha = static_cast<double>(k - 1) / (k + 1);
        CHECK(weight_sum(after, w) >= alpha * rstar - 1e-9);
        // Applying the set realizes exactly the summed gains.
        CHECK(weight_sum(after, w) - weight_sum(prev, w) == doctest::Approx(total_gain(set)));
    }
}

TEST_CASE("decomposition input validation") {
    const NetworkGraph r6 = ring_topology(6);
    const Matching m = make_matching(r6, {0, 2});
    CHECK_THROWS_AS(optimal_augmentation_set(r6, m, m, 1, WeightVector(6, 1.0)),
                    std::invalid_argument);
}
