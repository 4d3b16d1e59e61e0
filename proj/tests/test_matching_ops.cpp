#include <doctest.h>

#include <algorithm>
#include <set>

#include "akucb/matching_ops.hpp"
#include "akucb/mwm.hpp"

using namespace akucb;

namespace {

// P4: path on 4 nodes, 3 links 0-1-2.
NetworkGraph path3() { return NetworkGraph::from_links(4, {{0, 1}, {1, 2}, {2, 3}}); }

} // namespace

TEST_CASE("weight sums") {
    const NetworkGraph r6 = ring_topology(6);
    const WeightVector w = {3, 2, 1, 3, 2, 1};
    CHECK(weight_sum(Matching(r6), w) == 0.0);
    CHECK(weight_sum(make_matching(r6, {0, 2, 4}), w) == doctest::Approx(6.0)); // 3+1+2

    const NetworkGraph p = path3();
    CHECK(weight_sum(make_matching(p, {0, 2}), {1, 5, 2}) == doctest::Approx(3.0));
}

TEST_CASE("matching enumeration counts") {
    CHECK(enumerate_matchings(ring_topology(3)).size() == 4);
    CHECK(enumerate_matchings(ring_topology(6)).size() == 18); // Lucas number L6
    CHECK(enumerate_matchings(NetworkGraph::from_links(2, {{0, 1}})).size() == 2);
    CHECK(enumerate_matchings(path3()).size() == 5);

    // Uniqueness.
    std::set<std::vector<int>> seen;
    for (const Matching& m : enumerate_matchings(grid_topology(2, 3)))
        CHECK(seen.insert(m.links()).second);

    CHECK_THROWS_AS(enumerate_matchings(grid_topology(5, 5)), std::invalid_argument);
}

TEST_CASE("greedy matching traces") {
    const NetworkGraph r6 = ring_topology(6);
    const WeightVector w = {3, 2.5, 1, 3, 2.5, 1};
    const Matching g = greedy_matching(r6, w);
    CHECK(g.links() == std::vector<int>{0, 3});
    CHECK(weight_sum(g, w) == doctest::Approx(6.0));

    // All-zero weights: id order until maximal.
    const Matching z = greedy_matching(r6, WeightVector(6, 0.0));
    CHECK(z.links() == std::vector<int>{0, 2, 4});

    const NetworkGraph single = NetworkGraph::from_links(2, {{0, 1}});
    CHECK(greedy_matching(single, {0.7}).links() == std::vector<int>{0});
}

TEST_CASE("greedy achieves at least half the optimum") {
    Rng rng(31337);
    for (int trial = 0; trial < 100; ++trial) {
        const int nodes = 4 + rng.next_below(5);
        const int max_links = nodes * (nodes - 1) / 2;
        const int links = std::min(max_links, nodes - 1 + rng.next_below(6));
        const NetworkGraph g = random_topology(nodes, links, rng.next_u64());
        WeightVector w(g.link_count());
        for (double& x : w) x = rng.next_double();
        double best = 0.0;
        for (const Matching& m : enumerate_matchings(g)) best = std::max(best, weight_sum(m, w));
        CHECK(weight_sum(greedy_matching(g, w), w) >= 0.5 * best - 1e-12);
    }
}

TEST_CASE("near-optimal set") {
    const NetworkGraph r6 = ring_topology(6);
    const WeightVector w = {3, 2.5, 1, 3, 2.5, 1};

    // alpha = 1 collapses to the optimal matchings: both alternating
    // triples reach 6.5 here.
    const std::vector<Matching> opt = near_optimal_set(r6, w, 1.0);
    REQUIRE(opt.size() == 2);
    for (const Matching& m : opt) CHECK(weight_sum(m, w) == doctest::Approx(6.5));

    // Brute-force cross-check at alpha = 0.9: threshold 0.9 * 6.5 = 5.85.
    const std::vector<Matching> s09 = near_optimal_set(r6, w, 0.9);
    int expected = 0;
    for (const Matching& m : enumerate_matchings(r6))
        if (weight_sum(m, w) >= 0.9 * 6.5 - 1e-12) ++expected;
    CHECK(static_cast<int>(s09.size()) == expected);
    for (const Matching& m : s09) CHECK(weight_sum(m, w) >= 5.85 - 1e-9);

    // Zero weights: every matching qualifies.
    CHECK(near_optimal_set(r6, WeightVector(6, 0.0), 0.5).size() == 18);
}
