#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "akucb/bandit.hpp"
#include "akucb/mwm.hpp"
#include "akucb/protocol.hpp"

using namespace akucb;

namespace {

// Deterministic draw source for hand-traced scenarios. Unscripted nodes
// never seed; unscripted choices fail the test.
class ScriptedRng : public RoundRng {
public:
    std::map<int, bool> seeds;
    std::map<int, int> caps;
    std::map<int, std::vector<int>> choices; // per node, consumed front-first

    bool draw_seed(int node, double) override {
        auto it = seeds.find(node);
        return it != seeds.end() && it->second;
    }
    int draw_size_cap(int node, int k) override {
        auto it = caps.find(node);
        return it == caps.end() ? k : it->second;
    }
    int draw_choice(int node, std::span<const int> cand) override {
        auto it = choices.find(node);
        REQUIRE(it != choices.end());
        REQUIRE_FALSE(it->second.empty());
        const int want = it->second.front();
        it->second.erase(it->second.begin());
        REQUIRE(std::find(cand.begin(), cand.end(), want) != cand.end());
        return want;
    }
};

} // namespace

TEST_CASE("no seeds leaves the schedule unchanged") {
    const NetworkGraph r6 = ring_topology(6);
    const Matching prev = make_matching(r6, {0, 3});
    ScriptedRng rng;
    const RoundResult res = run_augmentation_round(r6, prev, WeightVector(6, 1.0), 0.2, 2, rng);
    CHECK(res.schedule == prev);
    CHECK(res.augmentations.empty());
}

TEST_CASE("single link activation") {
    const NetworkGraph g = NetworkGraph::from_links(2, {{0, 1}});
    ScriptedRng rng;
    rng.seeds[0] = true;
    rng.caps[0] = 1;
    rng.choices[0] = {1};
    const RoundResult res = run_augmentation_round(g, Matching(g), {0.8}, 0.5, 2, rng);
    REQUIRE(res.augmentations.size() == 1);
    const Augmentation& a = res.augmentations[0];
    CHECK(a.links == std::vector<int>{0});
    CHECK(a.size == 1);
    CHECK(a.gain == doctest::Approx(0.8));
    CHECK(a.applied);
    CHECK(res.schedule.links() == std::vector<int>{0});
}

TEST_CASE("cycle check closes a four-cycle and respects the size cap") {
    const NetworkGraph r4 = ring_topology(4);
    const Matching prev = make_matching(r4, {0, 2});
    const WeightVector w = {1, 5, 1, 4};

    SUBCASE("closable when Z stays below the cap") {
        ScriptedRng rng;
        rng.seeds[0] = true;
        rng.caps[0] = 2;
        rng.choices[1] = {2}; // node 1 extends toward node 2
        const RoundResult res = run_augmentation_round(r4, prev, w, 0.3, 2, rng);
        REQUIRE(res.augmentations.size() == 1);
        const Augmentation& a = res.augmentations[0];
        CHECK(a.is_cycle);
        CHECK(a.links == std::vector<int>{0, 1, 2, 3});
        CHECK(a.size == 2);
        CHECK(a.gain == doctest::Approx(-1 + 5 - 1 + 4));
        CHECK(a.applied);
        CHECK(res.schedule.links() == std::vector<int>{1, 3});
        CHECK(is_valid_alternating(r4, a, prev));
    }

    SUBCASE("cap reached at the terminus blocks the closing link") {
        ScriptedRng rng;
        rng.seeds[0] = true;
        rng.caps[0] = 1;
        rng.choices[1] = {2};
        const RoundResult res = run_augmentation_round(r4, prev, w, 0.3, 2, rng);
        REQUIRE(res.augmentations.size() == 1);
        const Augmentation& a = res.augmentations[0];
        CHECK_FALSE(a.is_cycle);
        CHECK(a.links == std::vector<int>{0, 1, 2});
        CHECK(a.gain == doctest::Approx(-1 + 5 - 1));
        CHECK(res.schedule.links() == std::vector<int>{1});
    }
}

TEST_CASE("request collision terminates both and the scheduled-link side keeps the node") {
    // Path 0-1-2-3 with link 1 scheduled: seeds at 1 (follows its
    // scheduled link) and 3 (random start) both request node 2.
    const NetworkGraph p = NetworkGraph::from_links(4, {{0, 1}, {1, 2}, {2, 3}});
    const Matching prev = make_matching(p, {1});
    ScriptedRng rng;
    rng.seeds[1] = true;
    rng.seeds[3] = true;
    rng.choices[3] = {2};
    const RoundResult res = run_augmentation_round(p, prev, {1, 1, 1}, 0.3, 2, rng);
    REQUIRE(res.augmentations.size() == 1);
    const Augmentation& a = res.augmentations[0];
    CHECK(a.links == std::vector<int>{1});
    CHECK(a.nodes == std::vector<int>{1, 2}); // collision node covered by the scheduled link
    CHECK(a.size == 0);
    CHECK_FALSE(a.applied); // gain -1
    CHECK(res.schedule == prev);
}

TEST_CASE("pure new-link collision captures nobody") {
    // Star: both leaves request the hub in the same mini-slot.
    const NetworkGraph star = NetworkGraph::from_links(4, {{0, 1}, {0, 2}, {0, 3}});
    ScriptedRng rng;
    rng.seeds[1] = true;
    rng.seeds[2] = true;
    rng.choices[1] = {0};
    rng.choices[2] = {0};
    const RoundResult res =
        run_augmentation_round(star, Matching(star), {1, 1, 1}, 0.3, 2, rng);
    CHECK(res.augmentations.empty());
    CHECK(res.schedule.empty());
}

TEST_CASE("three-seed grid walkthrough applies only the positive-gain augmentation") {
    // 3x4 grid; previous schedule {1, 9, 13}. Seeds: node 5 follows its
    // scheduled link, nodes 8 and 3 start fresh. The augmentation through
    // nodes 5-6-10 trades old weight 5 for new weight 6; the others carry
    // zero and negative gains, and one extension dies on an occupied node.
    const NetworkGraph g = grid_topology(3, 4);
    REQUIRE(g.link_count() == 17);
    Matching prev(g);
    prev.add(1);  // (0,4)
    prev.add(9);  // (5,6)
    prev.add(13); // (7,11)
    WeightVector w(17, 1.0);
    w[9] = 5.0;
    w[12] = 6.0;
    w[14] = 0.0;
    w[6] = 3.0;
    w[13] = 4.0;

    ScriptedRng rng;
    rng.seeds[5] = rng.seeds[8] = rng.seeds[3] = true;
    rng.choices[6] = {10};
    rng.choices[8] = {9};
    rng.choices[3] = {7};
    rng.choices[11] = {10}; // node 10 is already taken: extension fails

    std::ostringstream trace;
    const RoundResult res = run_augmentation_round(g, prev, w, 0.2, 2, rng, &trace);
    REQUIRE(res.augmentations.size() == 3);

    int applied = 0;
    for (const Augmentation& a : res.augmentations) {
        CHECK(is_valid_alternating(g, a, prev));
        if (a.applied) {
            ++applied;
            CHECK(a.links == std::vector<int>{9, 12});
            CHECK(a.gain == doctest::Approx(1.0)); // 6 - 5
        } else if (a.links.size() == 1) {
            CHECK(a.links == std::vector<int>{14});
            CHECK(a.gain == doctest::Approx(0.0)); // zero gain keeps the schedule
        } else {
            CHECK(a.links == std::vector<int>{6, 13});
            CHECK(a.gain == doctest::Approx(-1.0)); // 3 - 4
        }
    }
    CHECK(applied == 1);
    CHECK(res.schedule.links() == std::vector<int>{1, 12, 13});
    CHECK(trace.str().find("REQ 5->6") != std::string::npos);
}

TEST_CASE("validity, alternation, sizes and monotonicity over random rounds") {
    for (const NetworkGraph& g : {ring_topology(6), grid_topology(3, 3)}) {
        Rng wrng(55);
        Matching prev(g);
        for (long slot = 1; slot <= 2000; ++slot) {
            WeightVector w(g.link_count());
            for (double& x : w) x = wrng.next_double();
            HashedRoundRng rng(1234, slot, g.node_count());
            const RoundResult res = run_augmentation_round(g, prev, w, 0.25, 3, rng);
            REQUIRE(is_matching(g, res.schedule.links()));
            CHECK(weight_sum(res.schedule, w) >= weight_sum(prev, w) - 1e-12);
            for (const Augmentation& a : res.augmentations) {
                CHECK(is_valid_alternating(g, a, prev));
                CHECK(a.size <= a.size_cap);
                CHECK(a.size_cap <= 3);
                CHECK(static_cast<int>(a.links.size()) <= 2 * a.size_cap + 1);
                CHECK(a.gain ==
                      doctest::Approx(augmentation_gain(a, prev, w)).epsilon(1e-9));
            }
            // New links of distinct augmentations are node-disjoint.
            std::vector<char> used(g.node_count(), 0);
            for (const Augmentation& a : res.augmentations)
                for (int id : a.links) {
                    if (prev.contains(id)) continue;
                    const Link l = g.link(id);
                    REQUIRE_FALSE(used[l.u]);
                    REQUIRE_FALSE(used[l.v]);
                    used[l.u] = used[l.v] = 1;
                }
            prev = res.schedule;
        }
    }
}

TEST_CASE("delta lower bound") {
    CHECK(delta_lower_bound(4, 2, 0.2, 2) == doctest::Approx(6.25e-6).epsilon(1e-9));
    // p = 1/2 makes the first factor exactly 1.
    CHECK(delta_lower_bound(4, 2, 0.5, 2) ==
          doctest::Approx(std::pow(0.5 / 4.0, 4)).epsilon(1e-12));
    // Monotone decreasing in k.
    double last = 1.0;
    for (int k = 1; k <= 6; ++k) {
        const double d = delta_lower_bound(5, 3, 0.3, k);
        CHECK(d <= last);
        last = d;
    }
    CHECK_THROWS_AS(delta_lower_bound(4, 2, 0.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(delta_lower_bound(4, 2, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(delta_lower_bound(4, 2, 0.5, 0), std::invalid_argument);
}

TEST_CASE("distributed round rescales the reward gain along the path") {
    // Path 0-1-2-3, link 1 scheduled. Frame queues 10, 10, 20; all links
    // played once; rewards 1, 0.5, 1. Node normalizers start at the
    // largest incident frame-start queue.
    const NetworkGraph p = NetworkGraph::from_links(4, {{0, 1}, {1, 2}, {2, 3}});
    const Matching prev = make_matching(p, {1});

    std::vector<long long> frame_q = {10, 10, 20};
    std::vector<long> plays = {1, 1, 1};
    std::vector<double> rewards = {1.0, 0.5, 1.0};
    DistributedLinkStats stats;
    stats.frame_queue = &frame_q;
    stats.plays = &plays;
    stats.reward_sum = &rewards;
    stats.t = 1; // ln 1 = 0: confidence part vanishes
    stats.link_count = 3;

    std::vector<double> norm = {10, 10, 20, 20};

    ScriptedRng rng;
    rng.seeds[0] = true;
    rng.caps[0] = 2;
    rng.choices[0] = {1};
    rng.choices[2] = {3};

    const RoundResult res =
        run_augmentation_round_distributed(p, prev, stats, norm, 0.3, 2, rng);
    REQUIRE(res.augmentations.size() == 1);
    const Augmentation& a = res.augmentations[0];
    CHECK(a.links == std::vector<int>{0, 1, 2});
    // Node 1 accrues (10/10)*1 - (10/10)*0.5 = 0.5; node 2 rescales by
    // 10/20 to 0.25 and adds (20/20)*1.
    CHECK(a.gain_reward == doctest::Approx(1.25));
    CHECK(a.gain_conf == doctest::Approx(0.0));
    CHECK(a.applied);
    CHECK(res.schedule.links() == std::vector<int>{0, 2});
    // Back-propagation: every node of the augmentation holds the maximum.
    for (int v : a.nodes) CHECK(norm[v] == doctest::Approx(20.0));
}

TEST_CASE("uniform normalizers reproduce the centralized decisions exactly") {
    const NetworkGraph g = grid_topology(3, 3);
    const int links = g.link_count();
    Rng setup(321);

    std::vector<long long> frame_q(links, 7); // equal queues: ratios are 1
    std::vector<long> plays(links);
    std::vector<double> rewards(links);
    for (int i = 0; i < links; ++i) {
        plays[i] = 1 + setup.next_below(50);
        rewards[i] = plays[i] * setup.next_double();
    }

    DistributedLinkStats stats;
    stats.frame_queue = &frame_q;
    stats.plays = &plays;
    stats.reward_sum = &rewards;
    stats.link_count = links;

    Matching prev_c(g), prev_d(g);
    std::vector<double> norm(g.node_count(), 7.0);
    for (long slot = 1; slot <= 400; ++slot) {
        stats.t = slot + 1;
        WeightVector idx(links);
        for (int i = 0; i < links; ++i)
            idx[i] = rewards[i] / plays[i] + stats.confidence(i);

        HashedRoundRng rng_c(777, slot, g.node_count());
        HashedRoundRng rng_d(777, slot, g.node_count());
        const RoundResult rc = run_augmentation_round(g, prev_c, idx, 0.25, 3, rng_c);
        const RoundResult rd =
            run_augmentation_round_distributed(g, prev_d, stats, norm, 0.25, 3, rng_d);
        REQUIRE(rc.schedule.links() == rd.schedule.links());
        REQUIRE(rc.augmentations.size() == rd.augmentations.size());
        for (size_t i = 0; i < rc.augmentations.size(); ++i) {
            CHECK(rc.augmentations[i].applied == rd.augmentations[i].applied);
            CHECK(rc.augmentations[i].gain ==
                  doctest::Approx(rd.augmentations[i].gain_reward +
                                  rd.augmentations[i].gain_conf));
        }
        prev_c = rc.schedule;
        prev_d = rd.schedule;
    }
    // Equal queues keep every normalizer at its initial value.
    for (double v : norm) CHECK(v == doctest::Approx(7.0));
}

TEST_CASE("trace log format") {
    const NetworkGraph g = NetworkGraph::from_links(2, {{0, 1}});
    ScriptedRng rng;
    rng.seeds[0] = true;
    rng.caps[0] = 1;
    rng.choices[0] = {1};
    std::ostringstream os;
    run_augmentation_round(g, Matching(g), {0.8}, 0.5, 2, rng, &os);
    CHECK(os.str().substr(0, 16) == std::string("tau=1 REQ 0->1 Z"));
}
