#ifndef AKUCB_SELFCHECK_HPP
#define AKUCB_SELFCHECK_HPP

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

#include "akucb/augmentation.hpp"
#include "akucb/bandit.hpp"
#include "akucb/mwm.hpp"
#include "akucb/protocol.hpp"
#include "akucb/runner.hpp"

namespace akucb {

// Fast invariant and oracle sweep on small graphs; the CLI `check`
// subcommand. Returns true when everything holds.
inline bool run_self_check(std::ostream& os) {
    int failures = 0;
    auto check = [&](bool ok, const std::string& what) {
        os << (ok ? "ok   " : "FAIL ") << what << "\n";
        if (!ok) ++failures;
    };

    // Topology basics.
    const NetworkGraph grid = grid_topology(4, 4);
    const NetworkGraph ring = ring_topology(6);
    check(grid.node_count() == 16 && grid.link_count() == 24, "grid(4,4) has 16 nodes, 24 links");
    check(ring.link_count() == 6 && ring.max_degree() == 2, "ring(6) is a 6-link cycle");
    check(enumerate_matchings(ring).size() == 18, "ring(6) has 18 matchings");

    // Exact solver against enumeration on random small graphs.
    bool solver_ok = true;
    for (int trial = 0; trial < 40 && solver_ok; ++trial) {
        Rng rng(derive_seed(7, trial));
        const int nodes = 4 + rng.next_below(4);
        const int max_links = nodes * (nodes - 1) / 2;
        const int links = std::min(max_links, nodes - 1 + rng.next_below(4));
        const NetworkGraph g = random_topology(nodes, links, rng.next_u64());
        WeightVector w(g.link_count());
        for (double& x : w) x = rng.next_double();
        double best = 0.0;
        for (const Matching& m : enumerate_matchings(g))
            best = std::max(best, weight_sum(m, w));
        const auto [mm, value] = max_weight_matching(g, w);
        solver_ok = std::abs(value - best) <= 1e-9 && is_matching(g, mm.links());
    }
    check(solver_ok, "max_weight_matching matches enumeration on random graphs");

    // Protocol rounds keep schedules feasible and never lose index weight.
    bool engine_ok = true;
    Matching s_prev(ring);
    WeightVector w = {3.0, 2.5, 1.0, 3.0, 2.5, 1.0};
    for (long slot = 1; slot <= 500 && engine_ok; ++slot) {
        HashedRoundRng rng(99, slot, ring.node_count());
        RoundResult res = run_augmentation_round(ring, s_prev, w, 0.2, 2, rng);
        engine_ok = is_matching(ring, res.schedule.links()) &&
                    weight_sum(res.schedule, w) >= weight_sum(s_prev, w) - kWeightEps;
        for (const Augmentation& a : res.augmentations)
            engine_ok = engine_ok && is_valid_alternating(ring, a, s_prev) && a.size <= a.size_cap;
        s_prev = res.schedule;
    }
    check(engine_ok, "augmentation rounds stay feasible and monotone in index weight");

    // Decomposition oracle achieves the (k-1)/(k+1) guarantee.
    bool oracle_ok = true;
    for (int trial = 0; trial < 50 && oracle_ok; ++trial) {
        Rng rng(derive_seed(11, trial));
        const NetworkGraph g = random_topology(5 + rng.next_below(3), 6 + rng.next_below(3),
                                               rng.next_u64());
        WeightVector wt(g.link_count());
        for (double& x : wt) x = rng.next_double();
        const int k = 2 + rng.next_below(3);
        const auto [target, rstar] = max_weight_matching(g, wt);
        const std::vector<Matching> all = enumerate_matchings(g);
        const Matching& prev = all[rng.next_below(static_cast<int>(all.size()))];
        std::vector<Augmentation> set = optimal_augmentation_set(g, prev, target, k, wt);
        for (Augmentation& a : set) a.applied = true;
        const Matching after = apply_augmentations(prev, set);
        const double bound = (k - 1.0) / (k + 1.0) * rstar;
        oracle_ok = weight_sum(after, wt) >= bound - 1e-9;
    }
    check(oracle_ok, "augmentation decomposition meets the (k-1)/(k+1) bound");

    // Determinism of a tiny experiment.
    ExperimentConfig cfg = make_preset("fig_ring_desk");
    cfg.horizon = 2000;
    cfg.runs = 2;
    const ExperimentResult r1 = run_experiment(cfg);
    cfg.parallel = 4;
    const ExperimentResult r2 = run_experiment(cfg);
    bool det_ok = r1.stability.size() == r2.stability.size();
    for (size_t i = 0; det_ok && i < r1.stability.size(); ++i)
        det_ok = r1.stability[i].end_total_queue == r2.stability[i].end_total_queue;
    check(det_ok, "experiment output independent of parallelism");

    os << (failures == 0 ? "self-check passed\n" : "self-check FAILED\n");
    return failures == 0;
}

} // namespace akucb

#endif
