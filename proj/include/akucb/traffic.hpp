#ifndef AKUCB_TRAFFIC_HPP
#define AKUCB_TRAFFIC_HPP

#include <span>
#include <stdexcept>
#include <vector>

#include "akucb/graph.hpp"
#include "akucb/matching_ops.hpp"
#include "akucb/rng.hpp"

namespace akucb {

// Bernoulli arrival probabilities and service success probabilities, one
// entry per link.
struct TrafficModel {
    std::vector<double> arrival_prob; // lambda
    std::vector<double> service_prob; // mu

    void validate(int link_count) const {
        if (static_cast<int>(arrival_prob.size()) != link_count ||
            static_cast<int>(service_prob.size()) != link_count)
            throw std::invalid_argument("traffic vectors must match link count");
        for (double x : arrival_prob)
            if (x < 0.0 || x > 1.0) throw std::invalid_argument("arrival prob outside [0,1]");
        for (double x : service_prob)
            if (x < 0.0 || x > 1.0) throw std::invalid_argument("service prob outside [0,1]");
    }
};

struct QueueState {
    std::vector<long long> q;
    long slot = 0; // completed slots

    long long total() const {
        long long s = 0;
        for (long long x : q) s += x;
        return s;
    }
    long long max_queue() const {
        long long m = 0;
        for (long long x : q) m = std::max(m, x);
        return m;
    }
};

// Service observation per link for one slot: -1 not observed (link not
// scheduled, or empty-queue draw suppressed), else the Bernoulli outcome.
using ServiceOutcomes = std::vector<int8_t>;

// One slot of queue evolution: scheduled links draw X ~ Bernoulli(mu) and
// depart [q - X]+, then every link receives a ~ Bernoulli(lambda). X is
// observed (and reported to the learner) even when the queue is empty,
// unless draw_when_empty is false.
inline void step_queues(QueueState& qs, const Matching& schedule, const TrafficModel& tm,
                        uint64_t run_seed, long slot, ServiceOutcomes& x_out,
                        bool draw_when_empty = true) {
    const int link_count = static_cast<int>(qs.q.size());
    x_out.assign(link_count, -1);
    for (int id : schedule.links()) {
        if (!draw_when_empty && qs.q[id] == 0) continue;
        Rng rng(derive_seed(run_seed, static_cast<uint64_t>(StreamTag::Service),
                            static_cast<uint64_t>(slot), static_cast<uint64_t>(id)));
        const int8_t x = rng.next_bernoulli(tm.service_prob[id]) ? 1 : 0;
        x_out[id] = x;
        if (x == 1 && qs.q[id] > 0) qs.q[id] -= 1;
    }
    for (int id = 0; id < link_count; ++id) {
        Rng rng(derive_seed(run_seed, static_cast<uint64_t>(StreamTag::Arrivals),
                            static_cast<uint64_t>(slot), static_cast<uint64_t>(id)));
        if (rng.next_bernoulli(tm.arrival_prob[id])) qs.q[id] += 1;
    }
    qs.slot = slot;
}

// Grid experiment traffic: identical arrival rate on every link, service
// rates uniform in [0.25, 0.75] from the rate seed.
inline TrafficModel make_grid_experiment_traffic(int link_count, double lambda,
                                                 uint64_t rate_seed) {
    TrafficModel tm;
    tm.arrival_prob.assign(link_count, lambda);
    tm.service_prob.resize(link_count);
    Rng rng(derive_seed(rate_seed, static_cast<uint64_t>(StreamTag::Rates)));
    for (int i = 0; i < link_count; ++i) tm.service_prob[i] = rng.next_uniform(0.25, 0.75);
    return tm;
}

struct RingExperiment {
    NetworkGraph graph;
    TrafficModel traffic;
    std::vector<long long> initial_queues;
    long frame_length;
};

// Six-link ring with mu = 1/2, lambda = 1/6 + epsilon, frame length 6000
// and staircase initial queues {3T/6, 2T/6, T/6, 3T/6, 2T/6, T/6}.
inline RingExperiment make_ring_experiment(double epsilon) {
    if (epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
    RingExperiment e;
    e.graph = ring_topology(6);
    e.frame_length = 6000;
    e.traffic.arrival_prob.assign(6, 1.0 / 6.0 + epsilon);
    e.traffic.service_prob.assign(6, 0.5);
    const long long t = e.frame_length;
    e.initial_queues = {3 * t / 6, 2 * t / 6, t / 6, 3 * t / 6, 2 * t / 6, t / 6};
    return e;
}

struct RandomNetworkExperiment {
    NetworkGraph graph;
    TrafficModel traffic;
    long frame_length;
};

// 50-node, 200-link random network: mu uniform in [0.25, 0.75], arrival
// rate lambda * rho_i with rho uniform in [0.4, 0.7], frame length 500.
inline RandomNetworkExperiment make_random_network_experiment(double lambda, uint64_t topo_seed,
                                                              uint64_t rate_seed) {
    RandomNetworkExperiment e;
    e.graph = random_topology(50, 200, topo_seed);
    e.frame_length = 500;
    const int m = e.graph.link_count();
    e.traffic.service_prob.resize(m);
    e.traffic.arrival_prob.resize(m);
    Rng mu_rng(derive_seed(rate_seed, static_cast<uint64_t>(StreamTag::Rates), 0));
    Rng rho_rng(derive_seed(rate_seed, static_cast<uint64_t>(StreamTag::Rates), 1));
    for (int i = 0; i < m; ++i) {
        e.traffic.service_prob[i] = mu_rng.next_uniform(0.25, 0.75);
        e.traffic.arrival_prob[i] = lambda * rho_rng.next_uniform(0.4, 0.7);
    }
    return e;
}

} // namespace akucb

#endif
