#ifndef AKUCB_BANDIT_HPP
#define AKUCB_BANDIT_HPP

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "akucb/graph.hpp"
#include "akucb/matching_ops.hpp"
#include "akucb/protocol.hpp"

namespace akucb {

// Frame position bookkeeping: frame n covers global slots
// (n-1)*T + 1 .. n*T; learning state resets at every frame start.
struct FrameContext {
    long frame_length;

    long frame_index(long global_slot) const { return (global_slot - 1) / frame_length + 1; }
    long slot_in_frame(long global_slot) const { return (global_slot - 1) % frame_length + 1; }
    bool is_frame_start(long global_slot) const { return slot_in_frame(global_slot) == 1; }
};

// Per-link play counts, reward sums and the frame-start queue snapshot
// behind the UCB index.
class LinkBanditState {
public:
    explicit LinkBanditState(int link_count)
        : plays_(link_count, 0), reward_sum_(link_count, 0.0), frame_queue_(link_count, 0) {}

    int link_count() const { return static_cast<int>(plays_.size()); }

    // Frame boundary: zero the statistics and freeze the queue snapshot.
    void reset_frame(std::span<const long long> queues) {
        if (queues.size() != plays_.size()) throw std::invalid_argument("queue vector size");
        frame_queue_max_ = 0;
        for (size_t i = 0; i < plays_.size(); ++i) {
            plays_[i] = 0;
            reward_sum_[i] = 0.0;
            frame_queue_[i] = queues[i];
            frame_queue_max_ = std::max(frame_queue_max_, queues[i]);
        }
    }

    void record_play(int link, double reward) {
        if (reward < 0.0 || reward > 1.0) throw std::invalid_argument("reward outside [0,1]");
        plays_[link] += 1;
        reward_sum_[link] += reward;
    }

    long plays(int link) const { return plays_[link]; }
    double reward_sum(int link) const { return reward_sum_[link]; }
    long long frame_queue(int link) const { return frame_queue_[link]; }
    long long frame_queue_max() const { return frame_queue_max_; }

    // q_i / q*, with ratio 1 when q* is zero.
    double queue_ratio(int link) const {
        if (frame_queue_max_ == 0) return 1.0;
        return static_cast<double>(frame_queue_[link]) / static_cast<double>(frame_queue_max_);
    }

    // Queue-weighted empirical mean reward.
    double empirical_weight(int link) const {
        if (plays_[link] == 0) throw std::logic_error("link not yet played this frame");
        return queue_ratio(link) * reward_sum_[link] / static_cast<double>(plays_[link]);
    }

    double ucb_index(int link, long t) const {
        if (plays_[link] == 0) throw std::logic_error("index undefined before warm-up");
        const double bonus =
            std::sqrt((link_count() + 1) * std::log(static_cast<double>(t)) /
                      static_cast<double>(plays_[link]));
        return empirical_weight(link) + bonus;
    }

    WeightVector ucb_index_vector(long t) const {
        WeightVector w(plays_.size());
        for (int i = 0; i < link_count(); ++i) w[i] = ucb_index(i, t);
        return w;
    }

    // Greedy-baseline ranking weight: frame-start queue times the mean-rate
    // estimate plus the confidence radius (the max-weight style
    // queue-times-rate form; queue lengths here are not normalized, so
    // large backlogs dominate the exploration term).
    double greedy_rank_weight(int link, long t) const {
        if (plays_[link] == 0) throw std::logic_error("index undefined before warm-up");
        const double mean = reward_sum_[link] / static_cast<double>(plays_[link]);
        const double bonus =
            std::sqrt((link_count() + 1) * std::log(static_cast<double>(t)) /
                      static_cast<double>(plays_[link]));
        const double q = frame_queue_max_ == 0 ? 1.0 : static_cast<double>(frame_queue_[link]);
        return q * mean + bonus;
    }

    WeightVector greedy_rank_vector(long t) const {
        WeightVector w(plays_.size());
        for (int i = 0; i < link_count(); ++i) w[i] = greedy_rank_weight(i, t);
        return w;
    }

    // Local view consumed by the distributed round; intentionally excludes
    // the global queue maximum.
    DistributedLinkStats distributed_view(long t) const {
        DistributedLinkStats s;
        s.frame_queue = &frame_queue_;
        s.plays = &plays_;
        s.reward_sum = &reward_sum_;
        s.t = t;
        s.link_count = link_count();
        return s;
    }

    // Frame-start local normalizers: per node, the largest frame-start
    // queue among its incident links.
    std::vector<double> initial_normalizers(const NetworkGraph& g) const {
        std::vector<double> norm(g.node_count(), 0.0);
        for (int v = 0; v < g.node_count(); ++v)
            for (int id : g.incident(v))
                norm[v] = std::max(norm[v], static_cast<double>(frame_queue_[id]));
        return norm;
    }

    bool operator==(const LinkBanditState& o) const {
        return plays_ == o.plays_ && reward_sum_ == o.reward_sum_ &&
               frame_queue_ == o.frame_queue_ && frame_queue_max_ == o.frame_queue_max_;
    }

private:
    std::vector<long> plays_;
    std::vector<double> reward_sum_;
    std::vector<long long> frame_queue_;
    long long frame_queue_max_ = 0;
};

// Warm-up schedules for slots t = 1..|L|: slot t's matching contains link
// t-1, completed greedily in link-id order so every slot stays
// work-conserving and every link is played at least once per frame.
inline std::vector<Matching> warmup_schedules(const NetworkGraph& g) {
    std::vector<Matching> out;
    out.reserve(g.link_count());
    for (int lead = 0; lead < g.link_count(); ++lead) {
        Matching m(g);
        m.add(lead);
        for (int id = 0; id < g.link_count(); ++id)
            if (m.can_add(id)) m.add(id);
        out.push_back(std::move(m));
    }
    return out;
}

// Genie weights w_i = (q_i(t_n)/q*) * mu_i with the q* = 0 convention
// w_i = mu_i; used by metrics and the exact scheduling baseline.
inline WeightVector true_weight_vector(std::span<const long long> frame_queues,
                                       const WeightVector& mu) {
    long long qmax = 0;
    for (long long q : frame_queues) qmax = std::max(qmax, q);
    WeightVector w(mu.size());
    for (size_t i = 0; i < mu.size(); ++i) {
        const double ratio =
            qmax == 0 ? 1.0 : static_cast<double>(frame_queues[i]) / static_cast<double>(qmax);
        w[i] = ratio * mu[i];
    }
    return w;
}

} // namespace akucb

#endif
