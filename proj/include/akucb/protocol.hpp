#ifndef AKUCB_PROTOCOL_HPP
#define AKUCB_PROTOCOL_HPP

#include <algorithm>
#include <cmath>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "akucb/augmentation.hpp"
#include "akucb/graph.hpp"
#include "akucb/matching_ops.hpp"
#include "akucb/rng.hpp"

namespace akucb {

// Node-local protocol state machine: ACTIVE nodes extend the augmentation,
// WAIT nodes hold a pending REQ, USED nodes handed control on, DONE nodes
// are termini.
enum class NodeState : uint8_t { Null, Active, Wait, Used, Done };

// Randomness a round consumes, keyed per node so node decisions are
// order-independent. The hashed implementation below is the production
// source; tests can script draws directly.
class RoundRng {
public:
    virtual ~RoundRng() = default;
    virtual bool draw_seed(int node, double p) = 0;
    virtual int draw_size_cap(int node, int k) = 0; // uniform in [1, k]
    // Uniform choice among candidate node ids (ascending order).
    virtual int draw_choice(int node, std::span<const int> candidates) = 0;
};

// Stream-per-(run,slot,node) randomness.
class HashedRoundRng : public RoundRng {
public:
    HashedRoundRng(uint64_t run_seed, long slot, int node_count) : streams_() {
        streams_.reserve(node_count);
        for (int v = 0; v < node_count; ++v)
            streams_.emplace_back(
                derive_seed(run_seed, static_cast<uint64_t>(StreamTag::Protocol),
                            static_cast<uint64_t>(slot), static_cast<uint64_t>(v)));
    }
    bool draw_seed(int node, double p) override { return streams_[node].next_bernoulli(p); }
    int draw_size_cap(int node, int k) override { return 1 + streams_[node].next_below(k); }
    int draw_choice(int node, std::span<const int> candidates) override {
        return candidates[streams_[node].next_below(static_cast<int>(candidates.size()))];
    }

private:
    std::vector<Rng> streams_;
};

// Per-link statistics a node can read locally in the distributed variant.
// Deliberately carries no global queue maximum.
struct DistributedLinkStats {
    const std::vector<long long>* frame_queue = nullptr; // q_i at frame start
    const std::vector<long>* plays = nullptr;            // tau-hat, >= 1 after warm-up
    const std::vector<double>* reward_sum = nullptr;
    long t = 1; // in-frame slot
    int link_count = 0;

    double mean_reward(int link) const { return (*reward_sum)[link] / (*plays)[link]; }
    double confidence(int link) const {
        return std::sqrt((link_count + 1) * std::log(static_cast<double>(t)) / (*plays)[link]);
    }
};

struct RoundResult {
    Matching schedule;
    std::vector<Augmentation> augmentations;
};

// Probability lower bound that one round reaches a (k-1)/(k+1)-optimal
// schedule: min{1, (p/(1-p))^V} * ((1-p)/(k*Sigma))^V.
inline double delta_lower_bound(int n_nodes, int max_degree, double p, int k) {
    if (n_nodes < 1 || max_degree < 1) throw std::invalid_argument("need nodes and links");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("seed probability must be in (0,1)");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    const double v = static_cast<double>(n_nodes);
    const double a = std::min(1.0, std::pow(p / (1.0 - p), v));
    const double b = std::pow((1.0 - p) / (k * max_degree), v);
    return a * b;
}

namespace detail {

struct EngineNode {
    NodeState state = NodeState::Null;
    bool alt = false; // last added link is in s_prev
    int z = 0;
    int z_cap = 0;
    int prev_active = -1;
    double gain = 0.0;   // centralized accumulator
    double gain_r = 0.0; // distributed reward part
    double gain_c = 0.0; // distributed confidence part
    std::vector<int> links;
    std::vector<int> nodes;
};

struct ReqMessage {
    int from = -1;
    int to = -1;
    bool alt = false;
    int z = 0;
    int z_cap = 0;
    double gain = 0.0, gain_r = 0.0, gain_c = 0.0;
    double normalizer = 0.0;
    std::vector<int> links;
    std::vector<int> nodes;
};

class RoundEngine {
public:
    RoundEngine(const NetworkGraph& g, const Matching& s_prev, double p, int k, RoundRng& rng,
                const WeightVector* weights, const DistributedLinkStats* stats,
                std::vector<double>* normalizers, std::ostream* trace)
        : g_(g), s_prev_(s_prev), p_(p), k_(k), rng_(rng), weights_(weights), stats_(stats),
          normalizers_(normalizers), trace_(trace), ctx_(g.node_count()) {
        if (k < 2) throw std::invalid_argument("k must be >= 2");
        if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must be in (0,1)");
        if (distributed() && (stats_ == nullptr || normalizers_ == nullptr))
            throw std::invalid_argument("distributed round needs link stats and normalizers");
    }

    RoundResult run() {
        // Mini-slot 1: seeding.
        for (int v = 0; v < g_.node_count(); ++v) {
            if (!rng_.draw_seed(v, p_)) continue;
            EngineNode& n = ctx_[v];
            n.state = NodeState::Active;
            n.z = 0;
            n.z_cap = rng_.draw_size_cap(v, k_);
            const int ml = s_prev_.node_link(v);
            if (ml != -1) {
                // A seeded node with a scheduled link starts with it.
                const int nb = g_.other_end(ml, v);
                append_scheduled(n, v, ml, nb);
                send_req(v, nb, true, 1);
            } else if (g_.degree(v) > 0) {
                n.nodes.push_back(v);
                std::span<const int> inc = g_.incident(v);
                cand_.clear();
                for (int id : inc) cand_.push_back(g_.other_end(id, v));
                const int nb = rng_.draw_choice(v, cand_);
                send_req(v, nb, false, 1);
            } else {
                n.state = NodeState::Done;
            }
        }
        deliver(1);

        // Mini-slots 2..2k+1: path augmenting.
        for (int tau = 2; tau <= 2 * k_ + 1; ++tau) {
            const std::vector<int> actives = std::move(newly_active_);
            newly_active_.clear();
            for (int v : actives) extend_step(v, tau);
            deliver(tau);
        }
        for (int v = 0; v < g_.node_count(); ++v)
            if (ctx_[v].state == NodeState::Active) ctx_[v].state = NodeState::Done;

        check_cycles();
        return finish();
    }

private:
    bool distributed() const { return weights_ == nullptr; }

    double normalizer_of(int node) const { return (*normalizers_)[node]; }

    // Adds (or removes, with negate) link i's contribution to node v's gain
    // registers. The distributed reward term is normalized by v's current
    // local normalizer; the confidence term is unscaled.
    void accumulate(EngineNode& n, int owner_node, int link, double sign) {
        if (!distributed()) {
            n.gain += sign * (*weights_)[link];
            return;
        }
        const double norm = normalizer_of(owner_node);
        const double q = static_cast<double>((*stats_->frame_queue)[link]);
        const double ratio = norm > 0.0 ? q / norm : 1.0;
        n.gain_r += sign * ratio * stats_->mean_reward(link);
        n.gain_c += sign * stats_->confidence(link);
    }

    void append_scheduled(EngineNode& n, int v, int link, int nb) {
        if (n.nodes.empty()) n.nodes.push_back(v);
        n.links.push_back(link);
        n.nodes.push_back(nb);
        accumulate(n, v, link, -1.0);
    }

    void send_req(int from, int to, bool alt_flag, int tau) {
        EngineNode& n = ctx_[from];
        ReqMessage m;
        m.from = from;
        m.to = to;
        m.alt = alt_flag;
        m.z = n.z;
        m.z_cap = n.z_cap;
        m.gain = n.gain;
        m.gain_r = n.gain_r;
        m.gain_c = n.gain_c;
        if (distributed()) m.normalizer = normalizer_of(from);
        m.links = n.links;
        m.nodes = n.nodes;
        if (trace_)
            *trace_ << "tau=" << tau << " REQ " << from << "->" << to << " Z=" << m.z
                    << " G=" << (distributed() ? m.gain_r + m.gain_c : m.gain) << "\n";
        inbox_.push_back(std::move(m));
        n.state = NodeState::Wait;
    }

    void extend_step(int v, int tau) {
        EngineNode& n = ctx_[v];
        if (n.state != NodeState::Active) return;
        if (n.alt) {
            // Last added link is scheduled: extend with a fresh link to a
            // node outside the augmentation, if the size cap allows.
            cand_.clear();
            if (n.z < n.z_cap) {
                for (int id : g_.incident(v)) {
                    const int nb = g_.other_end(id, v);
                    if (std::find(n.nodes.begin(), n.nodes.end(), nb) == n.nodes.end())
                        cand_.push_back(nb);
                }
            }
            if (!cand_.empty()) {
                const int nb = rng_.draw_choice(v, cand_);
                send_req(v, nb, false, tau);
            } else {
                n.state = NodeState::Done;
            }
        } else {
            // Last link is new and not yet recorded: account for it, then
            // follow v's scheduled link if it has one.
            const int u = n.prev_active;
            const int nl = g_.link_between(u, v);
            accumulate(n, v, nl, +1.0);
            n.links.push_back(nl);
            n.nodes.push_back(v);
            n.z += 1;
            const int ml = s_prev_.node_link(v);
            if (ml != -1) {
                const int nb = g_.other_end(ml, v);
                append_scheduled(n, v, ml, nb);
                send_req(v, nb, true, tau);
            } else {
                n.state = NodeState::Done;
            }
        }
    }

    void deliver(int /*tau*/) {
        std::sort(inbox_.begin(), inbox_.end(),
                  [](const ReqMessage& a, const ReqMessage& b) {
                      return a.to != b.to ? a.to < b.to : a.from < b.from;
                  });
        acked_.assign(g_.node_count(), 0);
        for (size_t i = 0; i < inbox_.size();) {
            size_t j = i;
            while (j < inbox_.size() && inbox_[j].to == inbox_[i].to) ++j;
            const int r = inbox_[i].to;
            // A node ACKs a REQ only when idle and exactly one arrived.
            if (j - i == 1 && ctx_[r].state == NodeState::Null) {
                ReqMessage& m = inbox_[i];
                EngineNode& n = ctx_[r];
                n.alt = m.alt;
                n.z = m.z;
                n.z_cap = m.z_cap;
                n.gain = m.gain;
                n.gain_r = m.gain_r;
                n.gain_c = m.gain_c;
                n.prev_active = m.from;
                n.links = std::move(m.links);
                n.nodes = std::move(m.nodes);
                if (distributed()) {
                    double& mine = (*normalizers_)[r];
                    mine = std::max(mine, m.normalizer);
                    if (mine > 0.0) n.gain_r *= m.normalizer / mine;
                }
                n.state = NodeState::Active;
                newly_active_.push_back(r);
                acked_[m.from] = 1;
            }
            i = j;
        }
        inbox_.clear();
        for (int v = 0; v < g_.node_count(); ++v) {
            if (ctx_[v].state == NodeState::Wait)
                ctx_[v].state = acked_[v] ? NodeState::Used : NodeState::Done;
        }
        std::sort(newly_active_.begin(), newly_active_.end());
    }

    void check_cycles() {
        for (int v = 0; v < g_.node_count(); ++v) {
            EngineNode& n = ctx_[v];
            if (n.state != NodeState::Done || n.links.empty()) continue;
            // The terminus must be the walk's last node for a closing link
            // to complete a simple cycle.
            if (n.nodes.back() != v) continue;
            const int first = n.nodes.front();
            const int closing = g_.link_between(v, first);
            const bool a = closing != -1 &&
                           std::find(n.links.begin(), n.links.end(), closing) == n.links.end();
            const bool b =
                s_prev_.contains(n.links.front()) && s_prev_.contains(n.links.back());
            const bool c = n.z < n.z_cap;
            if (a && b && c) {
                accumulate(n, v, closing, +1.0);
                n.links.push_back(closing);
                n.z += 1;
                cycle_terminus_.push_back(v);
            }
        }
    }

    RoundResult finish() {
        RoundResult res;
        for (int v = 0; v < g_.node_count(); ++v) {
            EngineNode& n = ctx_[v];
            if (n.state != NodeState::Done || n.links.empty()) continue;
            Augmentation a;
            a.links = std::move(n.links);
            a.nodes = std::move(n.nodes);
            a.seed_node = a.nodes.front();
            a.terminus_node = v;
            a.size = n.z;
            a.size_cap = n.z_cap;
            a.is_cycle =
                std::find(cycle_terminus_.begin(), cycle_terminus_.end(), v) != cycle_terminus_.end();
            a.gain = n.gain;
            a.gain_reward = n.gain_r;
            a.gain_conf = n.gain_c;
            const double decision = distributed() ? n.gain_r + n.gain_c : n.gain;
            a.applied = decision > kWeightEps;
            res.augmentations.push_back(std::move(a));
        }
        res.schedule = apply_augmentations(s_prev_, res.augmentations);
        if (distributed()) {
            // Back-propagation: every node of an augmentation adopts the
            // terminus's normalizer (a running maximum, so writes use max).
            for (const Augmentation& a : res.augmentations) {
                const double qstar = (*normalizers_)[a.terminus_node];
                for (int node : a.nodes)
                    (*normalizers_)[node] = std::max((*normalizers_)[node], qstar);
            }
        }
        return res;
    }

    const NetworkGraph& g_;
    const Matching& s_prev_;
    double p_;
    int k_;
    RoundRng& rng_;
    const WeightVector* weights_;
    const DistributedLinkStats* stats_;
    std::vector<double>* normalizers_;
    std::ostream* trace_;
    std::vector<EngineNode> ctx_;
    std::vector<ReqMessage> inbox_;
    std::vector<int> newly_active_;
    std::vector<char> acked_;
    std::vector<int> cand_;
    std::vector<int> cycle_terminus_;
};

} // namespace detail

// One centralized augmentation round (4k+2 mini-slot protocol, simulated
// with synchronous message delivery): seeds with probability p, builds
// disjoint augmentations of s_prev under index weights w, applies every
// augmentation with positive gain.
inline RoundResult run_augmentation_round(const NetworkGraph& g, const Matching& s_prev,
                                          const WeightVector& w, double p, int k, RoundRng& rng,
                                          std::ostream* trace = nullptr) {
    detail::RoundEngine eng(g, s_prev, p, k, rng, &w, nullptr, nullptr, trace);
    return eng.run();
}

// Distributed round: REQ messages additionally carry the sender's local
// normalizer, gains travel as a (reward, confidence) pair with the reward
// part rescaled on receipt, and back-propagation equalizes normalizers
// within each augmentation. Applies an augmentation iff G'1 + G'2 > 0.
inline RoundResult run_augmentation_round_distributed(const NetworkGraph& g,
                                                      const Matching& s_prev,
                                                      const DistributedLinkStats& stats,
                                                      std::vector<double>& normalizers,
                                                      double p, int k, RoundRng& rng,
                                                      std::ostream* trace = nullptr) {
    detail::RoundEngine eng(g, s_prev, p, k, rng, nullptr, &stats, &normalizers, trace);
    return eng.run();
}

} // namespace akucb

#endif
