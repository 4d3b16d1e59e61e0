#ifndef AKUCB_POLICY_HPP
#define AKUCB_POLICY_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "akucb/bandit.hpp"
#include "akucb/graph.hpp"
#include "akucb/matching_ops.hpp"
#include "akucb/mwm.hpp"
#include "akucb/protocol.hpp"
#include "akucb/traffic.hpp"

namespace akucb {

enum class PolicyType { AkUcb, DistAkUcb, UcbGmm, MwmGenie };

struct PolicySpec {
    PolicyType type = PolicyType::AkUcb;
    int k = 3;       // augmentation size bound (AkUcb / DistAkUcb)
    double p = 0.2;  // seed probability

    std::string name() const {
        switch (type) {
        case PolicyType::AkUcb: return "akucb_k" + std::to_string(k);
        case PolicyType::DistAkUcb: return "dakucb_k" + std::to_string(k);
        case PolicyType::UcbGmm: return "gmm";
        case PolicyType::MwmGenie: return "mwm";
        }
        return "?";
    }

    // Approximation target: (k-1)/(k+1) for the augmentation schemes, the
    // greedy 1/2 for GMM, 1 for the exact baseline.
    double alpha() const {
        switch (type) {
        case PolicyType::AkUcb:
        case PolicyType::DistAkUcb:
            return static_cast<double>(k - 1) / static_cast<double>(k + 1);
        case PolicyType::UcbGmm: return 0.5;
        case PolicyType::MwmGenie: return 1.0;
        }
        return 1.0;
    }

    void validate() const {
        if (type == PolicyType::AkUcb || type == PolicyType::DistAkUcb) {
            if (k < 2) throw std::invalid_argument("k must be >= 2");
            if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must be in (0,1)");
        }
    }
};

struct RunToggles {
    bool reset_schedule_each_frame = true; // s_prev := empty at frame starts
    bool draw_service_when_empty = true;
};

// Per-run scheduling state machine. Frame-based policies share the same
// skeleton: snapshot queues at the frame boundary, warm up for |L| slots,
// then schedule by UCB index.
class PolicyRunner {
public:
    PolicyRunner(const NetworkGraph& g, PolicySpec spec, long frame_length,
                 RunToggles toggles = {})
        : g_(g), spec_(spec), frame_(FrameContext{frame_length}), toggles_(toggles),
          bandit_(g.link_count()), s_prev_(g), schedule_(g) {
        spec_.validate();
        if (frame_length < 1) throw std::invalid_argument("frame length must be >= 1");
        if (spec_.type != PolicyType::MwmGenie) {
            warmups_ = warmup_schedules(g);
            if (frame_length < g.link_count())
                throw std::invalid_argument("frame shorter than warm-up period");
        }
    }

    const PolicySpec& spec() const { return spec_; }
    const LinkBanditState& bandit() const { return bandit_; }
    const std::vector<double>& normalizers() const { return normalizers_; }

    // Computes the schedule for global slot t (1-based). mu is only read by
    // the genie baseline.
    const Matching& next_schedule(long t, const QueueState& queues, const WeightVector& mu,
                                  uint64_t run_seed) {
        if (spec_.type == PolicyType::MwmGenie) {
            WeightVector w(g_.link_count());
            for (int i = 0; i < g_.link_count(); ++i)
                w[i] = static_cast<double>(queues.q[i]) * mu[i];
            schedule_ = max_weight_matching(g_, w).first;
            return schedule_;
        }

        if (frame_.is_frame_start(t)) {
            bandit_.reset_frame(queues.q);
            if (toggles_.reset_schedule_each_frame || t == 1) s_prev_.clear();
            if (spec_.type == PolicyType::DistAkUcb)
                normalizers_ = bandit_.initial_normalizers(g_);
        }

        const long tf = frame_.slot_in_frame(t);
        if (tf <= g_.link_count()) {
            schedule_ = warmups_[tf - 1];
            // With per-frame resets the augmentation chain follows the
            // transmitted warm-up schedule; otherwise it persists across
            // the frame boundary.
            if (toggles_.reset_schedule_each_frame) s_prev_ = schedule_;
            return schedule_;
        }

        switch (spec_.type) {
        case PolicyType::AkUcb: {
            const WeightVector idx = bandit_.ucb_index_vector(tf);
            HashedRoundRng rng(run_seed, t, g_.node_count());
            RoundResult res = run_augmentation_round(g_, s_prev_, idx, spec_.p, spec_.k, rng);
            s_prev_ = std::move(res.schedule);
            schedule_ = s_prev_;
            break;
        }
        case PolicyType::DistAkUcb: {
            const DistributedLinkStats view = bandit_.distributed_view(tf);
            HashedRoundRng rng(run_seed, t, g_.node_count());
            RoundResult res = run_augmentation_round_distributed(g_, s_prev_, view, normalizers_,
                                                                 spec_.p, spec_.k, rng);
            s_prev_ = std::move(res.schedule);
            schedule_ = s_prev_;
            break;
        }
        case PolicyType::UcbGmm: {
            const WeightVector idx = bandit_.greedy_rank_vector(tf);
            schedule_ = greedy_matching(g_, idx);
            break;
        }
        case PolicyType::MwmGenie: break; // handled above
        }
        return schedule_;
    }

    // Feeds the slot's service observations back into the learner.
    void observe(const ServiceOutcomes& x) {
        if (spec_.type == PolicyType::MwmGenie) return;
        for (int id : schedule_.links())
            if (x[id] >= 0) bandit_.record_play(id, static_cast<double>(x[id]));
    }

private:
    const NetworkGraph& g_;
    PolicySpec spec_;
    FrameContext frame_;
    RunToggles toggles_;
    LinkBanditState bandit_;
    Matching s_prev_;
    Matching schedule_;
    std::vector<Matching> warmups_;
    std::vector<double> normalizers_;
};

} // namespace akucb

#endif
