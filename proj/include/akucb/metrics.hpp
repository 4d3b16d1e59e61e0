#ifndef AKUCB_METRICS_HPP
#define AKUCB_METRICS_HPP

#include <stdexcept>
#include <vector>

#include "akucb/matching_ops.hpp"

namespace akucb {

// Frame-scoped regret bookkeeping. r* is the exact optimum under the true
// (genie) weights frozen at the frame start; schedules are valued with the
// same true weights while the policy itself runs on indices. Reset at every
// frame boundary.
class RegretAccumulator {
public:
    void reset_frame(double r_star) {
        r_star_ = r_star;
        accum_ = 0.0;
        slots_ = 0;
    }

    // Records r_w(S_t) for the next slot of the frame.
    void record(double schedule_true_weight) {
        accum_ += schedule_true_weight;
        slots_ += 1;
    }

    long slots() const { return slots_; }
    double r_star() const { return r_star_; }
    double mean_schedule_weight() const { return slots_ ? accum_ / slots_ : 0.0; }

    // Reg^alpha(t) = t * alpha * r* - sum of schedule weights.
    double regret(double alpha) const {
        return static_cast<double>(slots_) * alpha * r_star_ - accum_;
    }

    double normalized_regret(double alpha) const {
        if (r_star_ <= 0.0) return 0.0;
        return regret(alpha) / r_star_;
    }

private:
    double r_star_ = 0.0;
    double accum_ = 0.0;
    long slots_ = 0;
};

// Logarithmically spaced in-frame checkpoints {100, 1000, ...} plus the
// frame end; keeps regret CSVs small over long frames.
inline std::vector<long> regret_checkpoints(long frame_length) {
    std::vector<long> cps;
    for (long c = 100; c < frame_length; c *= 10) cps.push_back(c);
    if (cps.empty() || cps.back() != frame_length) cps.push_back(frame_length);
    return cps;
}

// End-of-run queue aggregates for stability sweeps.
struct QueueStats {
    long long end_total = 0;
    long long end_max = 0;
};

inline double mean_end_total(const std::vector<QueueStats>& runs) {
    if (runs.empty()) throw std::invalid_argument("no runs");
    double s = 0.0;
    for (const QueueStats& r : runs) s += static_cast<double>(r.end_total);
    return s / static_cast<double>(runs.size());
}

} // namespace akucb

#endif
