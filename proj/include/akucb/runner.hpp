#ifndef AKUCB_RUNNER_HPP
#define AKUCB_RUNNER_HPP

#include <atomic>
#include <cstdio>
#include <fstream>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "akucb/config.hpp"
#include "akucb/metrics.hpp"
#include "akucb/policy.hpp"
#include "akucb/traffic.hpp"

namespace akucb {

struct StabilityRow {
    std::string policy;
    double lambda = 0.0;
    long frame_length = 0;
    int run = 0;
    long long end_total_queue = 0;
};

struct RegretRow {
    std::string policy;
    int run = 0;
    long frame = 0;
    long t = 0;
    double regret = 0.0;
    double alpha_regret = 0.0;
    double normalized_regret = 0.0;
};

struct TraceRow {
    std::string policy;
    double lambda = 0.0;
    int run = 0;
    long t = 0;
    long long total_queue = 0;
};

struct ExperimentResult {
    std::vector<StabilityRow> stability;
    std::vector<RegretRow> regret;
    std::vector<TraceRow> trace;
};

namespace detail {

// One (policy, lambda-or-frame sweep point, run) simulation job.
struct Job {
    PolicySpec policy;
    double lambda = 0.0;      // sweep value recorded in output rows
    long frame_length = 0;
    int run = 0;
    TrafficModel traffic;
    std::vector<long long> initial_queues;
};

struct JobOutput {
    StabilityRow stability;
    std::vector<RegretRow> regret;
    std::vector<TraceRow> trace;
};

inline JobOutput run_job(const ExperimentConfig& cfg, const NetworkGraph& g, const Job& job,
                         long horizon) {
    const uint64_t run_seed = derive_seed(cfg.seed, 0x52554eull /*"RUN"*/, job.run);
    PolicyRunner policy(g, job.policy, job.frame_length, cfg.toggles);
    QueueState queues;
    queues.q = job.initial_queues;
    FrameContext frame{job.frame_length};
    RegretAccumulator regret;
    const std::vector<long> checkpoints = regret_checkpoints(job.frame_length);
    WeightVector true_w;
    ServiceOutcomes x;
    JobOutput out;

    for (long t = 1; t <= horizon; ++t) {
        if (cfg.output.regret && frame.is_frame_start(t)) {
            true_w = true_weight_vector(queues.q, job.traffic.service_prob);
            regret.reset_frame(max_weight_matching(g, true_w).second);
        }
        const Matching& schedule = policy.next_schedule(t, queues, job.traffic.service_prob,
                                                        run_seed);
        if (cfg.output.regret) {
            regret.record(weight_sum(schedule, true_w));
            const long tf = frame.slot_in_frame(t);
            const bool at_checkpoint =
                std::find(checkpoints.begin(), checkpoints.end(), tf) != checkpoints.end();
            if (at_checkpoint || t == horizon) {
                RegretRow row;
                row.policy = job.policy.name();
                row.run = job.run;
                row.frame = frame.frame_index(t);
                row.t = tf;
                row.regret = regret.regret(1.0);
                row.alpha_regret = regret.regret(job.policy.alpha());
                row.normalized_regret = regret.normalized_regret(1.0);
                out.regret.push_back(std::move(row));
            }
        }
        step_queues(queues, schedule, job.traffic, run_seed, t, x,
                    cfg.toggles.draw_service_when_empty);
        policy.observe(x);
        if (cfg.output.queue_trace && (t % cfg.output.trace_stride == 0 || t == horizon)) {
            out.trace.push_back(
                {job.policy.name(), job.lambda, job.run, t, queues.total()});
        }
    }

    out.stability.policy = job.policy.name();
    out.stability.lambda = job.lambda;
    out.stability.frame_length = job.frame_length;
    out.stability.run = job.run;
    out.stability.end_total_queue = queues.total();
    return out;
}

} // namespace detail

inline NetworkGraph build_topology(const ExperimentConfig& cfg) {
    const TopologySpec& t = cfg.topology;
    if (t.kind == "grid") return grid_topology(t.rows, t.cols);
    if (t.kind == "ring") return ring_topology(t.nodes);
    if (t.kind == "random")
        return random_topology(t.n_nodes, t.n_links, derive_seed(cfg.seed, 0x544f504full));
    std::ifstream in(t.path);
    if (!in) throw std::runtime_error("cannot open edge list: " + t.path);
    return read_edge_list(in);
}

// Runs all (policy, sweep point, run) jobs; parallelism never changes the
// output because every job derives its randomness from (seed, run) and
// results are emitted in job order.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const NetworkGraph g = build_topology(cfg);
    const uint64_t rate_seed = derive_seed(cfg.seed, 0x5241544553ull /*"RATES"*/);

    std::vector<long> frames = cfg.frame_sweep;
    if (frames.empty()) frames.push_back(cfg.frame_length);
    std::vector<double> sweep = cfg.traffic.lambda_sweep;
    if (sweep.empty()) {
        if (cfg.traffic.kind == "uniform") sweep.push_back(cfg.traffic.lambda);
        else if (cfg.traffic.kind == "ring") sweep.push_back(1.0 / 6.0 + cfg.traffic.epsilon);
        else sweep.push_back(cfg.traffic.lambda_scale);
    }

    std::vector<detail::Job> jobs;
    std::vector<long> horizons;
    for (long fl : frames) {
        const long horizon = cfg.horizon == 0 ? 10 * fl : cfg.horizon;
        for (double sweep_value : sweep) {
            TrafficModel tm;
            std::vector<long long> q0(g.link_count(), 0);
            if (cfg.traffic.kind == "uniform") {
                tm = make_grid_experiment_traffic(g.link_count(), sweep_value, rate_seed);
            } else if (cfg.traffic.kind == "ring") {
                RingExperiment re = make_ring_experiment(sweep_value - 1.0 / 6.0);
                tm = re.traffic;
                // Staircase initial queues scale with the frame length.
                for (int i = 0; i < g.link_count(); ++i) {
                    const long long base[6] = {3, 2, 1, 3, 2, 1};
                    q0[i] = base[i % 6] * fl / 6;
                }
            } else {
                Rng mu_rng(derive_seed(rate_seed, static_cast<uint64_t>(StreamTag::Rates), 0));
                Rng rho_rng(derive_seed(rate_seed, static_cast<uint64_t>(StreamTag::Rates), 1));
                tm.service_prob.resize(g.link_count());
                tm.arrival_prob.resize(g.link_count());
                for (int i = 0; i < g.link_count(); ++i) {
                    tm.service_prob[i] = mu_rng.next_uniform(0.25, 0.75);
                    tm.arrival_prob[i] = sweep_value * rho_rng.next_uniform(0.4, 0.7);
                }
            }
            tm.validate(g.link_count());
            for (const PolicySpec& pol : cfg.policies)
                for (int run = 0; run < cfg.runs; ++run) {
                    detail::Job j;
                    j.policy = pol;
                    j.lambda = sweep_value;
                    j.frame_length = fl;
                    j.run = run;
                    j.traffic = tm;
                    j.initial_queues = q0;
                    jobs.push_back(std::move(j));
                    horizons.push_back(horizon);
                }
        }
    }

    std::vector<detail::JobOutput> outputs(jobs.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const size_t i = next.fetch_add(1);
            if (i >= jobs.size()) break;
            outputs[i] = detail::run_job(cfg, g, jobs[i], horizons[i]);
        }
    };
    const int nthreads = std::min<int>(cfg.parallel, static_cast<int>(jobs.size()));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }

    ExperimentResult res;
    for (detail::JobOutput& o : outputs) {
        if (cfg.output.stability) res.stability.push_back(std::move(o.stability));
        for (RegretRow& r : o.regret) res.regret.push_back(std::move(r));
        for (TraceRow& r : o.trace) res.trace.push_back(std::move(r));
    }
    return res;
}

namespace detail {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

} // namespace detail

// CSV artifacts under out_dir, plus a copy of the effective config.
inline std::vector<std::string> write_experiment_csvs(const ExperimentConfig& cfg,
                                                      const ExperimentResult& res,
                                                      const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<std::string> written;
    auto open = [&](const std::string& file) {
        std::ofstream os(fs::path(out_dir) / file, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + file);
        written.push_back((fs::path(out_dir) / file).string());
        return os;
    };

    {
        std::ofstream os = open(cfg.name + "_config.txt");
        write_config(os, cfg);
    }
    if (cfg.output.stability) {
        std::ofstream os = open(cfg.name + "_stability.csv");
        const bool sweep_frames = !cfg.frame_sweep.empty();
        os << (sweep_frames ? "policy,frame_length,lambda,run,end_total_queue\n"
                            : "policy,lambda,run,end_total_queue\n");
        for (const StabilityRow& r : res.stability) {
            os << r.policy << ",";
            if (sweep_frames) os << r.frame_length << ",";
            os << detail::fmt_double(r.lambda) << "," << r.run << "," << r.end_total_queue
               << "\n";
        }
    }
    if (cfg.output.regret) {
        // One file per policy; schema (run, frame, t, ...) per file.
        for (const PolicySpec& pol : cfg.policies) {
            std::ofstream os = open(cfg.name + "_" + pol.name() + "_regret.csv");
            os << "run,frame,t,regret,alpha_regret,normalized_regret\n";
            for (const RegretRow& r : res.regret) {
                if (r.policy != pol.name()) continue;
                os << r.run << "," << r.frame << "," << r.t << ","
                   << detail::fmt_double(r.regret) << "," << detail::fmt_double(r.alpha_regret)
                   << "," << detail::fmt_double(r.normalized_regret) << "\n";
            }
        }
    }
    if (cfg.output.queue_trace) {
        std::ofstream os = open(cfg.name + "_trace.csv");
        os << "policy,lambda,run,t,total_queue\n";
        for (const TraceRow& r : res.trace)
            os << r.policy << "," << detail::fmt_double(r.lambda) << "," << r.run << "," << r.t
               << "," << r.total_queue << "\n";
    }
    return written;
}

// Mean end-of-run total queue over runs for one (policy, lambda) pair.
inline double mean_end_queue(const ExperimentResult& res, const std::string& policy,
                             double lambda) {
    double sum = 0.0;
    int n = 0;
    for (const StabilityRow& r : res.stability)
        if (r.policy == policy && r.lambda == lambda) {
            sum += static_cast<double>(r.end_total_queue);
            ++n;
        }
    if (n == 0) throw std::invalid_argument("no stability rows for " + policy);
    return sum / n;
}

inline void print_summary(std::ostream& os, const ExperimentConfig& cfg,
                          const ExperimentResult& res) {
    os << "experiment " << cfg.name << ": " << res.stability.size() << " stability rows, "
       << res.regret.size() << " regret rows, " << res.trace.size() << " trace rows\n";
    if (!res.stability.empty()) {
        os << "policy          lambda     frame      mean_end_queue\n";
        for (size_t i = 0; i < res.stability.size();) {
            const StabilityRow& r = res.stability[i];
            double sum = 0.0;
            size_t j = i;
            while (j < res.stability.size() && res.stability[j].policy == r.policy &&
                   res.stability[j].lambda == r.lambda &&
                   res.stability[j].frame_length == r.frame_length) {
                sum += static_cast<double>(res.stability[j].end_total_queue);
                ++j;
            }
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%-15s %-10.4g %-10ld %.1f\n", r.policy.c_str(),
                          r.lambda, r.frame_length, sum / static_cast<double>(j - i));
            os << buf;
            i = j;
        }
    }
}

} // namespace akucb

#endif
