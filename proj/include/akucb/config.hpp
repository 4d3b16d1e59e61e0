#ifndef AKUCB_CONFIG_HPP
#define AKUCB_CONFIG_HPP

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "akucb/policy.hpp"

namespace akucb {

struct TopologySpec {
    std::string kind = "grid"; // grid | ring | random | edge_list
    int rows = 4, cols = 4;    // grid
    int nodes = 6;             // ring
    int n_nodes = 50, n_links = 200; // random
    std::string path;          // edge_list file
};

struct TrafficSpec {
    std::string kind = "uniform"; // uniform | ring | random_scaled
    double lambda = 0.08;         // uniform: identical arrival rate
    double epsilon = 0.08;        // ring: lambda = 1/6 + epsilon
    double lambda_scale = 0.4;    // random_scaled: lambda_i = scale * rho_i
    std::vector<double> lambda_sweep; // one experiment combo per value
};

struct OutputSpec {
    bool stability = true;
    bool regret = false;
    bool queue_trace = false;
    long trace_stride = 1000;
};

struct ExperimentConfig {
    int schema_version = 1;
    std::string name = "experiment";
    uint64_t seed = 1;
    int runs = 1;
    long horizon = 10000;      // 0: use 10 * frame_length
    long frame_length = 5000;
    int parallel = 1;
    std::vector<long> frame_sweep; // optional frame-length sweep
    std::vector<PolicySpec> policies;
    TopologySpec topology;
    TrafficSpec traffic;
    OutputSpec output;
    RunToggles toggles;

    void validate() const {
        if (schema_version != 1) throw std::invalid_argument("unsupported schema_version");
        if (runs < 1) throw std::invalid_argument("runs must be >= 1");
        if (frame_length < 1) throw std::invalid_argument("frame_length must be >= 1");
        if (horizon < 0) throw std::invalid_argument("horizon must be >= 0");
        if (parallel < 1) throw std::invalid_argument("parallel must be >= 1");
        if (policies.empty()) throw std::invalid_argument("at least one policy required");
        for (const PolicySpec& p : policies) p.validate();
        if (topology.kind != "grid" && topology.kind != "ring" && topology.kind != "random" &&
            topology.kind != "edge_list")
            throw std::invalid_argument("unknown topology kind: " + topology.kind);
        if (traffic.kind != "uniform" && traffic.kind != "ring" && traffic.kind != "random_scaled")
            throw std::invalid_argument("unknown traffic kind: " + traffic.kind);
        if (traffic.kind == "ring" && topology.kind != "ring")
            throw std::invalid_argument("ring traffic needs the ring topology");
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream iss(s);
    std::vector<std::string> out;
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

inline bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("expected boolean, got: " + v);
}

inline PolicySpec parse_policy(const std::string& text) {
    const std::vector<std::string> toks = split_ws(text);
    if (toks.empty()) throw std::invalid_argument("empty policy spec");
    PolicySpec p;
    if (toks[0] == "akucb") p.type = PolicyType::AkUcb;
    else if (toks[0] == "dakucb") p.type = PolicyType::DistAkUcb;
    else if (toks[0] == "gmm") p.type = PolicyType::UcbGmm;
    else if (toks[0] == "mwm") p.type = PolicyType::MwmGenie;
    else throw std::invalid_argument("unknown policy: " + toks[0]);
    for (size_t i = 1; i < toks.size(); ++i) {
        const size_t eq = toks[i].find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad policy option: " + toks[i]);
        const std::string key = toks[i].substr(0, eq);
        const std::string val = toks[i].substr(eq + 1);
        if (key == "k") p.k = std::stoi(val);
        else if (key == "p") p.p = std::stod(val);
        else throw std::invalid_argument("unknown policy option: " + key);
    }
    return p;
}

inline std::string policy_to_text(const PolicySpec& p) {
    std::ostringstream os;
    switch (p.type) {
    case PolicyType::AkUcb: os << "akucb k=" << p.k << " p=" << p.p; break;
    case PolicyType::DistAkUcb: os << "dakucb k=" << p.k << " p=" << p.p; break;
    case PolicyType::UcbGmm: os << "gmm"; break;
    case PolicyType::MwmGenie: os << "mwm"; break;
    }
    return os.str();
}

} // namespace detail

// Applies one "key=value" (or "section.key=value") assignment.
inline void apply_config_entry(ExperimentConfig& cfg, const std::string& section,
                               const std::string& key, const std::string& value) {
    using detail::parse_bool;
    const std::string k = section.empty() ? key : section + "." + key;
    if (k == "schema_version") cfg.schema_version = std::stoi(value);
    else if (k == "name") cfg.name = value;
    else if (k == "seed") cfg.seed = std::stoull(value);
    else if (k == "runs") cfg.runs = std::stoi(value);
    else if (k == "horizon") cfg.horizon = std::stol(value);
    else if (k == "frame_length") cfg.frame_length = std::stol(value);
    else if (k == "parallel") cfg.parallel = std::stoi(value);
    else if (k == "frame_sweep") {
        cfg.frame_sweep.clear();
        for (const std::string& t : detail::split_ws(value)) cfg.frame_sweep.push_back(std::stol(t));
    } else if (k == "topology.kind") cfg.topology.kind = value;
    else if (k == "topology.rows") cfg.topology.rows = std::stoi(value);
    else if (k == "topology.cols") cfg.topology.cols = std::stoi(value);
    else if (k == "topology.nodes") cfg.topology.nodes = std::stoi(value);
    else if (k == "topology.n_nodes") cfg.topology.n_nodes = std::stoi(value);
    else if (k == "topology.n_links") cfg.topology.n_links = std::stoi(value);
    else if (k == "topology.path") cfg.topology.path = value;
    else if (k == "traffic.kind") cfg.traffic.kind = value;
    else if (k == "traffic.lambda") cfg.traffic.lambda = std::stod(value);
    else if (k == "traffic.epsilon") cfg.traffic.epsilon = std::stod(value);
    else if (k == "traffic.lambda_scale") cfg.traffic.lambda_scale = std::stod(value);
    else if (k == "traffic.lambda_sweep") {
        cfg.traffic.lambda_sweep.clear();
        for (const std::string& t : detail::split_ws(value))
            cfg.traffic.lambda_sweep.push_back(std::stod(t));
    } else if (k == "policies.policy") cfg.policies.push_back(detail::parse_policy(value));
    else if (k == "policies") {
        cfg.policies.clear();
        std::istringstream iss(value);
        std::string part;
        while (std::getline(iss, part, ';')) {
            part = detail::trim(part);
            if (!part.empty()) cfg.policies.push_back(detail::parse_policy(part));
        }
    } else if (k == "output.stability") cfg.output.stability = parse_bool(value);
    else if (k == "output.regret") cfg.output.regret = parse_bool(value);
    else if (k == "output.queue_trace") cfg.output.queue_trace = parse_bool(value);
    else if (k == "output.trace_stride") cfg.output.trace_stride = std::stol(value);
    else if (k == "toggles.reset_schedule_each_frame")
        cfg.toggles.reset_schedule_each_frame = parse_bool(value);
    else if (k == "toggles.draw_service_when_empty")
        cfg.toggles.draw_service_when_empty = parse_bool(value);
    else throw std::invalid_argument("unknown config key: " + k);
}

// Key/value text with [section] headers; '#' starts a comment. Repeated
// "policy =" lines inside [policies] append.
inline ExperimentConfig parse_config(std::istream& is) {
    ExperimentConfig cfg;
    cfg.policies.clear();
    std::string line, section;
    while (std::getline(is, line)) {
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = detail::trim(line.substr(1, line.size() - 2));
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("expected key = value: " + line);
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        apply_config_entry(cfg, section, key, value);
    }
    cfg.validate();
    return cfg;
}

inline void write_config(std::ostream& os, const ExperimentConfig& cfg) {
    os << "schema_version = " << cfg.schema_version << "\n";
    os << "name = " << cfg.name << "\n";
    os << "seed = " << cfg.seed << "\n";
    os << "runs = " << cfg.runs << "\n";
    os << "horizon = " << cfg.horizon << "\n";
    os << "frame_length = " << cfg.frame_length << "\n";
    os << "parallel = " << cfg.parallel << "\n";
    if (!cfg.frame_sweep.empty()) {
        os << "frame_sweep =";
        for (long t : cfg.frame_sweep) os << " " << t;
        os << "\n";
    }
    os << "[topology]\n";
    os << "kind = " << cfg.topology.kind << "\n";
    if (cfg.topology.kind == "grid")
        os << "rows = " << cfg.topology.rows << "\ncols = " << cfg.topology.cols << "\n";
    else if (cfg.topology.kind == "ring")
        os << "nodes = " << cfg.topology.nodes << "\n";
    else if (cfg.topology.kind == "random")
        os << "n_nodes = " << cfg.topology.n_nodes << "\nn_links = " << cfg.topology.n_links
           << "\n";
    else
        os << "path = " << cfg.topology.path << "\n";
    os << "[traffic]\n";
    os << "kind = " << cfg.traffic.kind << "\n";
    if (cfg.traffic.kind == "uniform") os << "lambda = " << cfg.traffic.lambda << "\n";
    if (cfg.traffic.kind == "ring") os << "epsilon = " << cfg.traffic.epsilon << "\n";
    if (cfg.traffic.kind == "random_scaled")
        os << "lambda_scale = " << cfg.traffic.lambda_scale << "\n";
    if (!cfg.traffic.lambda_sweep.empty()) {
        os << "lambda_sweep =";
        for (double v : cfg.traffic.lambda_sweep) os << " " << v;
        os << "\n";
    }
    os << "[policies]\n";
    for (const PolicySpec& p : cfg.policies) os << "policy = " << detail::policy_to_text(p) << "\n";
    os << "[output]\n";
    os << "stability = " << (cfg.output.stability ? "true" : "false") << "\n";
    os << "regret = " << (cfg.output.regret ? "true" : "false") << "\n";
    os << "queue_trace = " << (cfg.output.queue_trace ? "true" : "false") << "\n";
    os << "trace_stride = " << cfg.output.trace_stride << "\n";
    os << "[toggles]\n";
    os << "reset_schedule_each_frame = "
       << (cfg.toggles.reset_schedule_each_frame ? "true" : "false") << "\n";
    os << "draw_service_when_empty = "
       << (cfg.toggles.draw_service_when_empty ? "true" : "false") << "\n";
}

// Preset experiments. Paper-scale presets carry the full horizons; _desk
// variants are the CI-sized versions.
inline std::vector<std::string> preset_names() {
    return {"fig_regret_grid",    "fig_regret_grid_desk", "fig_stability_grid",
            "fig_stability_grid_desk", "fig_frame_sweep",  "fig_frame_sweep_desk",
            "fig_ring",           "fig_ring_desk",        "fig_random_network",
            "fig_random_network_desk"};
}

inline ExperimentConfig make_preset(const std::string& name) {
    ExperimentConfig cfg;
    cfg.policies.clear();
    cfg.name = name;
    cfg.seed = 20240817;
    auto pol = [](PolicyType t, int k = 3, double p = 0.2) {
        PolicySpec s;
        s.type = t;
        s.k = k;
        s.p = p;
        return s;
    };

    if (name == "fig_regret_grid" || name == "fig_regret_grid_desk") {
        cfg.topology.kind = "grid";
        cfg.traffic.kind = "uniform";
        cfg.traffic.lambda = 0.08;
        cfg.runs = 10;
        cfg.frame_length = name == "fig_regret_grid" ? 1000000 : 100000;
        cfg.horizon = cfg.frame_length; // one frame
        cfg.policies = {pol(PolicyType::AkUcb, 2), pol(PolicyType::AkUcb, 3),
                        pol(PolicyType::AkUcb, 4), pol(PolicyType::DistAkUcb, 3)};
        cfg.output.stability = false;
        cfg.output.regret = true;
    } else if (name == "fig_stability_grid" || name == "fig_stability_grid_desk") {
        cfg.topology.kind = "grid";
        cfg.traffic.kind = "uniform";
        cfg.frame_length = 5000;
        if (name == "fig_stability_grid") {
            cfg.horizon = 1000000;
            cfg.runs = 10;
            cfg.traffic.lambda_sweep = {0.07, 0.074, 0.078, 0.082, 0.084,
                                        0.086, 0.088, 0.09, 0.092, 0.095};
            cfg.policies = {pol(PolicyType::MwmGenie), pol(PolicyType::UcbGmm),
                            pol(PolicyType::AkUcb, 2), pol(PolicyType::AkUcb, 3),
                            pol(PolicyType::AkUcb, 4), pol(PolicyType::DistAkUcb, 3)};
        } else {
            cfg.horizon = 200000;
            cfg.runs = 5;
            cfg.traffic.lambda_sweep = {0.07, 0.088, 0.095};
            cfg.policies = {pol(PolicyType::MwmGenie), pol(PolicyType::AkUcb, 3),
                            pol(PolicyType::DistAkUcb, 3)};
        }
        cfg.output.stability = true;
    } else if (name == "fig_frame_sweep" || name == "fig_frame_sweep_desk") {
        cfg.topology.kind = "grid";
        cfg.traffic.kind = "uniform";
        cfg.horizon = 0; // 10 frames per sweep point
        if (name == "fig_frame_sweep") {
            cfg.runs = 10;
            cfg.frame_sweep = {5000, 50000, 500000, 1000000, 2000000};
            cfg.traffic.lambda_sweep = {0.078, 0.082, 0.084, 0.086, 0.09};
        } else {
            cfg.runs = 3;
            cfg.frame_sweep = {2000, 5000, 20000};
            cfg.traffic.lambda_sweep = {0.082, 0.086};
        }
        cfg.policies = {pol(PolicyType::AkUcb, 3)};
        cfg.output.stability = true;
    } else if (name == "fig_ring" || name == "fig_ring_desk") {
        cfg.topology.kind = "ring";
        cfg.topology.nodes = 6;
        cfg.traffic.kind = "ring";
        cfg.traffic.epsilon = 0.08;
        cfg.frame_length = 6000;
        if (name == "fig_ring") {
            cfg.horizon = 3000000;
            cfg.runs = 10;
        } else {
            cfg.horizon = 300000;
            cfg.runs = 5;
        }
        cfg.policies = {pol(PolicyType::AkUcb, 3), pol(PolicyType::DistAkUcb, 3),
                        pol(PolicyType::UcbGmm)};
        cfg.output.stability = true;
        cfg.output.queue_trace = true;
    } else if (name == "fig_random_network" || name == "fig_random_network_desk") {
        cfg.topology.kind = "random";
        cfg.topology.n_nodes = 50;
        cfg.topology.n_links = 200;
        cfg.traffic.kind = "random_scaled";
        cfg.frame_length = 500;
        if (name == "fig_random_network") {
            cfg.horizon = 500000;
            cfg.runs = 10;
            cfg.traffic.lambda_sweep = {0.30, 0.35, 0.40, 0.45, 0.50};
        } else {
            cfg.horizon = 50000;
            cfg.runs = 3;
            cfg.traffic.lambda_sweep = {0.40};
        }
        cfg.policies = {pol(PolicyType::UcbGmm), pol(PolicyType::DistAkUcb, 3),
                        pol(PolicyType::DistAkUcb, 6), pol(PolicyType::DistAkUcb, 9)};
        cfg.output.stability = true;
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    cfg.validate();
    return cfg;
}

} // namespace akucb

#endif
