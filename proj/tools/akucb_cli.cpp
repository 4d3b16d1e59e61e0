// Command-line front end: run experiments from config files or presets,
// list presets, and run the library self-check.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "akucb/config.hpp"
#include "akucb/runner.hpp"
#include "akucb/selfcheck.hpp"

namespace {

struct CommonOpts {
    std::string out_dir = "out";
    uint64_t seed = 0;
    bool seed_set = false;
    int runs = 0;
    int parallel = 0;
};

int execute(akucb::ExperimentConfig cfg, const CommonOpts& opts) {
    if (opts.seed_set) cfg.seed = opts.seed;
    if (opts.runs > 0) cfg.runs = opts.runs;
    if (opts.parallel > 0) cfg.parallel = opts.parallel;
    cfg.validate();
    const akucb::ExperimentResult res = akucb::run_experiment(cfg);
    const std::vector<std::string> files = akucb::write_experiment_csvs(cfg, res, opts.out_dir);
    akucb::print_summary(std::cout, cfg, res);
    for (const std::string& f : files) std::cout << "wrote " << f << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Augmentation-based UCB link scheduling simulator"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string config_path;
    std::string preset_name;
    std::vector<std::string> overrides;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out-dir", opts.out_dir, "output directory for CSV artifacts");
        cmd->add_option("--seed", opts.seed, "master seed override")
            ->each([&](const std::string&) { opts.seed_set = true; });
        cmd->add_option("--runs", opts.runs, "number of runs override");
        cmd->add_option("--parallel", opts.parallel, "worker threads (run-level parallelism)");
    };

    CLI::App* run = app.add_subcommand("run", "run an experiment from a config file");
    run->add_option("config", config_path, "config file path")->required();
    add_common(run);

    CLI::App* preset = app.add_subcommand("preset", "run a named preset experiment");
    preset->add_option("name", preset_name, "preset name (see list-presets)")->required();
    preset->add_option("--override", overrides, "config override key=value (repeatable)");
    add_common(preset);

    CLI::App* list = app.add_subcommand("list-presets", "list preset experiment names");
    CLI::App* checkcmd = app.add_subcommand("check", "run the invariant/oracle self-check");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const std::string& n : akucb::preset_names()) std::cout << n << "\n";
            return 0;
        }
        if (checkcmd->parsed()) return akucb::run_self_check(std::cout) ? 0 : 1;
        if (run->parsed()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "error: cannot open config file: " << config_path << "\n";
                return 2;
            }
            return execute(akucb::parse_config(in), opts);
        }
        // preset
        akucb::ExperimentConfig cfg;
        try {
            cfg = akucb::make_preset(preset_name);
        } catch (const std::invalid_argument&) {
            std::cerr << "error: unknown preset '" << preset_name << "'. Valid presets:\n";
            for (const std::string& n : akucb::preset_names()) std::cerr << "  " << n << "\n";
            return 2;
        }
        for (const std::string& ov : overrides) {
            const size_t eq = ov.find('=');
            if (eq == std::string::npos) {
                std::cerr << "error: override must be key=value: " << ov << "\n";
                return 2;
            }
            std::string key = ov.substr(0, eq);
            std::string section;
            const size_t dot = key.find('.');
            if (dot != std::string::npos) {
                section = key.substr(0, dot);
                key = key.substr(dot + 1);
            }
            akucb::apply_config_entry(cfg, section, key, ov.substr(eq + 1));
        }
        return execute(std::move(cfg), opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
