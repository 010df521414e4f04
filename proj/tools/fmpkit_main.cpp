#include <CLI11.hpp>
#include <iostream>

#include "fmpkit/experiment.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    int jobs = 1;
    std::int64_t seed = -1;
};

void attach(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "experiment config (JSON)")->required();
    cmd->add_option("--out", args.out_dir, "output directory (overrides the config)");
    cmd->add_option("--jobs", args.jobs, "worker threads for trials")->check(CLI::Range(1, 256));
    cmd->add_option("--seed", args.seed, "seed override");
}

fmpkit::ExperimentConfig load(const CommonArgs& args) {
    fmpkit::ExperimentConfig config = fmpkit::load_config_file(args.config_path);
    if (args.seed >= 0) {
        config.seed = static_cast<std::uint64_t>(args.seed);
        fmpkit::recompute_hash(config);
    }
    return config;
}

int report_outcome(const fmpkit::ExperimentOutcome& outcome) {
    std::cout << "results: " << outcome.results_csv.string() << "\n"
              << "summary: " << outcome.summary_csv.string() << "\n"
              << "traces:  " << outcome.trace_dir.string() << "\n";
    if (outcome.failures > 0) {
        std::cerr << outcome.failures << " trial(s) failed; see the error column\n";
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional-programming experiment runner"};
    app.require_subcommand(1);

    CommonArgs run_args, sweep_args, compare_args, conv_args, validate_args;
    CLI::App* cmd_run = app.add_subcommand("run", "run the configured experiment");
    attach(cmd_run, run_args);
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "run the power sweep");
    attach(cmd_sweep, sweep_args);
    CLI::App* cmd_compare =
        app.add_subcommand("compare", "run framework and baseline on paired channels");
    attach(cmd_compare, compare_args);
    CLI::App* cmd_conv =
        app.add_subcommand("convergence", "emit full traces and self-check monotonicity");
    attach(cmd_conv, conv_args);
    CLI::App* cmd_validate = app.add_subcommand("validate", "lint the config file");
    attach(cmd_validate, validate_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_validate->parsed()) {
            fmpkit::ExperimentConfig config = load(validate_args);
            std::cout << "config ok (hash " << fmpkit::config_hash_hex(config) << ")\n";
            return 0;
        }
        if (cmd_run->parsed() || cmd_sweep->parsed()) {
            const CommonArgs& args = cmd_run->parsed() ? run_args : sweep_args;
            fmpkit::ExperimentConfig config = load(args);
            return report_outcome(fmpkit::run_experiment(config, args.out_dir, args.jobs));
        }
        if (cmd_compare->parsed()) {
            fmpkit::ExperimentConfig config = load(compare_args);
            if (config.problem != fmpkit::ProblemKind::maxmin_ee &&
                config.problem != fmpkit::ProblemKind::see_gee) {
                std::cerr << "compare: problem " << fmpkit::to_string(config.problem)
                          << " has no baseline\n";
                return 2;
            }
            config.method = fmpkit::Method::both;
            fmpkit::recompute_hash(config);
            return report_outcome(
                fmpkit::run_experiment(config, compare_args.out_dir, compare_args.jobs));
        }
        if (cmd_conv->parsed()) {
            fmpkit::ExperimentConfig config = load(conv_args);
            fmpkit::ExperimentOutcome outcome =
                fmpkit::run_experiment(config, conv_args.out_dir, conv_args.jobs);
            const int code = report_outcome(outcome);
            if (!fmpkit::self_check_traces(config, outcome)) {
                std::cerr << "self-check: a trace violates monotonicity\n";
                return 3;
            }
            std::cout << "self-check: all traces monotone\n";
            return code;
        }
    } catch (const fmpkit::ConfigInvalid& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
