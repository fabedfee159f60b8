#include <cstdio>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "sphereq/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitCheckFailure = 2;

void apply_overrides(sphereq::ExperimentConfig& cfg, const std::optional<std::string>& out_dir,
                     const std::optional<std::uint64_t>& seed, const std::optional<long>& reps,
                     bool paths) {
    if (out_dir) cfg.out_dir = *out_dir;
    if (seed) cfg.seed = *seed;
    if (reps) {
        if (*reps < 1) throw sphereq::ValidationError("reps", "reps must be >= 1");
        cfg.reps = *reps;
    }
    if (paths) cfg.emit_paths = true;
}

int execute(sphereq::ExperimentConfig cfg) {
    const sphereq::RunReport report = sphereq::run_experiment(cfg);
    for (const sphereq::SuiteResult& s : report.suites) {
        std::printf("%-34s %6ld trials  worst %.3e  %s\n", s.name.c_str(), s.trials, s.worst,
                    s.pass() ? "PASS" : "FAIL");
    }
    if (!report.cells.empty()) {
        std::printf("%s", sphereq::results_csv(report.cells).c_str());
        std::printf("ladder_exact=%s ks_nonincreasing=%s complementarity=%s fluid_decreasing=%s\n",
                    report.checks.ladder_exact ? "yes" : "no",
                    report.checks.ks_nonincreasing ? "yes" : "no",
                    report.checks.complementarity ? "yes" : "no",
                    report.checks.fluid_decreasing ? "yes" : "no");
    }
    std::printf("%s: %s (%.1fs), outputs in %s\n", sphereq::run_mode_name(cfg.mode),
                report.pass ? "PASS" : "FAIL", report.wall_seconds, cfg.out_dir.c_str());
    return report.pass ? kExitOk : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"n-qubit sphere operations and heavy-traffic queueing scaling limits"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<long> reps;
    bool paths = false;
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "master seed override");
    app.add_option("--reps", reps, "replication count override");
    app.add_flag("--paths", paths, "emit per-replication path CSVs");

    std::string config_path;
    CLI::App* run = app.add_subcommand("run", "run an experiment from a config file");
    run->add_option("config", config_path, "config file path")->required();

    CLI::App* selfcheck = app.add_subcommand("selfcheck", "run the invariant suites");
    CLI::App* demo_fixed = app.add_subcommand("demo-fixed-n", "fixed qubit-count demo ladder");
    CLI::App* demo_varying = app.add_subcommand("demo-varying-n", "varying qubit-count demo ladder");

    CLI11_PARSE(app, argc, argv);

    try {
        if (selfcheck->parsed()) {
            bool all_pass = true;
            for (const sphereq::SuiteResult& s : sphereq::run_selfcheck(seed.value_or(20240917ULL))) {
                std::printf("%-34s %6ld trials  worst %.3e  %s\n", s.name.c_str(), s.trials,
                            s.worst, s.pass() ? "PASS" : "FAIL");
                all_pass = all_pass && s.pass();
            }
            std::printf("selfcheck: %s\n", all_pass ? "PASS" : "FAIL");
            return all_pass ? kExitOk : kExitCheckFailure;
        }

        sphereq::ExperimentConfig cfg;
        if (run->parsed()) {
            cfg = sphereq::load_config(config_path);
        } else if (demo_fixed->parsed()) {
            cfg = sphereq::demo_fixed_n_config(seed.value_or(20240917ULL));
            cfg.out_dir = "results-demo-fixed-n";
        } else if (demo_varying->parsed()) {
            cfg = sphereq::demo_varying_n_config(seed.value_or(20240917ULL));
            cfg.out_dir = "results-demo-varying-n";
        }
        apply_overrides(cfg, out_dir, seed, reps, paths);
        return execute(std::move(cfg));
    } catch (const sphereq::ParseError& e) {
        std::fprintf(stderr, "parse error (line %d): %s\n", e.line(), e.what());
        return kExitValidation;
    } catch (const sphereq::ValidationError& e) {
        std::fprintf(stderr, "invalid configuration [%s]: %s\n", e.key().c_str(), e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    }
}
