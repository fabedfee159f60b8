#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sphereq/queueing.hpp"
#include "sphereq/rate_field.hpp"

namespace sphereq {

enum class RunMode { FixedN, VaryingN, AlgebraCheck, SkorohodCheck };

RunMode run_mode_from_name(const std::string& name);
const char* run_mode_name(RunMode mode);

// Fully validated experiment description.  The schema is strict: unknown or
// malformed keys are hard errors, and the seed is mandatory (no wall-clock
// seeding anywhere).
struct ExperimentConfig {
    RunMode mode = RunMode::FixedN;
    std::uint64_t seed = 0;
    std::string out_dir = "results";

    int n = 1;                    // fixed-n level
    std::vector<int> n_ladder = {1, 2, 3, 4};
    std::vector<ClassParams> classes;
    RateField field = RateField::constant({0.5}, {1.0});
    std::vector<double> x_angles;  // region center (leading angles for varying-n)

    double theta = -1.0;
    std::vector<double> theta_seq;  // empty = default theta * (1 - 2^{-k})
    std::vector<double> r_ladder = {16.0, 64.0, 256.0};
    double cap_rho0 = 0.2;
    int cap_k = 3;

    long reps = 2000;
    double t_star = 1.0;
    double grid_per_unit = 64.0;
    int oracle_steps = 4096;
    long oracle_samples = 20000;

    bool emit_paths = false;
    std::string paths_layout = "combined";  // or "per-rep"
    long paths_max_reps = 0;                // 0 = all replications

    int algebra_n_max = 6;
    long algebra_draws = 1000;
    long skorohod_paths = 200;
    long skorohod_max_len = 1000;
};

// Parses the documented key = value format; ParseError carries the line
// number, ValidationError the offending key.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

// Built-in demo configurations used by the CLI subcommands.
ExperimentConfig demo_fixed_n_config(std::uint64_t seed);
ExperimentConfig demo_varying_n_config(std::uint64_t seed);

}  // namespace sphereq
