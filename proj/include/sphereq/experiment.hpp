#pragma once

#include <string>
#include <vector>

#include "sphereq/config.hpp"
#include "sphereq/scaling.hpp"
#include "sphereq/selfcheck.hpp"

namespace sphereq {

struct TrendChecks {
    bool ladder_exact = true;        // sqrt(r) mu^{rk} = theta^k to machine precision
    bool ks_nonincreasing = true;    // along r within every k-row
    bool complementarity = true;     // every simulated path within epsilon
    bool fluid_decreasing = true;    // mean sup|Bbar - t| decreasing along r per row
    double worst_ladder_dev = 0.0;
    bool pass() const {
        return ladder_exact && ks_nonincreasing && complementarity && fluid_decreasing;
    }
};

struct RunReport {
    ExperimentConfig config;
    std::vector<CellResult> cells;
    std::vector<SuiteResult> suites;  // for the check modes
    TrendChecks checks;
    double wall_seconds = 0.0;
    bool pass = true;
};

// Executes the configured mode and writes results.csv / summary.json (and
// optional per-replication path CSVs) under config.out_dir.  Output bytes
// depend only on (config, seed).
RunReport run_experiment(const ExperimentConfig& config);

// Invariant suites with fixed internal parameters; nonzero exit is wired up
// by the CLI.
std::vector<SuiteResult> run_selfcheck(std::uint64_t seed);

TrendChecks evaluate_trends(const RegimeLadder& ladder, const std::vector<CellResult>& cells);

std::string results_csv(const std::vector<CellResult>& cells);
std::string summary_json(const RunReport& report);

}  // namespace sphereq
