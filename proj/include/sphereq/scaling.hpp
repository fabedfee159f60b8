#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "sphereq/queueing.hpp"
#include "sphereq/regime.hpp"

namespace sphereq {

// Diffusion-scaled view of one run: time compressed by r, space by sqrt(r).
struct ScaledPath {
    double r = 1.0;
    double dt = 0.0;                      // scaled grid spacing
    std::vector<double> times;            // 0 .. t_star
    std::vector<double> vhat;             // V(rt)/sqrt(r)
    std::vector<double> ihat;             // idle account, already in diffusion scale
    std::vector<double> bbar_total;       // sum_j B_j(rt)/r
    std::vector<std::vector<double>> ahat;  // centered arrivals per class
};

// Scale a raw workload path: (t, V(t)) -> (t/r, V(t)/sqrt(r)).  The time grid
// must reach r * t_star.
std::pair<std::vector<double>, std::vector<double>> diffusion_scale_values(
    const std::vector<double>& times, const std::vector<double>& values, double r,
    double t_star = 1.0);

ScaledPath diffusion_scale(const QueuePath& path, const RegimeCell& cell, double t_star = 1.0);

// One-dimensional Skorohod reflection on a sampled netput path:
//   I(t) = max(0, max_{s<=t} -x(s)),  V = x + I.
// I is nondecreasing with I(0) = 0 when x(0) >= 0, V >= 0, and I increases
// only when V sits at zero.
std::pair<std::vector<double>, std::vector<double>> skorohod_reflect(
    const std::vector<double>& netput);

struct RBMParams {
    double theta = 0.0;
    double sigma2 = 1.0;
    double v0 = 0.0;

    RBMParams(double theta_, double sigma2_, double v0_ = 0.0);
};

// Monte Carlo samples of the reflected Brownian motion at time t: simulate
// the netput v0 + theta s + sigma W(s) on a fine grid and reflect.  When a
// v0 sampler is supplied the start value is redrawn per path (Gaussian
// initial conditions), otherwise params.v0 is used.
std::vector<double> rbm_oracle(const RBMParams& params, double t, long reps, int steps,
                               RngStream& rng,
                               const std::function<double(RngStream&)>& v0_sampler = {});

struct ComparisonReport {
    double ks = 0.0;
    double ks_critical_1pct = 0.0;
    long n_a = 0, n_b = 0;
    double mean_a = 0.0, var_a = 0.0;
    double mean_b = 0.0, var_b = 0.0;
};

double ks_statistic(std::vector<double> a, std::vector<double> b);
double ks_critical(double alpha, long n, long m);
ComparisonReport compare_distributions(const std::vector<double>& a, const std::vector<double>& b);

// Right-endpoint Riemann sum of V dI on a common grid.  For outputs of the
// discrete Skorohod map the residual is exactly zero.
double complementarity_residual(const std::vector<double>& V, const std::vector<double>& I);

// Pass threshold: 2 * dt_resolution * max(V).  For simulated queue paths the
// resolution constant is the engine grid spacing in simulation time.
double complementarity_epsilon(const std::vector<double>& V, double dt_resolution);

// Per-cell outcome of the convergence experiment.
struct CellResult {
    RegimeMode mode = RegimeMode::FixedN;
    int k = 0;
    double r = 0.0;
    long reps = 0;
    double theta_k = 0.0;
    double sigma2_k = 0.0;
    double ks = 0.0;
    double ks_critical_1pct = 0.0;
    double mean_sim = 0.0, var_sim = 0.0;
    double mean_oracle = 0.0, var_oracle = 0.0;
    double max_compl_residual = 0.0;  // worst replication
    double min_compl_margin = 0.0;    // min over reps of (epsilon - residual)
    bool compl_pass = true;
    double fluid_sup_dev = 0.0;       // mean over reps of sup_t |Bbar(t) - t|
};

struct ExperimentOptions {
    double t_star = 1.0;
    double grid_per_unit = 64.0;   // engine grid spacing = 1/grid_per_unit
    int oracle_steps = 4096;
    long oracle_samples = 20000;
    bool collect_paths = false;    // keep per-replication paths for emission
    long collect_paths_max = 0;    // 0 = all replications
};

struct CellPaths {
    std::vector<QueuePath> runs;            // engine paths, simulation time
    std::vector<std::vector<double>> idle;  // diffusion-scaled idle account per run
};

// Runs reps simulations per ladder cell, compares Vhat(t*) samples against
// the RBM oracle for that k-row, and reports the iterated-limit table:
// the inner sweep is over r at fixed k, the outer over k.  Oracle samples
// are shared across the r-sweep of a row (the limit law depends on k only).
std::vector<CellResult> convergence_experiment(const RegimeLadder& ladder,
                                               const std::vector<ClassParams>& classes,
                                               long reps, std::uint64_t master_seed,
                                               const ExperimentOptions& opt,
                                               std::vector<CellPaths>* paths_out = nullptr);

}  // namespace sphereq
