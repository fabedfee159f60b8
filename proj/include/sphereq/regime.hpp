#pragma once

#include <vector>

#include "sphereq/queueing.hpp"
#include "sphereq/rate_field.hpp"

namespace sphereq {

enum class RegimeMode { FixedN, VaryingN };

// One (r, k) ladder entry.  Arrival rates carry the entire 1/sqrt(r)
// heavy-traffic perturbation:
//   lambda^{rk}_j = lambda~_j (1 + theta^k / sqrt(r)),
//   Lambda^{rk}_j = m_j lambda~_j,
// where lambda~_j is the field rate at the region normalized so the base
// utilization sum_j m_j lambda~_j / mu_j is exactly 1.  The server works at
// unit effort whenever work is present, so the diffusion-scaled workload
// drift is exactly theta^k, the drift identity sqrt(r) mu^{rk} = theta^k
// holds to machine precision, and the nominal allocations sum to capacity.
struct RegimeCell {
    int k = 0;        // cap index, or level n in the varying regime
    double r = 0.0;
    Cap region;
    double theta_k = 0.0;
    std::vector<double> lambda_rk;      // per class arrival rates
    std::vector<double> alpha2_rk;      // per class inter-arrival SCVs
    std::vector<double> Lambda_rk;      // per class allocated service rates
    std::vector<double> lambda_limit;   // lambda~_j = lim_{r} lambda^{rk}_j
    std::vector<double> batch_mean;     // m_j
    std::vector<double> mu;             // per class mu_j
    double mu_rk = 0.0;                 // workload drift at this cell
    double sigma2_k = 0.0;              // aggregate diffusion variance at the k-limit
};

struct RegimeLadder {
    RegimeMode mode = RegimeMode::FixedN;
    std::vector<int> k_values;
    std::vector<double> r_values;
    std::vector<RegimeCell> cells;  // row-major over (k, r)

    const RegimeCell& cell(std::size_t ki, std::size_t ri) const {
        return cells[ki * r_values.size() + ri];
    }
};

// mu^{rk} = sum_j (1/mu_j) (m_j lambda^{rk}_j - Lambda^{rk}_j).
double drift_mu(const std::vector<ClassParams>& classes, const std::vector<double>& lambda_rk,
                const std::vector<double>& Lambda_rk);

// Default target sequence theta^k = theta (1 - 2^{-k}), strictly convergent.
std::vector<double> default_theta_sequence(double theta, int count);

// Variance aggregation at limit rates:
//   GammaA_j = m_j^2 lambda_j (zeta_j^2 + alpha_j^2),  GammaS_j = Lambda_j beta_j^2,
//   sigma^2 = sum_j (GammaA_j + GammaS_j) / mu_j^2.
struct VarianceBreakdown {
    std::vector<double> gamma_A;
    std::vector<double> gamma_S;
    double sigma2 = 0.0;
};
VarianceBreakdown aggregate_variance(const std::vector<ClassParams>& classes,
                                     const std::vector<double>& lambda,
                                     const std::vector<double>& alpha2,
                                     const std::vector<double>& Lambda);

RegimeLadder build_regime_fixed_n(const RateField& field, const std::vector<ClassParams>& classes,
                                  const SpherePoint& x, const std::vector<double>& theta_seq,
                                  const std::vector<double>& r_ladder, double rho0, int K);

RegimeLadder build_regime_varying_n(const RateField& field, const std::vector<ClassParams>& classes,
                                    const LimitPoint& x, double theta,
                                    const std::vector<double>& r_ladder,
                                    const std::vector<int>& n_ladder, double rho0);

// One run under a ladder entry: arrival rates rescaled to lambda^{rk}, GPS
// weights Lambda^{rk}_j / mu_j, horizon r * t_star.  Initial queue lengths
// are drawn first (class order) from the classes' truncated-Gaussian
// initializer scaled by sqrt(r).
QueuePath simulate_cell(const std::vector<ClassParams>& classes, const RegimeCell& cell,
                        double t_star, double dt, RngStream& rng);

}  // namespace sphereq
