#include "sphereq/regime.hpp"

#include <cmath>
#include <string>

namespace sphereq {

double drift_mu(const std::vector<ClassParams>& classes, const std::vector<double>& lambda_rk,
                const std::vector<double>& Lambda_rk) {
    if (classes.size() != lambda_rk.size() || classes.size() != Lambda_rk.size())
        throw DimensionMismatch("drift_mu: class count mismatch");
    double mu_rk = 0.0;
    for (std::size_t j = 0; j < classes.size(); ++j)
        mu_rk += (classes[j].batch_mean() * lambda_rk[j] - Lambda_rk[j]) / classes[j].mu();
    return mu_rk;
}

std::vector<double> default_theta_sequence(double theta, int count) {
    std::vector<double> seq(count);
    for (int k = 1; k <= count; ++k) seq[k - 1] = theta * (1.0 - std::ldexp(1.0, -k));
    return seq;
}

VarianceBreakdown aggregate_variance(const std::vector<ClassParams>& classes,
                                     const std::vector<double>& lambda,
                                     const std::vector<double>& alpha2,
                                     const std::vector<double>& Lambda) {
    const std::size_t J = classes.size();
    if (lambda.size() != J || alpha2.size() != J || Lambda.size() != J)
        throw DimensionMismatch("aggregate_variance: class count mismatch");
    VarianceBreakdown out;
    out.gamma_A.resize(J);
    out.gamma_S.resize(J);
    for (std::size_t j = 0; j < J; ++j) {
        const double m = classes[j].batch_mean();
        out.gamma_A[j] = m * m * lambda[j] * (classes[j].batch_scv() + alpha2[j]);
        out.gamma_S[j] = Lambda[j] * classes[j].length_scv();
        const double mu = classes[j].mu();
        out.sigma2 += (out.gamma_A[j] + out.gamma_S[j]) / (mu * mu);
    }
    return out;
}

namespace {

// Shared cell construction for both regimes: evaluate the field at the
// region, normalize to critical base utilization, then lay the 1/sqrt(r)
// drift on the arrival rates.
RegimeCell make_cell(const RateField& field, const std::vector<ClassParams>& classes,
                     const Cap& region, int k, double r, double theta_k) {
    const std::size_t J = classes.size();
    RegimeCell cell;
    cell.k = k;
    cell.r = r;
    cell.region = region;
    cell.theta_k = theta_k;
    cell.lambda_rk.resize(J);
    cell.alpha2_rk.resize(J);
    cell.Lambda_rk.resize(J);
    cell.lambda_limit.resize(J);
    cell.batch_mean.resize(J);
    cell.mu.resize(J);

    double rho_base = 0.0;
    std::vector<double> raw(J);
    for (std::size_t j = 0; j < J; ++j) {
        const RatePair rp = rate_at(field, region, static_cast<int>(j));
        if (!(rp.lambda > 0.0))
            throw InfeasibleRates("regime: field rate must be > 0 for class " +
                                  std::to_string(j + 1));
        raw[j] = rp.lambda;
        cell.alpha2_rk[j] = rp.alpha2;
        cell.batch_mean[j] = classes[j].batch_mean();
        cell.mu[j] = classes[j].mu();
        rho_base += cell.batch_mean[j] * rp.lambda / cell.mu[j];
    }

    const double perturb = 1.0 + theta_k / std::sqrt(r);
    if (!(perturb > 0.0))
        throw InfeasibleRates("regime: theta^k = " + std::to_string(theta_k) +
                              " drives arrival rates nonpositive at r = " + std::to_string(r));
    for (std::size_t j = 0; j < J; ++j) {
        cell.lambda_limit[j] = raw[j] / rho_base;
        cell.lambda_rk[j] = cell.lambda_limit[j] * perturb;
        cell.Lambda_rk[j] = classes[j].batch_mean() * cell.lambda_limit[j];
    }
    cell.mu_rk = drift_mu(classes, cell.lambda_rk, cell.Lambda_rk);
    cell.sigma2_k =
        aggregate_variance(classes, cell.lambda_limit, cell.alpha2_rk, cell.Lambda_rk).sigma2;
    return cell;
}

void check_inputs(const std::vector<ClassParams>& classes, const RateField& field,
                  const std::vector<double>& r_ladder) {
    if (classes.empty()) throw ConfigError("regime: no classes");
    if (field.classes() != static_cast<int>(classes.size()))
        throw ConfigError("regime: field class count mismatch");
    if (r_ladder.empty()) throw ConfigError("regime: empty r ladder");
    double prev = 0.0;
    for (double r : r_ladder) {
        if (!(r >= 1.0) || r <= prev)
            throw ConfigError("regime: r ladder must be strictly increasing and >= 1");
        prev = r;
    }
}

}  // namespace

RegimeLadder build_regime_fixed_n(const RateField& field, const std::vector<ClassParams>& classes,
                                  const SpherePoint& x, const std::vector<double>& theta_seq,
                                  const std::vector<double>& r_ladder, double rho0, int K) {
    check_inputs(classes, field, r_ladder);
    if (static_cast<int>(theta_seq.size()) != K)
        throw ConfigError("regime: theta sequence length must equal the cap count");
    const std::vector<Cap> caps = cap_ladder(x, rho0, K);
    RegimeLadder ladder;
    ladder.mode = RegimeMode::FixedN;
    ladder.r_values = r_ladder;
    for (int k = 1; k <= K; ++k) {
        ladder.k_values.push_back(k);
        for (double r : r_ladder)
            ladder.cells.push_back(make_cell(field, classes, caps[k - 1], k, r, theta_seq[k - 1]));
    }
    return ladder;
}

RegimeLadder build_regime_varying_n(const RateField& field, const std::vector<ClassParams>& classes,
                                    const LimitPoint& x, double theta,
                                    const std::vector<double>& r_ladder,
                                    const std::vector<int>& n_ladder, double rho0) {
    check_inputs(classes, field, r_ladder);
    if (n_ladder.empty()) throw ConfigError("regime: empty n ladder");
    int prev = 0;
    for (int n : n_ladder) {
        if (n <= prev) throw ConfigError("regime: n ladder must be strictly increasing");
        prev = n;
    }
    RegimeLadder ladder;
    ladder.mode = RegimeMode::VaryingN;
    ladder.r_values = r_ladder;
    double rho = rho0;
    for (int n : n_ladder) {
        ladder.k_values.push_back(n);
        const SpherePoint center = x.truncate(n);
        const Cap region{center, rho, cap_area(static_cast<int>(center.angle_count()), rho)};
        const double theta_n = theta * (1.0 - std::ldexp(1.0, -n));
        for (double r : r_ladder)
            ladder.cells.push_back(make_cell(field, classes, region, n, r, theta_n));
        rho *= 0.5;
    }
    return ladder;
}

QueuePath simulate_cell(const std::vector<ClassParams>& classes, const RegimeCell& cell,
                        double t_star, double dt, RngStream& rng) {
    std::vector<ClassParams> scaled(classes);
    std::vector<double> weights(classes.size());
    std::vector<long> q0(classes.size(), 0);
    bool any_q0 = false;
    const double sqrt_r = std::sqrt(cell.r);
    for (std::size_t j = 0; j < classes.size(); ++j) {
        scaled[j] = classes[j].with_arrival_rate(cell.lambda_rk[j]);
        weights[j] = cell.Lambda_rk[j] / cell.mu[j];
        if (classes[j].q0_mean != 0.0 || classes[j].q0_sd != 0.0) {
            const double draw = classes[j].q0_mean + classes[j].q0_sd * rng.normal();
            q0[j] = std::llround(std::max(0.0, sqrt_r * draw));
            any_q0 = true;
        }
    }
    return simulate_queues(scaled, weights, cell.r * t_star, dt, rng, any_q0 ? &q0 : nullptr);
}

}  // namespace sphereq
