#include "sphereq/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sphereq {

std::pair<std::vector<double>, std::vector<double>> diffusion_scale_values(
    const std::vector<double>& times, const std::vector<double>& values, double r,
    double t_star) {
    if (!(r >= 1.0)) throw ConfigError("diffusion_scale: r must be >= 1");
    if (times.size() != values.size()) throw GridMismatch("diffusion_scale: grid mismatch");
    if (times.empty() || times.back() < r * t_star - 1e-9)
        throw HorizonTooShort("diffusion_scale: path horizon " +
                              std::to_string(times.empty() ? 0.0 : times.back()) +
                              " is shorter than r * t_star = " + std::to_string(r * t_star));
    const double inv_sqrt_r = 1.0 / std::sqrt(r);
    std::vector<double> ts, vs;
    ts.reserve(times.size());
    vs.reserve(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t_scaled = times[i] / r;
        if (t_scaled > t_star + 1e-12) break;
        ts.push_back(t_scaled);
        vs.push_back(values[i] * inv_sqrt_r);
    }
    return {std::move(ts), std::move(vs)};
}

ScaledPath diffusion_scale(const QueuePath& path, const RegimeCell& cell, double t_star) {
    const double r = cell.r;
    auto [ts, vs] = diffusion_scale_values(path.times, path.V, r, t_star);
    ScaledPath out;
    out.r = r;
    out.times = std::move(ts);
    out.vhat = std::move(vs);
    out.dt = path.dt / r;
    const std::size_t m = out.times.size();
    const double inv_sqrt_r = 1.0 / std::sqrt(r);

    const std::vector<double> ihat_full = idle_process(path, cell.Lambda_rk, cell.mu, r);
    out.ihat.assign(ihat_full.begin(), ihat_full.begin() + m);
    out.bbar_total.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.bbar_total[i] = path.busy_total[i] / r;

    out.ahat.assign(path.A.size(), std::vector<double>(m));
    for (std::size_t j = 0; j < path.A.size(); ++j) {
        // Ahat_j(t) = (A_j(rt) - r m_j lambda^{rk}_j t) / sqrt(r)
        const double center_rate = r * cell.batch_mean[j] * cell.lambda_rk[j];
        for (std::size_t i = 0; i < m; ++i)
            out.ahat[j][i] = (path.A[j][i] - center_rate * out.times[i]) * inv_sqrt_r;
    }
    return out;
}

std::pair<std::vector<double>, std::vector<double>> skorohod_reflect(
    const std::vector<double>& netput) {
    std::vector<double> I(netput.size()), V(netput.size());
    double running = 0.0;
    for (std::size_t i = 0; i < netput.size(); ++i) {
        running = std::max(running, -netput[i]);
        I[i] = std::max(0.0, running);
        V[i] = netput[i] + I[i];
    }
    return {std::move(V), std::move(I)};
}

RBMParams::RBMParams(double theta_, double sigma2_, double v0_)
    : theta(theta_), sigma2(sigma2_), v0(v0_) {
    if (!(sigma2 > 0.0)) throw ConfigError("RBMParams: sigma2 must be > 0");
    if (v0 < 0.0) throw ConfigError("RBMParams: v0 must be >= 0");
}

std::vector<double> rbm_oracle(const RBMParams& params, double t, long reps, int steps,
                               RngStream& rng,
                               const std::function<double(RngStream&)>& v0_sampler) {
    if (reps < 1) throw ConfigError("rbm_oracle: reps must be >= 1");
    if (steps < 2) throw ConfigError("rbm_oracle: steps must be >= 2");
    const double dt = t / steps;
    const double sigma_dt = std::sqrt(params.sigma2 * dt);
    std::vector<double> samples(reps);
    for (long rep = 0; rep < reps; ++rep) {
        double x = v0_sampler ? v0_sampler(rng) : params.v0;
        double running_inf = 0.0;  // max of (-x)^+ so far
        for (int i = 1; i <= steps; ++i) {
            x += params.theta * dt + sigma_dt * rng.normal();
            running_inf = std::max(running_inf, -x);
        }
        samples[rep] = x + std::max(0.0, running_inf);
    }
    return samples;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw EmptySamples("ks_statistic: empty sample set");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t ia = 0, ib = 0;
    double ks = 0.0;
    while (ia < a.size() && ib < b.size()) {
        const double x = std::min(a[ia], b[ib]);
        while (ia < a.size() && a[ia] <= x) ++ia;
        while (ib < b.size() && b[ib] <= x) ++ib;
        ks = std::max(ks, std::abs(ia / na - ib / nb));
    }
    return ks;
}

double ks_critical(double alpha, long n, long m) {
    const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    return c * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * m));
}

ComparisonReport compare_distributions(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw EmptySamples("compare_distributions: empty sample set");
    ComparisonReport rep;
    rep.n_a = static_cast<long>(a.size());
    rep.n_b = static_cast<long>(b.size());
    rep.ks = ks_statistic(a, b);
    rep.ks_critical_1pct = ks_critical(0.01, rep.n_a, rep.n_b);
    auto moments = [](const std::vector<double>& s, double& mean, double& var) {
        double sum = 0.0;
        for (double x : s) sum += x;
        mean = sum / s.size();
        double acc = 0.0;
        for (double x : s) acc += (x - mean) * (x - mean);
        var = s.size() > 1 ? acc / (s.size() - 1) : 0.0;
    };
    moments(a, rep.mean_a, rep.var_a);
    moments(b, rep.mean_b, rep.var_b);
    return rep;
}

double complementarity_residual(const std::vector<double>& V, const std::vector<double>& I) {
    if (V.size() != I.size()) throw GridMismatch("complementarity: grid mismatch");
    double residual = 0.0;
    for (std::size_t i = 1; i < V.size(); ++i) residual += V[i] * (I[i] - I[i - 1]);
    return residual;
}

double complementarity_epsilon(const std::vector<double>& V, double dt_resolution) {
    double vmax = 0.0;
    for (double v : V) vmax = std::max(vmax, v);
    return 2.0 * dt_resolution * vmax;
}

std::vector<CellResult> convergence_experiment(const RegimeLadder& ladder,
                                               const std::vector<ClassParams>& classes,
                                               long reps, std::uint64_t master_seed,
                                               const ExperimentOptions& opt,
                                               std::vector<CellPaths>* paths_out) {
    if (reps < 1) throw ConfigError("convergence_experiment: reps must be >= 1");
    if (ladder.cells.empty()) throw ConfigError("convergence_experiment: empty ladder");
    const double dt_engine = 1.0 / opt.grid_per_unit;

    std::vector<CellResult> results;
    results.reserve(ladder.cells.size());
    if (paths_out) paths_out->assign(ladder.cells.size(), {});

    // Stream id convention: replication i of the cell at row k, r-index ri
    // uses stream ((mode*64 + k) * 1024 + ri) * 16'000'057 + 1 + i; the
    // oracle stream for row k is (mode*64 + k) * 16'000'057.
    const std::uint64_t mode_tag = ladder.mode == RegimeMode::FixedN ? 1 : 2;
    const std::size_t R = ladder.r_values.size();
    for (std::size_t ki = 0; ki < ladder.k_values.size(); ++ki) {
        // One oracle sample set per k-row; the limit law depends on k only.
        const RegimeCell& row_cell = ladder.cell(ki, 0);
        if (!(row_cell.sigma2_k > 0.0))
            throw ConfigError("convergence_experiment: degenerate configuration, sigma2 = 0");
        const std::uint64_t row_tag = mode_tag * 64 + static_cast<std::uint64_t>(ladder.k_values[ki]);
        RngStream oracle_rng(master_seed, row_tag * 16000057ULL);
        const RBMParams rbm(row_cell.theta_k, row_cell.sigma2_k, 0.0);
        // Gaussian initial backlogs translate into a random start value for
        // the limit process.
        std::function<double(RngStream&)> v0_sampler;
        bool random_start = false;
        for (const ClassParams& c : classes)
            random_start = random_start || c.q0_mean != 0.0 || c.q0_sd != 0.0;
        if (random_start) {
            const std::vector<double>& mu = row_cell.mu;
            v0_sampler = [&classes, &mu](RngStream& r) {
                double v0 = 0.0;
                for (std::size_t j = 0; j < classes.size(); ++j)
                    v0 += std::max(0.0, classes[j].q0_mean + classes[j].q0_sd * r.normal()) / mu[j];
                return v0;
            };
        }
        const std::vector<double> oracle = rbm_oracle(rbm, opt.t_star, opt.oracle_samples,
                                                      opt.oracle_steps, oracle_rng, v0_sampler);

        for (std::size_t ri = 0; ri < R; ++ri) {
            const std::size_t ci = ki * R + ri;
            const RegimeCell& cell = ladder.cells[ci];

            std::vector<double> vhat_samples(reps);
            double worst_residual = 0.0;
            double min_margin = std::numeric_limits<double>::infinity();
            bool compl_pass = true;
            double fluid_acc = 0.0;

            const std::uint64_t cell_tag = (row_tag * 1024 + ri) * 16000057ULL;
            for (long rep = 0; rep < reps; ++rep) {
                RngStream rng(master_seed, cell_tag + 1 + rep);
                const QueuePath path = simulate_cell(classes, cell, opt.t_star, dt_engine, rng);
                const ScaledPath sp = diffusion_scale(path, cell, opt.t_star);
                vhat_samples[rep] = sp.vhat.back();

                const double residual = complementarity_residual(sp.vhat, sp.ihat);
                const double eps = complementarity_epsilon(sp.vhat, dt_engine);
                worst_residual = std::max(worst_residual, residual);
                min_margin = std::min(min_margin, eps - residual);
                compl_pass = compl_pass && residual <= eps;

                double dev = 0.0;
                for (std::size_t i = 0; i < sp.times.size(); ++i)
                    dev = std::max(dev, std::abs(sp.bbar_total[i] - sp.times[i]));
                fluid_acc += dev;

                if (paths_out && opt.collect_paths &&
                    (opt.collect_paths_max == 0 ||
                     static_cast<long>((*paths_out)[ci].runs.size()) < opt.collect_paths_max)) {
                    (*paths_out)[ci].idle.push_back(idle_process(path, cell.Lambda_rk, cell.mu,
                                                                 cell.r));
                    (*paths_out)[ci].runs.push_back(path);
                }
            }

            const ComparisonReport cmp = compare_distributions(vhat_samples, oracle);
            CellResult res;
            res.mode = ladder.mode;
            res.k = cell.k;
            res.r = cell.r;
            res.reps = reps;
            res.theta_k = cell.theta_k;
            res.sigma2_k = cell.sigma2_k;
            res.ks = cmp.ks;
            res.ks_critical_1pct = cmp.ks_critical_1pct;
            res.mean_sim = cmp.mean_a;
            res.var_sim = cmp.var_a;
            res.mean_oracle = cmp.mean_b;
            res.var_oracle = cmp.var_b;
            res.max_compl_residual = worst_residual;
            res.min_compl_margin = min_margin;
            res.compl_pass = compl_pass;
            res.fluid_sup_dev = fluid_acc / reps;
            results.push_back(res);
        }
    }
    return results;
}

}  // namespace sphereq
