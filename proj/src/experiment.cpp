#include "sphereq/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sphereq {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

RegimeLadder build_ladder(const ExperimentConfig& cfg) {
    if (cfg.mode == RunMode::FixedN) {
        const SpherePoint x(cfg.n, cfg.x_angles);
        const std::vector<double> theta_seq =
            cfg.theta_seq.empty() ? default_theta_sequence(cfg.theta, cfg.cap_k) : cfg.theta_seq;
        if (static_cast<int>(theta_seq.size()) != cfg.cap_k)
            throw ValidationError("theta_seq", "theta_seq must have cap_k entries");
        return build_regime_fixed_n(cfg.field, cfg.classes, x, theta_seq, cfg.r_ladder,
                                    cfg.cap_rho0, cfg.cap_k);
    }
    LimitPoint x{cfg.x_angles};
    return build_regime_varying_n(cfg.field, cfg.classes, x, cfg.theta, cfg.r_ladder,
                                  cfg.n_ladder, cfg.cap_rho0);
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void write_one_path(std::ostream& os, const QueuePath& path, const std::vector<double>& idle,
                    const std::string& row_prefix) {
    for (std::size_t i = 0; i < path.grid_size(); ++i) {
        for (std::size_t j = 0; j < path.Q.size(); ++j) {
            os << row_prefix << format_double(path.times[i]) << ',' << (j + 1) << ','
               << path.Q[j][i] << ',' << path.D[j][i] << ',' << format_double(path.B[j][i]) << ','
               << format_double(path.Q[j][i] / path.mu[j]) << ',' << format_double(path.V[i])
               << ',' << format_double(idle[i]) << "\n";
        }
    }
}

void write_path_csvs(const ExperimentConfig& cfg, const RegimeLadder& ladder,
                     const std::vector<CellPaths>& cell_paths) {
    const fs::path dir(cfg.out_dir);
    if (cfg.paths_layout == "combined") {
        std::ofstream combined(dir / "paths.csv");
        combined << "cell_k,cell_r,rep,time,class,Q,D,B,W,V,I\n";
        for (std::size_t ci = 0; ci < cell_paths.size(); ++ci) {
            const RegimeCell& cell = ladder.cells[ci];
            for (std::size_t rep = 0; rep < cell_paths[ci].runs.size(); ++rep) {
                std::ostringstream prefix;
                prefix << cell.k << ',' << cell.r << ',' << rep << ',';
                write_one_path(combined, cell_paths[ci].runs[rep], cell_paths[ci].idle[rep],
                               prefix.str());
            }
        }
        return;
    }
    for (std::size_t ci = 0; ci < cell_paths.size(); ++ci) {
        const RegimeCell& cell = ladder.cells[ci];
        for (std::size_t rep = 0; rep < cell_paths[ci].runs.size(); ++rep) {
            std::ostringstream name;
            name << "paths_k" << cell.k << "_r" << cell.r << "_rep" << rep << ".csv";
            std::ofstream os(dir / name.str());
            os << "time,class,Q,D,B,W,V,I\n";
            write_one_path(os, cell_paths[ci].runs[rep], cell_paths[ci].idle[rep], "");
        }
    }
}

}  // namespace

TrendChecks evaluate_trends(const RegimeLadder& ladder, const std::vector<CellResult>& cells) {
    TrendChecks checks;
    const std::size_t R = ladder.r_values.size();
    for (std::size_t ci = 0; ci < ladder.cells.size(); ++ci) {
        const RegimeCell& cell = ladder.cells[ci];
        const double dev = std::abs(std::sqrt(cell.r) * cell.mu_rk - cell.theta_k);
        checks.worst_ladder_dev = std::max(checks.worst_ladder_dev, dev);
        if (dev >= 1e-12) checks.ladder_exact = false;
    }
    for (std::size_t ki = 0; ki * R < cells.size(); ++ki) {
        for (std::size_t ri = 1; ri < R; ++ri) {
            const CellResult& prev = cells[ki * R + ri - 1];
            const CellResult& cur = cells[ki * R + ri];
            if (cur.ks > prev.ks) checks.ks_nonincreasing = false;
            if (cur.fluid_sup_dev >= prev.fluid_sup_dev) checks.fluid_decreasing = false;
        }
    }
    for (const CellResult& c : cells)
        if (!c.compl_pass) checks.complementarity = false;
    return checks;
}

std::string results_csv(const std::vector<CellResult>& cells) {
    std::ostringstream os;
    os << "regime-mode,k-or-n,r,reps,theta_k,sigma2_k,ks_stat,ks_critical_1pct,"
          "mean_sim,mean_oracle,var_sim,var_oracle,compl_residual,fluid_sup_dev\n";
    os.precision(12);
    for (const CellResult& c : cells) {
        os << (c.mode == RegimeMode::FixedN ? "fixed-n" : "varying-n") << ',' << c.k << ',' << c.r
           << ',' << c.reps << ',' << c.theta_k << ',' << c.sigma2_k << ',' << c.ks << ','
           << c.ks_critical_1pct << ',' << c.mean_sim << ',' << c.mean_oracle << ',' << c.var_sim
           << ',' << c.var_oracle << ',' << c.max_compl_residual << ',' << c.fluid_sup_dev << "\n";
    }
    return os.str();
}

std::string summary_json(const RunReport& report) {
    json j;
    j["mode"] = run_mode_name(report.config.mode);
    j["seed"] = report.config.seed;
    j["reps"] = report.config.reps;
    j["t_star"] = report.config.t_star;
    j["theta"] = report.config.theta;
    j["r_ladder"] = report.config.r_ladder;
    j["pass"] = report.pass;

    if (!report.cells.empty()) {
        json cells = json::array();
        for (const CellResult& c : report.cells) {
            cells.push_back({{"mode", c.mode == RegimeMode::FixedN ? "fixed-n" : "varying-n"},
                             {"k", c.k},
                             {"r", c.r},
                             {"reps", c.reps},
                             {"theta_k", c.theta_k},
                             {"sigma2_k", c.sigma2_k},
                             {"ks", c.ks},
                             {"ks_critical_1pct", c.ks_critical_1pct},
                             {"mean_sim", c.mean_sim},
                             {"mean_oracle", c.mean_oracle},
                             {"var_sim", c.var_sim},
                             {"var_oracle", c.var_oracle},
                             {"compl_residual", c.max_compl_residual},
                             {"compl_margin", c.min_compl_margin},
                             {"compl_pass", c.compl_pass},
                             {"fluid_sup_dev", c.fluid_sup_dev}});
        }
        j["cells"] = cells;
        j["checks"] = {{"ladder_exact", report.checks.ladder_exact},
                       {"worst_ladder_dev", report.checks.worst_ladder_dev},
                       {"ks_nonincreasing_in_r", report.checks.ks_nonincreasing},
                       {"complementarity", report.checks.complementarity},
                       {"fluid_decreasing_in_r", report.checks.fluid_decreasing}};
    }
    if (!report.suites.empty()) {
        json suites = json::array();
        for (const SuiteResult& s : report.suites) {
            suites.push_back({{"name", s.name},
                              {"trials", s.trials},
                              {"failures", s.failures},
                              {"worst", s.worst},
                              {"bound", s.bound},
                              {"pass", s.pass()}});
        }
        j["suites"] = suites;
    }
    return j.dump(2) + "\n";
}

RunReport run_experiment(const ExperimentConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    RunReport report;
    report.config = cfg;

    fs::create_directories(cfg.out_dir);

    if (cfg.mode == RunMode::AlgebraCheck) {
        report.suites = run_algebra_suites(cfg.seed, cfg.algebra_n_max, cfg.algebra_draws);
    } else if (cfg.mode == RunMode::SkorohodCheck) {
        report.suites = run_skorohod_suites(cfg.seed, cfg.skorohod_paths, cfg.skorohod_max_len);
    } else {
        const RegimeLadder ladder = build_ladder(cfg);
        ExperimentOptions opt;
        opt.t_star = cfg.t_star;
        opt.grid_per_unit = cfg.grid_per_unit;
        opt.oracle_steps = cfg.oracle_steps;
        opt.oracle_samples = cfg.oracle_samples;
        opt.collect_paths = cfg.emit_paths;
        opt.collect_paths_max = cfg.paths_max_reps;
        std::vector<CellPaths> cell_paths;
        report.cells = convergence_experiment(ladder, cfg.classes, cfg.reps, cfg.seed, opt,
                                              cfg.emit_paths ? &cell_paths : nullptr);
        report.checks = evaluate_trends(ladder, report.cells);
        if (cfg.emit_paths) write_path_csvs(cfg, ladder, cell_paths);
        std::ofstream(fs::path(cfg.out_dir) / "results.csv") << results_csv(report.cells);
    }

    for (const SuiteResult& s : report.suites) report.pass = report.pass && s.pass();
    if (!report.cells.empty()) report.pass = report.pass && report.checks.pass();
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ofstream(fs::path(cfg.out_dir) / "summary.json") << summary_json(report);
    return report;
}

std::vector<SuiteResult> run_selfcheck(std::uint64_t seed) {
    std::vector<SuiteResult> all = run_algebra_suites(seed, 6, 300);
    for (SuiteResult& s : run_skorohod_suites(seed, 100, 500)) all.push_back(s);
    return all;
}

}  // namespace sphereq
