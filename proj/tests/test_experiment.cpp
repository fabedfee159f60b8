#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sphereq/experiment.hpp"

using namespace sphereq;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

ExperimentConfig tiny_config(const std::string& out_dir) {
    ExperimentConfig cfg = parse_config_text(
        "mode = fixed-n\n"
        "seed = 424242\n"
        "r_ladder = 4, 9\n"
        "cap_k = 2\n"
        "reps = 10\n"
        "oracle_samples = 200\n"
        "oracle_steps = 64\n"
        "grid_per_unit = 16\n");
    cfg.out_dir = out_dir;
    return cfg;
}

}  // namespace

TEST_CASE("identical config and seed produce byte-identical outputs") {
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "sphereq_det";
    fs::remove_all(base);

    RunReport first = run_experiment(tiny_config((base / "a").string()));
    RunReport second = run_experiment(tiny_config((base / "b").string()));
    CHECK(first.cells.size() == 4);  // |r| x |k|
    CHECK(slurp(base / "a" / "results.csv") == slurp(base / "b" / "results.csv"));
    CHECK(slurp(base / "a" / "summary.json") == slurp(base / "b" / "summary.json"));
    CHECK(!slurp(base / "a" / "results.csv").empty());

    SUBCASE("a different seed changes the results") {
        ExperimentConfig cfg = tiny_config((base / "c").string());
        cfg.seed = 99;
        run_experiment(cfg);
        CHECK(slurp(base / "a" / "results.csv") != slurp(base / "c" / "results.csv"));
    }
    fs::remove_all(base);
}

TEST_CASE("path emission layouts") {
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "sphereq_paths";
    fs::remove_all(base);

    ExperimentConfig cfg = tiny_config((base / "combined").string());
    cfg.emit_paths = true;
    cfg.paths_max_reps = 2;
    run_experiment(cfg);
    const std::string combined = slurp(base / "combined" / "paths.csv");
    CHECK(combined.rfind("cell_k,cell_r,rep,time,class,Q,D,B,W,V,I", 0) == 0);
    CHECK(combined.find("\n1,4,0,") != std::string::npos);
    CHECK(combined.find("\n1,4,2,") == std::string::npos);  // capped at 2 reps

    cfg.out_dir = (base / "per-rep").string();
    cfg.paths_layout = "per-rep";
    run_experiment(cfg);
    CHECK(fs::exists(base / "per-rep" / "paths_k1_r4_rep0.csv"));
    CHECK(fs::exists(base / "per-rep" / "paths_k2_r9_rep1.csv"));
    CHECK(!fs::exists(base / "per-rep" / "paths_k1_r4_rep2.csv"));
    fs::remove_all(base);
}

TEST_CASE("check modes run their suites") {
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "sphereq_checks";
    fs::remove_all(base);

    ExperimentConfig algebra = parse_config_text(
        "mode = algebra-check\nseed = 5\nalgebra.n_max = 3\nalgebra.draws = 40\n");
    algebra.out_dir = (base / "algebra").string();
    const RunReport rep_a = run_experiment(algebra);
    CHECK(rep_a.pass);
    CHECK(rep_a.suites.size() == 6);
    CHECK(slurp(base / "algebra" / "summary.json").find("\"suites\"") != std::string::npos);

    ExperimentConfig sk = parse_config_text(
        "mode = skorohod-check\nseed = 5\nskorohod.paths = 25\nskorohod.max_len = 100\n");
    sk.out_dir = (base / "skorohod").string();
    const RunReport rep_s = run_experiment(sk);
    CHECK(rep_s.pass);
    CHECK(rep_s.suites.size() == 2);
    fs::remove_all(base);
}
