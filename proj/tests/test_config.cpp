#include "doctest.h"
#include "sphereq/config.hpp"
#include "sphereq/experiment.hpp"

using namespace sphereq;

TEST_CASE("minimal config fills defaults") {
    const ExperimentConfig cfg = parse_config_text("mode = fixed-n\nseed = 7\n");
    CHECK(cfg.seed == 7);
    CHECK(cfg.mode == RunMode::FixedN);
    CHECK(cfg.classes.size() == 1);
    CHECK(cfg.reps == 2000);
    CHECK(cfg.r_ladder == std::vector<double>{16.0, 64.0, 256.0});
    CHECK(cfg.cap_k == 3);
    // default field is balanced: m * lambda / mu = 2 * 0.5 / 1 = 1
    const SpherePoint x(cfg.n, cfg.x_angles);
    CHECK(cfg.field.at(0, x).lambda == doctest::Approx(0.5));
}

TEST_CASE("strict schema") {
    SUBCASE("unknown key is a hard error naming the key") {
        try {
            parse_config_text("mode = fixed-n\nseed = 1\nfoo = 1\n");
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(e.key() == "foo");
        }
    }
    SUBCASE("reps = 0 rejected") {
        try {
            parse_config_text("mode = fixed-n\nseed = 1\nreps = 0\n");
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(e.key() == "reps");
        }
    }
    SUBCASE("seed is mandatory") {
        CHECK_THROWS_AS(parse_config_text("mode = fixed-n\n"), ValidationError);
    }
    SUBCASE("parse errors carry line numbers") {
        try {
            parse_config_text("mode = fixed-n\nnonsense line\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("duplicate keys rejected") {
        CHECK_THROWS_AS(parse_config_text("seed = 1\nseed = 2\n"), ParseError);
    }
    SUBCASE("comments and blank lines are fine") {
        const ExperimentConfig cfg =
            parse_config_text("# header\n\nmode = fixed-n   # trailing\nseed = 3\n");
        CHECK(cfg.seed == 3);
    }
}

TEST_CASE("class and field configuration") {
    const std::string text =
        "mode = fixed-n\n"
        "seed = 11\n"
        "classes = 2\n"
        "class.1.arrival = erlang\n"
        "class.1.arrival_scv = 0.25\n"
        "class.1.batch = deterministic\n"
        "class.1.batch_mean = 3\n"
        "class.2.length = lognormal\n"
        "class.2.length_mean = 0.5\n"
        "class.2.length_scv = 0.7\n"
        "field.lambda = 0.2, 0.4\n";
    const ExperimentConfig cfg = parse_config_text(text);
    CHECK(cfg.classes.size() == 2);
    CHECK(cfg.classes[0].arrival_scv() == doctest::Approx(0.25));
    CHECK(cfg.classes[0].batch_mean() == doctest::Approx(3.0));
    CHECK(cfg.classes[1].mu() == doctest::Approx(2.0));
    CHECK(cfg.classes[1].length_scv() == doctest::Approx(0.7));
    const SpherePoint x(cfg.n, cfg.x_angles);
    CHECK(cfg.field.at(1, x).lambda == doctest::Approx(0.4));

    SUBCASE("field alpha2 must match the family SCV") {
        CHECK_THROWS_AS(
            parse_config_text("mode = fixed-n\nseed = 1\nfield.alpha2 = 0.5\n"),
            ValidationError);
    }
    SUBCASE("x_angles must have 2^n entries in fixed-n mode") {
        CHECK_THROWS_AS(parse_config_text("mode = fixed-n\nseed = 1\nx_angles = 0.5\n"),
                        ValidationError);
    }
}

TEST_CASE("demo configs validate and build ladders") {
    const ExperimentConfig fixed = demo_fixed_n_config(9);
    CHECK(fixed.mode == RunMode::FixedN);
    CHECK(fixed.seed == 9);
    const ExperimentConfig varying = demo_varying_n_config(9);
    CHECK(varying.mode == RunMode::VaryingN);
    CHECK(varying.n_ladder == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("results csv has the documented columns") {
    CellResult cell;
    cell.mode = RegimeMode::FixedN;
    cell.k = 1;
    cell.r = 16.0;
    cell.reps = 10;
    const std::string csv = results_csv({cell});
    CHECK(csv.find("regime-mode,k-or-n,r,reps,theta_k,sigma2_k,ks_stat,ks_critical_1pct,"
                   "mean_sim,mean_oracle,var_sim,var_oracle,compl_residual,fluid_sup_dev") !=
          std::string::npos);
    CHECK(csv.find("fixed-n,1,16") != std::string::npos);
}
