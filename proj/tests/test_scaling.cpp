#include <cmath>

#include "doctest.h"
#include "sphereq/scaling.hpp"
#include "sphereq/selfcheck.hpp"

using namespace sphereq;

TEST_CASE("skorohod_reflect on hand-worked paths") {
    SUBCASE("nonnegative netput needs no pushing") {
        const auto [v, i] = skorohod_reflect({0.0, 0.5, 1.0, 1.5});
        for (double x : i) CHECK(x == 0.0);
        CHECK(v[3] == doctest::Approx(1.5));
    }
    SUBCASE("pure downward drift is fully reflected") {
        const auto [v, i] = skorohod_reflect({0.0, -0.5, -1.0, -1.5});
        for (double x : v) CHECK(x == 0.0);
        CHECK(i[3] == doctest::Approx(1.5));
    }
    SUBCASE("the (0, 1, -1, 0.5) recursion") {
        const auto [v, i] = skorohod_reflect({0.0, 1.0, -1.0, 0.5});
        CHECK(i == std::vector<double>{0.0, 0.0, 1.0, 1.0});
        CHECK(v == std::vector<double>{0.0, 1.0, 0.0, 1.5});
        CHECK(complementarity_residual(v, i) == 0.0);
    }
}

TEST_CASE("skorohod suites: brute-force equivalence, minimality, mutation") {
    CHECK(check_skorohod_oracle(31ULL, 60, 400, {}).pass());
    CHECK(check_skorohod_minimality(31ULL, 30, 200, 3).pass());

    SUBCASE("an off-by-one running supremum is caught") {
        ReflectRoute mutant = [](const std::vector<double>& x) {
            std::vector<double> I(x.size()), V(x.size());
            double running = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                I[i] = std::max(0.0, running);  // lags the supremum by one step
                running = std::max(running, -x[i]);
                V[i] = x[i] + I[i];
            }
            return std::make_pair(V, I);
        };
        CHECK_FALSE(check_skorohod_oracle(31ULL, 60, 400, mutant).pass());
    }
}

TEST_CASE("diffusion scaling identities") {
    const std::vector<double> times = {0.0, 1.0, 2.0, 3.0, 4.0};
    const std::vector<double> values = {0.0, 1.0, 2.0, 1.0, 2.0};
    SUBCASE("r = 1 is the identity") {
        const auto [ts, vs] = diffusion_scale_values(times, values, 1.0, 4.0);
        CHECK(ts == times);
        CHECK(vs == values);
    }
    SUBCASE("r = 4 compresses time and shrinks space") {
        const auto [ts, vs] = diffusion_scale_values(times, values, 4.0, 1.0);
        CHECK(ts.back() == doctest::Approx(1.0));
        CHECK(vs.back() == doctest::Approx(1.0));  // 2 / sqrt(4)
    }
    SUBCASE("composition multiplies the scale factors") {
        const auto [t1, v1] = diffusion_scale_values(times, values, 2.0, 2.0);
        const auto [t2, v2] = diffusion_scale_values(t1, v1, 2.0, 1.0);
        const auto [td, vd] = diffusion_scale_values(times, values, 4.0, 1.0);
        REQUIRE(t2.size() == td.size());
        for (std::size_t i = 0; i < td.size(); ++i) {
            CHECK(t2[i] == doctest::Approx(td[i]));
            CHECK(v2[i] == doctest::Approx(vd[i]));
        }
    }
    SUBCASE("short horizons are rejected") {
        CHECK_THROWS_AS(diffusion_scale_values(times, values, 8.0, 1.0), HorizonTooShort);
    }
}

TEST_CASE("centered arrival scaling stays within one batch of zero on a deterministic fluid") {
    // Deterministic inter-arrivals and batches at exactly the centering rate:
    // the centered, scaled count is a sawtooth bounded by m / sqrt(r).
    ClassParams p;
    p.inter_arrival = Dist::deterministic(1.0);  // lambda = 1
    p.batch = BatchDist::deterministic(2);
    p.packet_length = Dist::deterministic(0.25);
    RngStream rng(23ULL);
    const double r = 16.0;
    const QueuePath path = simulate_queues({p}, {1.0}, r, 0.25, rng);

    RegimeCell cell;
    cell.r = r;
    cell.lambda_rk = {1.0};
    cell.Lambda_rk = {2.0};
    cell.lambda_limit = {1.0};
    cell.batch_mean = {2.0};
    cell.mu = {4.0};
    const ScaledPath sp = diffusion_scale(path, cell);
    double sup = 0.0;
    for (double a : sp.ahat[0]) sup = std::max(sup, std::abs(a));
    CHECK(sup <= 2.0 / std::sqrt(r) + 1e-12);
    CHECK(sup > 0.0);
}

TEST_CASE("degenerate zero-variance configurations are rejected") {
    ClassParams det;
    det.inter_arrival = Dist::deterministic(1.0);
    det.batch = BatchDist::deterministic(1);
    det.packet_length = Dist::deterministic(1.0);
    RegimeLadder ladder;
    ladder.mode = RegimeMode::FixedN;
    ladder.r_values = {4.0};
    ladder.k_values = {1};
    RegimeCell cell;
    cell.k = 1;
    cell.r = 4.0;
    cell.lambda_rk = {1.0};
    cell.alpha2_rk = {0.0};
    cell.Lambda_rk = {1.0};
    cell.lambda_limit = {1.0};
    cell.batch_mean = {1.0};
    cell.mu = {1.0};
    cell.sigma2_k = 0.0;
    ladder.cells = {cell};
    ExperimentOptions opt;
    CHECK_THROWS_AS(convergence_experiment(ladder, {det}, 5, 1, opt), ConfigError);
}

TEST_CASE("rbm oracle moments") {
    RngStream rng(13ULL);
    SUBCASE("driftless unit-variance mean is sqrt(2/pi)") {
        const auto samples = rbm_oracle(RBMParams(0.0, 1.0, 0.0), 1.0, 20000, 4096, rng);
        double mean = 0.0;
        for (double v : samples) mean += v;
        mean /= samples.size();
        CHECK(mean == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(0.02));
    }
    SUBCASE("a large start keeps the reflection inactive") {
        const auto samples = rbm_oracle(RBMParams(0.0, 1.0, 50.0), 1.0, 4000, 512, rng);
        double mean = 0.0, var = 0.0;
        for (double v : samples) mean += v;
        mean /= samples.size();
        for (double v : samples) var += (v - mean) * (v - mean);
        var /= samples.size() - 1;
        CHECK(mean == doctest::Approx(50.0).epsilon(0.001));
        CHECK(var == doctest::Approx(1.0).epsilon(0.1));
    }
    SUBCASE("strong negative drift pins the mean near the stationary value") {
        const auto t2 = rbm_oracle(RBMParams(-4.0, 1.0, 0.0), 2.0, 6000, 2048, rng);
        const auto t4 = rbm_oracle(RBMParams(-4.0, 1.0, 0.0), 4.0, 6000, 4096, rng);
        double m2 = 0.0, m4 = 0.0;
        for (double v : t2) m2 += v;
        for (double v : t4) m4 += v;
        m2 /= t2.size();
        m4 /= t4.size();
        // stationary mean is sigma^2 / (2|theta|) = 0.125
        CHECK(m2 == doctest::Approx(0.125).epsilon(0.15));
        CHECK(std::abs(m4 - m2) < 0.02);
    }
    SUBCASE("degenerate variance is rejected") {
        CHECK_THROWS_AS(RBMParams(0.0, 0.0, 0.0), ConfigError);
    }
}

TEST_CASE("two-sample KS statistic") {
    SUBCASE("identical samples have distance zero") {
        const std::vector<double> a = {1.0, 2.0, 3.0, 4.0};
        CHECK(ks_statistic(a, a) == doctest::Approx(0.0));
    }
    SUBCASE("disjoint supports have distance one") {
        CHECK(ks_statistic({1.0, 2.0}, {5.0, 6.0}) == doctest::Approx(1.0));
    }
    SUBCASE("critical value formula") {
        CHECK(ks_critical(0.01, 2000, 2000) == doctest::Approx(0.05147).epsilon(1e-3));
    }
    SUBCASE("two oracle seeds pass at the 1% level most of the time") {
        int passes = 0;
        for (int trial = 0; trial < 20; ++trial) {
            RngStream ra(100ULL + trial, 0), rb(200ULL + trial, 1);
            const auto a = rbm_oracle(RBMParams(0.0, 1.0, 0.0), 1.0, 2000, 256, ra);
            const auto b = rbm_oracle(RBMParams(0.0, 1.0, 0.0), 1.0, 2000, 256, rb);
            const ComparisonReport rep = compare_distributions(a, b);
            if (rep.ks < rep.ks_critical_1pct) ++passes;
        }
        CHECK(passes >= 19);
    }
    SUBCASE("empty samples rejected") {
        CHECK_THROWS_AS(ks_statistic({}, {1.0}), EmptySamples);
    }
}

TEST_CASE("complementarity residual and threshold") {
    SUBCASE("constant I contributes nothing") {
        CHECK(complementarity_residual({1.0, 2.0, 3.0}, {0.5, 0.5, 0.5}) == 0.0);
    }
    SUBCASE("zero V contributes nothing") {
        CHECK(complementarity_residual({0.0, 0.0, 0.0}, {0.0, 1.0, 2.0}) == 0.0);
    }
    SUBCASE("grid mismatch is an error") {
        CHECK_THROWS_AS(complementarity_residual({1.0}, {1.0, 2.0}), GridMismatch);
    }
    SUBCASE("epsilon scales with resolution and the running max") {
        CHECK(complementarity_epsilon({0.0, 2.0, 1.0}, 0.25) == doctest::Approx(1.0));
    }
}
