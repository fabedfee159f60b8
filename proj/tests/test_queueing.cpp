#include <cmath>

#include "doctest.h"
#include "sphereq/queueing.hpp"

using namespace sphereq;

namespace {

ClassParams deterministic_class(double inter_arrival, long batch, double length) {
    ClassParams p;
    p.inter_arrival = inter_arrival > 0.0 ? Dist::deterministic(inter_arrival) : Dist::never();
    p.batch = BatchDist::deterministic(batch);
    p.packet_length = Dist::deterministic(length);
    return p;
}

double value_at(const QueuePath& path, const std::vector<double>& series, double t) {
    const std::size_t i = static_cast<std::size_t>(std::llround(t / path.dt));
    return series[i];
}

}  // namespace

TEST_CASE("distribution samplers hit their mean and scv") {
    RngStream rng(99ULL);
    auto check_moments = [&](const Dist& d, double mean, double scv, double tol) {
        double s = 0.0, s2 = 0.0;
        const int n = 40000;
        for (int i = 0; i < n; ++i) {
            const double x = d.sample(rng);
            s += x;
            s2 += x * x;
        }
        const double m = s / n;
        const double var = s2 / n - m * m;
        CHECK(m == doctest::Approx(mean).epsilon(tol));
        if (scv > 0.0) CHECK(var / (m * m) == doctest::Approx(scv).epsilon(3 * tol));
    };
    check_moments(Dist::deterministic(0.7), 0.7, 0.0, 1e-12);
    check_moments(Dist::exponential(2.0), 2.0, 1.0, 0.05);
    check_moments(Dist::erlang(4, 2.0), 2.0, 0.25, 0.05);
    check_moments(Dist::lognormal(1.5, 0.8), 1.5, 0.8, 0.08);

    SUBCASE("batch distributions") {
        auto batch_moments = [&](const BatchDist& d, double mean, double scv) {
            double s = 0.0, s2 = 0.0;
            const int n = 40000;
            long smallest = 1L << 30;
            for (int i = 0; i < n; ++i) {
                const long w = d.sample(rng);
                smallest = std::min(smallest, w);
                s += w;
                s2 += static_cast<double>(w) * w;
            }
            CHECK(smallest >= 1);
            const double m = s / n;
            const double var = s2 / n - m * m;
            CHECK(m == doctest::Approx(mean).epsilon(0.05));
            if (scv > 0.0) CHECK(var / (m * m) == doctest::Approx(scv).epsilon(0.15));
        };
        batch_moments(BatchDist::deterministic(3), 3.0, 0.0);
        batch_moments(BatchDist::geometric(2.0), 2.0, 0.5);
        batch_moments(BatchDist::poisson_shifted(3.0), 3.0, 2.0 / 9.0);
    }
    SUBCASE("infeasible parameter pairs are rejected") {
        CHECK_THROWS_AS(Dist::make(DistFamily::Exponential, 1.0, 0.5), UnsupportedDistribution);
        CHECK_THROWS_AS(Dist::make(DistFamily::Erlang, 1.0, 0.3), UnsupportedDistribution);
        CHECK_THROWS_AS(Dist::make(DistFamily::Deterministic, -1.0, 0.0),
                        UnsupportedDistribution);
        CHECK_THROWS_AS(BatchDist::geometric(0.5), UnsupportedDistribution);
    }
}

TEST_CASE("sample_dsrrrf counting conventions") {
    RngStream rng(1ULL);
    SUBCASE("zero rate gives the empty path") {
        ClassParams p = deterministic_class(0.0, 3, 0.5);
        const ArrivalPath a = sample_dsrrrf(p, 1.0, rng);
        CHECK(a.times.empty());
        CHECK(a.reward_count(1.0) == doctest::Approx(0.0));
    }
    SUBCASE("arrival at exactly t is included in A(t)") {
        ClassParams p = deterministic_class(0.5, 3, 0.5);
        const ArrivalPath a = sample_dsrrrf(p, 1.0, rng);
        REQUIRE(a.times.size() == 2);
        CHECK(a.times[0] == doctest::Approx(0.5));
        CHECK(a.times[1] == doctest::Approx(1.0));
        CHECK(a.reward_count(1.0) == doctest::Approx(6.0));
        CHECK(a.reward_count(0.75) == doctest::Approx(3.0));
        CHECK(a.renewal_count(1.0) == 2);
    }
    SUBCASE("Poisson stream with unit batches has mean rate 2") {
        ClassParams p;
        p.inter_arrival = Dist::exponential(0.5);
        p.batch = BatchDist::deterministic(1);
        double total = 0.0;
        const int reps = 10000;
        for (int i = 0; i < reps; ++i) {
            RngStream r(123ULL, i);
            total += sample_dsrrrf(p, 1.0, r).reward_count(1.0);
        }
        const double mean = total / reps;
        // 3 sigma band around 2 with sd = sqrt(2/reps)
        CHECK(std::abs(mean - 2.0) < 3.0 * std::sqrt(2.0 / reps));
    }
    SUBCASE("marks perform a geodesic walk") {
        ClassParams p = deterministic_class(0.25, 1, 0.5);
        const WalkSpec walk{SpherePoint(1, {0.7, 0.3}), 0.05};
        const ArrivalPath a = sample_dsrrrf(p, 1.0, rng, &walk);
        REQUIRE(a.marks.size() == a.times.size());
        CHECK(geodesic_distance(walk.start, a.marks[0]) == doctest::Approx(0.05).epsilon(1e-9));
    }
}

TEST_CASE("sample_service_count follows the renewal definition") {
    RngStream rng(2ULL);
    ClassParams p = deterministic_class(1.0, 1, 0.5);
    CHECK(sample_service_count(p, 0.0, rng) == 0);
    CHECK(sample_service_count(p, 1.6, rng) == 3);  // floor(1.6 / 0.5)
    CHECK(sample_service_count(p, 1.5, rng) == 3);  // boundary included

    SUBCASE("exponential lengths, mean count matches the rate") {
        ClassParams e;
        e.packet_length = Dist::exponential(1.0);
        double total = 0.0;
        const int reps = 4000;
        for (int i = 0; i < reps; ++i) {
            RngStream r(5ULL, i);
            total += static_cast<double>(sample_service_count(e, 10.0, r));
        }
        CHECK(total / reps == doctest::Approx(10.0).epsilon(0.05));
    }
}

TEST_CASE("hand-checked single-class event simulation") {
    // One batch of 2 packets arrives at t = 1 (deterministic), each of
    // length 0.5; the server drains them at unit effort.
    ClassParams p;
    p.inter_arrival = Dist::deterministic(1.0);
    p.batch = BatchDist::deterministic(2);
    p.packet_length = Dist::deterministic(0.5);
    // stop arrivals after the first batch by a long second gap: use a horizon
    // that ends before the second batch at t = 2 matters for Q checks <= 2.5;
    // the second batch at t=2 adds two more packets, so check against the
    // full dynamics instead:
    RngStream rng(3ULL);
    const QueuePath path = simulate_queues({p}, {1.0}, 2.5, 0.1, rng);

    CHECK(value_at(path, path.Q[0], 0.5) == doctest::Approx(0.0));
    CHECK(value_at(path, path.Q[0], 1.2) == doctest::Approx(2.0));
    CHECK(value_at(path, path.Q[0], 1.7) == doctest::Approx(1.0));
    // departures at 1.5 and 2.0; the second batch arrives at exactly 2.0
    CHECK(value_at(path, path.D[0], 1.5) == doctest::Approx(1.0));
    CHECK(value_at(path, path.D[0], 2.0) == doctest::Approx(2.0));
    CHECK(value_at(path, path.A[0], 2.0) == doctest::Approx(4.0));
    CHECK(value_at(path, path.Q[0], 2.4) == doctest::Approx(2.0));
    // busy time: idle on [0,1], busy from 1.0 to 2.0, busy again at 2.0+
    CHECK(value_at(path, path.B[0], 1.0) == doctest::Approx(0.0));
    CHECK(value_at(path, path.B[0], 2.0) == doctest::Approx(1.0));
    CHECK(value_at(path, path.B[0], 2.5) == doctest::Approx(1.5));
}

TEST_CASE("no arrivals leaves every path at zero") {
    ClassParams p = deterministic_class(0.0, 1, 0.5);
    RngStream rng(4ULL);
    const QueuePath path = simulate_queues({p}, {1.0}, 2.0, 0.25, rng);
    for (double q : path.Q[0]) CHECK(q == 0.0);
    for (double v : path.V) CHECK(v == 0.0);
    for (double b : path.B[0]) CHECK(b == 0.0);

    SUBCASE("idle account grows linearly when empty") {
        const auto ihat = idle_process(path, {2.0}, {1.0}, 4.0);
        // Xi = Lambda/mu = 2, scaled time t/r: Ihat = 2 * (t - 0) / sqrt(r)
        CHECK(ihat.back() == doctest::Approx(2.0 * 2.0 / std::sqrt(4.0)));
    }
}

TEST_CASE("flow conservation and service-clock identities hold on random runs") {
    ClassParams p1;
    p1.inter_arrival = Dist::exponential(2.0);
    p1.batch = BatchDist::geometric(2.0);
    p1.packet_length = Dist::exponential(1.0);
    ClassParams p2;
    p2.inter_arrival = Dist::erlang(2, 1.5);
    p2.batch = BatchDist::poisson_shifted(2.0);
    p2.packet_length = Dist::lognormal(0.8, 0.6);

    RngStream rng(17ULL);
    const QueuePath path = simulate_queues({p1, p2}, {0.5, 0.5}, 50.0, 0.5, rng);

    for (std::size_t j = 0; j < 2; ++j) {
        for (std::size_t i = 0; i < path.grid_size(); ++i) {
            // Q = Q0 + A - D exactly
            CHECK(path.Q[j][i] == doctest::Approx(path.A[j][i] - path.D[j][i]));
            // B is 1-Lipschitz and nondecreasing
            if (i > 0) {
                const double db = path.B[j][i] - path.B[j][i - 1];
                CHECK(db >= -1e-12);
                CHECK(db <= path.dt + 1e-12);
                CHECK(path.D[j][i] >= path.D[j][i - 1]);
            }
        }
    }
    SUBCASE("work conservation: effort sums to one while work is present") {
        for (std::size_t i = 1; i < path.grid_size(); ++i) {
            const double db = path.busy_total[i] - path.busy_total[i - 1];
            CHECK(db >= -1e-12);
            CHECK(db <= path.dt + 1e-12);
            // If the departures over the cell cannot have drained the backlog
            // present at its start, the system stayed busy throughout and the
            // total effort must be the full cell width.
            double backlog = 0.0, drained = 0.0;
            for (std::size_t j = 0; j < 2; ++j) {
                backlog += path.Q[j][i - 1];
                drained += path.D[j][i] - path.D[j][i - 1];
            }
            if (backlog > 0.0 && drained < backlog)
                CHECK(db == doctest::Approx(path.dt).epsilon(1e-9));
        }
    }
    SUBCASE("V is the mu-weighted queue sum") {
        const auto v = workload(path);
        for (std::size_t i = 0; i < v.size(); ++i)
            CHECK(v[i] == doctest::Approx(path.V[i]));
        const auto w0 = class_workload(path, 0);
        CHECK(w0[10] == doctest::Approx(path.Q[0][10] / path.mu[0]));
    }
}

TEST_CASE("departure counts equal the renewal clock at the recorded busy time") {
    // Reconstruct S_j(B_j(t)) from the engine's own packet lengths by
    // re-running with the same seed: the sequences match because sampling
    // order is deterministic.
    ClassParams p;
    p.inter_arrival = Dist::exponential(1.0);
    p.batch = BatchDist::deterministic(1);
    p.packet_length = Dist::deterministic(0.4);
    RngStream rng(8ULL);
    const QueuePath path = simulate_queues({p}, {1.0}, 20.0, 0.25, rng);
    for (std::size_t i = 0; i < path.grid_size(); ++i) {
        const long via_clock = static_cast<long>(std::floor(path.B[0][i] / 0.4 + 1e-9));
        CHECK(static_cast<long>(path.D[0][i]) == via_clock);
    }
}

TEST_CASE("workload example with two classes") {
    ClassParams a = deterministic_class(0.0, 1, 1.0);   // mu = 1
    ClassParams b = deterministic_class(0.0, 1, 0.5);   // mu = 2
    RngStream rng(6ULL);
    std::vector<long> q0 = {2, 3};
    const QueuePath path = simulate_queues({a, b}, {0.5, 0.5}, 0.5, 0.5, rng, &q0);
    CHECK(path.V[0] == doctest::Approx(2.0 / 1.0 + 3.0 / 2.0));
    CHECK(path.V[0] >= path.Q[0][0] / path.mu[0]);
    CHECK(path.V[0] >= path.Q[1][0] / path.mu[1]);
}

TEST_CASE("idle normalizer reads the diagonal allocation") {
    CHECK(idle_normalizer({2.0}, {1.0}) == doctest::Approx(2.0));
    CHECK(idle_normalizer({1.0, 1.0}, {1.0, 1.0}) == doctest::Approx(0.5));
    CHECK_THROWS_AS(idle_normalizer({0.0}, {1.0}), InfeasibleRates);
}

TEST_CASE("idle account is identically zero on a saturated run") {
    // A large initial backlog that cannot drain within the horizon keeps the
    // server busy throughout.
    ClassParams p = deterministic_class(0.0, 1, 1.0);
    RngStream rng(21ULL);
    std::vector<long> q0 = {100};
    const QueuePath path = simulate_queues({p}, {1.0}, 10.0, 0.5, rng, &q0);
    CHECK(path.V[0] == doctest::Approx(100.0));
    const auto ihat = idle_process(path, {1.0}, {1.0}, 4.0);
    for (double v : ihat) CHECK(std::abs(v) < 1e-12);
}
