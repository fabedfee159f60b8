#pragma once

#include <optional>
#include <vector>

#include "sphereq/distributions.hpp"
#include "sphereq/sphere.hpp"

namespace sphereq {

// Per-class traffic description.  The inter-arrival distribution carries the
// batch arrival rate (mean = 1/lambda); batch rewards have mean m_j and SCV
// zeta_j^2; packet lengths have mean 1/mu_j and SCV beta_j^2, in units of
// server effort time.
struct ClassParams {
    int id = 0;
    Dist inter_arrival = Dist::exponential(1.0);
    BatchDist batch = BatchDist::geometric(2.0);
    Dist packet_length = Dist::exponential(1.0);
    // Optional initial backlog, in diffusion units: Q_j(0) is drawn as
    // round(max(0, sqrt(r) * Normal(q0_mean, q0_sd))), a truncated Gaussian
    // rounded to a nonnegative integer.  Defaults to an empty system.
    double q0_mean = 0.0;
    double q0_sd = 0.0;

    double arrival_rate() const { return inter_arrival.is_never() ? 0.0 : 1.0 / inter_arrival.mean(); }
    double arrival_scv() const { return inter_arrival.scv(); }
    double batch_mean() const { return batch.mean(); }
    double batch_scv() const { return batch.scv(); }
    double mu() const { return 1.0 / packet_length.mean(); }
    double length_scv() const { return packet_length.scv(); }

    ClassParams with_arrival_rate(double lambda) const {
        ClassParams out = *this;
        out.inter_arrival = lambda > 0.0 ? inter_arrival.with_mean(1.0 / lambda) : Dist::never();
        return out;
    }
};

// Optional decoration of arrival batches with quantum-walk locations.
struct WalkSpec {
    SpherePoint start;
    double step;
};

// One class's batch arrival stream over (0, horizon].  An arrival at exactly
// t is included in A(t).
struct ArrivalPath {
    int cls = 0;
    double horizon = 0.0;
    std::vector<double> times;        // strictly increasing batch epochs
    std::vector<long> batch_sizes;    // rewards w >= 1
    std::vector<SpherePoint> marks;   // empty, or one per batch

    // A(t): total reward of batches with epoch <= t.
    double reward_count(double t) const;
    // N(t): number of renewal epochs <= t.
    long renewal_count(double t) const;
};

// Doubly stochastic renewal reward sample: renewal epochs from the class's
// inter-arrival law, batch rewards attached to each epoch.
ArrivalPath sample_dsrrrf(const ClassParams& params, double horizon, RngStream& rng,
                          const WalkSpec* walk = nullptr);

// S_j(h): number of whole packets served in h units of busy time.
long sample_service_count(const ClassParams& params, double busy_time, RngStream& rng);

// Sample paths of one simulation run on a uniform grid.  Counts are
// right-continuous; B is piecewise linear and exact at grid points.
struct QueuePath {
    double horizon = 0.0;
    double dt = 0.0;
    std::vector<double> times;
    std::vector<std::vector<double>> A;  // [class][grid]
    std::vector<std::vector<double>> Q;
    std::vector<std::vector<double>> D;
    std::vector<std::vector<double>> B;
    std::vector<double> V;           // total expected workload sum_j Q_j / mu_j
    std::vector<double> busy_total;  // sum_j B_j
    std::vector<double> mu;          // per-class mu_j, kept for workload queries

    std::size_t grid_size() const { return times.size(); }
};

// Event-driven multiclass single-server simulation under processor sharing
// with the given nominal weights (typically Lambda_j / mu_j), FIFO within a
// class.  Unused capacity is redistributed proportionally among nonempty
// classes, so total effort is 1 whenever any work is present.  Grid sampling
// is for output only; the event sequence is exact.
QueuePath simulate_queues(const std::vector<ClassParams>& classes,
                          const std::vector<double>& gps_weights, double horizon, double dt,
                          RngStream& rng, const std::vector<long>* initial_queue = nullptr);

// V(t) = sum_j Q_j(t) / mu_j recomputed from the Q paths (identical to
// path.V; exists as the standalone workload map).
std::vector<double> workload(const QueuePath& path);
std::vector<double> class_workload(const QueuePath& path, int cls);

// Diffusion-scaled idle account Ihat(t) = Xi * sqrt(r) (t - sum_j Bbar_j(t))
// with Xi = (sum_j 1/(Lambda_j/mu_j))^{-1}, evaluated on the path grid
// (path times t_u correspond to scaled times t_u / r).
std::vector<double> idle_process(const QueuePath& path, const std::vector<double>& Lambda,
                                 const std::vector<double>& mu, double r);

double idle_normalizer(const std::vector<double>& Lambda, const std::vector<double>& mu);

}  // namespace sphereq
