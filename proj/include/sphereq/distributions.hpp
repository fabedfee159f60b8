#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "sphereq/errors.hpp"
#include "sphereq/rng.hpp"

namespace sphereq {

// Positive continuous distributions for inter-arrival times and packet
// lengths, parameterized by mean and squared coefficient of variation.
// Families span SCV = 0 (deterministic), 1/k (Erlang-k), 1 (exponential)
// and arbitrary positive SCV (log-normal).
enum class DistFamily { Deterministic, Exponential, Erlang, LogNormal };

DistFamily dist_family_from_name(const std::string& name);
const char* dist_family_name(DistFamily f);

class Dist {
  public:
    static Dist make(DistFamily family, double mean, double scv);
    static Dist deterministic(double mean) { return make(DistFamily::Deterministic, mean, 0.0); }
    static Dist exponential(double mean) { return make(DistFamily::Exponential, mean, 1.0); }
    static Dist erlang(int k, double mean);
    static Dist lognormal(double mean, double scv) { return make(DistFamily::LogNormal, mean, scv); }
    // Zero-rate arrival stream: samples are +infinity.
    static Dist never();

    DistFamily family() const { return family_; }
    double mean() const { return mean_; }
    double scv() const { return scv_; }
    bool is_never() const { return std::isinf(mean_); }

    Dist with_mean(double mean) const;

    double sample(RngStream& rng) const;

  private:
    Dist(DistFamily f, double mean, double scv, int k) : family_(f), mean_(mean), scv_(scv), erlang_k_(k) {}

    DistFamily family_;
    double mean_;
    double scv_;
    int erlang_k_ = 1;
};

// Integer batch-size distributions with support {1, 2, ...}.
enum class BatchFamily { Deterministic, Geometric, PoissonShifted };

BatchFamily batch_family_from_name(const std::string& name);
const char* batch_family_name(BatchFamily f);

class BatchDist {
  public:
    static BatchDist deterministic(long size);
    static BatchDist geometric(double mean);        // scv = 1 - 1/mean
    static BatchDist poisson_shifted(double mean);  // 1 + Poisson(mean - 1)
    static BatchDist make(BatchFamily family, double mean);

    BatchFamily family() const { return family_; }
    double mean() const { return mean_; }
    double scv() const { return scv_; }

    long sample(RngStream& rng) const;

  private:
    BatchDist(BatchFamily f, double mean, double scv) : family_(f), mean_(mean), scv_(scv) {}

    BatchFamily family_;
    double mean_;
    double scv_;
};

}  // namespace sphereq
