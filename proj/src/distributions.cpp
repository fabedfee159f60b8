#include "sphereq/distributions.hpp"

#include <cmath>

namespace sphereq {

DistFamily dist_family_from_name(const std::string& name) {
    if (name == "deterministic") return DistFamily::Deterministic;
    if (name == "exponential") return DistFamily::Exponential;
    if (name == "erlang") return DistFamily::Erlang;
    if (name == "lognormal") return DistFamily::LogNormal;
    throw UnsupportedDistribution("unknown distribution family: " + name);
}

const char* dist_family_name(DistFamily f) {
    switch (f) {
        case DistFamily::Deterministic: return "deterministic";
        case DistFamily::Exponential: return "exponential";
        case DistFamily::Erlang: return "erlang";
        case DistFamily::LogNormal: return "lognormal";
    }
    return "?";
}

Dist Dist::make(DistFamily family, double mean, double scv) {
    if (std::isinf(mean)) return Dist(family, mean, scv, 1);
    if (!(mean > 0.0)) throw UnsupportedDistribution("distribution mean must be > 0");
    switch (family) {
        case DistFamily::Deterministic:
            if (scv != 0.0) throw UnsupportedDistribution("deterministic requires scv = 0");
            return Dist(family, mean, 0.0, 1);
        case DistFamily::Exponential:
            if (std::abs(scv - 1.0) > 1e-12)
                throw UnsupportedDistribution("exponential requires scv = 1");
            return Dist(family, mean, 1.0, 1);
        case DistFamily::Erlang: {
            if (!(scv > 0.0) || scv > 1.0)
                throw UnsupportedDistribution("erlang requires scv in (0, 1]");
            const double kf = 1.0 / scv;
            const int k = static_cast<int>(std::lround(kf));
            if (k < 1 || std::abs(kf - k) > 1e-9)
                throw UnsupportedDistribution("erlang requires scv = 1/k for integer k");
            return Dist(family, mean, 1.0 / k, k);
        }
        case DistFamily::LogNormal:
            if (!(scv > 0.0)) throw UnsupportedDistribution("lognormal requires scv > 0");
            return Dist(family, mean, scv, 1);
    }
    throw UnsupportedDistribution("bad distribution family");
}

Dist Dist::erlang(int k, double mean) {
    if (k < 1) throw UnsupportedDistribution("erlang shape must be >= 1");
    return make(DistFamily::Erlang, mean, 1.0 / k);
}

Dist Dist::never() {
    return Dist(DistFamily::Exponential, std::numeric_limits<double>::infinity(), 1.0, 1);
}

Dist Dist::with_mean(double mean) const {
    if (std::isinf(mean)) return never();
    return Dist(family_, mean, scv_, erlang_k_);
}

double Dist::sample(RngStream& rng) const {
    if (is_never()) return std::numeric_limits<double>::infinity();
    switch (family_) {
        case DistFamily::Deterministic:
            return mean_;
        case DistFamily::Exponential:
            return rng.exponential(mean_);
        case DistFamily::Erlang: {
            double s = 0.0;
            const double scale = mean_ / erlang_k_;
            for (int i = 0; i < erlang_k_; ++i) s += rng.exponential(scale);
            return s;
        }
        case DistFamily::LogNormal: {
            const double s2 = std::log1p(scv_);
            const double mu = std::log(mean_) - 0.5 * s2;
            return std::exp(mu + std::sqrt(s2) * rng.normal());
        }
    }
    return mean_;
}

BatchFamily batch_family_from_name(const std::string& name) {
    if (name == "deterministic") return BatchFamily::Deterministic;
    if (name == "geometric") return BatchFamily::Geometric;
    if (name == "poisson-shifted") return BatchFamily::PoissonShifted;
    throw UnsupportedDistribution("unknown batch family: " + name);
}

const char* batch_family_name(BatchFamily f) {
    switch (f) {
        case BatchFamily::Deterministic: return "deterministic";
        case BatchFamily::Geometric: return "geometric";
        case BatchFamily::PoissonShifted: return "poisson-shifted";
    }
    return "?";
}

BatchDist BatchDist::deterministic(long size) {
    if (size < 1) throw UnsupportedDistribution("batch size must be >= 1");
    return BatchDist(BatchFamily::Deterministic, static_cast<double>(size), 0.0);
}

BatchDist BatchDist::geometric(double mean) {
    if (!(mean >= 1.0)) throw UnsupportedDistribution("geometric batch mean must be >= 1");
    return BatchDist(BatchFamily::Geometric, mean, 1.0 - 1.0 / mean);
}

BatchDist BatchDist::poisson_shifted(double mean) {
    if (!(mean >= 1.0)) throw UnsupportedDistribution("poisson-shifted batch mean must be >= 1");
    return BatchDist(BatchFamily::PoissonShifted, mean, (mean - 1.0) / (mean * mean));
}

BatchDist BatchDist::make(BatchFamily family, double mean) {
    switch (family) {
        case BatchFamily::Deterministic: {
            const long size = std::lround(mean);
            if (std::abs(mean - size) > 1e-9)
                throw UnsupportedDistribution("deterministic batch mean must be an integer");
            return deterministic(size);
        }
        case BatchFamily::Geometric: return geometric(mean);
        case BatchFamily::PoissonShifted: return poisson_shifted(mean);
    }
    throw UnsupportedDistribution("bad batch family");
}

long BatchDist::sample(RngStream& rng) const {
    switch (family_) {
        case BatchFamily::Deterministic:
            return std::lround(mean_);
        case BatchFamily::Geometric: {
            if (mean_ <= 1.0) return 1;
            const double p = 1.0 / mean_;
            const double u = rng.uniform_pos();
            return 1 + static_cast<long>(std::floor(std::log(u) / std::log1p(-p)));
        }
        case BatchFamily::PoissonShifted: {
            const double lambda = mean_ - 1.0;
            if (lambda <= 0.0) return 1;
            // Knuth's product method; batch means in queueing configs are small.
            const double limit = std::exp(-lambda);
            long k = 0;
            double prod = 1.0;
            do {
                prod *= rng.uniform_pos();
                ++k;
            } while (prod > limit);
            return k;  // k - 1 Poisson draws, shifted by one
        }
    }
    return 1;
}

}  // namespace sphereq
