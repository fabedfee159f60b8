#pragma once

#include <vector>

#include "sphereq/sphere.hpp"

namespace sphereq {

struct RatePair {
    double lambda;  // batch arrival rate, >= 0
    double alpha2;  // inter-arrival SCV, > 0
};

// Per-class arrival-rate field over sphere points.  Two families:
//   constant          — lambda_j and alpha2_j independent of position
//   affine-in-angles  — lambda_j(x) = base_j + sum_i slope_j[i] * theta_i(x)
// The affine sum runs over the interior angles only (the phase slot carries
// no rate information), which is what makes level-truncated evaluations
// differ across levels until the truncation covers the slope support.
// Lipschitz bound is with respect to the Euclidean metric on angle vectors.
class RateField {
  public:
    static RateField constant(std::vector<double> lambda, std::vector<double> alpha2);
    static RateField affine_in_angles(std::vector<double> base,
                                      std::vector<std::vector<double>> slope,
                                      std::vector<double> alpha2);

    int classes() const { return static_cast<int>(alpha2_.size()); }
    double lipschitz() const { return lipschitz_; }
    bool is_constant() const { return slope_.empty(); }

    RatePair at(int cls, const SpherePoint& p) const;
    // Field value at the limiting point, all slope terms included.
    RatePair at_limit(int cls, const LimitPoint& x) const;

  private:
    RateField() = default;

    std::vector<double> base_;
    std::vector<std::vector<double>> slope_;  // empty for the constant family
    std::vector<double> alpha2_;
    double lipschitz_ = 0.0;
};

// Field evaluated at the cap center; continuity carries the value to the
// common point as the caps shrink.
RatePair rate_at(const RateField& field, const Cap& cap, int cls);

}  // namespace sphereq
