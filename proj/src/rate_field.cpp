#include "sphereq/rate_field.hpp"

#include <cmath>
#include <string>

namespace sphereq {

RateField RateField::constant(std::vector<double> lambda, std::vector<double> alpha2) {
    if (lambda.empty() || lambda.size() != alpha2.size())
        throw ConfigError("rate field: lambda/alpha2 size mismatch");
    for (double l : lambda)
        if (!(l >= 0.0)) throw ConfigError("rate field: lambda must be >= 0");
    for (double a : alpha2)
        if (!(a > 0.0)) throw ConfigError("rate field: alpha2 must be > 0");
    RateField f;
    f.base_ = std::move(lambda);
    f.alpha2_ = std::move(alpha2);
    f.lipschitz_ = 0.0;
    return f;
}

RateField RateField::affine_in_angles(std::vector<double> base,
                                      std::vector<std::vector<double>> slope,
                                      std::vector<double> alpha2) {
    if (base.empty() || base.size() != alpha2.size() || slope.size() != base.size())
        throw ConfigError("rate field: base/slope/alpha2 size mismatch");
    for (double a : alpha2)
        if (!(a > 0.0)) throw ConfigError("rate field: alpha2 must be > 0");
    RateField f;
    double lip = 0.0;
    for (const auto& s : slope) {
        double norm2 = 0.0;
        for (double c : s) norm2 += c * c;
        lip = std::max(lip, std::sqrt(norm2));
    }
    f.base_ = std::move(base);
    f.slope_ = std::move(slope);
    f.alpha2_ = std::move(alpha2);
    f.lipschitz_ = lip;
    return f;
}

RatePair RateField::at(int cls, const SpherePoint& p) const {
    if (cls < 0 || cls >= classes()) throw ConfigError("rate field: bad class index");
    double lambda = base_[cls];
    if (!slope_.empty()) {
        const auto& s = slope_[cls];
        const std::size_t interior = p.angle_count() - 1;  // phase slot excluded
        for (std::size_t i = 0; i < s.size() && i < interior; ++i) lambda += s[i] * p.theta[i];
    }
    if (lambda < 0.0)
        throw ConfigError("rate field: negative rate for class " + std::to_string(cls + 1));
    return {lambda, alpha2_[cls]};
}

RatePair RateField::at_limit(int cls, const LimitPoint& x) const {
    if (cls < 0 || cls >= classes()) throw ConfigError("rate field: bad class index");
    double lambda = base_[cls];
    if (!slope_.empty()) {
        const auto& s = slope_[cls];
        for (std::size_t i = 0; i < s.size(); ++i) lambda += s[i] * x.angle(i + 1);
    }
    if (lambda < 0.0)
        throw ConfigError("rate field: negative limit rate for class " + std::to_string(cls + 1));
    return {lambda, alpha2_[cls]};
}

RatePair rate_at(const RateField& field, const Cap& cap, int cls) {
    return field.at(cls, cap.center);
}

}  // namespace sphereq
