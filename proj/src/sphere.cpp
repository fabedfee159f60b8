#include "sphereq/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sphereq {

SpherePoint::SpherePoint(int n_, std::vector<double> t) : n(n_), theta(std::move(t)) {
    // Reuse the SphericalAngles validation (count = 2^n, finite entries).
    SphericalAngles check(n, theta);
}

std::vector<double> embed(const SpherePoint& p) {
    const auto& t = p.theta;
    const std::size_t N = t.size();
    std::vector<double> u(N + 1);
    double prefix = 1.0;
    for (std::size_t k = 0; k + 1 < N; ++k) {
        u[k] = prefix * std::cos(t[k]);
        prefix *= std::sin(t[k]);
    }
    u[N - 1] = prefix * std::cos(t[N - 1]);
    u[N] = prefix * std::sin(t[N - 1]);
    return u;
}

SpherePoint point_from_embedding(int n, const std::vector<double>& u) {
    const std::size_t N = u.size() - 1;
    std::vector<double> theta(N, 0.0);
    // Stable inversion via suffix norms: theta_k = atan2(|tail|, u_k).
    std::vector<double> suffix(u.size() + 1, 0.0);
    for (std::size_t k = u.size(); k-- > 0;) suffix[k] = std::hypot(suffix[k + 1], u[k]);
    for (std::size_t k = 0; k + 1 < N; ++k) {
        if (suffix[k] < 1e-300) return SpherePoint(n, std::move(theta));
        theta[k] = std::atan2(suffix[k + 1], u[k]);
    }
    double phase = std::atan2(u[N], u[N - 1]);
    if (phase < 0.0) phase += 2.0 * M_PI;
    theta[N - 1] = phase;
    return SpherePoint(n, std::move(theta));
}

double geodesic_distance(const SpherePoint& a, const SpherePoint& b) {
    if (a.n != b.n) throw DimensionMismatch("geodesic_distance: level mismatch");
    const auto ua = embed(a);
    const auto ub = embed(b);
    // Chord form, accurate near zero where acos(dot) loses half the digits.
    double chord2 = 0.0;
    for (std::size_t i = 0; i < ua.size(); ++i)
        chord2 += (ua[i] - ub[i]) * (ua[i] - ub[i]);
    return 2.0 * std::asin(std::min(1.0, 0.5 * std::sqrt(chord2)));
}

bool Cap::contains(const SpherePoint& p) const {
    return geodesic_distance(center, p) <= geodesic_radius + 1e-12;
}

double cap_area(int manifold_dim, double radius) {
    // |S^{d-1}| * integral_0^radius sin^{d-1}(t) dt, by composite Simpson.
    const double d = static_cast<double>(manifold_dim);
    const double shell = 2.0 * std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0);
    const int panels = 256;
    const double h = radius / (2 * panels);
    auto f = [d](double t) { return std::pow(std::sin(t), d - 1.0); };
    double sum = f(0.0) + f(radius);
    for (int i = 1; i < 2 * panels; ++i) sum += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return shell * sum * h / 3.0;
}

std::vector<Cap> cap_ladder(const SpherePoint& center, double rho0, int K) {
    if (!(rho0 > 0.0) || rho0 > M_PI / 4.0)
        throw InvalidRadius("cap_ladder: rho0 must be in (0, pi/4], got " + std::to_string(rho0));
    if (K < 1) throw InvalidRadius("cap_ladder: K must be >= 1");
    std::vector<Cap> caps;
    caps.reserve(K);
    const int d = static_cast<int>(center.angle_count());
    double rho = rho0;
    for (int k = 0; k < K; ++k) {
        caps.push_back(Cap{center, rho, cap_area(d, rho)});
        rho *= 0.5;
    }
    return caps;
}

SpherePoint geodesic_walk_step(const SpherePoint& p, double step, RngStream& rng) {
    if (step < 0.0) throw DomainError("geodesic_walk_step: step must be >= 0");
    if (step == 0.0) return p;
    const auto u = embed(p);
    const std::size_t m = u.size();
    // Uniform tangent direction: project a Gaussian vector onto the tangent
    // space at u and normalize.
    std::vector<double> tan(m);
    double norm2 = 0.0;
    do {
        double dot = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            tan[i] = rng.normal();
            dot += tan[i] * u[i];
        }
        norm2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            tan[i] -= dot * u[i];
            norm2 += tan[i] * tan[i];
        }
    } while (norm2 < 1e-24);
    const double inv = 1.0 / std::sqrt(norm2);
    const double c = std::cos(step);
    const double s = std::sin(step);
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = c * u[i] + s * tan[i] * inv;
    return point_from_embedding(p.n, out);
}

SpherePoint LimitPoint::truncate(int n) const {
    const std::size_t dim = std::size_t{1} << n;
    std::vector<double> t(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) t[i] = angle(i + 1);
    return SpherePoint(n, std::move(t));
}

}  // namespace sphereq
