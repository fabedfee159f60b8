#pragma once

#include <vector>

#include "sphereq/qubit.hpp"
#include "sphereq/rng.hpp"

namespace sphereq {

// A point on the level-n state sphere, in the same 2^n-angle layout as
// SphericalAngles.  The real embedding splits the phase component into its
// cosine and sine parts, giving a unit vector in R^{2^n + 1}; geodesic
// geometry below works in that embedding.
struct SpherePoint {
    int n = 1;
    std::vector<double> theta = {0.0, 0.0};

    SpherePoint() = default;
    SpherePoint(int n_, std::vector<double> t);

    SphericalAngles as_angles() const { return SphericalAngles(n, theta); }
    std::size_t angle_count() const { return theta.size(); }
};

// Real unit vector of length 2^n + 1 for a point.
std::vector<double> embed(const SpherePoint& p);

// Inverse of embed; interior angles land in [0, pi], phase in [0, 2pi).
SpherePoint point_from_embedding(int n, const std::vector<double>& u);

double geodesic_distance(const SpherePoint& a, const SpherePoint& b);

// Geodesic cap on the level-n sphere.
struct Cap {
    SpherePoint center;
    double geodesic_radius = 0.0;  // radians
    double area = 0.0;             // surface measure of the cap

    bool contains(const SpherePoint& p) const;
};

// Surface measure of a geodesic cap of the given radius on the unit sphere
// of manifold dimension d (embedded in R^{d+1}); strictly increasing in the
// radius, which is all downstream monotonicity checks rely on.
double cap_area(int manifold_dim, double radius);

// K nested caps around the given center with radii rho0 * 2^{-(k-1)}.
// Requires rho0 in (0, pi/4] and K >= 1.
std::vector<Cap> cap_ladder(const SpherePoint& center, double rho0, int K);

// One isotropic geodesic step of the given length: pick a uniform tangent
// direction at p and move along the great circle.  step = 0 returns p.
SpherePoint geodesic_walk_step(const SpherePoint& p, double step, RngStream& rng);

// Point on the infinite-level sphere, represented by its leading angles
// (all further angles are 0).  Level n keeps the first 2^n entries.
struct LimitPoint {
    std::vector<double> leading_angles;

    double angle(std::size_t i) const {  // 1-based index
        return i <= leading_angles.size() ? leading_angles[i - 1] : 0.0;
    }
    SpherePoint truncate(int n) const;
};

}  // namespace sphereq
