#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "sphereq/errors.hpp"

namespace sphereq {

using Complex = std::complex<double>;

// Numerical policy.  Hard unit-norm invariant at 1e-12, dual-route agreement
// between the direct coefficient formulas and the angle-space route at 1e-9,
// denominator guard for the direct formulas at 1e-6 (double-precision trig
// products over at most 64 factors).
inline constexpr double kNormTol = 1e-12;
inline constexpr double kCrossTol = 1e-9;
inline constexpr double kSingularGuard = 1e-6;
inline constexpr double kZeroVectorTol = 1e-24;
inline constexpr int kMaxQubits = 20;

enum class OpKind { Add, Sub, Mul, Div };

const char* op_name(OpKind kind);

// Bit string (j_1, ..., j_n), each entry 0 or 1, j_1 first.
struct BitString {
    std::vector<int> bits;

    explicit BitString(std::vector<int> b);
    int n() const { return static_cast<int>(bits.size()); }
};

// Amplitude index for a bit string: h = 2^{n-1} j_n + ... + 2 j_2 + j_1.
// j_1 is the least significant bit; h runs over 0 .. 2^n - 1.
std::size_t reindex(const BitString& bits);

// Unit-norm state of an n-qubit register.  amplitudes[h] holds the
// coefficient of the basis vector whose bit string reindexes to h.
class QubitState {
  public:
    QubitState(int n, std::vector<Complex> amplitudes, double norm_tol = kNormTol);

    int n() const { return n_; }
    std::size_t dim() const { return amplitudes_.size(); }
    const std::vector<Complex>& amplitudes() const { return amplitudes_; }
    Complex amplitude(std::size_t h) const { return amplitudes_[h]; }

  private:
    int n_;
    std::vector<Complex> amplitudes_;
};

// 2^n-angle coordinate vector.  Nominal domain is [0, pi/2] for the first
// 2^n - 1 entries and [0, 2pi] for the phase entry; any finite real values
// are accepted and operations deliberately do not wrap results back into the
// nominal box (the unit-norm property holds for arbitrary real angles and
// wrapping would break the operation-consistency identities).
class SphericalAngles {
  public:
    SphericalAngles(int n, std::vector<double> theta);

    int n() const { return n_; }
    std::size_t dim() const { return theta_.size(); }
    const std::vector<double>& theta() const { return theta_; }
    double phase() const { return theta_.back(); }

  private:
    int n_;
    std::vector<double> theta_;
};

// Length-2^n complex vector with no norm constraint.
struct RawAmplitudes {
    int n;
    std::vector<Complex> values;

    RawAmplitudes(int n_, std::vector<Complex> v);
    std::size_t dim() const { return values.size(); }
};

struct ChannelGain {
    Complex value;
};

// Amplitudes from angles:
//   psi_1     = cos t1
//   psi_k     = sin t1 ... sin t_{k-1} cos t_k          (2 <= k <= 2^n - 1)
//   psi_{2^n} = e^{i t_{2^n}} sin t1 ... sin t_{2^n-1}
// The result is unit-norm for any real angle vector.
QubitState from_angles(const SphericalAngles& angles);

// Sequential inversion of from_angles: t_k = arccos(psi_k / prefix), phase
// from arg(psi_{2^n}).  Requires the first 2^n - 1 amplitudes to be real and
// nonnegative (the image of the nominal domain); otherwise DomainError.
// When a prefix sine product falls under 1e-12 the remaining angles are set
// to 0 by convention and *degenerate (if given) is set.
SphericalAngles to_angles(const QubitState& state, bool* degenerate = nullptr);

double norm_squared(const RawAmplitudes& raw);

Complex inner_product(const std::vector<Complex>& a, const std::vector<Complex>& b);

// Scales to unit norm; returns the state and the normalizing constant
// (the Euclidean norm of the input).  ZeroVector if the squared norm is
// at most 1e-24.
std::pair<QubitState, double> normalize(const RawAmplitudes& raw);

// Angle-space operation map (the canonical route):
//   Add: (tPhi + tPsi)/2   Sub: (tPhi - tPsi)/2
//   Mul:  tPhi + tPsi      Div:  tPhi - tPsi
SphericalAngles op_combine(OpKind kind, const SphericalAngles& a, const SphericalAngles& b);

// Direct coefficient formulas for the four operations, computed from the
// input amplitudes plus trigonometric correction terms.  Exists as an
// independently computed cross-check of from_angles(op_combine(...)); the
// two agree within 1e-9 componentwise wherever the denominators are
// nonsingular.  Throws SingularDenominator (with the offending 1-based
// component index) when a guard is hit; callers fall back to op_combine.
QubitState coeff_map(OpKind kind, const QubitState& phi, const QubitState& psi,
                     const SphericalAngles& anglesPhi, const SphericalAngles& anglesPsi);

// Componentwise combination of the amplitudes themselves.  The result is
// generally off the unit sphere, hence RawAmplitudes.
RawAmplitudes elementwise_combine(OpKind kind, const QubitState& phi, const QubitState& psi);

// Measurement-channel gain G(Phi, Psi).  For unit-norm inputs the
// pseudo-inverse expression collapses to the inner product <Phi|Psi>,
// which is the fast path used here.
ChannelGain channel_gain(const QubitState& phi, const QubitState& psi);

// Verification route: builds H H^dag explicitly, applies the Moore-Penrose
// pseudo-inverse of the rank-1 outer product, and contracts with H(psi).
ChannelGain channel_gain_via_pinv(const QubitState& phi, const QubitState& psi);

// |Phi> G(Phi, Psi).  The residual Psi - Phi G is orthogonal to Phi.
RawAmplitudes apply_channel(const QubitState& phi, const QubitState& psi);

}  // namespace sphereq
