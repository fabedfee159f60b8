#include "sphereq/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sphereq {

namespace {

std::size_t dim_for(int n) {
    if (n < 1 || n > kMaxQubits)
        throw DimensionMismatch("qubit count must be in [1, " + std::to_string(kMaxQubits) +
                                "], got " + std::to_string(n));
    return std::size_t{1} << n;
}

void require_same_n(int na, int nb, const char* where) {
    if (na != nb)
        throw DimensionMismatch(std::string(where) + ": qubit counts differ (" +
                                std::to_string(na) + " vs " + std::to_string(nb) + ")");
}


}  // namespace

const char* op_name(OpKind kind) {
    switch (kind) {
        case OpKind::Add: return "add";
        case OpKind::Sub: return "sub";
        case OpKind::Mul: return "mul";
        case OpKind::Div: return "div";
    }
    return "?";
}

BitString::BitString(std::vector<int> b) : bits(std::move(b)) {
    if (bits.empty() || bits.size() > kMaxQubits)
        throw DimensionMismatch("bit string length must be in [1, " +
                                std::to_string(kMaxQubits) + "]");
    for (int v : bits)
        if (v != 0 && v != 1) throw DomainError("bit string entries must be 0 or 1");
}

std::size_t reindex(const BitString& bits) {
    // h = 2^{n-1} j_n + ... + 2 j_2 + j_1: j_1 is the least significant bit.
    std::size_t h = 0;
    for (std::size_t l = 0; l < bits.bits.size(); ++l)
        h |= static_cast<std::size_t>(bits.bits[l]) << l;
    return h;
}

QubitState::QubitState(int n, std::vector<Complex> amplitudes, double norm_tol)
    : n_(n), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != dim_for(n))
        throw DimensionMismatch("amplitude count must be exactly 2^n");
    double s = 0.0;
    for (const Complex& a : amplitudes_) s += std::norm(a);
    if (std::abs(s - 1.0) > norm_tol)
        throw DomainError("state is not unit-norm: |sum -1| = " + std::to_string(std::abs(s - 1.0)));
}

SphericalAngles::SphericalAngles(int n, std::vector<double> theta)
    : n_(n), theta_(std::move(theta)) {
    if (theta_.size() != dim_for(n))
        throw DimensionMismatch("angle count must be exactly 2^n");
    for (double t : theta_)
        if (!std::isfinite(t)) throw DomainError("angles must be finite");
}

RawAmplitudes::RawAmplitudes(int n_, std::vector<Complex> v) : n(n_), values(std::move(v)) {
    if (values.size() != dim_for(n))
        throw DimensionMismatch("raw amplitude count must be exactly 2^n");
}

QubitState from_angles(const SphericalAngles& angles) {
    const auto& t = angles.theta();
    const std::size_t N = t.size();
    std::vector<Complex> psi(N);
    double prefix = 1.0;
    for (std::size_t k = 0; k + 1 < N; ++k) {
        psi[k] = prefix * std::cos(t[k]);
        prefix *= std::sin(t[k]);
    }
    psi[N - 1] = std::polar(1.0, t[N - 1]) * prefix;
    return QubitState(angles.n(), std::move(psi));
}

SphericalAngles to_angles(const QubitState& state, bool* degenerate) {
    const auto& psi = state.amplitudes();
    const std::size_t N = psi.size();
    std::vector<double> theta(N, 0.0);
    if (degenerate) *degenerate = false;

    for (std::size_t k = 0; k + 1 < N; ++k) {
        if (std::abs(psi[k].imag()) > kNormTol)
            throw DomainError("to_angles: component " + std::to_string(k + 1) +
                              " has a nonzero imaginary part");
        if (psi[k].real() < -kNormTol)
            throw DomainError("to_angles: component " + std::to_string(k + 1) + " is negative");
    }

    // suffix[k] = norm of (psi_k, ..., psi_N); on the sphere this equals the
    // sine prefix product, so theta_k = arccos(psi_k / prefix) is evaluated
    // in the numerically stable form atan2(suffix_{k+1}, psi_k).
    std::vector<double> suffix(N + 1, 0.0);
    for (std::size_t k = N; k-- > 0;) suffix[k] = std::hypot(suffix[k + 1], std::abs(psi[k]));

    for (std::size_t k = 0; k + 1 < N; ++k) {
        if (suffix[k] < kNormTol) {
            // Remaining amplitudes are forced to ~0; any angle choice gives
            // the same state.  Fix them to 0 so round trips are deterministic.
            if (degenerate) *degenerate = true;
            return SphericalAngles(state.n(), std::move(theta));
        }
        theta[k] = std::atan2(suffix[k + 1], std::max(0.0, psi[k].real()));
    }
    if (suffix[N - 1] < kNormTol) {
        if (degenerate) *degenerate = true;
        return SphericalAngles(state.n(), std::move(theta));
    }
    double phase = std::arg(psi[N - 1]);
    if (phase < 0.0) phase += 2.0 * M_PI;
    theta[N - 1] = phase;
    return SphericalAngles(state.n(), std::move(theta));
}

double norm_squared(const RawAmplitudes& raw) {
    double s = 0.0;
    for (const Complex& v : raw.values) s += std::norm(v);
    return s;
}

Complex inner_product(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("inner_product: length mismatch");
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

std::pair<QubitState, double> normalize(const RawAmplitudes& raw) {
    const double s = norm_squared(raw);
    if (s <= kZeroVectorTol) throw ZeroVector("normalize: zero vector");
    const double c = std::sqrt(s);
    std::vector<Complex> scaled(raw.values);
    for (Complex& v : scaled) v /= c;
    return {QubitState(raw.n, std::move(scaled)), c};
}

SphericalAngles op_combine(OpKind kind, const SphericalAngles& a, const SphericalAngles& b) {
    require_same_n(a.n(), b.n(), "op_combine");
    const auto& ta = a.theta();
    const auto& tb = b.theta();
    std::vector<double> out(ta.size());
    for (std::size_t i = 0; i < ta.size(); ++i) {
        switch (kind) {
            case OpKind::Add: out[i] = 0.5 * (ta[i] + tb[i]); break;
            case OpKind::Sub: out[i] = 0.5 * (ta[i] - tb[i]); break;
            case OpKind::Mul: out[i] = ta[i] + tb[i]; break;
            case OpKind::Div: out[i] = ta[i] - tb[i]; break;
        }
    }
    return SphericalAngles(a.n(), std::move(out));
}

namespace {

[[noreturn]] void singular(std::size_t component, const char* what) {
    throw SingularDenominator(static_cast<int>(component),
                              "coeff_map: singular denominator (" + std::string(what) +
                              ") at component " + std::to_string(component));
}

// Addition, Step I.  Interior components:
//   v_k = [(phi_k + psi_k)
//          + prod_{j<k}(sin tA_j + sin tB_j) * (cos tA_k + cos tB_k)
//          - (prod_{j<k} sin tA_j * cos tA_k + prod_{j<k} sin tB_j * cos tB_k)]
//         / prod_{j<=k} 2 cos((tA_j - tB_j)/2)
// Last component analogous with e^{i(tA+tB)} phases and the denominator
// phase e^{i(tA+tB)/2}.  Subtraction, Step II, is the same skeleton with
// differences in place of sums and half-sum cosines in the denominators.
std::vector<Complex> coeff_add_sub(bool add, const std::vector<Complex>& phi,
                                   const std::vector<Complex>& psi,
                                   const std::vector<double>& ta, const std::vector<double>& tb) {
    const std::size_t N = ta.size();
    const double sign = add ? 1.0 : -1.0;
    std::vector<Complex> out(N);

    double prod_mix = 1.0;   // prod (sin tA_j +/- sin tB_j)
    double prod_sa = 1.0;    // prod sin tA_j
    double prod_sb = 1.0;    // prod sin tB_j
    double denom = 1.0;      // prod 2 cos(half angle)
    for (std::size_t k = 0; k + 1 < N; ++k) {
        const double half = add ? 0.5 * (ta[k] - tb[k]) : 0.5 * (ta[k] + tb[k]);
        const double factor = std::cos(half);
        if (std::abs(factor) <= kSingularGuard)
            singular(k + 1, add ? "cos of half-difference" : "cos of half-sum");
        denom *= 2.0 * factor;
        const double ca = std::cos(ta[k]);
        const double cb = std::cos(tb[k]);
        const Complex num = (phi[k] + sign * psi[k]) + prod_mix * (ca + cb) -
                            (prod_sa * ca + sign * prod_sb * cb);
        out[k] = num / denom;
        prod_mix *= std::sin(ta[k]) + sign * std::sin(tb[k]);
        prod_sa *= std::sin(ta[k]);
        prod_sb *= std::sin(tb[k]);
    }
    const std::size_t L = N - 1;
    const Complex ea = std::polar(1.0, ta[L]);
    const Complex eb = std::polar(1.0, tb[L]);
    const Complex cross = std::polar(1.0, ta[L] + sign * tb[L]);
    const Complex num = (phi[L] + sign * psi[L]) + cross * prod_mix -
                        (ea * prod_sa + sign * eb * prod_sb);
    const Complex dphase = std::polar(1.0, 0.5 * (ta[L] + sign * tb[L]));
    out[L] = num / (denom * dphase);
    return out;
}

// Multiplication, Step III, and division, Step IV.  Both cancel a directly
// computed product/ratio of the input amplitudes against a trigonometric
// bracket:
//   mul: v_k = prod_{j<k}(2 cos tA_j / sin tA_j) * 2 phi_k psi_k
//              - [prod_{j<k}(sin(tA_j+tB_j) - sin(tA_j-tB_j))
//                   * (cos(tA_k-tB_k) + cos(tA_k+tB_k))
//                 - prod_{j<k} sin(tA_j+tB_j) * cos(tA_k+tB_k)]
//   div: the direct term carries (phi_k / psi_k) * sin^2 tB_j * cos^2 tB_k
//        and the bracket closes with sin(tA_j-tB_j), cos(tA_k-tB_k).
std::vector<Complex> coeff_mul_div(bool mul, const std::vector<Complex>& phi,
                                   const std::vector<Complex>& psi,
                                   const std::vector<double>& ta, const std::vector<double>& tb) {
    const std::size_t N = ta.size();
    std::vector<Complex> out(N);

    double direct_pref = 1.0;  // prod over j<k of the per-factor direct-term weight
    double prod_sum_minus_diff = 1.0;  // prod (sin(tA+tB) - sin(tA-tB))
    double prod_close = 1.0;           // prod sin(tA+tB) (mul) or sin(tA-tB) (div)
    for (std::size_t k = 0; k + 1 < N; ++k) {
        const double cs = std::cos(ta[k] + tb[k]);
        const double cd = std::cos(ta[k] - tb[k]);
        Complex direct;
        if (mul) {
            direct = direct_pref * 2.0 * phi[k] * psi[k];
        } else {
            if (std::abs(psi[k]) <= kSingularGuard) singular(k + 1, "psi component");
            const double cb = std::cos(tb[k]);
            direct = direct_pref * 2.0 * cb * cb * (phi[k] / psi[k]);
        }
        const double close_k = mul ? cs : cd;
        const double open_k = cd + cs;
        const Complex bracket = prod_sum_minus_diff * open_k - prod_close * close_k;
        out[k] = direct - bracket;

        const double sa = std::sin(ta[k]);
        if (std::abs(sa) <= kSingularGuard) singular(k + 2, "sin of first operand angle");
        const double sb = std::sin(tb[k]);
        direct_pref *= mul ? 2.0 * std::cos(ta[k]) / sa
                           : 2.0 * std::cos(ta[k]) * sb * sb / sa;
        const double ssum = std::sin(ta[k] + tb[k]);
        const double sdiff = std::sin(ta[k] - tb[k]);
        prod_sum_minus_diff *= ssum - sdiff;
        prod_close *= mul ? ssum : sdiff;
    }
    const std::size_t L = N - 1;
    Complex direct;
    if (mul) {
        direct = direct_pref * phi[L] * psi[L];
    } else {
        if (std::abs(psi[L]) <= kSingularGuard) singular(L + 1, "psi component");
        direct = direct_pref * (phi[L] / psi[L]);
    }
    const double phase_sign = mul ? 1.0 : -1.0;
    const Complex ephase = std::polar(1.0, ta[L] + phase_sign * tb[L]);
    const Complex bracket = ephase * (prod_sum_minus_diff - prod_close);
    out[L] = direct - bracket;
    return out;
}

}  // namespace

QubitState coeff_map(OpKind kind, const QubitState& phi, const QubitState& psi,
                     const SphericalAngles& anglesPhi, const SphericalAngles& anglesPsi) {
    require_same_n(phi.n(), psi.n(), "coeff_map");
    require_same_n(phi.n(), anglesPhi.n(), "coeff_map");
    require_same_n(psi.n(), anglesPsi.n(), "coeff_map");
    const auto& ta = anglesPhi.theta();
    const auto& tb = anglesPsi.theta();
    std::vector<Complex> v;
    switch (kind) {
        case OpKind::Add: v = coeff_add_sub(true, phi.amplitudes(), psi.amplitudes(), ta, tb); break;
        case OpKind::Sub: v = coeff_add_sub(false, phi.amplitudes(), psi.amplitudes(), ta, tb); break;
        case OpKind::Mul: v = coeff_mul_div(true, phi.amplitudes(), psi.amplitudes(), ta, tb); break;
        case OpKind::Div: v = coeff_mul_div(false, phi.amplitudes(), psi.amplitudes(), ta, tb); break;
    }
    // This route certifies agreement with the angle-space map at 1e-9, so the
    // unit-norm check is applied at that tolerance rather than the hard one.
    return QubitState(phi.n(), std::move(v), kCrossTol);
}

RawAmplitudes elementwise_combine(OpKind kind, const QubitState& phi, const QubitState& psi) {
    require_same_n(phi.n(), psi.n(), "elementwise_combine");
    const auto& a = phi.amplitudes();
    const auto& b = psi.amplitudes();
    std::vector<Complex> out(a.size());
    for (std::size_t h = 0; h < a.size(); ++h) {
        switch (kind) {
            case OpKind::Add: out[h] = a[h] + b[h]; break;
            case OpKind::Sub: out[h] = a[h] - b[h]; break;
            case OpKind::Mul: out[h] = a[h] * b[h]; break;
            case OpKind::Div:
                if (std::abs(b[h]) <= kNormTol)
                    throw DivisionByZeroAmplitude("elementwise_combine: near-zero divisor at h=" +
                                                  std::to_string(h));
                out[h] = a[h] / b[h];
                break;
        }
    }
    return RawAmplitudes(phi.n(), std::move(out));
}

ChannelGain channel_gain(const QubitState& phi, const QubitState& psi) {
    require_same_n(phi.n(), psi.n(), "channel_gain");
    return ChannelGain{inner_product(phi.amplitudes(), psi.amplitudes())};
}

ChannelGain channel_gain_via_pinv(const QubitState& phi, const QubitState& psi) {
    require_same_n(phi.n(), psi.n(), "channel_gain_via_pinv");
    const auto& f = phi.amplitudes();
    const auto& p = psi.amplitudes();
    const std::size_t N = f.size();
    // M = H(phi) H^dag(phi) is rank one, so pinv(M) = M / trace(M)^2.
    double trace = 0.0;
    for (const Complex& v : f) trace += std::norm(v);
    const double scale = trace * trace;
    // G = H^dag(phi) pinv(M) H(psi), contracted explicitly.
    Complex g{0.0, 0.0};
    for (std::size_t a = 0; a < N; ++a) {
        Complex row{0.0, 0.0};
        for (std::size_t b = 0; b < N; ++b) {
            const Complex pinv_ab = f[a] * std::conj(f[b]) / scale;
            row += pinv_ab * p[b];
        }
        g += std::conj(f[a]) * row;
    }
    return ChannelGain{g};
}

RawAmplitudes apply_channel(const QubitState& phi, const QubitState& psi) {
    const Complex g = channel_gain(phi, psi).value;
    std::vector<Complex> out(phi.amplitudes());
    for (Complex& v : out) v *= g;
    return RawAmplitudes(phi.n(), std::move(out));
}

}  // namespace sphereq
