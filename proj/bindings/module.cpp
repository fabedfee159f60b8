#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sphereq/qubit.hpp"
#include "sphereq/scaling.hpp"
#include "sphereq/selfcheck.hpp"

namespace py = pybind11;
using namespace sphereq;

namespace {

OpKind op_from_name(const std::string& name) {
    if (name == "add") return OpKind::Add;
    if (name == "sub") return OpKind::Sub;
    if (name == "mul") return OpKind::Mul;
    if (name == "div") return OpKind::Div;
    throw std::invalid_argument("op must be add/sub/mul/div");
}

}  // namespace

PYBIND11_MODULE(_sphereq, m) {
    m.doc() = "n-qubit sphere operations and heavy-traffic scaling-limit primitives";

    m.def("reindex", [](const std::vector<int>& bits) { return reindex(BitString(bits)); },
          py::arg("bits"), "Amplitude index of a bit string (j1 least significant).");

    m.def(
        "from_angles",
        [](int n, const std::vector<double>& theta) {
            return from_angles(SphericalAngles(n, theta)).amplitudes();
        },
        py::arg("n"), py::arg("theta"), "Unit-norm amplitudes from 2^n spherical angles.");

    m.def(
        "to_angles",
        [](int n, const std::vector<Complex>& amps) {
            bool degenerate = false;
            const SphericalAngles a = to_angles(QubitState(n, amps), &degenerate);
            return py::make_tuple(a.theta(), degenerate);
        },
        py::arg("n"), py::arg("amplitudes"),
        "Angles of a state; returns (theta, degenerate_flag).");

    m.def(
        "normalize",
        [](int n, const std::vector<Complex>& values) {
            auto [state, constant] = normalize(RawAmplitudes(n, values));
            return py::make_tuple(state.amplitudes(), constant);
        },
        py::arg("n"), py::arg("values"), "Unit-norm state and the normalizing constant.");

    m.def(
        "norm_squared",
        [](int n, const std::vector<Complex>& values) {
            return norm_squared(RawAmplitudes(n, values));
        },
        py::arg("n"), py::arg("values"));

    m.def(
        "op_combine",
        [](const std::string& op, int n, const std::vector<double>& ta,
           const std::vector<double>& tb) {
            return op_combine(op_from_name(op), SphericalAngles(n, ta), SphericalAngles(n, tb))
                .theta();
        },
        py::arg("op"), py::arg("n"), py::arg("theta_phi"), py::arg("theta_psi"),
        "Angle-space operation map for add/sub/mul/div.");

    m.def(
        "coeff_map",
        [](const std::string& op, int n, const std::vector<double>& ta,
           const std::vector<double>& tb) {
            const SphericalAngles a(n, ta), b(n, tb);
            return coeff_map(op_from_name(op), from_angles(a), from_angles(b), a, b).amplitudes();
        },
        py::arg("op"), py::arg("n"), py::arg("theta_phi"), py::arg("theta_psi"),
        "Direct coefficient formulas; cross-check of the angle-space route.");

    m.def(
        "elementwise_combine",
        [](const std::string& op, int n, const std::vector<Complex>& phi,
           const std::vector<Complex>& psi) {
            return elementwise_combine(op_from_name(op), QubitState(n, phi), QubitState(n, psi))
                .values;
        },
        py::arg("op"), py::arg("n"), py::arg("phi"), py::arg("psi"));

    m.def(
        "channel_gain",
        [](int n, const std::vector<Complex>& phi, const std::vector<Complex>& psi) {
            return channel_gain(QubitState(n, phi), QubitState(n, psi)).value;
        },
        py::arg("n"), py::arg("phi"), py::arg("psi"), "Measurement-channel gain G(Phi, Psi).");

    m.def(
        "apply_channel",
        [](int n, const std::vector<Complex>& phi, const std::vector<Complex>& psi) {
            return apply_channel(QubitState(n, phi), QubitState(n, psi)).values;
        },
        py::arg("n"), py::arg("phi"), py::arg("psi"));

    m.def("skorohod_reflect", &skorohod_reflect, py::arg("netput"),
          "Reflected path and regulator: returns (V, I).");

    m.def(
        "rbm_samples",
        [](double theta, double sigma2, double v0, double t, long reps, int steps,
           std::uint64_t seed) {
            RngStream rng(seed);
            return rbm_oracle(RBMParams(theta, sigma2, v0), t, reps, steps, rng);
        },
        py::arg("theta"), py::arg("sigma2"), py::arg("v0"), py::arg("t"), py::arg("reps"),
        py::arg("steps") = 4096, py::arg("seed") = 1,
        "Monte Carlo samples of reflected Brownian motion at time t.");

    m.def("ks_statistic", &ks_statistic, py::arg("a"), py::arg("b"),
          "Two-sample Kolmogorov-Smirnov statistic.");
    m.def("ks_critical", &ks_critical, py::arg("alpha"), py::arg("n"), py::arg("m"));

    m.def(
        "geodesic_walk_step",
        [](int n, const std::vector<double>& theta, double step, std::uint64_t seed) {
            RngStream rng(seed);
            return geodesic_walk_step(SpherePoint(n, theta), step, rng).theta;
        },
        py::arg("n"), py::arg("theta"), py::arg("step"), py::arg("seed") = 1,
        "One isotropic geodesic step on the level-n sphere.");

    py::register_exception<SingularDenominator>(m, "SingularDenominatorError");
    py::register_exception<DomainError>(m, "DomainError");
    py::register_exception<ZeroVector>(m, "ZeroVectorError");
    py::register_exception<DimensionMismatch>(m, "DimensionMismatchError");
}
