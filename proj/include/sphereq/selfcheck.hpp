#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sphereq/qubit.hpp"
#include "sphereq/scaling.hpp"

namespace sphereq {

struct SuiteResult {
    std::string name;
    long trials = 0;
    long failures = 0;
    double worst = 0.0;   // worst observed deviation
    double bound = 0.0;   // tolerance it was held to
    bool pass() const { return failures == 0; }
};

// The operation routes are injectable so a deliberately perturbed
// implementation can be shown to trip the corresponding suite.
using CoeffRoute = std::function<QubitState(OpKind, const QubitState&, const QubitState&,
                                            const SphericalAngles&, const SphericalAngles&)>;
using ReflectRoute = std::function<std::pair<std::vector<double>, std::vector<double>>(
    const std::vector<double>&)>;

SuiteResult check_normalization(std::uint64_t seed, int n_max, long draws);
SuiteResult check_consistency(std::uint64_t seed, int n_max, long draws,
                              const CoeffRoute& route = {});
SuiteResult check_round_trip(std::uint64_t seed, int n_max, long draws);
SuiteResult check_channel_projection(std::uint64_t seed, int n_max, long draws);
SuiteResult check_orthogonal_additivity(std::uint64_t seed, int n_max, long draws);
SuiteResult check_reindex_bijective(int n_max);
SuiteResult check_skorohod_oracle(std::uint64_t seed, long paths, long max_len,
                                  const ReflectRoute& route = {});
SuiteResult check_skorohod_minimality(std::uint64_t seed, long paths, long max_len,
                                      long candidates_per_path);

std::vector<SuiteResult> run_algebra_suites(std::uint64_t seed, int n_max, long draws);
std::vector<SuiteResult> run_skorohod_suites(std::uint64_t seed, long paths, long max_len);

// Brute-force O(m^2) reflection used as the oracle for the running-supremum
// implementation.
std::pair<std::vector<double>, std::vector<double>> skorohod_reflect_bruteforce(
    const std::vector<double>& netput);

}  // namespace sphereq
