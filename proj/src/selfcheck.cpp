#include "sphereq/selfcheck.hpp"

#include <algorithm>
#include <cmath>

namespace sphereq {

namespace {

SphericalAngles random_angles(int n, RngStream& rng, double lo, double hi) {
    const std::size_t dim = std::size_t{1} << n;
    std::vector<double> t(dim);
    for (double& x : t) x = lo + (hi - lo) * rng.uniform();
    return SphericalAngles(n, std::move(t));
}

QubitState random_unit_state(int n, RngStream& rng) {
    const std::size_t dim = std::size_t{1} << n;
    std::vector<Complex> v(dim);
    for (Complex& c : v) c = Complex(rng.normal(), rng.normal());
    return normalize(RawAmplitudes(n, std::move(v))).first;
}

}  // namespace

SuiteResult check_normalization(std::uint64_t seed, int n_max, long draws) {
    SuiteResult res{"angle-map normalization", 0, 0, 0.0, kNormTol};
    RngStream rng(seed, 101);
    for (int n = 1; n <= n_max; ++n) {
        for (long i = 0; i < draws; ++i) {
            // Deliberately outside the nominal box: the identity holds for
            // arbitrary real angles.
            const SphericalAngles angles = random_angles(n, rng, -2.0 * M_PI, 2.0 * M_PI);
            const QubitState state = from_angles(angles);
            double s = 0.0;
            for (const Complex& a : state.amplitudes()) s += std::norm(a);
            const double dev = std::abs(s - 1.0);
            res.worst = std::max(res.worst, dev);
            res.trials++;
            if (dev >= kNormTol) res.failures++;
        }
    }
    return res;
}

SuiteResult check_consistency(std::uint64_t seed, int n_max, long draws, const CoeffRoute& route) {
    SuiteResult res{"operation-route consistency", 0, 0, 0.0, kCrossTol};
    RngStream rng(seed, 102);
    const CoeffRoute fn = route ? route : CoeffRoute(&coeff_map);
    const OpKind kinds[] = {OpKind::Add, OpKind::Sub, OpKind::Mul, OpKind::Div};
    for (int n = 1; n <= n_max; ++n) {
        for (OpKind kind : kinds) {
            long done = 0;
            long attempts = 0;
            while (done < draws) {
                if (++attempts > 50 * draws)
                    throw ConfigError("consistency check: too many singular redraws");
                const SphericalAngles ta = random_angles(n, rng, 0.05, M_PI / 2 - 0.05);
                const SphericalAngles tb = random_angles(n, rng, 0.05, M_PI / 2 - 0.05);
                const QubitState phi = from_angles(ta);
                const QubitState psi = from_angles(tb);
                QubitState via_angles = from_angles(op_combine(kind, ta, tb));
                try {
                    const QubitState direct = fn(kind, phi, psi, ta, tb);
                    double dev = 0.0;
                    for (std::size_t h = 0; h < direct.dim(); ++h)
                        dev = std::max(dev,
                                       std::abs(direct.amplitude(h) - via_angles.amplitude(h)));
                    res.worst = std::max(res.worst, dev);
                    res.trials++;
                    if (dev >= kCrossTol) res.failures++;
                    ++done;
                } catch (const SingularDenominator&) {
                    // outside the precondition; redraw
                } catch (const DomainError&) {
                    // a perturbed route may fall off the sphere; count it
                    res.trials++;
                    res.failures++;
                    ++done;
                }
            }
        }
    }
    return res;
}

SuiteResult check_round_trip(std::uint64_t seed, int n_max, long draws) {
    SuiteResult res{"angle round trip", 0, 0, 0.0, 1e-10};
    RngStream rng(seed, 103);
    for (int n = 1; n <= n_max; ++n) {
        for (long i = 0; i < draws; ++i) {
            const std::size_t dim = std::size_t{1} << n;
            std::vector<double> t(dim);
            for (std::size_t k = 0; k + 1 < dim; ++k) t[k] = 0.05 + (M_PI / 2 - 0.1) * rng.uniform();
            t[dim - 1] = 0.05 + (2.0 * M_PI - 0.1) * rng.uniform();
            const SphericalAngles angles(n, t);
            bool degenerate = false;
            const SphericalAngles back = to_angles(from_angles(angles), &degenerate);
            double dev = 0.0;
            for (std::size_t k = 0; k < dim; ++k)
                dev = std::max(dev, std::abs(back.theta()[k] - t[k]));
            if (degenerate) dev = std::max(dev, 1.0);
            res.worst = std::max(res.worst, dev);
            res.trials++;
            if (dev >= res.bound) res.failures++;
        }
    }
    return res;
}

SuiteResult check_channel_projection(std::uint64_t seed, int n_max, long draws) {
    SuiteResult res{"channel projection", 0, 0, 0.0, 1e-10};
    RngStream rng(seed, 104);
    for (int n = 1; n <= n_max; ++n) {
        for (long i = 0; i < draws; ++i) {
            const QubitState phi = random_unit_state(n, rng);
            const QubitState psi = random_unit_state(n, rng);
            const RawAmplitudes projected = apply_channel(phi, psi);
            std::vector<Complex> residual(psi.amplitudes());
            for (std::size_t h = 0; h < residual.size(); ++h) residual[h] -= projected.values[h];
            const double dev = std::abs(inner_product(phi.amplitudes(), residual));
            res.worst = std::max(res.worst, dev);
            res.trials++;
            if (dev >= res.bound) res.failures++;
        }
    }
    return res;
}

SuiteResult check_orthogonal_additivity(std::uint64_t seed, int n_max, long draws) {
    SuiteResult res{"disjoint-support norm additivity", 0, 0, 0.0, kNormTol};
    RngStream rng(seed, 105);
    for (int n = 1; n <= n_max; ++n) {
        const std::size_t dim = std::size_t{1} << n;
        for (long i = 0; i < draws; ++i) {
            // Random disjoint supports, hence zero inner product.
            std::vector<Complex> a(dim), b(dim);
            for (std::size_t h = 0; h < dim; ++h) {
                const Complex v(rng.normal(), rng.normal());
                if (rng.uniform() < 0.5)
                    a[h] = v;
                else
                    b[h] = v;
            }
            const RawAmplitudes ra(n, a), rb(n, b);
            std::vector<Complex> sum(dim);
            for (std::size_t h = 0; h < dim; ++h) sum[h] = a[h] + b[h];
            const double lhs = std::sqrt(norm_squared(RawAmplitudes(n, sum)));
            const double rhs = std::sqrt(norm_squared(ra) + norm_squared(rb));
            const double dev = std::abs(lhs - rhs);
            res.worst = std::max(res.worst, dev);
            res.trials++;
            if (dev >= kNormTol) res.failures++;
        }
    }
    return res;
}

SuiteResult check_reindex_bijective(int n_max) {
    SuiteResult res{"reindex bijectivity", 0, 0, 0.0, 0.0};
    for (int n = 1; n <= n_max; ++n) {
        const std::size_t dim = std::size_t{1} << n;
        std::vector<bool> seen(dim, false);
        for (std::size_t code = 0; code < dim; ++code) {
            std::vector<int> bits(n);
            for (int l = 0; l < n; ++l) bits[l] = static_cast<int>((code >> l) & 1);
            const std::size_t h = reindex(BitString(bits));
            res.trials++;
            if (h >= dim || seen[h]) res.failures++;
            if (h < dim) seen[h] = true;
        }
        for (std::size_t h = 0; h < dim; ++h)
            if (!seen[h]) res.failures++;
    }
    return res;
}

std::pair<std::vector<double>, std::vector<double>> skorohod_reflect_bruteforce(
    const std::vector<double>& netput) {
    const std::size_t m = netput.size();
    std::vector<double> I(m), V(m);
    for (std::size_t i = 0; i < m; ++i) {
        double worst = 0.0;
        for (std::size_t s = 0; s <= i; ++s) worst = std::max(worst, -netput[s]);
        I[i] = std::max(0.0, worst);
        V[i] = netput[i] + I[i];
    }
    return {V, I};
}

namespace {

std::vector<double> random_netput(RngStream& rng, long max_len) {
    const long m = 2 + static_cast<long>(rng.uniform() * (max_len - 2));
    std::vector<double> x(m);
    x[0] = rng.uniform();  // nonnegative start
    for (long i = 1; i < m; ++i) x[i] = x[i - 1] + rng.normal() * 0.5;
    return x;
}

}  // namespace

SuiteResult check_skorohod_oracle(std::uint64_t seed, long paths, long max_len,
                                  const ReflectRoute& route) {
    SuiteResult res{"skorohod vs brute force", 0, 0, 0.0, 0.0};
    RngStream rng(seed, 106);
    const ReflectRoute fn = route ? route : ReflectRoute(&skorohod_reflect);
    for (long p = 0; p < paths; ++p) {
        const std::vector<double> x = random_netput(rng, max_len);
        const auto [v_fast, i_fast] = fn(x);
        const auto [v_ref, i_ref] = skorohod_reflect_bruteforce(x);
        double dev = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            dev = std::max(dev, std::abs(v_fast[i] - v_ref[i]));
            dev = std::max(dev, std::abs(i_fast[i] - i_ref[i]));
        }
        const double residual = complementarity_residual(v_fast, i_fast);
        res.worst = std::max(res.worst, std::max(dev, residual));
        res.trials++;
        if (dev != 0.0 || residual != 0.0) res.failures++;
    }
    return res;
}

SuiteResult check_skorohod_minimality(std::uint64_t seed, long paths, long max_len,
                                      long candidates_per_path) {
    SuiteResult res{"skorohod minimality", 0, 0, 0.0, 0.0};
    RngStream rng(seed, 107);
    for (long p = 0; p < paths; ++p) {
        const std::vector<double> x = random_netput(rng, max_len);
        const auto [v, i_min] = skorohod_reflect(x);
        for (long c = 0; c < candidates_per_path; ++c) {
            // Independent feasible candidate: nondecreasing, keeps x + I' >= 0.
            std::vector<double> cand(x.size());
            double level = std::max(0.0, -x[0]) + rng.uniform() * 0.1;
            cand[0] = level;
            for (std::size_t t = 1; t < x.size(); ++t) {
                if (rng.uniform() < 0.3) level += rng.uniform() * 0.2;
                level = std::max(level, -x[t]);
                cand[t] = level;
            }
            double dev = 0.0;
            for (std::size_t t = 0; t < x.size(); ++t)
                dev = std::max(dev, i_min[t] - cand[t]);  // positive = violation
            res.worst = std::max(res.worst, dev);
            res.trials++;
            if (dev > 0.0) res.failures++;
        }
    }
    return res;
}

std::vector<SuiteResult> run_algebra_suites(std::uint64_t seed, int n_max, long draws) {
    return {check_normalization(seed, std::max(n_max, 6), draws),
            check_consistency(seed, std::min(n_max, 4), draws),
            check_round_trip(seed, std::min(n_max, 4), draws),
            check_channel_projection(seed, std::min(n_max, 4), draws),
            check_orthogonal_additivity(seed, std::min(n_max, 4), draws),
            check_reindex_bijective(10)};
}

std::vector<SuiteResult> run_skorohod_suites(std::uint64_t seed, long paths, long max_len) {
    return {check_skorohod_oracle(seed, paths, max_len, {}),
            check_skorohod_minimality(seed, std::max<long>(paths / 2, 1), max_len, 2)};
}

}  // namespace sphereq
