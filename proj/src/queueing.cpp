#include "sphereq/queueing.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

namespace sphereq {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double ArrivalPath::reward_count(double t) const {
    double total = 0.0;
    for (std::size_t i = 0; i < times.size() && times[i] <= t; ++i) total += batch_sizes[i];
    return total;
}

long ArrivalPath::renewal_count(double t) const {
    long n = 0;
    for (double epoch : times) {
        if (epoch > t) break;
        ++n;
    }
    return n;
}

ArrivalPath sample_dsrrrf(const ClassParams& params, double horizon, RngStream& rng,
                          const WalkSpec* walk) {
    if (!(horizon > 0.0)) throw ConfigError("sample_dsrrrf: horizon must be > 0");
    ArrivalPath path;
    path.cls = params.id;
    path.horizon = horizon;
    std::optional<SpherePoint> mark;
    if (walk) mark = walk->start;
    double t = 0.0;
    for (;;) {
        const double gap = params.inter_arrival.sample(rng);
        if (!(gap > 0.0) || std::isinf(gap)) {
            if (std::isinf(gap)) break;
            throw UnsupportedDistribution("inter-arrival samples must be strictly positive");
        }
        t += gap;
        if (t > horizon) break;
        path.times.push_back(t);
        path.batch_sizes.push_back(params.batch.sample(rng));
        if (walk) {
            mark = geodesic_walk_step(*mark, walk->step, rng);
            path.marks.push_back(*mark);
        }
    }
    return path;
}

long sample_service_count(const ClassParams& params, double busy_time, RngStream& rng) {
    if (busy_time < 0.0) throw ConfigError("sample_service_count: busy time must be >= 0");
    long count = 0;
    double used = 0.0;
    for (;;) {
        const double v = params.packet_length.sample(rng);
        if (!(v > 0.0)) throw UnsupportedDistribution("packet lengths must be strictly positive");
        used += v;
        if (used > busy_time) return count;
        ++count;
    }
}

namespace {

struct ClassState {
    std::deque<double> lengths;   // FIFO remaining packets, head first
    double head_remaining = 0.0;  // unserved part of the head packet
    double served_whole = 0.0;    // exact sum of completed packet lengths
    double head_progress = 0.0;   // effort spent on the current head
    double next_arrival = kInf;
    double A = 0.0;
    long D = 0;

    bool busy() const { return !lengths.empty(); }
    long Q() const { return static_cast<long>(lengths.size()); }
    double B() const { return served_whole + head_progress; }
};

}  // namespace

QueuePath simulate_queues(const std::vector<ClassParams>& classes,
                          const std::vector<double>& gps_weights, double horizon, double dt,
                          RngStream& rng, const std::vector<long>* initial_queue) {
    const std::size_t J = classes.size();
    if (J == 0) throw ConfigError("simulate_queues: no classes");
    if (gps_weights.size() != J) throw ConfigError("simulate_queues: weight count mismatch");
    if (!(horizon > 0.0)) throw ConfigError("simulate_queues: horizon must be > 0");
    if (!(dt > 0.0)) throw ConfigError("simulate_queues: grid spacing must be > 0");
    for (double w : gps_weights)
        if (!(w > 0.0)) throw ConfigError("simulate_queues: weights must be > 0");

    std::vector<ClassState> st(J);
    for (std::size_t j = 0; j < J; ++j) {
        if (initial_queue && (*initial_queue)[j] > 0) {
            for (long i = 0; i < (*initial_queue)[j]; ++i)
                st[j].lengths.push_back(classes[j].packet_length.sample(rng));
            st[j].head_remaining = st[j].lengths.front();
        }
        st[j].next_arrival = classes[j].inter_arrival.sample(rng);
    }

    std::vector<double> rate(J, 0.0);
    auto recompute_rates = [&]() {
        double active_weight = 0.0;
        for (std::size_t j = 0; j < J; ++j)
            if (st[j].busy()) active_weight += gps_weights[j];
        for (std::size_t j = 0; j < J; ++j)
            rate[j] = (st[j].busy() && active_weight > 0.0) ? gps_weights[j] / active_weight : 0.0;
    };
    recompute_rates();

    const std::size_t grid_n = static_cast<std::size_t>(std::llround(horizon / dt));
    QueuePath path;
    path.horizon = horizon;
    path.dt = dt;
    path.times.resize(grid_n + 1);
    path.A.assign(J, std::vector<double>(grid_n + 1));
    path.Q.assign(J, std::vector<double>(grid_n + 1));
    path.D.assign(J, std::vector<double>(grid_n + 1));
    path.B.assign(J, std::vector<double>(grid_n + 1));
    path.V.resize(grid_n + 1);
    path.busy_total.resize(grid_n + 1);
    path.mu.resize(J);
    for (std::size_t j = 0; j < J; ++j) path.mu[j] = classes[j].mu();

    double now = 0.0;
    std::size_t gi = 0;
    // Record grid points up to `limit`; strict excludes tg == limit.  Counts
    // are right-continuous, so a grid point coinciding with an event time is
    // recorded only after that event is applied.  B is extrapolated within
    // the current constant-rate segment, exact at grid points.
    auto record_up_to = [&](double limit, bool inclusive) {
        while (gi <= grid_n) {
            const double tg = gi * dt;
            if (inclusive ? tg > limit : tg >= limit) break;
            path.times[gi] = tg;
            double v = 0.0, btot = 0.0;
            for (std::size_t j = 0; j < J; ++j) {
                const double b = st[j].B() + rate[j] * std::max(0.0, tg - now);
                path.A[j][gi] = st[j].A;
                path.Q[j][gi] = static_cast<double>(st[j].Q());
                path.D[j][gi] = static_cast<double>(st[j].D);
                path.B[j][gi] = b;
                v += st[j].Q() / path.mu[j];
                btot += b;
            }
            path.V[gi] = v;
            path.busy_total[gi] = btot;
            ++gi;
        }
    };

    while (true) {
        // Next event: earliest head completion or batch arrival.
        double t_event = kInf;
        int ev_class = -1;
        bool ev_completion = false;
        for (std::size_t j = 0; j < J; ++j) {
            if (st[j].busy() && rate[j] > 0.0) {
                const double tc = now + st[j].head_remaining / rate[j];
                if (tc < t_event) {
                    t_event = tc;
                    ev_class = static_cast<int>(j);
                    ev_completion = true;
                }
            }
        }
        for (std::size_t j = 0; j < J; ++j) {
            if (st[j].next_arrival < t_event) {
                t_event = st[j].next_arrival;
                ev_class = static_cast<int>(j);
                ev_completion = false;
            }
        }

        // All events strictly before t_event are applied, so every grid point
        // below it can be recorded; points at exactly t_event wait until the
        // simultaneous events there are processed.
        if (t_event > horizon) {
            record_up_to(horizon, /*inclusive=*/true);
            break;
        }
        record_up_to(t_event, /*inclusive=*/false);

        // Advance the busy classes over [now, t_event].
        const double step = std::max(0.0, t_event - now);
        for (std::size_t j = 0; j < J; ++j) {
            if (rate[j] > 0.0) {
                st[j].head_progress += rate[j] * step;
                st[j].head_remaining -= rate[j] * step;
            }
        }
        now = t_event;

        ClassState& c = st[ev_class];
        if (ev_completion) {
            // Pin B to the exact partial sum of served lengths so that
            // D(t) = S(B(t)) holds without float drift.
            c.served_whole += c.lengths.front();
            c.head_progress = 0.0;
            c.lengths.pop_front();
            c.D += 1;
            c.head_remaining = c.lengths.empty() ? 0.0 : c.lengths.front();
        } else {
            const long w = classes[ev_class].batch.sample(rng);
            const bool was_idle = !c.busy();
            for (long i = 0; i < w; ++i) {
                const double v = classes[ev_class].packet_length.sample(rng);
                if (!(v > 0.0))
                    throw UnsupportedDistribution("packet lengths must be strictly positive");
                c.lengths.push_back(v);
            }
            if (was_idle) c.head_remaining = c.lengths.front();
            c.A += static_cast<double>(w);
            const double gap = classes[ev_class].inter_arrival.sample(rng);
            if (!(gap > 0.0) && !std::isinf(gap))
                throw UnsupportedDistribution("inter-arrival samples must be strictly positive");
            c.next_arrival = now + gap;
        }
        recompute_rates();
    }
    return path;
}

std::vector<double> workload(const QueuePath& path) {
    std::vector<double> v(path.grid_size(), 0.0);
    for (std::size_t j = 0; j < path.Q.size(); ++j)
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += path.Q[j][i] / path.mu[j];
    return v;
}

std::vector<double> class_workload(const QueuePath& path, int cls) {
    std::vector<double> w(path.grid_size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = path.Q[cls][i] / path.mu[cls];
    return w;
}

double idle_normalizer(const std::vector<double>& Lambda, const std::vector<double>& mu) {
    if (Lambda.size() != mu.size()) throw DimensionMismatch("idle_normalizer: size mismatch");
    double inv_sum = 0.0;
    for (std::size_t j = 0; j < Lambda.size(); ++j) {
        const double tilde = Lambda[j] / mu[j];
        if (!(tilde > 0.0)) throw InfeasibleRates("idle_normalizer: Lambda_j/mu_j must be > 0");
        inv_sum += 1.0 / tilde;
    }
    return 1.0 / inv_sum;
}

std::vector<double> idle_process(const QueuePath& path, const std::vector<double>& Lambda,
                                 const std::vector<double>& mu, double r) {
    const double xi = idle_normalizer(Lambda, mu);
    const double inv_sqrt_r = 1.0 / std::sqrt(r);
    std::vector<double> ihat(path.grid_size());
    for (std::size_t i = 0; i < ihat.size(); ++i)
        ihat[i] = xi * inv_sqrt_r * (path.times[i] - path.busy_total[i]);
    return ihat;
}

}  // namespace sphereq
