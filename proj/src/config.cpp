#include "sphereq/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sphereq {

RunMode run_mode_from_name(const std::string& name) {
    if (name == "fixed-n") return RunMode::FixedN;
    if (name == "varying-n") return RunMode::VaryingN;
    if (name == "algebra-check") return RunMode::AlgebraCheck;
    if (name == "skorohod-check") return RunMode::SkorohodCheck;
    throw ValidationError("mode", "unknown mode: " + name);
}

const char* run_mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::FixedN: return "fixed-n";
        case RunMode::VaryingN: return "varying-n";
        case RunMode::AlgebraCheck: return "algebra-check";
        case RunMode::SkorohodCheck: return "skorohod-check";
    }
    return "?";
}

namespace {

struct KvStore {
    std::map<std::string, std::pair<std::string, int>> entries;  // key -> (value, line)
    mutable std::map<std::string, bool> consumed;

    bool has(const std::string& key) const { return entries.count(key) != 0; }

    std::string take(const std::string& key, const std::string& fallback) const {
        auto it = entries.find(key);
        if (it == entries.end()) return fallback;
        consumed[key] = true;
        return it->second.first;
    }

    void check_all_consumed() const {
        for (const auto& [key, value] : entries)
            if (!consumed.count(key))
                throw ValidationError(key, "unknown configuration key: " + key);
    }
};

double parse_double(const std::string& key, const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ValidationError(key, "expected a number for " + key + ", got \"" + s + "\"");
    }
}

long parse_long(const std::string& key, const std::string& s) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ValidationError(key, "expected an integer for " + key + ", got \"" + s + "\"");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& s) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ValidationError(key, "expected an unsigned integer for " + key);
    }
}

bool parse_bool(const std::string& key, const std::string& s) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ValidationError(key, "expected true/false for " + key);
}

std::vector<double> parse_double_list(const std::string& key, const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw ValidationError(key, "expected a nonempty list for " + key);
    return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& s) {
    std::vector<int> out;
    for (double v : parse_double_list(key, s)) {
        const int i = static_cast<int>(std::lround(v));
        if (std::abs(v - i) > 1e-9) throw ValidationError(key, key + " entries must be integers");
        out.push_back(i);
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

KvStore tokenize(const std::string& text) {
    KvStore kv;
    std::stringstream ss(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(ss, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(line_no, "expected key = value on line " + std::to_string(line_no));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError(line_no, "empty key or value on line " + std::to_string(line_no));
        if (kv.entries.count(key))
            throw ParseError(line_no, "duplicate key " + key + " on line " + std::to_string(line_no));
        kv.entries[key] = {value, line_no};
    }
    return kv;
}

ClassParams build_class(const KvStore& kv, int j) {
    const std::string prefix = "class." + std::to_string(j) + ".";
    ClassParams p;
    p.id = j - 1;

    const std::string arrival = kv.take(prefix + "arrival", "exponential");
    const DistFamily af = dist_family_from_name(arrival);
    double arrival_scv = parse_double(prefix + "arrival_scv",
                                      kv.take(prefix + "arrival_scv",
                                              af == DistFamily::Deterministic ? "0" : "1"));
    // The base rate only seeds the prototype; ladders rescale it per cell.
    const double lambda0 = parse_double(prefix + "arrival_rate",
                                        kv.take(prefix + "arrival_rate", "1"));
    if (!(lambda0 > 0.0))
        throw ValidationError(prefix + "arrival_rate", "arrival rate must be > 0");
    try {
        p.inter_arrival = Dist::make(af, 1.0 / lambda0, arrival_scv);
    } catch (const UnsupportedDistribution& e) {
        throw ValidationError(prefix + "arrival", e.what());
    }

    const std::string batch = kv.take(prefix + "batch", "geometric");
    const double batch_mean =
        parse_double(prefix + "batch_mean", kv.take(prefix + "batch_mean", "2"));
    try {
        p.batch = BatchDist::make(batch_family_from_name(batch), batch_mean);
    } catch (const UnsupportedDistribution& e) {
        throw ValidationError(prefix + "batch", e.what());
    }

    const std::string length = kv.take(prefix + "length", "exponential");
    const DistFamily lf = dist_family_from_name(length);
    const double length_mean =
        parse_double(prefix + "length_mean", kv.take(prefix + "length_mean", "1"));
    const double length_scv = parse_double(prefix + "length_scv",
                                           kv.take(prefix + "length_scv",
                                                   lf == DistFamily::Deterministic ? "0" : "1"));
    if (!(length_mean > 0.0))
        throw ValidationError(prefix + "length_mean", "packet length mean must be > 0");
    try {
        p.packet_length = Dist::make(lf, length_mean, length_scv);
    } catch (const UnsupportedDistribution& e) {
        throw ValidationError(prefix + "length", e.what());
    }

    // Optional Gaussian initial backlog, in diffusion units.
    p.q0_mean = parse_double(prefix + "q0_mean", kv.take(prefix + "q0_mean", "0"));
    p.q0_sd = parse_double(prefix + "q0_sd", kv.take(prefix + "q0_sd", "0"));
    if (p.q0_mean < 0.0 || p.q0_sd < 0.0)
        throw ValidationError(prefix + "q0_mean", "initial backlog parameters must be >= 0");
    return p;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    const KvStore kv = tokenize(text);
    ExperimentConfig cfg;

    if (!kv.has("seed")) throw ValidationError("seed", "seed is required");
    cfg.seed = parse_u64("seed", kv.take("seed", "0"));
    cfg.mode = run_mode_from_name(kv.take("mode", "fixed-n"));
    cfg.out_dir = kv.take("out_dir", cfg.out_dir);

    const int J = static_cast<int>(parse_long("classes", kv.take("classes", "1")));
    if (J < 1) throw ValidationError("classes", "classes must be >= 1");
    for (int j = 1; j <= J; ++j) cfg.classes.push_back(build_class(kv, j));

    cfg.n = static_cast<int>(parse_long("n", kv.take("n", "1")));
    if (cfg.n < 1 || cfg.n > kMaxQubits) throw ValidationError("n", "n out of range");
    if (kv.has("n_ladder")) cfg.n_ladder = parse_int_list("n_ladder", kv.take("n_ladder", ""));

    // Rate field.  Default: constant, balanced so the base utilization is 1.
    const std::string family = kv.take("field", "constant");
    std::vector<double> alpha2(J);
    for (int j = 0; j < J; ++j) alpha2[j] = cfg.classes[j].arrival_scv();
    if (kv.has("field.alpha2")) {
        alpha2 = parse_double_list("field.alpha2", kv.take("field.alpha2", ""));
        if (static_cast<int>(alpha2.size()) != J)
            throw ValidationError("field.alpha2", "field.alpha2 needs one entry per class");
        for (int j = 0; j < J; ++j)
            if (std::abs(alpha2[j] - cfg.classes[j].arrival_scv()) > 1e-9)
                throw ValidationError("field.alpha2",
                                      "field.alpha2 must match the arrival family SCV");
    }
    if (family == "constant") {
        std::vector<double> lambda(J);
        for (int j = 0; j < J; ++j)
            lambda[j] = cfg.classes[j].mu() / (J * cfg.classes[j].batch_mean());
        if (kv.has("field.lambda")) {
            lambda = parse_double_list("field.lambda", kv.take("field.lambda", ""));
            if (static_cast<int>(lambda.size()) != J)
                throw ValidationError("field.lambda", "field.lambda needs one entry per class");
        }
        cfg.field = RateField::constant(lambda, alpha2);
    } else if (family == "affine-in-angles") {
        if (!kv.has("field.base"))
            throw ValidationError("field.base", "affine field requires field.base");
        std::vector<double> base = parse_double_list("field.base", kv.take("field.base", ""));
        if (static_cast<int>(base.size()) != J)
            throw ValidationError("field.base", "field.base needs one entry per class");
        std::vector<std::vector<double>> slope(J);
        for (int j = 1; j <= J; ++j) {
            const std::string key = "field.slope." + std::to_string(j);
            if (kv.has(key)) slope[j - 1] = parse_double_list(key, kv.take(key, ""));
        }
        cfg.field = RateField::affine_in_angles(base, slope, alpha2);
    } else {
        throw ValidationError("field", "unknown field family: " + family);
    }

    if (kv.has("x_angles")) cfg.x_angles = parse_double_list("x_angles", kv.take("x_angles", ""));

    cfg.theta = parse_double("theta", kv.take("theta", "-1"));
    if (kv.has("theta_seq")) cfg.theta_seq = parse_double_list("theta_seq", kv.take("theta_seq", ""));
    cfg.r_ladder = parse_double_list("r_ladder", kv.take("r_ladder", "16,64,256"));
    cfg.cap_rho0 = parse_double("cap_rho0", kv.take("cap_rho0", "0.2"));
    cfg.cap_k = static_cast<int>(parse_long("cap_k", kv.take("cap_k", "3")));
    if (cfg.cap_k < 1) throw ValidationError("cap_k", "cap_k must be >= 1");

    cfg.reps = parse_long("reps", kv.take("reps", "2000"));
    if (cfg.reps < 1) throw ValidationError("reps", "reps must be >= 1");
    cfg.t_star = parse_double("t_star", kv.take("t_star", "1.0"));
    if (!(cfg.t_star > 0.0)) throw ValidationError("t_star", "t_star must be > 0");
    cfg.grid_per_unit = parse_double("grid_per_unit", kv.take("grid_per_unit", "64"));
    if (!(cfg.grid_per_unit > 0.0))
        throw ValidationError("grid_per_unit", "grid_per_unit must be > 0");
    cfg.oracle_steps = static_cast<int>(parse_long("oracle_steps", kv.take("oracle_steps", "4096")));
    if (cfg.oracle_steps < 2) throw ValidationError("oracle_steps", "oracle_steps must be >= 2");
    cfg.oracle_samples = parse_long("oracle_samples", kv.take("oracle_samples", "20000"));
    if (cfg.oracle_samples < 2)
        throw ValidationError("oracle_samples", "oracle_samples must be >= 2");

    cfg.emit_paths = parse_bool("emit_paths", kv.take("emit_paths", "false"));
    cfg.paths_layout = kv.take("paths_layout", "combined");
    if (cfg.paths_layout != "combined" && cfg.paths_layout != "per-rep")
        throw ValidationError("paths_layout", "paths_layout must be combined or per-rep");
    cfg.paths_max_reps = parse_long("paths_max_reps", kv.take("paths_max_reps", "0"));

    cfg.algebra_n_max = static_cast<int>(parse_long("algebra.n_max", kv.take("algebra.n_max", "6")));
    cfg.algebra_draws = parse_long("algebra.draws", kv.take("algebra.draws", "1000"));
    cfg.skorohod_paths = parse_long("skorohod.paths", kv.take("skorohod.paths", "200"));
    cfg.skorohod_max_len = parse_long("skorohod.max_len", kv.take("skorohod.max_len", "1000"));
    if (cfg.algebra_n_max < 1 || cfg.algebra_draws < 1)
        throw ValidationError("algebra.draws", "algebra parameters must be >= 1");
    if (cfg.skorohod_paths < 1 || cfg.skorohod_max_len < 4)
        throw ValidationError("skorohod.paths", "skorohod parameters out of range");

    // Region center defaults: mid-box angles at the fixed level, or a short
    // leading-angle list for the varying regime.
    if (cfg.x_angles.empty()) {
        if (cfg.mode == RunMode::VaryingN) {
            cfg.x_angles = {0.7, 0.5};
        } else {
            cfg.x_angles.assign(std::size_t{1} << cfg.n, M_PI / 4);
        }
    }
    if (cfg.mode == RunMode::FixedN &&
        cfg.x_angles.size() != (std::size_t{1} << cfg.n))
        throw ValidationError("x_angles", "x_angles must have exactly 2^n entries in fixed-n mode");
    if (cfg.mode == RunMode::VaryingN) {
        int prev = 0;
        for (int n : cfg.n_ladder) {
            if (n <= prev || n > kMaxQubits)
                throw ValidationError("n_ladder", "n_ladder must be strictly increasing");
            prev = n;
        }
    }
    if (static_cast<int>(cfg.field.classes()) != J)
        throw ValidationError("field", "field class count mismatch");

    kv.check_all_consumed();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << is.rdbuf();
    return parse_config_text(buffer.str());
}

ExperimentConfig demo_fixed_n_config(std::uint64_t seed) {
    // Short packets keep the workload granularity w / (mu sqrt(r)) small
    // relative to the diffusion scale, which tightens the pre-limit bias of
    // the reflected workload at the moderate r values the ladder sweeps.
    ExperimentConfig cfg = parse_config_text(
        "mode = fixed-n\n"
        "seed = 1\n"
        "class.1.length_mean = 0.25\n");
    cfg.seed = seed;
    return cfg;
}

ExperimentConfig demo_varying_n_config(std::uint64_t seed) {
    // Two classes with different variability, and a rate field whose first
    // class depends on the first two angles: the class mix, and with it the
    // diffusion variance, shifts across levels until the truncation covers
    // the slope support.
    const std::string text =
        "mode = varying-n\n"
        "seed = 1\n"
        "classes = 2\n"
        "class.2.arrival = erlang\n"
        "class.2.arrival_scv = 0.5\n"
        "class.2.batch = deterministic\n"
        "class.2.batch_mean = 2\n"
        "class.2.length = erlang\n"
        "class.2.length_scv = 0.5\n"
        "field = affine-in-angles\n"
        "field.base = 0.4, 0.5\n"
        "field.slope.1 = 0.2, 0.1\n"
        "x_angles = 0.7, 0.5\n"
        "n_ladder = 1,2,3,4\n";
    ExperimentConfig cfg = parse_config_text(text);
    cfg.seed = seed;
    return cfg;
}

}  // namespace sphereq
