#pragma once

// Labeled-data generation: scenarios are drawn uniformly from configured
// parameter ranges (channel gains log-uniformly), labeled with the grid
// oracle, min-max scaled against the fixed range endpoints, and split
// 80/20 by a seeded shuffle. Everything is deterministic given the seed,
// including under parallel generation (one derived RNG stream per sample
// index and attempt).

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mecoff/cost_model.hpp"
#include "mecoff/parallel.hpp"
#include "mecoff/rng.hpp"
#include "mecoff/scenario_io.hpp"
#include "mecoff/solver.hpp"
#include "mecoff/types.hpp"

namespace mecoff {

struct ParamRange {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
};

struct GenConfig {
    int n_devices = 3;
    int n_samples = 1000;
    uint64_t seed = 1;

    // Sampling ranges. Channel gain is drawn log-uniformly; the rest are
    // uniform. weight_energy is 1 - weight_delay.
    ParamRange data_bits{1e3, 5e5};        // s
    ParamRange cpu_cycles{3e6, 1.5e9};     // c
    ParamRange local_cpu_hz{1.0, 1e9};     // f_l
    ParamRange channel_gain_sq{1e-13, 1e-9};
    ParamRange max_delay_s{0.1, 2.0};      // deadline
    ParamRange weight_delay{0.0, 1.0};     // alpha

    // Static network constants.
    double bandwidth_hz = 1e6;
    double noise_power_w = 7.9e-13;
    double energy_coeff = 1e-28;
    double mes_cpu_hz = 2.5e9;
    double tx_power_w = 0.3;
    double idle_power_w = 0.1;

    // The deadline is not a model input by default; this flag appends it
    // as a seventh per-device feature for ablations.
    bool deadline_feature = false;

    std::string solver_id = "grid";  // labeling solver
    double granularity = 0.1;

    int features_per_device() const { return deadline_feature ? 7 : 6; }

    void validate() const {
        if (n_devices < 1 || n_devices > 16)
            throw std::invalid_argument("gen: n_devices out of range");
        if (n_samples < 1) throw std::invalid_argument("gen: n_samples must be positive");
        for (const ParamRange* r :
             {&data_bits, &cpu_cycles, &local_cpu_hz, &channel_gain_sq, &max_delay_s, &weight_delay})
            if (!(r->lo < r->hi) || !(r->lo > 0) || !std::isfinite(r->hi))
                if (r != &weight_delay || !(r->lo < r->hi))  // alpha may start at 0
                    throw std::invalid_argument("gen: empty or invalid parameter range");
    }
};

// Min-max feature scaling against fixed range endpoints (channel gain in
// the log10 domain), so inference-time scaling never depends on the
// training batch. Per-device feature order:
//   s, c, f_l, log10(h_sq), alpha, beta [, deadline]
class FeatureScaler {
  public:
    FeatureScaler() = default;
    explicit FeatureScaler(const GenConfig& cfg) {
        params_ = {
            {cfg.data_bits.lo, cfg.data_bits.hi, false},
            {cfg.cpu_cycles.lo, cfg.cpu_cycles.hi, false},
            {cfg.local_cpu_hz.lo, cfg.local_cpu_hz.hi, false},
            {std::log10(cfg.channel_gain_sq.lo), std::log10(cfg.channel_gain_sq.hi), true},
            {0.0, 1.0, false},  // alpha
            {0.0, 1.0, false},  // beta
        };
        if (cfg.deadline_feature) params_.push_back({cfg.max_delay_s.lo, cfg.max_delay_s.hi, false});
    }

    int features_per_device() const { return static_cast<int>(params_.size()); }

    std::vector<double> scale(const Scenario& sc) const {
        std::vector<double> out;
        out.reserve(sc.devices.size() * params_.size());
        for (const Device& d : sc.devices) {
            append(out, 0, d.task.data_bits);
            append(out, 1, d.task.cpu_cycles);
            append(out, 2, d.local_cpu_hz);
            append(out, 3, d.channel_gain_sq);
            append(out, 4, d.weight_delay);
            append(out, 5, d.weight_energy);
            if (params_.size() > 6) append(out, 6, d.task.max_delay_s);
        }
        return out;
    }

    double scale_one(int param, double raw) const {
        const Param& p = params_.at(param);
        const double v = p.log10 ? std::log10(raw) : raw;
        return (v - p.lo) / (p.hi - p.lo);
    }

    double unscale_one(int param, double scaled) const {
        const Param& p = params_.at(param);
        const double v = p.lo + scaled * (p.hi - p.lo);
        return p.log10 ? std::pow(10.0, v) : v;
    }

    struct Param {
        double lo = 0.0;
        double hi = 1.0;
        bool log10 = false;
        bool operator==(const Param&) const = default;
    };
    const std::vector<Param>& params() const { return params_; }
    void set_params(std::vector<Param> p) { params_ = std::move(p); }

    bool operator==(const FeatureScaler&) const = default;

  private:
    void append(std::vector<double>& out, int param, double raw) const {
        out.push_back(scale_one(param, raw));
    }

    std::vector<Param> params_;
};

struct Sample {
    int id = 0;
    bool train = true;
    Scenario scenario;
    std::vector<double> features;
    int class_label = 0;
    std::vector<double> theta_labels;
    double oracle_cost = 0.0;
};

struct Dataset {
    GenConfig config;
    FeatureScaler scaler;
    std::vector<Sample> samples;
    int discarded = 0;  // infeasible draws replaced during generation

    size_t train_count() const {
        size_t k = 0;
        for (const Sample& s : samples) k += s.train;
        return k;
    }
};

// Device i occupies bit i (least significant first).
inline int encode_decision(const Decision& d) {
    int cls = 0;
    for (int i = 0; i < d.n(); ++i)
        if (d.bits[i]) cls |= 1 << i;
    return cls;
}

inline Decision decode_class(int class_index, int n) {
    if (class_index < 0 || class_index >= (1 << n))
        throw std::invalid_argument("decode_class: class index out of range");
    Decision d;
    d.bits.resize(n);
    for (int i = 0; i < n; ++i) d.bits[i] = (class_index >> i) & 1;
    return d;
}

inline Scenario sample_scenario(const GenConfig& cfg, Rng& rng) {
    Scenario sc;
    sc.mes_cpu_hz = cfg.mes_cpu_hz;
    sc.radio.bandwidth_hz = cfg.bandwidth_hz;
    sc.radio.noise_power_w = cfg.noise_power_w;
    sc.radio.tx_power_w.assign(cfg.n_devices, cfg.tx_power_w);
    sc.radio.idle_power_w.assign(cfg.n_devices, cfg.idle_power_w);
    sc.devices.resize(cfg.n_devices);
    for (int i = 0; i < cfg.n_devices; ++i) {
        Device& d = sc.devices[i];
        d.id = i;
        d.task.data_bits = rng.uniform(cfg.data_bits.lo, cfg.data_bits.hi);
        d.task.cpu_cycles = rng.uniform(cfg.cpu_cycles.lo, cfg.cpu_cycles.hi);
        d.local_cpu_hz = rng.uniform(cfg.local_cpu_hz.lo, cfg.local_cpu_hz.hi);
        d.channel_gain_sq = rng.log_uniform(cfg.channel_gain_sq.lo, cfg.channel_gain_sq.hi);
        d.weight_delay = rng.uniform(cfg.weight_delay.lo, cfg.weight_delay.hi);
        d.weight_energy = 1.0 - d.weight_delay;
        d.task.max_delay_s = rng.uniform(cfg.max_delay_s.lo, cfg.max_delay_s.hi);
        d.energy_coeff = cfg.energy_coeff;
    }
    return sc;
}

// Convenience overload seeding a fresh stream.
inline Scenario sample_scenario(const GenConfig& cfg, uint64_t seed) {
    Rng rng(seed);
    return sample_scenario(cfg, rng);
}

inline Dataset generate(const GenConfig& cfg) {
    cfg.validate();
    Dataset ds;
    ds.config = cfg;
    ds.scaler = FeatureScaler(cfg);
    ds.samples.resize(cfg.n_samples);

    const SolverConfig solver_cfg{cfg.granularity, 1e-9};
    constexpr int kMaxAttempts = 1000;

    std::vector<int> attempts(cfg.n_samples, 0);
    std::vector<std::string> errors(cfg.n_samples);

    parallel_for(cfg.n_samples, [&](size_t idx) {
        for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
            Rng rng(derive_seed(cfg.seed, "dataset.sample", idx, static_cast<uint64_t>(attempt)));
            Scenario sc = sample_scenario(cfg, rng);
            const Solution sol = solve_with(cfg.solver_id, sc, solver_cfg);
            if (!sol.ok()) {
                ++attempts[idx];
                continue;
            }
            Sample& s = ds.samples[idx];
            s.id = static_cast<int>(idx);
            s.scenario = std::move(sc);
            s.features = ds.scaler.scale(s.scenario);
            s.class_label = encode_decision(sol.decision);
            s.theta_labels = sol.allocation.ratios;
            s.oracle_cost = sol.total_cost;
            return;
        }
        errors[idx] = "no feasible scenario after " + std::to_string(kMaxAttempts) + " attempts";
    });

    for (const std::string& e : errors)
        if (!e.empty()) throw std::runtime_error("generate: " + e + " (ranges look pathological)");

    int discarded = 0;
    for (int a : attempts) discarded += a;
    ds.discarded = discarded;
    const double total_draws = static_cast<double>(cfg.n_samples) + discarded;
    if (discarded > 0 && discarded / total_draws > 0.5)
        throw std::runtime_error(
            "generate: infeasible-scenario rate " + std::to_string(discarded / total_draws) +
            " exceeds 0.5; configured ranges look pathological");

    // 80/20 split by seeded shuffle; the first 80% of the shuffled order
    // trains.
    std::vector<int> order(cfg.n_samples);
    for (int i = 0; i < cfg.n_samples; ++i) order[i] = i;
    Rng split_rng(derive_seed(cfg.seed, "dataset.split"));
    split_rng.shuffle(order);
    const int n_train = static_cast<int>(std::llround(0.8 * cfg.n_samples));
    for (int i = 0; i < cfg.n_samples; ++i) ds.samples[order[i]].train = i < n_train;

    return ds;
}

// ---------------------------------------------------------------------------
// Dataset file format (version 1): a key/value header block echoing the
// generator configuration and scaling endpoints, then one record line per
// sample:
//   id split class oracle_cost theta[0..N) <scenario fields> <features>

inline void write_dataset(std::ostream& os, const Dataset& ds) {
    const GenConfig& c = ds.config;
    os << "mecoff-dataset 1\n";
    os << "n_devices " << c.n_devices << '\n';
    os << "n_samples " << c.n_samples << '\n';
    os << "seed " << c.seed << '\n';
    os << "solver " << c.solver_id << '\n';
    os << "granularity " << fmt_double(c.granularity) << '\n';
    os << "deadline_feature " << (c.deadline_feature ? 1 : 0) << '\n';
    os << "range_s " << fmt_double(c.data_bits.lo) << ' ' << fmt_double(c.data_bits.hi) << '\n';
    os << "range_c " << fmt_double(c.cpu_cycles.lo) << ' ' << fmt_double(c.cpu_cycles.hi) << '\n';
    os << "range_f_l " << fmt_double(c.local_cpu_hz.lo) << ' ' << fmt_double(c.local_cpu_hz.hi) << '\n';
    os << "range_h_sq " << fmt_double(c.channel_gain_sq.lo) << ' ' << fmt_double(c.channel_gain_sq.hi) << '\n';
    os << "range_deadline " << fmt_double(c.max_delay_s.lo) << ' ' << fmt_double(c.max_delay_s.hi) << '\n';
    os << "range_alpha " << fmt_double(c.weight_delay.lo) << ' ' << fmt_double(c.weight_delay.hi) << '\n';
    os << "static_W " << fmt_double(c.bandwidth_hz) << '\n';
    os << "static_delta_sq " << fmt_double(c.noise_power_w) << '\n';
    os << "static_kappa " << fmt_double(c.energy_coeff) << '\n';
    os << "static_F " << fmt_double(c.mes_cpu_hz) << '\n';
    os << "static_P_t " << fmt_double(c.tx_power_w) << '\n';
    os << "static_P_I " << fmt_double(c.idle_power_w) << '\n';
    os << "discarded " << ds.discarded << '\n';
    os << "samples " << ds.samples.size() << '\n';
    std::string line;
    for (const Sample& s : ds.samples) {
        line.clear();
        line += std::to_string(s.id);
        line += s.train ? " train " : " test ";
        line += std::to_string(s.class_label);
        line += ' ';
        line += fmt_double(s.oracle_cost);
        for (double th : s.theta_labels) {
            line += ' ';
            line += fmt_double(th);
        }
        line += ' ';
        write_scenario_fields(line, s.scenario);
        for (double f : s.features) {
            line += ' ';
            line += fmt_double(f);
        }
        os << line << '\n';
    }
}

inline void write_dataset_file(const std::string& path, const Dataset& ds) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_dataset(os, ds);
}

namespace detail {

inline std::string header_value(std::istream& is, const std::string& key, int& line_number,
                                const std::string& where) {
    std::string line;
    if (!std::getline(is, line))
        throw ParseError(where, line_number, 1, "unexpected end of header, wanted '" + key + "'");
    ++line_number;
    if (line.rfind(key + " ", 0) != 0)
        throw ParseError(where, line_number, 1, "expected '" + key + " ...', got '" + line + "'");
    return line.substr(key.size() + 1);
}

inline void parse_range(const std::string& text, ParamRange& r, const std::string& where, int line) {
    TokenReader tr(text, where, line);
    r.lo = tr.next_double();
    r.hi = tr.next_double();
    tr.expect_end();
}

}  // namespace detail

inline Dataset read_dataset(std::istream& is, const std::string& where = "<stream>") {
    int ln = 0;
    std::string magic;
    if (!std::getline(is, magic)) throw ParseError(where, 1, 1, "empty file");
    ++ln;
    if (magic != "mecoff-dataset 1")
        throw ParseError(where, ln, 1, "unsupported dataset format: '" + magic + "'");

    Dataset ds;
    GenConfig& c = ds.config;
    using detail::header_value;
    c.n_devices = std::stoi(header_value(is, "n_devices", ln, where));
    c.n_samples = std::stoi(header_value(is, "n_samples", ln, where));
    c.seed = std::stoull(header_value(is, "seed", ln, where));
    c.solver_id = header_value(is, "solver", ln, where);
    c.granularity = std::strtod(header_value(is, "granularity", ln, where).c_str(), nullptr);
    c.deadline_feature = header_value(is, "deadline_feature", ln, where) == "1";
    detail::parse_range(header_value(is, "range_s", ln, where), c.data_bits, where, ln);
    detail::parse_range(header_value(is, "range_c", ln, where), c.cpu_cycles, where, ln);
    detail::parse_range(header_value(is, "range_f_l", ln, where), c.local_cpu_hz, where, ln);
    detail::parse_range(header_value(is, "range_h_sq", ln, where), c.channel_gain_sq, where, ln);
    detail::parse_range(header_value(is, "range_deadline", ln, where), c.max_delay_s, where, ln);
    detail::parse_range(header_value(is, "range_alpha", ln, where), c.weight_delay, where, ln);
    c.bandwidth_hz = std::strtod(header_value(is, "static_W", ln, where).c_str(), nullptr);
    c.noise_power_w = std::strtod(header_value(is, "static_delta_sq", ln, where).c_str(), nullptr);
    c.energy_coeff = std::strtod(header_value(is, "static_kappa", ln, where).c_str(), nullptr);
    c.mes_cpu_hz = std::strtod(header_value(is, "static_F", ln, where).c_str(), nullptr);
    c.tx_power_w = std::strtod(header_value(is, "static_P_t", ln, where).c_str(), nullptr);
    c.idle_power_w = std::strtod(header_value(is, "static_P_I", ln, where).c_str(), nullptr);
    ds.discarded = std::stoi(header_value(is, "discarded", ln, where));
    const int n_samples = std::stoi(header_value(is, "samples", ln, where));

    ds.scaler = FeatureScaler(c);
    ds.samples.reserve(n_samples);
    const int n = c.n_devices;
    const int n_features = n * c.features_per_device();
    std::string line;
    for (int r = 0; r < n_samples; ++r) {
        if (!std::getline(is, line)) throw ParseError(where, ln + 1, 1, "missing sample record");
        ++ln;
        TokenReader tr(line, where, ln);
        Sample s;
        s.id = static_cast<int>(tr.next_int());
        const std::string split = tr.next_word();
        if (split != "train" && split != "test")
            throw ParseError(where, ln, 2, "split must be 'train' or 'test', got '" + split + "'");
        s.train = split == "train";
        s.class_label = static_cast<int>(tr.next_int());
        s.oracle_cost = tr.next_double();
        s.theta_labels.resize(n);
        for (int i = 0; i < n; ++i) s.theta_labels[i] = tr.next_double();
        s.scenario = read_scenario_fields(tr);
        s.features.resize(n_features);
        for (int i = 0; i < n_features; ++i) s.features[i] = tr.next_double();
        tr.expect_end();
        ds.samples.push_back(std::move(s));
    }
    return ds;
}

inline Dataset read_dataset_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    return read_dataset(is, path);
}

}  // namespace mecoff
