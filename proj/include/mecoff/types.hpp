#pragma once

// Core value types for the NOMA-uplink MEC offloading model: devices with
// computation tasks, the shared radio, the edge server budget, and the
// decision/allocation vectors a solver or predictor produces.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mecoff {

// One computation job: input payload, work, and deadline. SI units
// throughout the library (bits, cycles, seconds, Hz, joules, watts).
struct Task {
    double data_bits = 0.0;
    double cpu_cycles = 0.0;
    double max_delay_s = 0.0;
};

struct Device {
    int id = 0;
    Task task;
    double local_cpu_hz = 0.0;
    double channel_gain_sq = 0.0;  // |h|^2, dimensionless power gain
    double weight_delay = 0.5;     // alpha
    double weight_energy = 0.5;    // beta, alpha + beta = 1
    double energy_coeff = 1e-28;   // kappa, chip-dependent
};

// Shared uplink band plus per-device transmit/idle power.
struct RadioConfig {
    double bandwidth_hz = 1e6;
    double noise_power_w = 7.9e-13;
    std::vector<double> tx_power_w;
    std::vector<double> idle_power_w;
};

// One decision epoch: N devices contending for the uplink and for the
// edge server's CPU budget.
struct Scenario {
    std::vector<Device> devices;
    RadioConfig radio;
    double mes_cpu_hz = 2.5e9;  // F

    int n() const { return static_cast<int>(devices.size()); }
};

// Binary offload decision, one bit per device (1 = run on the edge server).
struct Decision {
    std::vector<int> bits;

    int n() const { return static_cast<int>(bits.size()); }
    int offloader_count() const {
        int k = 0;
        for (int b : bits) k += (b != 0);
        return k;
    }
    static Decision all_local(int n) { return Decision{std::vector<int>(n, 0)}; }
    static Decision all_offload(int n) { return Decision{std::vector<int>(n, 1)}; }

    bool operator==(const Decision&) const = default;
};

// Fraction of the edge CPU budget granted to each device; zero for local
// devices, and the offloaders' ratios must fit in the unit budget.
struct Allocation {
    std::vector<double> ratios;

    int n() const { return static_cast<int>(ratios.size()); }
    static Allocation zeros(int n) { return Allocation{std::vector<double>(n, 0.0)}; }

    bool operator==(const Allocation&) const = default;
};

// Per-device delay/energy/weighted-cost terms plus their sum.
struct CostBreakdown {
    std::vector<double> delay_s;
    std::vector<double> energy_j;
    std::vector<double> weighted_cost;
    double total_cost = 0.0;
};

enum class Constraint { C1, C2, C3, C4 };

inline const char* constraint_name(Constraint c) {
    switch (c) {
        case Constraint::C1: return "C1";
        case Constraint::C2: return "C2";
        case Constraint::C3: return "C3";
        case Constraint::C4: return "C4";
    }
    return "?";
}

// Outcome of a constraint check. Violations are values, not exceptions:
// callers routinely probe infeasible candidates.
struct Feasibility {
    bool ok = true;
    Constraint constraint = Constraint::C1;
    int device_index = -1;  // -1 for the aggregate budget constraint

    static Feasibility feasible() { return Feasibility{}; }
    static Feasibility violated(Constraint c, int device) {
        return Feasibility{false, c, device};
    }
    explicit operator bool() const { return ok; }
};

// Validation for externally constructed scenarios (parsers, generators).
// Internal code paths assume these hold and do not re-check.
inline void validate(const Scenario& sc) {
    const int n = sc.n();
    if (n < 1) throw std::invalid_argument("scenario: needs at least one device");
    if (!(sc.mes_cpu_hz > 0)) throw std::invalid_argument("scenario: F must be positive");
    if (!(sc.radio.bandwidth_hz > 0) || !(sc.radio.noise_power_w > 0))
        throw std::invalid_argument("scenario: radio constants must be positive");
    if (static_cast<int>(sc.radio.tx_power_w.size()) != n ||
        static_cast<int>(sc.radio.idle_power_w.size()) != n)
        throw std::invalid_argument("scenario: per-device power lists must have length N");
    for (int i = 0; i < n; ++i) {
        const Device& d = sc.devices[i];
        if (!(d.task.data_bits > 0) || !(d.task.cpu_cycles > 0) || !(d.task.max_delay_s > 0))
            throw std::invalid_argument("device " + std::to_string(i) + ": task fields must be positive");
        if (!(d.local_cpu_hz > 0))
            throw std::invalid_argument("device " + std::to_string(i) + ": local CPU must be positive");
        if (!(d.channel_gain_sq > 0))
            throw std::invalid_argument("device " + std::to_string(i) + ": channel gain must be positive");
        if (d.weight_delay < 0 || d.weight_delay > 1 || d.weight_energy < 0 || d.weight_energy > 1)
            throw std::invalid_argument("device " + std::to_string(i) + ": weights must lie in [0,1]");
        if (std::abs(d.weight_delay + d.weight_energy - 1.0) > 1e-9)
            throw std::invalid_argument("device " + std::to_string(i) + ": weights must sum to 1");
        if (!(sc.radio.tx_power_w[i] > 0) || !(sc.radio.idle_power_w[i] > 0))
            throw std::invalid_argument("device " + std::to_string(i) + ": powers must be positive");
    }
}

}  // namespace mecoff
