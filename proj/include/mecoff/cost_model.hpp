#pragma once

// Delay, energy, and weighted cost of local vs. offloaded execution under
// uplink NOMA with successive interference cancellation, plus the C1-C4
// feasibility check. All functions are pure.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mecoff/types.hpp"

namespace mecoff {

struct CostTerms {
    double delay_s = 0.0;
    double energy_j = 0.0;
    double weighted = 0.0;
};

// Decode order: strongest channel first, ties kept in original device order.
inline std::vector<int> sic_order(const Scenario& sc) {
    std::vector<int> order(sc.devices.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return sc.devices[a].channel_gain_sq > sc.devices[b].channel_gain_sq;
    });
    return order;
}

// Received SINR of one device at the access point. Interference comes from
// every device decoded after it; the last-decoded device sees none.
inline double sinr(const Scenario& sc, int device_index) {
    const std::vector<int> order = sic_order(sc);
    const int n = sc.n();
    int pos = 0;
    while (order[pos] != device_index) ++pos;
    double interference = 0.0;
    for (int k = pos + 1; k < n; ++k) {
        const int j = order[k];
        interference += sc.radio.tx_power_w[j] * sc.devices[j].channel_gain_sq;
    }
    const double signal =
        sc.radio.tx_power_w[device_index] * sc.devices[device_index].channel_gain_sq;
    return signal / (sc.radio.noise_power_w + interference);
}

inline double uplink_rate(const Scenario& sc, int device_index) {
    return sc.radio.bandwidth_hz * std::log2(1.0 + sinr(sc, device_index));
}

// Rates for all devices with the SIC sweep done once. Equal to calling
// uplink_rate per device; used by solvers on hot paths.
inline std::vector<double> uplink_rates(const Scenario& sc) {
    const std::vector<int> order = sic_order(sc);
    const int n = sc.n();
    std::vector<double> rates(n);
    double interference = 0.0;
    for (int k = n - 1; k >= 0; --k) {
        const int i = order[k];
        const double signal = sc.radio.tx_power_w[i] * sc.devices[i].channel_gain_sq;
        rates[i] = sc.radio.bandwidth_hz *
                   std::log2(1.0 + signal / (sc.radio.noise_power_w + interference));
        interference += signal;
    }
    return rates;
}

inline CostTerms local_cost(const Device& d) {
    CostTerms t;
    t.delay_s = d.task.cpu_cycles / d.local_cpu_hz;
    t.energy_j = d.energy_coeff * d.local_cpu_hz * d.local_cpu_hz * d.task.cpu_cycles;
    t.weighted = d.weight_delay * t.delay_s + d.weight_energy * t.energy_j;
    return t;
}

// Offloaded execution: upload over the NOMA uplink, then processing on the
// edge server at f_alloc_hz while the device idles. Download terms are
// negligible for the workloads modeled and are not accounted.
inline CostTerms offload_cost(const Scenario& sc, int device_index, double f_alloc_hz) {
    if (!(f_alloc_hz > 0))
        throw std::invalid_argument("offload_cost: zero allocation gives infinite processing time");
    const Device& d = sc.devices[device_index];
    const double rate = uplink_rate(sc, device_index);
    const double upload_s = d.task.data_bits / rate;
    const double process_s = d.task.cpu_cycles / f_alloc_hz;
    CostTerms t;
    t.delay_s = upload_s + process_s;
    t.energy_j = sc.radio.tx_power_w[device_index] * upload_s +
                 sc.radio.idle_power_w[device_index] * process_s;
    t.weighted = d.weight_delay * t.delay_s + d.weight_energy * t.energy_j;
    return t;
}

// Weighted system cost of a (decision, allocation) pair; offloaders run at
// ratio * F on the edge server.
inline CostBreakdown total_cost(const Scenario& sc, const Decision& decision,
                                const Allocation& alloc) {
    const int n = sc.n();
    if (decision.n() != n || alloc.n() != n)
        throw std::invalid_argument("total_cost: dimension mismatch");
    CostBreakdown out;
    out.delay_s.resize(n);
    out.energy_j.resize(n);
    out.weighted_cost.resize(n);
    for (int i = 0; i < n; ++i) {
        const CostTerms t = decision.bits[i]
                                ? offload_cost(sc, i, alloc.ratios[i] * sc.mes_cpu_hz)
                                : local_cost(sc.devices[i]);
        out.delay_s[i] = t.delay_s;
        out.energy_j[i] = t.energy_j;
        out.weighted_cost[i] = t.weighted;
        out.total_cost += t.weighted;
    }
    return out;
}

// Checks C1 (binary decision), C2 (realized delay within deadline),
// C3 (ratio in [0,1]), C4 (offloaders fit the unit budget), in that order,
// and reports the first violation.
inline Feasibility check_feasibility(const Scenario& sc, const Decision& decision,
                                     const Allocation& alloc, double tol = 1e-9) {
    const int n = sc.n();
    if (decision.n() != n || alloc.n() != n)
        throw std::invalid_argument("check_feasibility: dimension mismatch");
    for (int i = 0; i < n; ++i)
        if (decision.bits[i] != 0 && decision.bits[i] != 1)
            return Feasibility::violated(Constraint::C1, i);
    const std::vector<double> rates = uplink_rates(sc);
    for (int i = 0; i < n; ++i) {
        const Device& d = sc.devices[i];
        double delay;
        if (decision.bits[i]) {
            const double f = alloc.ratios[i] * sc.mes_cpu_hz;
            delay = d.task.data_bits / rates[i] +
                    (f > 0 ? d.task.cpu_cycles / f : std::numeric_limits<double>::infinity());
        } else {
            delay = d.task.cpu_cycles / d.local_cpu_hz;
        }
        if (delay > d.task.max_delay_s + tol)
            return Feasibility::violated(Constraint::C2, i);
    }
    for (int i = 0; i < n; ++i)
        if (alloc.ratios[i] < -tol || alloc.ratios[i] > 1.0 + tol)
            return Feasibility::violated(Constraint::C3, i);
    double used = 0.0;
    for (int i = 0; i < n; ++i)
        if (decision.bits[i]) used += alloc.ratios[i];
    if (used > 1.0 + tol) return Feasibility::violated(Constraint::C4, -1);
    return Feasibility::feasible();
}

}  // namespace mecoff
