#pragma once

// Ground-truth solvers for the joint offloading / CPU-share problem:
//
//   grid_exhaustive  traverses every decision vector and every granular
//                    allocation combination, the procedure used to label
//                    training data;
//   exact_enum       traverses the 2^N decision tree but solves the inner
//                    continuous allocation in closed form (water-filling
//                    with deadline clamps), so it is exact up to float.
//
// Both return the feasible minimum under a fixed deterministic tie-break:
// lower cost, then fewer offloaders, then lexicographically smaller
// decision, then lexicographically smaller allocation.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mecoff/cost_model.hpp"
#include "mecoff/types.hpp"

namespace mecoff {

struct SolverConfig {
    double granularity = 0.1;  // allocation-ratio step omega
    double tol = 1e-9;         // feasibility tolerance

    int grid_steps() const {
        if (!(granularity > 0.0) || !(granularity < 1.0))
            throw std::invalid_argument("solver: granularity must lie in (0,1)");
        const long long k = std::llround(1.0 / granularity);
        if (k < 1 || std::abs(1.0 / granularity - static_cast<double>(k)) > 0.5)
            throw std::invalid_argument("solver: 1/granularity must land on an integer grid");
        return static_cast<int>(k);
    }
};

enum class SolveStatus { ok, infeasible };

struct Solution {
    SolveStatus status = SolveStatus::infeasible;
    Decision decision;
    Allocation allocation;
    double total_cost = std::numeric_limits<double>::quiet_NaN();
    bool feasible = false;
    std::string solver_id;
    double wall_time_s = 0.0;

    bool ok() const { return status == SolveStatus::ok; }
};

namespace detail {

// Scenario quantities that do not depend on (D, Theta). The offloaded cost
// of device i at ratio theta decomposes as off_base + a / (theta * F).
struct DeviceTerms {
    double tau_local = 0.0;
    double local_weighted = 0.0;
    bool local_ok = false;     // local execution meets the deadline
    bool offloadable = false;  // upload alone leaves some deadline margin
    double upload_s = 0.0;
    double off_base = 0.0;     // (alpha + beta * P_t) * T_u
    double a = 0.0;            // (alpha + beta * P_I) * c
    double f_min = 0.0;        // smallest edge CPU share meeting the deadline
};

inline std::vector<DeviceTerms> device_terms(const Scenario& sc, double tol) {
    const std::vector<double> rates = uplink_rates(sc);
    std::vector<DeviceTerms> terms(sc.n());
    for (int i = 0; i < sc.n(); ++i) {
        const Device& d = sc.devices[i];
        DeviceTerms& t = terms[i];
        t.tau_local = d.task.cpu_cycles / d.local_cpu_hz;
        t.local_weighted = d.weight_delay * t.tau_local +
                           d.weight_energy * d.energy_coeff * d.local_cpu_hz *
                               d.local_cpu_hz * d.task.cpu_cycles;
        t.local_ok = t.tau_local <= d.task.max_delay_s + tol;
        t.upload_s = d.task.data_bits / rates[i];
        t.off_base = (d.weight_delay + d.weight_energy * sc.radio.tx_power_w[i]) * t.upload_s;
        t.a = (d.weight_delay + d.weight_energy * sc.radio.idle_power_w[i]) * d.task.cpu_cycles;
        const double margin = d.task.max_delay_s - t.upload_s;
        t.offloadable = margin > tol;
        t.f_min = t.offloadable ? d.task.cpu_cycles / margin
                                : std::numeric_limits<double>::infinity();
    }
    return terms;
}

inline bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

inline bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

// Tie-break chain shared by both solvers.
inline bool candidate_better(double cost, const Decision& d, const Allocation& th,
                             const Solution& best) {
    if (!best.ok()) return true;
    if (cost != best.total_cost) return cost < best.total_cost;
    const int ka = d.offloader_count();
    const int kb = best.decision.offloader_count();
    if (ka != kb) return ka < kb;
    if (d.bits != best.decision.bits) return lex_less(d.bits, best.decision.bits);
    return lex_less(th.ratios, best.allocation.ratios);
}

inline Decision mask_to_decision(uint32_t mask, int n) {
    Decision d;
    d.bits.resize(n);
    for (int i = 0; i < n; ++i) d.bits[i] = (mask >> i) & 1u;
    return d;
}

}  // namespace detail

// Exhaustive traversal of all decision vectors and all allocation-ratio
// combinations on the omega grid. Offloaders take ratios from
// {omega, 2*omega, ..., 1} (a zero share would stall the task forever);
// local devices take exactly zero. Grid ratios are materialized as m/K to
// keep the budget arithmetic exact in integers.
inline Solution grid_exhaustive(const Scenario& sc, const SolverConfig& config = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = sc.n();
    if (n > 8) throw std::invalid_argument("grid_exhaustive: supported up to 8 devices");
    const int K = config.grid_steps();
    const double tol = config.tol;
    const std::vector<detail::DeviceTerms> terms = detail::device_terms(sc, tol);

    Solution best;
    best.solver_id = "grid";
    best.decision = Decision::all_local(n);
    best.allocation = Allocation::zeros(n);

    // Per-offloader deadline floor on the step count, kept exactly
    // consistent with the delay predicate used by check_feasibility.
    const auto delay_ok = [&](int dev, int m) {
        const double f = (static_cast<double>(m) / K) * sc.mes_cpu_hz;
        const double delay = terms[dev].upload_s + sc.devices[dev].task.cpu_cycles / f;
        return delay <= sc.devices[dev].task.max_delay_s + tol;
    };

    std::vector<int> offl;
    std::vector<int> m_min, m_scratch, m_best;
    std::vector<int> suffix_min;

    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        double local_sum = 0.0;
        bool locals_ok = true;
        offl.clear();
        for (int i = 0; i < n && locals_ok; ++i) {
            if (mask & (1u << i)) {
                offl.push_back(i);
            } else {
                if (!terms[i].local_ok) locals_ok = false;
                local_sum += terms[i].local_weighted;
            }
        }
        if (!locals_ok) continue;

        const int k = static_cast<int>(offl.size());
        const Decision decision = detail::mask_to_decision(mask, n);

        if (k == 0) {
            const Allocation alloc = Allocation::zeros(n);
            if (detail::candidate_better(local_sum, decision, alloc, best)) {
                best.status = SolveStatus::ok;
                best.total_cost = local_sum;
                best.decision = decision;
                best.allocation = alloc;
            }
            continue;
        }

        m_min.assign(k, 0);
        bool d_possible = true;
        for (int j = 0; j < k && d_possible; ++j) {
            const detail::DeviceTerms& t = terms[offl[j]];
            if (!t.offloadable) {
                d_possible = false;
                break;
            }
            int m = static_cast<int>(std::ceil(t.f_min / sc.mes_cpu_hz * K - 1e-12));
            if (m < 1) m = 1;
            while (m <= K && !delay_ok(offl[j], m)) ++m;
            while (m > 1 && delay_ok(offl[j], m - 1)) --m;
            if (m > K) d_possible = false;
            m_min[j] = m;
        }
        if (!d_possible) continue;

        suffix_min.assign(k + 1, 0);
        for (int j = k - 1; j >= 0; --j) suffix_min[j] = suffix_min[j + 1] + m_min[j];
        if (suffix_min[0] > K) continue;

        m_scratch.assign(k, 0);
        m_best.clear();
        double best_cost_d = std::numeric_limits<double>::infinity();

        // Depth-first traversal of all step combinations with sum <= K.
        const auto recurse = [&](auto&& self, int j, int used, double cost_acc) -> void {
            if (j == k) {
                if (cost_acc < best_cost_d ||
                    (cost_acc == best_cost_d &&
                     (m_best.empty() || std::lexicographical_compare(m_scratch.begin(), m_scratch.end(),
                                                                     m_best.begin(), m_best.end())))) {
                    best_cost_d = cost_acc;
                    m_best = m_scratch;
                }
                return;
            }
            const detail::DeviceTerms& t = terms[offl[j]];
            const double w = t.a * K / sc.mes_cpu_hz;  // a / (m/K * F) = w / m
            const int hi = K - used - suffix_min[j + 1];
            for (int m = m_min[j]; m <= hi; ++m) {
                m_scratch[j] = m;
                self(self, j + 1, used + m, cost_acc + t.off_base + w / m);
            }
        };
        recurse(recurse, 0, 0, local_sum);

        if (m_best.empty()) continue;
        Allocation alloc = Allocation::zeros(n);
        for (int j = 0; j < k; ++j)
            alloc.ratios[offl[j]] = static_cast<double>(m_best[j]) / K;
        if (detail::candidate_better(best_cost_d, decision, alloc, best)) {
            best.status = SolveStatus::ok;
            best.total_cost = best_cost_d;
            best.decision = decision;
            best.allocation = alloc;
        }
    }

    best.feasible = best.ok();
    best.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return best;
}

// Optimal continuous CPU shares for a fixed decision. The offloaders'
// cost is sum a_i / f_i, strictly decreasing in each f_i, so the budget
// binds; unconstrained minimization gives f_i proportional to sqrt(a_i),
// and devices pushed below their deadline floor are clamped there with the
// residual budget re-water-filled over the rest.
inline std::optional<Allocation> inner_allocation(const Scenario& sc, const Decision& decision,
                                                  double tol = 1e-9) {
    const int n = sc.n();
    if (decision.n() != n) throw std::invalid_argument("inner_allocation: dimension mismatch");
    const std::vector<detail::DeviceTerms> terms = detail::device_terms(sc, tol);

    std::vector<int> offl;
    for (int i = 0; i < n; ++i)
        if (decision.bits[i]) offl.push_back(i);

    Allocation alloc = Allocation::zeros(n);
    if (offl.empty()) return alloc;

    double f_min_sum = 0.0;
    for (int i : offl) {
        if (!terms[i].offloadable) return std::nullopt;
        f_min_sum += terms[i].f_min;
    }
    if (f_min_sum > sc.mes_cpu_hz) return std::nullopt;

    std::vector<double> f(offl.size(), 0.0);
    std::vector<bool> clamped(offl.size(), false);
    double budget = sc.mes_cpu_hz;

    // Each round permanently clamps at least one device, so at most
    // |offloaders| rounds run.
    for (size_t round = 0; round < offl.size(); ++round) {
        double denom = 0.0;
        for (size_t j = 0; j < offl.size(); ++j)
            if (!clamped[j]) denom += std::sqrt(terms[offl[j]].a);
        if (denom == 0.0) break;
        bool changed = false;
        for (size_t j = 0; j < offl.size(); ++j) {
            if (clamped[j]) continue;
            f[j] = budget * std::sqrt(terms[offl[j]].a) / denom;
        }
        for (size_t j = 0; j < offl.size(); ++j) {
            if (clamped[j]) continue;
            if (f[j] < terms[offl[j]].f_min) {
                f[j] = terms[offl[j]].f_min;
                clamped[j] = true;
                budget -= f[j];
                changed = true;
            }
        }
        if (!changed) break;
    }

    for (size_t j = 0; j < offl.size(); ++j) alloc.ratios[offl[j]] = f[j] / sc.mes_cpu_hz;
    return alloc;
}

// Exact solver: enumerate the 2^N decisions, solve each inner allocation in
// closed form, keep the feasible minimum under the shared tie-break.
inline Solution exact_enum(const Scenario& sc, const SolverConfig& config = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = sc.n();
    if (n > 16) throw std::invalid_argument("exact_enum: supported up to 16 devices");
    const double tol = config.tol;
    const std::vector<detail::DeviceTerms> terms = detail::device_terms(sc, tol);

    Solution best;
    best.solver_id = "exact";
    best.decision = Decision::all_local(n);
    best.allocation = Allocation::zeros(n);

    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        double local_sum = 0.0;
        bool locals_ok = true;
        for (int i = 0; i < n && locals_ok; ++i) {
            if (!(mask & (1u << i))) {
                if (!terms[i].local_ok) locals_ok = false;
                local_sum += terms[i].local_weighted;
            }
        }
        if (!locals_ok) continue;

        const Decision decision = detail::mask_to_decision(mask, n);
        const std::optional<Allocation> alloc = inner_allocation(sc, decision, tol);
        if (!alloc) continue;

        double cost = local_sum;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i))
                cost += terms[i].off_base + terms[i].a / (alloc->ratios[i] * sc.mes_cpu_hz);
        }
        if (detail::candidate_better(cost, decision, *alloc, best)) {
            best.status = SolveStatus::ok;
            best.total_cost = cost;
            best.decision = decision;
            best.allocation = *alloc;
        }
    }

    best.feasible = best.ok();
    best.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return best;
}

inline Solution solve_with(const std::string& solver_id, const Scenario& sc,
                           const SolverConfig& config = {}) {
    if (solver_id == "grid") return grid_exhaustive(sc, config);
    if (solver_id == "exact") return exact_enum(sc, config);
    throw std::invalid_argument("unknown solver id: " + solver_id);
}

}  // namespace mecoff
