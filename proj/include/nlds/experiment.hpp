#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "nlds/initial.hpp"
#include "nlds/observables.hpp"
#include "nlds/potential.hpp"
#include "nlds/reference_cache.hpp"
#include "nlds/resonance.hpp"

namespace nlds {

/// How the tau column ladder is produced. Rules generate tau0 / ratio^k;
/// `resonant` additionally demands each entry equal 0.5 k eps^2 pi for some
/// positive integer k and some eps of the sweep, `non_resonant` carries the
/// delta used to annotate per-cell membership in A_delta(eps).
struct TauRule {
    enum class Kind { list, resonant, non_resonant } kind = Kind::list;
    std::vector<double> taus;
    double tau0 = 0.0;
    double ratio = 4.0;
    int count = 0;
    double delta = 0.15;
};

struct MetricSet {
    bool h1 = true;
    bool density = false;
    bool current = false;
    bool energy = false;
};

struct ExperimentPlan {
    double a = -32.0, b = 32.0;
    int m = 1024;
    double final_time = 0.0;
    Scheme scheme = Scheme::S2;
    std::vector<double> eps_list;
    TauRule tau_rule;
    double lambda1 = 1.0, lambda2 = 0.0;
    PotentialSpec potential;
    InitialSpec initial;
    double tau_e = 0.0;  // reference step
    MetricSet metrics;
    bool zero_nyquist = false;
};

/// order_k = log(e_{k-1}/e_k) / log(ratio); the first entry and any entry
/// next to a nonpositive error are absent.
inline std::vector<std::optional<double>> observed_order(const std::vector<double>& errors,
                                                         double ratio) {
    if (!(ratio > 1.0)) throw std::invalid_argument("observed_order: ratio must be > 1");
    std::vector<std::optional<double>> orders(errors.size());
    for (std::size_t k = 1; k < errors.size(); ++k)
        if (errors[k - 1] > 0.0 && errors[k] > 0.0)
            orders[k] = std::log(errors[k - 1] / errors[k]) / std::log(ratio);
    return orders;
}

/// Steps for a tau that divides T to within one part in 1e9.
inline long steps_for(double final_time, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("steps_for: tau must be > 0");
    const long n = std::lround(final_time / tau);
    if (n < 1 || std::abs(final_time - static_cast<double>(n) * tau) > 1e-9 * final_time)
        throw std::invalid_argument("tau does not divide the final time (relative residual > 1e-9)");
    return n;
}

inline std::vector<double> materialize_taus(const ExperimentPlan& plan) {
    const TauRule& rule = plan.tau_rule;
    std::vector<double> taus;
    if (rule.kind == TauRule::Kind::list) {
        taus = rule.taus;
        if (taus.empty()) throw std::invalid_argument("plan: empty tau list");
    } else {
        if (rule.count < 1) throw std::invalid_argument("plan: tau rule count must be >= 1");
        if (!(rule.tau0 > 0.0)) throw std::invalid_argument("plan: tau0 must be > 0");
        if (!(rule.ratio > 1.0)) throw std::invalid_argument("plan: ratio must be > 1");
        double t = rule.tau0;
        for (int k = 0; k < rule.count; ++k, t /= rule.ratio) taus.push_back(t);
    }
    for (double t : taus) steps_for(plan.final_time, t);
    if (rule.kind == TauRule::Kind::resonant) {
        for (double t : taus) {
            bool hit = false;
            for (double eps : plan.eps_list) {
                const double k = t / (0.5 * eps * eps * std::numbers::pi);
                if (k >= 1.0 - 1e-9 && std::abs(k - std::round(k)) <= 1e-9 * std::max(1.0, k)) {
                    hit = true;
                    break;
                }
            }
            if (!hit)
                throw std::invalid_argument(
                    "plan: resonant rule requires each tau = 0.5 k eps^2 pi for some eps of the sweep");
        }
    }
    return taus;
}

struct ErrorTable {
    std::vector<double> eps_list;
    std::vector<double> taus;
    MetricSet metrics;
    std::vector<std::vector<ErrorRecord>> rows;  // rows[eps][tau]
    std::vector<ErrorRecord> max_row;            // per-tau max over eps, with orders
};

namespace detail {

inline void attach_orders(std::vector<ErrorRecord>& row, const std::vector<double>& taus) {
    auto fill = [&](std::optional<double> ErrorRecord::* metric,
                    std::optional<double> ErrorRecord::* order) {
        for (std::size_t k = 1; k < row.size(); ++k) {
            const auto& prev = row[k - 1].*metric;
            const auto& cur = row[k].*metric;
            if (prev && cur && *prev > 0.0 && *cur > 0.0)
                row[k].*order = std::log(*prev / *cur) / std::log(taus[k - 1] / taus[k]);
        }
    };
    fill(&ErrorRecord::h1, &ErrorRecord::order_h1);
    fill(&ErrorRecord::l1_density, &ErrorRecord::order_density);
    fill(&ErrorRecord::rel_l1_current, &ErrorRecord::order_current);
    fill(&ErrorRecord::rel_energy, &ErrorRecord::order_energy);
}

inline std::vector<ErrorRecord> max_over_eps(const std::vector<std::vector<ErrorRecord>>& rows,
                                             const std::vector<double>& taus) {
    std::vector<ErrorRecord> out(taus.size());
    auto fold = [&](std::optional<double> ErrorRecord::* metric) {
        for (std::size_t k = 0; k < taus.size(); ++k) {
            std::optional<double> best;
            for (const auto& row : rows) {
                const auto& v = row[k].*metric;
                if (v && (!best || *v > *best)) best = v;
            }
            out[k].*metric = best;
        }
    };
    fold(&ErrorRecord::h1);
    fold(&ErrorRecord::l1_density);
    fold(&ErrorRecord::rel_l1_current);
    fold(&ErrorRecord::rel_energy);
    fold(&ErrorRecord::abs_energy);
    for (std::size_t k = 0; k < taus.size(); ++k) out[k].tau = taus[k];
    attach_orders(out, taus);
    return out;
}

}  // namespace detail

/// Runs every (eps, tau) cell of the plan against the cached reference and
/// assembles the convergence table. Cells are independent jobs; a failed cell
/// is recorded in place and does not abort the table.
inline ErrorTable run_experiment(const ExperimentPlan& plan, ReferenceCache& cache, int jobs = 1) {
    if (plan.eps_list.empty()) throw std::invalid_argument("plan: empty eps list");
    if (!(plan.final_time > 0.0)) throw std::invalid_argument("plan: final time must be > 0");
    if (!(plan.tau_e > 0.0)) throw std::invalid_argument("plan: tau_e must be > 0");
    steps_for(plan.final_time, plan.tau_e);

    GridPtr grid = make_grid(plan.a, plan.b, plan.m);
    const std::vector<double> vpot = parse_potential(plan.potential, *grid);
    const SpinorField phi0 = initial_field(plan.initial, grid);
    const std::vector<double> taus = materialize_taus(plan);

    ErrorTable table;
    table.eps_list = plan.eps_list;
    table.taus = taus;
    table.metrics = plan.metrics;
    table.rows.assign(plan.eps_list.size(), std::vector<ErrorRecord>(taus.size()));

    struct Cell {
        std::size_t ei, ti;
    };
    std::vector<Cell> cells;
    for (std::size_t ei = 0; ei < plan.eps_list.size(); ++ei)
        for (std::size_t ti = 0; ti < taus.size(); ++ti) cells.push_back({ei, ti});

    auto run_cell = [&](const Cell& c) {
        const double eps = plan.eps_list[c.ei];
        const double tau = taus[c.ti];
        ErrorRecord& rec = table.rows[c.ei][c.ti];
        rec.eps = eps;
        rec.tau = tau;
        if (plan.tau_rule.kind == TauRule::Kind::non_resonant)
            rec.non_resonant = is_non_resonant(tau, {eps, plan.tau_rule.delta});
        try {
            PhysicsParams params{eps, plan.lambda1, plan.lambda2, vpot};
            ReferenceKey key{grid, plan.final_time, params, phi0, plan.tau_e};
            const SpinorField ref = cache.get_or_compute(key);
            SchemeRun run{plan.scheme, tau, steps_for(plan.final_time, tau), params, phi0};
            const SpinorField num = evolve(run).field;
            if (plan.metrics.h1) rec.h1 = h1_error(num, ref, plan.zero_nyquist);
            if (plan.metrics.density) rec.l1_density = density_error_l1(num, ref);
            if (plan.metrics.current) rec.rel_l1_current = current_error_rel_l1(num, ref, eps);
            if (plan.metrics.energy) {
                const double en = energy(num, params, plan.zero_nyquist);
                const double er = energy(ref, params, plan.zero_nyquist);
                rec.abs_energy = std::abs(en - er);
                if (er == 0.0)
                    throw std::domain_error("relative energy metric undefined (zero reference)");
                rec.rel_energy = std::abs(en - er) / std::abs(er);
            }
        } catch (const std::exception& e) {
            rec.failed = true;
            rec.message = e.what();
        }
    };

    const int workers = std::max(1, jobs);
    if (workers == 1) {
        for (const Cell& c : cells) run_cell(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1))
                    run_cell(cells[i]);
            });
        for (auto& t : pool) t.join();
    }

    for (auto& row : table.rows) detail::attach_orders(row, taus);
    table.max_row = detail::max_over_eps(table.rows, taus);
    return table;
}

}  // namespace nlds
