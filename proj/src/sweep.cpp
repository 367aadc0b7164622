// SPDX-License-Identifier: Apache-2.0
#include "mdnc/sweep.hpp"

#include "mdnc/oracle.hpp"
#include "mdnc/outage.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace mdnc {

namespace {

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Callers write into
// pre-sized slots, so the result order never depends on scheduling.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    auto run = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            if (failed) return;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) err = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

SweepRow infeasible_row(double target, Scheme scheme, Mode mode, std::string reason) {
    SweepRow r;
    r.target = target;
    r.scheme = scheme;
    r.mode = mode;
    r.reason = std::move(reason);
    return r;
}

}  // namespace

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::Goa: return "goa";
        case Mode::Brute: return "brute";
        case Mode::Mc: return "mc-verify";
    }
    return "?";
}

std::vector<double> log_range(double hi, double lo, int per_decade) {
    if (!(hi > 0.0 && lo > 0.0 && hi >= lo) || per_decade < 1) throw std::invalid_argument("log_range: bad bounds");
    const double span = std::log10(hi / lo) * per_decade;
    const int n = static_cast<int>(std::ceil(span - 1e-9));
    std::vector<double> out;
    for (int k = 0; k <= n; ++k) out.push_back(k == n ? lo : hi * std::pow(10.0, -static_cast<double>(k) / per_decade));
    return out;
}

std::vector<double> default_targets() { return log_range(1e-2, 5e-6, 8); }

SweepRow make_row(const Solution& sol, Mode mode) {
    if (!sol.feasible) return infeasible_row(sol.target, sol.scheme, mode, "infeasible");
    SweepRow r;
    r.target = sol.target;
    r.scheme = sol.scheme;
    r.mode = mode;
    r.feasible = true;
    r.schedule = sol.schedule;
    r.powers = sol.powers;
    r.ee = sol.ee;
    r.pr_out = sol.pr_out;
    r.pr_out_max = sol.pr_out_max;
    r.pr_out_approx = sol.pr_out_approx;
    r.E_tot = sol.energy.E_tot;
    r.E_data = sol.energy.E_data;
    r.q_star = sol.q_star;
    r.dinkelbach_iterations = sol.diag.dinkelbach_iterations;
    r.goa_iterations = sol.diag.goa_iterations;
    r.cuts = sol.diag.cuts;
    r.newton_iterations = sol.diag.newton_iterations;
    return r;
}

std::vector<SweepRow> pareto_sweep(const ScenarioConfig& s, const SweepOptions& opt) {
    const LinkCoefficients c = build_link_coefficients(s);
    const std::vector<double> targets = opt.targets.empty() ? default_targets() : opt.targets;
    struct Job {
        Scheme scheme;
        Mode mode;
        double target;
    };
    std::vector<Job> jobs;
    for (Scheme sc : opt.schemes)
        for (Mode m : opt.modes)
            for (double t : targets) jobs.push_back({sc, m, t});

    std::vector<SweepRow> rows(jobs.size());
    parallel_for(jobs.size(), opt.jobs, [&](std::size_t i) {
        const Job& j = jobs[i];
        if (!(j.target > 0.0 && j.target <= 1.0)) {
            rows[i] = infeasible_row(j.target, j.scheme, j.mode, "invalid-target");
            return;
        }
        if (j.mode == Mode::Brute) {
            if (s.N > kOracleMaxRelays) {
                rows[i] = infeasible_row(j.target, j.scheme, j.mode, "too-many-relays");
                return;
            }
            rows[i] = make_row(brute_force_optimize(s, c, j.target, j.scheme, opt.solver).best, j.mode);
            return;
        }
        const Solution sol = dinkelbach_solve(s, c, j.target, j.scheme, opt.solver);
        rows[i] = make_row(sol, j.mode);
        if (j.mode == Mode::Mc && sol.feasible) {
            McConfig mc = opt.mc;
            mc.stream = opt.mc.stream + static_cast<std::uint32_t>(i);
            mc.threads = 1;  // parallelism already at the sweep level
            const VerifyReport v = verify(s, c, j.scheme, sol.schedule, sol.powers, mc);
            SweepRow& r = rows[i];
            r.has_mc = true;
            r.mc_outage = v.mc_outage;
            r.mc_std_error = std::sqrt(v.analytic_outage * (1.0 - v.analytic_outage) / static_cast<double>(mc.samples));
            r.mc_ee = v.mc_ee;
            r.mc_pass = v.pass;
        }
    });
    return rows;
}

std::vector<EnergyPoint> energy_points(const ScenarioConfig& s, const std::vector<SweepRow>& rows) {
    std::vector<EnergyPoint> pts;
    for (const SweepRow& r : rows) {
        EnergyPoint e;
        e.target = r.target;
        e.feasible = r.feasible;
        if (r.feasible) {
            e.pr_out = r.pr_out;
            e.E_data = r.E_data;
            e.relays = r.schedule.count();
            e.max_user_power = r.powers.p.maxCoeff();
            e.at_power_cap = e.max_user_power >= s.P_S_max * (1.0 - 1e-4);
        }
        pts.push_back(e);
    }
    for (std::size_t i = 1; i + 1 < pts.size(); ++i)
        pts[i].peak = pts[i - 1].feasible && pts[i].feasible && pts[i + 1].feasible &&
                      pts[i].E_data > pts[i - 1].E_data && pts[i].E_data > pts[i + 1].E_data;
    return pts;
}

std::vector<EnergyPoint> energy_curve(const ScenarioConfig& s, const std::vector<double>& targets, Scheme scheme,
                                      std::optional<RelaySchedule> fixed, const DinkelbachOptions& solver,
                                      int jobs) {
    const LinkCoefficients c = build_link_coefficients(s);
    std::vector<SweepRow> rows(targets.size());
    parallel_for(targets.size(), jobs, [&](std::size_t i) {
        const Solution sol = fixed ? solve_fixed_schedule(s, c, *fixed, targets[i], scheme, solver)
                                   : dinkelbach_solve(s, c, targets[i], scheme, solver);
        rows[i] = make_row(sol, Mode::Goa);
    });
    return energy_points(s, rows);
}

std::optional<RelaySchedule> best_fixed_subset(const ScenarioConfig& s, double target, int size,
                                               const DinkelbachOptions& solver) {
    const LinkCoefficients c = build_link_coefficients(s);
    std::optional<RelaySchedule> best;
    double best_q = -1.0;
    for (const auto& th : k_subsets(s.N, size)) {
        const auto u = RelaySchedule::from_indices(s.N, th);
        const Solution sol = solve_fixed_schedule(s, c, u, target, Scheme::Mdnc, solver);
        if (sol.feasible && sol.q_star > best_q) {
            best_q = sol.q_star;
            best = u;
        }
    }
    return best;
}

std::vector<SweepRow> relay_location_study(const ScenarioConfig& s, const std::vector<double>& deltas,
                                           const std::vector<double>& targets, std::optional<RelaySchedule> fixed,
                                           const DinkelbachOptions& solver, int jobs) {
    std::vector<std::optional<RelaySchedule>> sched(targets.size());
    parallel_for(targets.size(), jobs, [&](std::size_t t) {
        sched[t] = fixed ? fixed : best_fixed_subset(s, targets[t], std::min(3, s.N), solver);
    });
    std::vector<SweepRow> rows(targets.size() * deltas.size());
    parallel_for(rows.size(), jobs, [&](std::size_t i) {
        const std::size_t t = i / deltas.size();
        const double delta = deltas[i % deltas.size()];
        const double target = targets[t];
        SweepRow r;
        if (!sched[t]) {
            r = infeasible_row(target, Scheme::Mdnc, Mode::Goa, "infeasible");
        } else {
            try {
                const ScenarioConfig shifted = apply_relay_shift(s, delta);
                const LinkCoefficients c = build_link_coefficients(shifted);
                r = make_row(solve_fixed_schedule(shifted, c, *sched[t], target, Scheme::Mdnc, solver), Mode::Goa);
            } catch (const std::invalid_argument&) {
                r = infeasible_row(target, Scheme::Mdnc, Mode::Goa, "invalid-delta");
            }
        }
        r.delta = delta;
        rows[i] = r;
    });
    return rows;
}

VerifyReport verify(const ScenarioConfig& s, const LinkCoefficients& c, Scheme scheme, const RelaySchedule& u,
                    const PowerAllocation& p, const McConfig& mc) {
    VerifyReport v;
    v.scheme = scheme;
    v.schedule = u;
    v.powers = p;
    v.mc = mc;
    const double n = static_cast<double>(mc.samples);
    const McResult r = monte_carlo_ee(s, u, p, mc, scheme);
    v.mc_outage = r.outage;
    v.mc_user_outage = r.user_outage;
    v.mc_ee = r.ee;
    const EnergyBreakdown e = scheme_energy(s, scheme, u, p);

    auto band = [n](double p0) { return 3.0 * std::sqrt(p0 * (1.0 - p0) / n); };
    if (scheme == Scheme::Mdnc) {
        v.analytic_outage = outage_exact(s, c, u, p).total;
        v.analytic_user_outage = Vector::Constant(s.M, v.analytic_outage);
        v.band = band(v.analytic_outage);
        v.outage_pass = std::fabs(v.mc_outage - v.analytic_outage) <= v.band;
    } else {
        // per-user bands; their mean bounds the error of the mean outage
        v.analytic_user_outage = nonc_outage(c, u, p);
        v.analytic_outage = v.analytic_user_outage.mean();
        v.outage_pass = true;
        for (int i = 0; i < s.M; ++i) {
            const double b = band(v.analytic_user_outage(i));
            v.band += b / s.M;
            v.outage_pass = v.outage_pass && std::fabs(v.mc_user_outage(i) - v.analytic_user_outage(i)) <= b;
        }
    }
    v.analytic_ee = energy_efficiency(s, v.analytic_outage, e);
    v.ee_band = s.M * s.alpha0 * s.T / r.mean_energy * v.band;
    v.ee_pass = std::fabs(v.mc_ee - v.analytic_ee) <= v.ee_band * (1.0 + 1e-12);
    v.pass = v.outage_pass && v.ee_pass;
    return v;
}

}  // namespace mdnc
