// SPDX-License-Identifier: Apache-2.0
//
// Joint relay selection and power allocation.
//
// Outer loop: Dinkelbach on the energy efficiency q. Inner loop: outer
// approximation over relay schedules. The primal problem fixes a schedule and
// allocates powers (primal.hpp); the master problem is a small MILP over
// (log powers, schedule, epigraph w) built from linearisations collected at
// the primal solutions.
#pragma once

#include "mdnc/energy.hpp"
#include "mdnc/lp.hpp"
#include "mdnc/model.hpp"
#include "mdnc/primal.hpp"
#include "mdnc/schedule.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mdnc {

struct RelayCountBounds {
    int low = 0;
    int up = 0;
    bool feasible = false;   // low <= up
    bool heuristic = false;  // greedy subset choice (large N)
    RelaySchedule best_low;  // subset attaining the minimum outage at size low
};

/// low: smallest k whose best k-subset meets the target with every
/// transmitter at full power (exact outage; NoNC uses the worst user).
/// up: largest k whose circuit energy fits E0 at zero transmit power.
RelayCountBounds relay_count_bounds(const ScenarioConfig& s, const LinkCoefficients& c, double target,
                                    Scheme scheme = Scheme::Mdnc);

/// Linearisations at one primal point. Gradients use the full layout
/// (users, then all N relays); entries of unselected relays are zero.
struct OACut {
    int iteration = 0;
    RelaySchedule schedule;
    LogPowers anchor;
    bool primal_feasible = false;

    // objective cut, valid for the anchor schedule only
    double tilde_v = 0.0;
    Vector grad_tilde_v;

    // log-form outage constraints log Pr - log target (one per user for NoNC)
    std::vector<double> log_g;
    std::vector<Vector> grad_log_g;

    // Schedule-independent underestimator of tilde_v in (x, k = sum u):
    // value + grad_x . (x - anchor) + grad_k (k - k_anchor).
    bool has_relaxation = false;
    double relax_value = 0.0;
    Vector relax_grad_x;
    double relax_grad_k = 0.0;
};

struct GoaOptions {
    double gap_tol = 1e-6;        // UBD - LBD <= gap_tol (1 + |UBD|)
    double strict_eps = 1e-9;     // w <= UBD - strict_eps |UBD|
    int max_iterations = 4096;
    BarrierOptions barrier{};
};

struct GoaState {
    Scheme scheme = Scheme::Mdnc;
    double q = 0.0;
    int theta = 0;  // Dinkelbach iteration that owns this state
    double target = 0.0;
    RelayCountBounds bounds;
    std::vector<OACut> cuts;
    std::vector<RelaySchedule> visited;
    std::vector<double> ubd_history;
    std::vector<double> lbd_history;
    double ubd = 0.0;
    double lbd = 0.0;
    bool has_incumbent = false;
    PrimalSolution incumbent;
    RelaySchedule incumbent_schedule;
    int iterations = 0;
    int master_nodes = 0;
    int newton_iterations = 0;
    bool master_infeasible = false;
};

/// Value of the relaxation underestimator; exposed for tests.
double relaxation_bound(const ScenarioConfig& s, const LinkCoefficients& c, Scheme scheme, double q,
                        const RelayCountBounds& b, const LogPowers& x, double k);

OACut build_oa_cuts(const ScenarioConfig& s, const LinkCoefficients& c, const PrimalProblem& pp,
                    const PrimalSolution& sol, const RelayCountBounds& bounds, int iteration);

struct MasterResult {
    bool feasible = false;
    RelaySchedule schedule;
    double w = 0.0;
    LogPowers x;
    int nodes = 0;
    int leaves = 0;
};

/// Master MILP over z = (x users, x relays, u, w). Exposed for tests.
struct MasterLayout {
    int x = 0;  // first log-power variable
    int u = 0;  // first schedule variable
    int w = 0;  // epigraph variable
};
LinearProgram master_lp(const ScenarioConfig& s, const LinkCoefficients& c, const GoaState& state,
                        const GoaOptions& opt, MasterLayout* layout = nullptr);

MasterResult solve_master(const ScenarioConfig& s, const LinkCoefficients& c, const GoaState& state,
                          const GoaOptions& opt = {});

/// Affine value of a cut's objective linearisation at (x, u), for tests.
double objective_cut_value(const OACut& cut, const LogPowers& x);

GoaState goa_solve(const ScenarioConfig& s, const LinkCoefficients& c, double q, double target,
                   Scheme scheme = Scheme::Mdnc, std::optional<RelaySchedule> warm_start = std::nullopt,
                   const GoaOptions& opt = {});

struct Diagnostics {
    int dinkelbach_iterations = 0;
    int goa_iterations = 0;
    int cuts = 0;
    int primal_solves = 0;
    int newton_iterations = 0;
    int master_nodes = 0;
    bool converged = false;
    std::vector<double> q_history;
    std::vector<double> v_history;
    // bound traces of every inner run, in order
    std::vector<std::vector<double>> ubd_traces;
    std::vector<std::vector<double>> lbd_traces;
    std::vector<std::vector<RelaySchedule>> visited;
};

struct Solution {
    bool feasible = false;
    std::string reason;
    Scheme scheme = Scheme::Mdnc;
    double target = 0.0;
    RelaySchedule schedule;
    PowerAllocation powers;
    LogPowers log_powers;
    double ee = 0.0;              // exact outage, bits/J
    double pr_out = 1.0;          // exact; NoNC: mean over users
    double pr_out_max = 1.0;      // exact; NoNC: worst user
    Vector pr_out_users;          // NoNC per-user exact outage
    double pr_out_approx = 1.0;   // the constrained quantity (NoNC: mean)
    double pr_out_approx_max = 1.0;
    EnergyBreakdown energy;
    double q_star = 0.0;          // EE with the approximate outage
    Diagnostics diag;
};

/// Fills the reported fields of a Solution from a schedule and powers.
Solution evaluate_solution(const ScenarioConfig& s, const LinkCoefficients& c, Scheme scheme,
                           const RelaySchedule& u, const PowerAllocation& p, double target);

struct DinkelbachOptions {
    int max_iterations = 50;
    double v_tol_factor = 1e-6;  // |V| <= v_tol_factor * M * alpha0
    GoaOptions goa{};
};

Solution dinkelbach_solve(const ScenarioConfig& s, const LinkCoefficients& c, double target,
                          Scheme scheme = Scheme::Mdnc, const DinkelbachOptions& opt = {});

Solution nonc_solve(const ScenarioConfig& s, const LinkCoefficients& c, double target,
                    const DinkelbachOptions& opt = {});

/// Dinkelbach over powers only, schedule held fixed.
Solution solve_fixed_schedule(const ScenarioConfig& s, const LinkCoefficients& c, const RelaySchedule& u,
                              double target, Scheme scheme = Scheme::Mdnc, const DinkelbachOptions& opt = {});

}  // namespace mdnc
