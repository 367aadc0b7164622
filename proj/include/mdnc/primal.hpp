// SPDX-License-Identifier: Apache-2.0
//
// Fixed-schedule power allocation: minimize log V' over log-domain powers
// subject to the approximate outage target and the energy budget. Variables
// are the users followed by the selected relays only.
#pragma once

#include "mdnc/barrier.hpp"
#include "mdnc/energy.hpp"
#include "mdnc/model.hpp"
#include "mdnc/posynomial.hpp"
#include "mdnc/schedule.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mdnc {

inline constexpr double kMinUserPower = 1e-6;  // W, keeps log variables bounded

struct PrimalProblem {
    Scheme scheme = Scheme::Mdnc;
    RelaySchedule schedule;
    double q = 0.0;
    int M = 0;
    int N = 0;

    ExpSum objective;             // V'
    std::vector<ExpSum> outage;   // one (MDNC) or M (NoNC) posynomials
    double log_target = 0.0;
    std::optional<ExpSum> budget;  // absent when E0 = inf
    double budget_rhs = 0.0;

    Vector lower;  // compact layout
    Vector upper;
    Vector c_g;    // for the log-domain relay substitution

    bool feasible = true;  // pre-check verdict
    std::string infeasible_reason;
};

struct PrimalSolution {
    bool feasible = false;
    bool converged = false;
    Vector y;              // compact optimum (or max-slack point when infeasible)
    LogPowers log_powers;  // full layout
    PowerAllocation powers;
    double tilde_v = 0.0;
    double max_violation = 0.0;  // of the log-form constraints at y
    bool outage_active = false;
    bool budget_active = false;
    std::vector<bool> at_upper;  // per compact variable, within 1e-6 of its cap
    int newton_iterations = 0;
    double gap = 0.0;
    double kkt_residual = 0.0;
    std::string message;
};

/// Throws std::invalid_argument on dimension mismatch. An infeasible problem
/// is returned with feasible = false rather than thrown.
PrimalProblem assemble_primal(const ScenarioConfig& s, const LinkCoefficients& c, const RelaySchedule& u,
                              double q, Scheme scheme = Scheme::Mdnc,
                              std::optional<double> target = std::nullopt);

PrimalSolution solve_primal(const PrimalProblem& pp, const BarrierOptions& opt = {});

/// Gradients in the full (M + N) layout; entries of unselected relays are 0.
struct PrimalGradients {
    double tilde_v = 0.0;
    Vector grad_tilde_v;
    // per outage constraint: g = Pr_out - target and its log form
    std::vector<double> g;
    std::vector<Vector> grad_g;
    std::vector<double> log_g;  // log Pr_out - log target
    std::vector<Vector> grad_log_g;
};

PrimalGradients gradients(const LogPowers& point, const PrimalProblem& pp);

/// Build the compact point of pp from full log powers and back.
Vector to_compact(const PrimalProblem& pp, const LogPowers& x);
LogPowers to_full(const PrimalProblem& pp, const Vector& y);

/// Constraint functions of pp in the barrier formulation (log form).
std::vector<SmoothFn> primal_constraints(const PrimalProblem& pp);

}  // namespace mdnc
