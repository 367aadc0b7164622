// SPDX-License-Identifier: Apache-2.0
//
// Log-barrier interior-point method for small smooth convex problems
//   minimize f0(x)  s.t.  f_i(x) <= 0,  lower <= x <= upper
// with dense Newton steps. Nothing here is specific to the network model.
#pragma once

#include "mdnc/model.hpp"

#include <functional>
#include <string>
#include <vector>

namespace mdnc {

/// Returns f(x); fills gradient and Hessian when the pointers are non-null.
using SmoothFn = std::function<double(const Vector& x, Vector* grad, Matrix* hess)>;

struct BarrierProblem {
    SmoothFn objective;
    std::vector<SmoothFn> constraints;
    Vector lower;  // may hold -inf
    Vector upper;  // may hold +inf
};

struct BarrierOptions {
    double t0 = 1.0;
    double mu = 10.0;
    double gap_tol = 1e-7;
    double newton_tol = 1e-12;  // on lambda^2 / 2
    int max_newton_per_stage = 100;
    int max_stages = 40;
    double armijo = 0.3;
    double backtrack = 0.5;
};

struct BarrierResult {
    Vector x;
    double objective = 0.0;
    Vector multipliers;   // one per constraint, 1/(-t f_i)
    double gap = 0.0;     // m/t at exit
    double kkt_residual = 0.0;
    int newton_iterations = 0;
    int stages = 0;
    bool converged = false;
    std::string message;
};

/// x0 must be strictly feasible.
BarrierResult barrier_solve(const BarrierProblem& prob, const Vector& x0, const BarrierOptions& opt = {});

struct PhaseOneResult {
    bool feasible = false;
    Vector x;               // strictly feasible if feasible, else the max-slack point
    double max_violation = 0.0;  // max_i f_i(x) at x
    int newton_iterations = 0;
};

/// Minimizes max_i f_i over the box starting from x0 (strictly inside the
/// box). Stops early once a strictly feasible point with margin is found.
PhaseOneResult phase_one(const BarrierProblem& prob, const Vector& x0, const BarrierOptions& opt = {});

}  // namespace mdnc
