// SPDX-License-Identifier: Apache-2.0
//
// Dense two-phase simplex for small linear programs
//   minimize c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  lower <= x <= upper
// and a branch-and-bound layer for binary variables on top of it.
#pragma once

#include "mdnc/model.hpp"

#include <vector>

namespace mdnc {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* lp_status_name(LpStatus s);

struct LinearProgram {
    Vector c;
    Matrix A_ub;
    Vector b_ub;
    Matrix A_eq;
    Vector b_eq;
    Vector lower;  // may hold -inf
    Vector upper;  // may hold +inf

    int num_vars() const { return static_cast<int>(c.size()); }
    /// Appends the row a.x <= b.
    void add_le(const Vector& a, double b);
    void add_eq(const Vector& a, double b);
};

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Vector x;
    double objective = 0.0;
    int pivots = 0;
};

LpResult solve_lp(const LinearProgram& lp);

struct MilpResult {
    LpStatus status = LpStatus::Infeasible;
    Vector x;
    double objective = 0.0;
    int nodes = 0;
    int leaves = 0;  // nodes whose LP optimum was integral
};

/// Variables flagged in `binary` must take values in {0, 1}; their bounds in
/// lp are intersected with [0, 1]. Branches on the fractional variable
/// closest to 0.5 (lowest index on ties), dives depth-first and backtracks to
/// the open node with the best bound.
MilpResult solve_milp(const LinearProgram& lp, const std::vector<bool>& binary, double int_tol = 1e-7);

}  // namespace mdnc
