// SPDX-License-Identifier: Apache-2.0
//
// Exhaustive reference optimiser: every admissible schedule, powers by a
// fixed-schedule Dinkelbach. Exponential in N; used to check the main solver.
#pragma once

#include "mdnc/optimizer.hpp"

namespace mdnc {

inline constexpr int kOracleMaxRelays = 12;

struct OracleResult {
    Solution best;                      // maximum approximate EE
    std::vector<RelaySchedule> schedules;
    std::vector<double> q_star;         // per schedule, 0 if infeasible
    int feasible_count = 0;
};

/// Throws std::invalid_argument for N > kOracleMaxRelays.
OracleResult brute_force_optimize(const ScenarioConfig& s, const LinkCoefficients& c, double target,
                                  Scheme scheme = Scheme::Mdnc, const DinkelbachOptions& opt = {});

}  // namespace mdnc
