// SPDX-License-Identifier: Apache-2.0
#include "mdnc/oracle.hpp"

#include <stdexcept>

namespace mdnc {

OracleResult brute_force_optimize(const ScenarioConfig& s, const LinkCoefficients& c, double target,
                                  Scheme scheme, const DinkelbachOptions& opt) {
    if (s.N > kOracleMaxRelays) throw std::invalid_argument("brute_force_optimize: N too large");
    OracleResult out;
    out.best.scheme = scheme;
    out.best.target = target;
    out.best.reason = "no feasible schedule";
    const int k0 = scheme == Scheme::Mdnc ? s.M : 1;
    for (int k = k0; k <= s.N; ++k) {
        if (circuit_energy(s, scheme, k) > s.E0) break;
        for (const auto& th : k_subsets(s.N, k)) {
            const auto u = RelaySchedule::from_indices(s.N, th);
            const Solution sol = solve_fixed_schedule(s, c, u, target, scheme, opt);
            out.schedules.push_back(u);
            out.q_star.push_back(sol.feasible ? sol.q_star : 0.0);
            if (!sol.feasible) continue;
            ++out.feasible_count;
            if (!out.best.feasible || sol.q_star > out.best.q_star) out.best = sol;
        }
    }
    return out;
}

}  // namespace mdnc
