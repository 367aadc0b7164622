// SPDX-License-Identifier: Apache-2.0
#include "mdnc/primal.hpp"

#include "mdnc/outage.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mdnc {

namespace {

SmoothFn log_constraint(const ExpSum& f, double log_rhs) {
    return [f, log_rhs](const Vector& y, Vector* g, Matrix* H) { return f.eval_log(y, g, H) - log_rhs; };
}

}  // namespace

PrimalProblem assemble_primal(const ScenarioConfig& s, const LinkCoefficients& c, const RelaySchedule& u,
                              double q, Scheme scheme, std::optional<double> target) {
    if (u.size() != s.N || c.c_h.rows() != s.M || c.c_h.cols() != s.N)
        throw std::invalid_argument("assemble_primal: dimension mismatch");
    if (q < 0.0) throw std::invalid_argument("assemble_primal: q must be >= 0");
    PrimalProblem pp;
    pp.scheme = scheme;
    pp.schedule = u;
    pp.q = q;
    pp.M = s.M;
    pp.N = s.N;
    pp.c_g = c.c_g;
    const double tgt = target.value_or(s.pr_out_target);
    if (!(tgt > 0.0)) throw std::invalid_argument("assemble_primal: target must be > 0");
    pp.log_target = std::log(tgt);

    const int k = u.count();
    const int n = s.M + k;
    if (k == 0 || (scheme == Scheme::Mdnc && k < s.M)) {
        pp.feasible = false;
        pp.infeasible_reason = "fewer selected relays than users";
        return pp;
    }

    pp.lower.resize(n);
    pp.upper.resize(n);
    for (int i = 0; i < s.M; ++i) {
        pp.lower(i) = std::log(kMinUserPower);
        pp.upper(i) = std::log(s.P_S_max);
    }
    for (int t = 0; t < k; ++t) {
        pp.lower(s.M + t) = 0.0;
        pp.upper(s.M + t) = std::log1p(s.P_R_max / c.c_g(u.theta()[static_cast<std::size_t>(t)]));
    }

    pp.objective = ExpSum(v_prime_posynomial(q, s, c, u, scheme));
    if (scheme == Scheme::Mdnc) {
        pp.outage.emplace_back(mdnc_outage_posynomial(c, u));
    } else {
        for (const auto& p : nonc_outage_posynomials(c, u)) pp.outage.emplace_back(p);
    }

    const double w = second_hop_slots(s, scheme);
    if (std::isfinite(s.E0)) {
        Posynomial b(n);
        double rhs = s.E0 - circuit_energy(s, scheme, k);
        for (int t = 0; t < k; ++t) {
            Posynomial::Exponents e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(s.M + t)] = 1;
            const double cj = c.c_g(u.theta()[static_cast<std::size_t>(t)]);
            b.add_term(e, s.delta_P * s.T * w * cj);
            rhs += s.delta_P * s.T * w * cj;
        }
        if (s.include_user_energy_in_budget)
            for (int i = 0; i < s.M; ++i) {
                Posynomial::Exponents e(static_cast<std::size_t>(n), 0);
                e[static_cast<std::size_t>(i)] = 1;
                b.add_term(e, s.T);
            }
        pp.budget_rhs = rhs;
        if (b.num_terms() > 0) pp.budget = ExpSum(b);
        // cheapest point: every variable at its lower bound
        const double cheapest = pp.budget ? pp.budget->value(pp.lower) : 0.0;
        if (!(rhs > 0.0) || cheapest > rhs) {
            pp.feasible = false;
            pp.infeasible_reason = "energy budget exceeded at minimum power";
            return pp;
        }
    }
    // most reliable point: every variable at its upper bound
    for (const auto& f : pp.outage)
        if (f.log_value(pp.upper) > pp.log_target) {
            pp.feasible = false;
            pp.infeasible_reason = "outage target missed at maximum power";
            return pp;
        }
    return pp;
}

std::vector<SmoothFn> primal_constraints(const PrimalProblem& pp) {
    std::vector<SmoothFn> out;
    for (const auto& f : pp.outage) out.push_back(log_constraint(f, pp.log_target));
    if (pp.budget) out.push_back(log_constraint(*pp.budget, std::log(pp.budget_rhs)));
    return out;
}

Vector to_compact(const PrimalProblem& pp, const LogPowers& x) {
    return compact_variables(pp.schedule, x.pt, x.pt_relay);
}

LogPowers to_full(const PrimalProblem& pp, const Vector& y) {
    LogPowers x;
    x.pt = y.head(pp.M);
    x.pt_relay = Vector::Zero(pp.N);
    const auto& th = pp.schedule.theta();
    for (std::size_t t = 0; t < th.size(); ++t) x.pt_relay(th[t]) = y(pp.M + static_cast<Eigen::Index>(t));
    return x;
}

PrimalSolution solve_primal(const PrimalProblem& pp, const BarrierOptions& opt) {
    PrimalSolution sol;
    if (pp.lower.size() == 0) {
        sol.message = pp.infeasible_reason;
        return sol;
    }
    BarrierProblem bp;
    const ExpSum obj = pp.objective;
    bp.objective = [obj](const Vector& y, Vector* g, Matrix* H) { return obj.eval_log(y, g, H); };
    bp.constraints = primal_constraints(pp);
    bp.lower = pp.lower;
    bp.upper = pp.upper;

    const Vector mid = 0.5 * (pp.lower + pp.upper);
    PhaseOneResult p1 = phase_one(bp, mid, opt);
    sol.newton_iterations = p1.newton_iterations;
    if (!p1.feasible) {
        // Retry from near the most reliable corner before giving up.
        const Vector corner = pp.upper - 1e-3 * (pp.upper - pp.lower);
        PhaseOneResult p2 = phase_one(bp, corner, opt);
        sol.newton_iterations += p2.newton_iterations;
        if (p2.feasible || p2.max_violation < p1.max_violation) p1 = p2;
    }
    if (!p1.feasible) {
        sol.feasible = false;
        sol.y = p1.x;
        sol.max_violation = p1.max_violation;
        sol.log_powers = to_full(pp, sol.y);
        sol.message = pp.feasible ? "no strictly feasible point (phase one)" : pp.infeasible_reason;
        return sol;
    }

    const BarrierResult r = barrier_solve(bp, p1.x, opt);
    sol.feasible = true;
    sol.converged = r.converged;
    sol.message = r.message;
    sol.y = r.x;
    sol.newton_iterations += r.newton_iterations;
    sol.gap = r.gap;
    sol.kkt_residual = r.kkt_residual;
    sol.tilde_v = r.objective;
    sol.log_powers = to_full(pp, sol.y);
    LinkCoefficients cg;  // only c_g is needed for the relay substitution
    cg.c_g = pp.c_g;
    sol.powers = from_log_domain(cg, pp.schedule, sol.log_powers);

    sol.max_violation = -std::numeric_limits<double>::infinity();
    const auto cons = primal_constraints(pp);
    for (std::size_t i = 0; i < cons.size(); ++i) {
        const double v = cons[i](sol.y, nullptr, nullptr);
        sol.max_violation = std::max(sol.max_violation, v);
        const bool active = v > -1e-6;
        if (i < pp.outage.size())
            sol.outage_active = sol.outage_active || active;
        else
            sol.budget_active = active;
    }
    sol.at_upper.resize(static_cast<std::size_t>(sol.y.size()));
    for (Eigen::Index k = 0; k < sol.y.size(); ++k) sol.at_upper[static_cast<std::size_t>(k)] = pp.upper(k) - sol.y(k) < 1e-6;
    return sol;
}

PrimalGradients gradients(const LogPowers& point, const PrimalProblem& pp) {
    PrimalGradients out;
    const Vector y = to_compact(pp, point);
    const int k = pp.schedule.count();
    auto expand = [&](const Vector& gc) {
        Vector full = Vector::Zero(pp.M + pp.N);
        full.head(pp.M) = gc.head(pp.M);
        for (int t = 0; t < k; ++t) full(pp.M + pp.schedule.theta()[static_cast<std::size_t>(t)]) = gc(pp.M + t);
        return full;
    };
    Vector gc;
    out.grad_tilde_v = Vector::Zero(pp.M + pp.N);
    if (pp.objective.num_terms() > 0) {
        out.tilde_v = pp.objective.eval_log(y, &gc, nullptr);
        out.grad_tilde_v = expand(gc);
    }
    const double target = std::exp(pp.log_target);
    for (const auto& f : pp.outage) {
        const double v = f.eval(y, &gc, nullptr);
        out.g.push_back(v - target);
        out.grad_g.push_back(expand(gc));
        const double lv = f.eval_log(y, &gc, nullptr);
        out.log_g.push_back(lv - pp.log_target);
        out.grad_log_g.push_back(expand(gc));
    }
    return out;
}

}  // namespace mdnc
