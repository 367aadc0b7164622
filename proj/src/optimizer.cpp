// SPDX-License-Identifier: Apache-2.0
#include "mdnc/optimizer.hpp"

#include "mdnc/lp.hpp"
#include "mdnc/outage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mdnc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double worst_outage_at_max(const ScenarioConfig& s, const LinkCoefficients& c, const RelaySchedule& u,
                           Scheme scheme) {
    const PowerAllocation p = max_powers(s, u);
    if (scheme == Scheme::Mdnc) return outage_exact(s, c, u, p).total;
    return nonc_outage(c, u, p).maxCoeff();
}

// Full-layout box of the master problem variables x = (pt, pt').
void master_box(const ScenarioConfig& s, const LinkCoefficients& c, Vector& lo, Vector& hi) {
    lo.resize(s.M + s.N);
    hi.resize(s.M + s.N);
    for (int i = 0; i < s.M; ++i) {
        lo(i) = std::log(kMinUserPower);
        hi(i) = std::log(s.P_S_max);
    }
    for (int j = 0; j < s.N; ++j) {
        lo(s.M + j) = 0.0;
        hi(s.M + j) = std::log1p(s.P_R_max / c.c_g(j));
    }
}

Vector full_vector(const LogPowers& x) {
    Vector v(x.pt.size() + x.pt_relay.size());
    v << x.pt, x.pt_relay;
    return v;
}

// max over the box of a + g.(x - x0)
double affine_max(double a, const Vector& g, const Vector& x0, const Vector& lo, const Vector& hi) {
    double v = a;
    for (Eigen::Index k = 0; k < g.size(); ++k) v += std::max(g(k) * (lo(k) - x0(k)), g(k) * (hi(k) - x0(k)));
    return v;
}

// log of the circuit-energy chord over [low, up] at k
double circuit_chord(const ScenarioConfig& s, Scheme scheme, const RelayCountBounds& b, double k, double* slope) {
    const double lo = std::log(circuit_energy(s, scheme, b.low));
    double sl = 0.0;
    if (b.up > b.low) sl = (std::log(circuit_energy(s, scheme, b.up)) - lo) / (b.up - b.low);
    if (slope) *slope = sl;
    return lo + sl * (k - b.low);
}

// Lower bound of tilde_v over every admissible schedule and power vector.
double global_floor(const ScenarioConfig& s, const LinkCoefficients& c, Scheme scheme, double q,
                    const RelayCountBounds& b) {
    const double w = second_hop_slots(s, scheme);
    return std::log(q * (circuit_energy(s, scheme, b.low) + s.T * s.M * kMinUserPower +
                         s.T * s.delta_P * w * c.c_g.sum()));
}

}  // namespace

RelayCountBounds relay_count_bounds(const ScenarioConfig& s, const LinkCoefficients& c, double target,
                                    Scheme scheme) {
    RelayCountBounds b;
    b.up = 0;
    for (int k = 1; k <= s.N; ++k)
        if (circuit_energy(s, scheme, k) <= s.E0) b.up = k;

    b.heuristic = s.N > 20;
    const int k0 = scheme == Scheme::Mdnc ? s.M : 1;
    b.low = s.N + 1;
    for (int k = k0; k <= s.N; ++k) {
        double best = kInf;
        RelaySchedule arg;
        if (!b.heuristic) {
            for (const auto& th : k_subsets(s.N, k)) {
                const auto u = RelaySchedule::from_indices(s.N, th);
                const double v = worst_outage_at_max(s, c, u, scheme);
                if (v < best) {
                    best = v;
                    arg = u;
                }
            }
        } else {
            // greedy: relays with the weakest links (largest c) last
            std::vector<int> order(static_cast<std::size_t>(s.N));
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int a, int bb) {
                return c.c_h.col(a).sum() + c.c_g(a) < c.c_h.col(bb).sum() + c.c_g(bb);
            });
            order.resize(static_cast<std::size_t>(k));
            arg = RelaySchedule::from_indices(s.N, order);
            best = worst_outage_at_max(s, c, arg, scheme);
        }
        if (best <= target) {
            b.low = k;
            b.best_low = arg;
            break;
        }
    }
    b.feasible = b.low <= b.up;
    return b;
}

double relaxation_bound(const ScenarioConfig& s, const LinkCoefficients& c, Scheme scheme, double q,
                        const RelayCountBounds& b, const LogPowers& x, double k) {
    const double w = second_hop_slots(s, scheme);
    double r = q * std::exp(circuit_chord(s, scheme, b, k, nullptr));
    r += q * s.T * x.pt.array().exp().sum();
    r += q * s.T * s.delta_P * w * (c.c_g.array() * x.pt_relay.array().exp()).sum();
    return std::log(r);
}

OACut build_oa_cuts(const ScenarioConfig& s, const LinkCoefficients& c, const PrimalProblem& pp,
                    const PrimalSolution& sol, const RelayCountBounds& bounds, int iteration) {
    OACut cut;
    cut.iteration = iteration;
    cut.schedule = pp.schedule;
    cut.primal_feasible = sol.feasible;
    if (sol.log_powers.pt.size() == s.M) {
        cut.anchor = sol.log_powers;
    } else {  // no point available (e.g. too few relays): use full power
        cut.anchor = to_log_domain(c, pp.schedule, max_powers(s, pp.schedule));
    }

    if (!pp.outage.empty() && pp.lower.size() > 0) {
        const PrimalGradients g = gradients(cut.anchor, pp);
        cut.tilde_v = g.tilde_v;
        cut.grad_tilde_v = g.grad_tilde_v;
        cut.log_g = g.log_g;
        cut.grad_log_g = g.grad_log_g;
    }

    if (pp.q > 0.0) {
        const double w = second_hop_slots(s, pp.scheme);
        const double k = pp.schedule.count();
        double slope = 0.0;
        const double chord = circuit_chord(s, pp.scheme, bounds, k, &slope);
        const Vector eu = cut.anchor.pt.array().exp();
        const Vector er = c.c_g.array() * cut.anchor.pt_relay.array().exp();
        const double t_users = pp.q * s.T;
        const double t_relays = pp.q * s.T * s.delta_P * w;
        const double t_circ = pp.q * std::exp(chord);
        const double r = t_users * eu.sum() + t_relays * er.sum() + t_circ;
        cut.has_relaxation = true;
        cut.relax_value = std::log(r);
        cut.relax_grad_x.resize(s.M + s.N);
        cut.relax_grad_x.head(s.M) = t_users * eu / r;
        cut.relax_grad_x.tail(s.N) = t_relays * er / r;
        cut.relax_grad_k = t_circ * slope / r;
    }
    return cut;
}

double objective_cut_value(const OACut& cut, const LogPowers& x) {
    return cut.tilde_v + cut.grad_tilde_v.dot(full_vector(x) - full_vector(cut.anchor));
}

LinearProgram master_lp(const ScenarioConfig& s, const LinkCoefficients& c, const GoaState& state,
                        const GoaOptions& opt, MasterLayout* layout) {
    if (state.cuts.empty()) throw std::invalid_argument("solve_master: no cuts");
    const int M = s.M, N = s.N;
    const int nx = M + N;
    const int iu = nx;          // first schedule variable
    const int iw = nx + N;      // epigraph variable
    const int n = iw + 1;
    if (layout) *layout = {0, iu, iw};

    Vector lo, hi;
    master_box(s, c, lo, hi);

    LinearProgram lp;
    lp.c = Vector::Unit(n, iw);
    lp.lower.resize(n);
    lp.upper.resize(n);
    lp.lower.head(nx) = lo;
    lp.upper.head(nx) = hi;
    lp.lower.segment(iu, N).setZero();
    lp.upper.segment(iu, N).setOnes();
    const double floor_w = global_floor(s, c, state.scheme, state.q, state.bounds);
    lp.lower(iw) = floor_w;
    lp.upper(iw) = kInf;
    if (state.has_incumbent) lp.upper(iw) = state.ubd - opt.strict_eps * std::fabs(state.ubd);

    // relay power only for selected relays
    for (int j = 0; j < N; ++j) {
        Vector a = Vector::Zero(n);
        a(M + j) = 1.0;
        a(iu + j) = -hi(M + j);
        lp.add_le(a, 0.0);
    }
    Vector card = Vector::Zero(n);
    card.segment(iu, N).setOnes();
    lp.add_le(card, state.bounds.up);
    lp.add_le(-card, -state.bounds.low);

    // Hamming distance to schedule U as  |U| - sum_{U} u + sum_{not U} u.
    auto hamming = [&](const RelaySchedule& U, double scale, Vector& a, double& rhs) {
        for (int j = 0; j < N; ++j) a(iu + j) += (U.selected(j) ? 1.0 : -1.0) * scale;
        rhs += scale * U.count();
    };

    for (const OACut& cut : state.cuts) {
        const Vector x0 = full_vector(cut.anchor);
        if (cut.has_relaxation) {
            // w >= v + gx.(x - x0) + gk (sum u - k0)
            Vector a = Vector::Zero(n);
            a.head(nx) = cut.relax_grad_x;
            a.segment(iu, N).setConstant(cut.relax_grad_k);
            a(iw) = -1.0;
            lp.add_le(a, cut.relax_grad_x.dot(x0) + cut.relax_grad_k * cut.schedule.count() - cut.relax_value);
        }
        if (cut.primal_feasible && cut.grad_tilde_v.size() == nx) {
            const double big = std::max(0.0, affine_max(cut.tilde_v, cut.grad_tilde_v, x0, lo, hi) - floor_w);
            Vector a = Vector::Zero(n);
            a.head(nx) = cut.grad_tilde_v;
            a(iw) = -1.0;
            double rhs = cut.grad_tilde_v.dot(x0) - cut.tilde_v;
            hamming(cut.schedule, big, a, rhs);
            lp.add_le(a, rhs);
        }
        for (std::size_t i = 0; i < cut.log_g.size(); ++i) {
            const Vector& g = cut.grad_log_g[i];
            const double big = std::max(0.0, affine_max(cut.log_g[i], g, x0, lo, hi));
            Vector a = Vector::Zero(n);
            a.head(nx) = g;
            double rhs = g.dot(x0) - cut.log_g[i];
            hamming(cut.schedule, big, a, rhs);
            lp.add_le(a, rhs);
        }
    }
    for (const RelaySchedule& U : state.visited) {
        // Hamming distance >= 1
        Vector a = Vector::Zero(n);
        double rhs = -1.0;
        hamming(U, 1.0, a, rhs);
        lp.add_le(a, rhs);
    }

    return lp;
}

MasterResult solve_master(const ScenarioConfig& s, const LinkCoefficients& c, const GoaState& state,
                          const GoaOptions& opt) {
    MasterLayout at;
    const LinearProgram lp = master_lp(s, c, state, opt, &at);
    if (lp.upper(at.w) < lp.lower(at.w)) return {};
    const int M = s.M, N = s.N;
    const int n = static_cast<int>(lp.c.size());
    const int iu = at.u, iw = at.w;
    std::vector<bool> binary(static_cast<std::size_t>(n), false);
    for (int j = 0; j < N; ++j) binary[static_cast<std::size_t>(iu + j)] = true;
    const MilpResult r = solve_milp(lp, binary);

    MasterResult out;
    out.nodes = r.nodes;
    out.leaves = r.leaves;
    if (r.status != LpStatus::Optimal) return out;
    out.feasible = true;
    std::vector<std::uint8_t> u(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) u[static_cast<std::size_t>(j)] = r.x(iu + j) > 0.5 ? 1 : 0;
    out.schedule = RelaySchedule(u);
    out.w = r.x(iw);
    out.x.pt = r.x.head(M);
    out.x.pt_relay = r.x.segment(M, N);
    return out;
}

GoaState goa_solve(const ScenarioConfig& s, const LinkCoefficients& c, double q, double target, Scheme scheme,
                   std::optional<RelaySchedule> warm_start, const GoaOptions& opt) {
    if (!(q > 0.0)) throw std::invalid_argument("goa_solve: q must be > 0");
    GoaState st;
    st.scheme = scheme;
    st.q = q;
    st.target = target;
    st.ubd = kInf;
    st.lbd = -kInf;
    st.bounds = relay_count_bounds(s, c, target, scheme);
    if (!st.bounds.feasible) return st;

    RelaySchedule U = st.bounds.best_low;
    if (warm_start && warm_start->size() == s.N && warm_start->count() >= st.bounds.low &&
        warm_start->count() <= st.bounds.up)
        U = *warm_start;

    for (int t = 0; t < opt.max_iterations; ++t) {
        st.iterations = t + 1;
        const PrimalProblem pp = assemble_primal(s, c, U, q, scheme, target);
        const PrimalSolution sol = solve_primal(pp, opt.barrier);
        st.newton_iterations += sol.newton_iterations;
        st.cuts.push_back(build_oa_cuts(s, c, pp, sol, st.bounds, t));
        st.visited.push_back(U);
        if (sol.feasible && sol.tilde_v < st.ubd) {
            st.ubd = sol.tilde_v;
            st.incumbent = sol;
            st.incumbent_schedule = U;
            st.has_incumbent = true;
        }
        st.ubd_history.push_back(st.ubd);

        const MasterResult mr = solve_master(s, c, st, opt);
        st.master_nodes += mr.nodes;
        if (!mr.feasible) {
            st.master_infeasible = true;
            break;
        }
        st.lbd = std::max(st.lbd, mr.w);
        st.lbd_history.push_back(st.lbd);
        if (st.has_incumbent && st.ubd - st.lbd <= opt.gap_tol * (1.0 + std::fabs(st.ubd))) break;
        if (std::find(st.visited.begin(), st.visited.end(), mr.schedule) != st.visited.end())
            throw std::logic_error("goa_solve: master proposed a visited schedule");
        U = mr.schedule;
    }
    return st;
}

Solution evaluate_solution(const ScenarioConfig& s, const LinkCoefficients& c, Scheme scheme,
                           const RelaySchedule& u, const PowerAllocation& p, double target) {
    Solution out;
    out.feasible = true;
    out.scheme = scheme;
    out.target = target;
    out.schedule = u;
    out.powers = p;
    out.log_powers = to_log_domain(c, u, p);
    out.energy = scheme_energy(s, scheme, u, p);
    if (scheme == Scheme::Mdnc) {
        out.pr_out = out.pr_out_max = outage_exact(s, c, u, p).total;
        out.pr_out_users = Vector::Constant(s.M, out.pr_out);
        out.pr_out_approx = out.pr_out_approx_max = outage_approx_power(c, u, p);
    } else {
        out.pr_out_users = nonc_outage(c, u, p);
        out.pr_out = out.pr_out_users.mean();
        out.pr_out_max = out.pr_out_users.maxCoeff();
        const Vector approx = nonc_outage_approx_power(c, u, p);
        out.pr_out_approx = approx.mean();
        out.pr_out_approx_max = approx.maxCoeff();
    }
    out.ee = energy_efficiency(s, out.pr_out, out.energy);
    out.q_star = energy_efficiency(s, out.pr_out_approx, out.energy);
    return out;
}

namespace {

// Shared Dinkelbach driver; `inner(q, warm)` returns the best schedule and
// primal solution at q, or nullopt if infeasible.
struct InnerResult {
    RelaySchedule schedule;
    PrimalSolution primal;
};

template <class Inner>
Solution dinkelbach_loop(const ScenarioConfig& s, const LinkCoefficients& c, double target, Scheme scheme,
                         const RelaySchedule& start, const DinkelbachOptions& opt, Inner inner) {
    Solution best;
    best.scheme = scheme;
    best.target = target;
    best.reason = "no feasible schedule";
    Diagnostics diag;

    // q0: efficiency at full power when that point meets the constraints.
    double q = 1.0;
    {
        const Solution at_max = evaluate_solution(s, c, scheme, start, max_powers(s, start), target);
        const bool budget_ok = energy_budget_ok(at_max.energy, s.E0, s.include_user_energy_in_budget);
        if (at_max.pr_out_approx_max <= target && budget_ok && at_max.q_star > 0.0) q = at_max.q_star;
    }
    const double v_tol = opt.v_tol_factor * s.M * s.alpha0;
    RelaySchedule warm = start;
    double best_ratio = -kInf;

    for (int theta = 0; theta < opt.max_iterations; ++theta) {
        diag.dinkelbach_iterations = theta + 1;
        const std::optional<InnerResult> r = inner(q, warm, theta, diag);
        if (!r) break;
        const Solution cand = evaluate_solution(s, c, scheme, r->schedule, r->primal.powers, target);
        const double bits = s.M * s.alpha0 * s.T * (1.0 - cand.pr_out_approx);
        const double V = bits - q * cand.energy.E_tot;
        diag.q_history.push_back(q);
        diag.v_history.push_back(V);
        const double ratio = bits / cand.energy.E_tot;
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best = cand;
        }
        if (std::fabs(V) <= v_tol) {
            diag.converged = true;
            break;
        }
        if (V < 0.0) break;  // inner solve fell short of the previous point
        q = ratio;
        warm = r->schedule;
    }
    best.diag = diag;
    if (best.feasible) {
        best.reason.clear();
        best.diag.q_history.push_back(best.q_star);
    }
    return best;
}

}  // namespace

Solution dinkelbach_solve(const ScenarioConfig& s, const LinkCoefficients& c, double target, Scheme scheme,
                          const DinkelbachOptions& opt) {
    const RelayCountBounds b = relay_count_bounds(s, c, target, scheme);
    if (!b.feasible) {
        Solution out;
        out.scheme = scheme;
        out.target = target;
        out.reason = b.low > s.N ? "target unreachable with all relays at full power"
                                 : "energy budget admits fewer relays than required";
        return out;
    }
    return dinkelbach_loop(s, c, target, scheme, b.best_low, opt,
                           [&](double q, const RelaySchedule& warm, int theta,
                               Diagnostics& diag) -> std::optional<InnerResult> {
                               GoaState st = goa_solve(s, c, q, target, scheme, warm, opt.goa);
                               st.theta = theta;
                               diag.goa_iterations += st.iterations;
                               diag.cuts += static_cast<int>(st.cuts.size());
                               diag.primal_solves += st.iterations;
                               diag.newton_iterations += st.newton_iterations;
                               diag.master_nodes += st.master_nodes;
                               diag.ubd_traces.push_back(st.ubd_history);
                               diag.lbd_traces.push_back(st.lbd_history);
                               diag.visited.push_back(st.visited);
                               if (!st.has_incumbent) return std::nullopt;
                               return InnerResult{st.incumbent_schedule, st.incumbent};
                           });
}

Solution nonc_solve(const ScenarioConfig& s, const LinkCoefficients& c, double target,
                    const DinkelbachOptions& opt) {
    return dinkelbach_solve(s, c, target, Scheme::Nonc, opt);
}

Solution solve_fixed_schedule(const ScenarioConfig& s, const LinkCoefficients& c, const RelaySchedule& u,
                              double target, Scheme scheme, const DinkelbachOptions& opt) {
    return dinkelbach_loop(s, c, target, scheme, u, opt,
                           [&](double q, const RelaySchedule&, int, Diagnostics& diag) -> std::optional<InnerResult> {
                               const PrimalProblem pp = assemble_primal(s, c, u, q, scheme, target);
                               const PrimalSolution sol = solve_primal(pp, opt.goa.barrier);
                               diag.primal_solves += 1;
                               diag.newton_iterations += sol.newton_iterations;
                               if (!sol.feasible) return std::nullopt;
                               return InnerResult{u, sol};
                           });
}

}  // namespace mdnc
