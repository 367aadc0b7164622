// SPDX-License-Identifier: Apache-2.0
#include "mdnc/energy.hpp"

#include "mdnc/outage.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mdnc {

const char* scheme_name(Scheme s) { return s == Scheme::Mdnc ? "mdnc" : "nonc"; }

double second_hop_slots(const ScenarioConfig& s, Scheme scheme) {
    return scheme == Scheme::Mdnc ? 1.0 : static_cast<double>(s.M);
}

EnergyBreakdown scheme_energy(const ScenarioConfig& s, Scheme scheme, const RelaySchedule& u,
                              const PowerAllocation& p) {
    const int k = u.count();
    if (k == 0) throw std::invalid_argument("energy: empty relay schedule");
    const double w = second_hop_slots(s, scheme);
    const double T = s.T;
    EnergyBreakdown e;
    e.E_S = p.p.sum() * T;
    e.E_R1 = k * s.P0_R * s.M * T;
    e.E_BS1 = s.P_sleep_BS * s.M * T;
    double relay_tx = 0.0;
    for (int j : u.theta()) relay_tx += p.p_relay(j);
    e.E_R2 = (k * s.P0_R + s.delta_P * relay_tx) * w * T + (k - 1) * s.P_sleep_R * s.beta * T;
    e.E_BS2 = s.P0_BS * k * w * T;
    e.E_tot = e.E_S + e.E_R1 + e.E_BS1 + e.E_R2 + e.E_BS2;
    e.E_data = e.E_S + s.delta_P * relay_tx * w * T;
    return e;
}

EnergyBreakdown total_energy(const ScenarioConfig& s, const RelaySchedule& u, const PowerAllocation& p) {
    return scheme_energy(s, Scheme::Mdnc, u, p);
}

EnergyBreakdown nonc_energy(const ScenarioConfig& s, const RelaySchedule& u, const PowerAllocation& p) {
    return scheme_energy(s, Scheme::Nonc, u, p);
}

double circuit_energy(const ScenarioConfig& s, Scheme scheme, int k) {
    const double w = second_hop_slots(s, scheme);
    return k * s.P0_R * s.M * s.T + s.P_sleep_BS * s.M * s.T + k * s.P0_R * w * s.T +
           (k - 1) * s.P_sleep_R * s.beta * s.T + s.P0_BS * k * w * s.T;
}

bool energy_budget_ok(const EnergyBreakdown& e, double E0, bool include_user_energy) {
    double used = e.E_BS1 + e.E_BS2 + e.E_R1 + e.E_R2;
    if (include_user_energy) used += e.E_S;
    return used <= E0;
}

double energy_efficiency(const ScenarioConfig& s, double outage_total, const EnergyBreakdown& e) {
    if (!(e.E_tot > 0.0)) throw std::invalid_argument("energy_efficiency: E_tot must be > 0");
    return s.M * s.alpha0 * s.T * (1.0 - outage_total) / e.E_tot;
}

double subtractive_value(double q, const ScenarioConfig& s, double outage_total, const EnergyBreakdown& e) {
    return s.M * s.alpha0 * s.T * (1.0 - outage_total) - q * e.E_tot;
}

double v_prime_offset(double q, const ScenarioConfig& s, const LinkCoefficients& c, Scheme scheme) {
    return s.M * s.alpha0 * s.T + q * s.T * s.delta_P * second_hop_slots(s, scheme) * c.c_g.sum();
}

Posynomial v_prime_posynomial(double q, const ScenarioConfig& s, const LinkCoefficients& c,
                              const RelaySchedule& u, Scheme scheme) {
    const int M = s.M;
    const int k = u.count();
    const int n = M + k;
    const double w = second_hop_slots(s, scheme);
    const double bits = s.alpha0 * s.T;

    Posynomial v(n);
    if (scheme == Scheme::Mdnc) {
        Posynomial out = mdnc_outage_posynomial(c, u);
        out *= M * bits;
        v += out;
    } else {
        for (Posynomial out : nonc_outage_posynomials(c, u)) {
            out *= bits;
            v += out;
        }
    }
    if (q > 0.0) {
        Posynomial::Exponents e(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < M; ++i) {
            e.assign(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(i)] = 1;
            v.add_term(e, q * s.T);
        }
        double unselected = 0.0;
        for (int j = 0; j < s.N; ++j)
            if (!u.selected(j)) unselected += c.c_g(j);
        for (int t = 0; t < k; ++t) {
            e.assign(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(M + t)] = 1;
            v.add_term(e, q * s.T * s.delta_P * w * c.c_g(u.theta()[static_cast<std::size_t>(t)]));
        }
        const double constant = q * (circuit_energy(s, scheme, k) + s.T * s.delta_P * w * unselected);
        v.add_term(Posynomial::Exponents(static_cast<std::size_t>(n), 0), constant);
    }
    return v;
}

double tilde_v(double q, const ScenarioConfig& s, const LinkCoefficients& c, const RelaySchedule& u,
               const LogPowers& x, Scheme scheme) {
    if (q < 0.0) throw std::domain_error("tilde_v: q must be >= 0");
    const ExpSum f(v_prime_posynomial(q, s, c, u, scheme));
    const Vector y = compact_variables(u, x.pt, x.pt_relay);
    const double vp = f.value(y);
    if (!(vp > 0.0) || !std::isfinite(vp)) {
        std::ostringstream os;
        os << "tilde_v: V' = " << vp << " is not positive at q = " << q;
        throw std::domain_error(os.str());
    }
    return f.log_value(y);
}

}  // namespace mdnc
