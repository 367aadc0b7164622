// SPDX-License-Identifier: Apache-2.0
//
// Energy accounting per transmission round and the energy-efficiency
// objective. V = M alpha0 T (1 - Pr_out) - q E_tot throughout, so q is in
// bits per joule.
#pragma once

#include "mdnc/model.hpp"
#include "mdnc/posynomial.hpp"
#include "mdnc/schedule.hpp"

namespace mdnc {

enum class Scheme { Mdnc, Nonc };

const char* scheme_name(Scheme s);

struct EnergyBreakdown {
    double E_S = 0.0;
    double E_R1 = 0.0;
    double E_BS1 = 0.0;
    double E_R2 = 0.0;
    double E_BS2 = 0.0;
    double E_tot = 0.0;
    double E_data = 0.0;  // transmit-power dependent share
};

/// Second-hop slots per selected relay: 1 for MDNC, M for NoNC.
double second_hop_slots(const ScenarioConfig& s, Scheme scheme);

EnergyBreakdown total_energy(const ScenarioConfig& s, const RelaySchedule& u, const PowerAllocation& p);
EnergyBreakdown nonc_energy(const ScenarioConfig& s, const RelaySchedule& u, const PowerAllocation& p);
EnergyBreakdown scheme_energy(const ScenarioConfig& s, Scheme scheme, const RelaySchedule& u,
                              const PowerAllocation& p);

/// Everything except transmit power terms, for k selected relays.
double circuit_energy(const ScenarioConfig& s, Scheme scheme, int k);

/// E_BS1 + E_BS2 + E_R1 + E_R2 (+ E_S if requested) <= E0.
bool energy_budget_ok(const EnergyBreakdown& e, double E0, bool include_user_energy = false);

/// M alpha0 T (1 - Pr_out) / E_tot. For NoNC pass the mean per-user outage.
double energy_efficiency(const ScenarioConfig& s, double outage_total, const EnergyBreakdown& e);

/// M alpha0 T (1 - Pr_out) - q E_tot.
double subtractive_value(double q, const ScenarioConfig& s, double outage_total, const EnergyBreakdown& e);

/// Constant added to -V so that V' is a posynomial:
/// M alpha0 T + q T delta_P w sum_j c_j (all relays).
double v_prime_offset(double q, const ScenarioConfig& s, const LinkCoefficients& c, Scheme scheme);

/// V' over the compact variables (users, selected relays), with the GP
/// outage approximation (NoNC: sum of per-user approximations).
Posynomial v_prime_posynomial(double q, const ScenarioConfig& s, const LinkCoefficients& c,
                              const RelaySchedule& u, Scheme scheme);

/// log V'. Throws std::domain_error if V' <= 0 (only possible for q < 0).
double tilde_v(double q, const ScenarioConfig& s, const LinkCoefficients& c, const RelaySchedule& u,
               const LogPowers& x, Scheme scheme = Scheme::Mdnc);

}  // namespace mdnc
