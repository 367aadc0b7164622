// SPDX-License-Identifier: Apache-2.0
//
// Outage probability of the two-hop network.
//
// MDNC: the BS fails unless at least M relays both decode every user message
// (first hop) and get their network codeword through (second hop). Case A is
// "fewer than M relays decode", case B "enough decode but fewer than M of
// them deliver".
//
// NoNC: user i fails iff every selected relay fails on its own path for i.
#pragma once

#include "mdnc/model.hpp"
#include "mdnc/posynomial.hpp"
#include "mdnc/schedule.hpp"

#include <vector>

namespace mdnc {

struct OutageBreakdown {
    double pr_A = 0.0;
    double pr_B = 0.0;
    double total = 1.0;
    std::vector<double> zeta;  // Pr{K relays decode}, K = 0..count
    Matrix pr_e_h;             // M x N first-hop link outages
    Vector pr_e_g;             // N second-hop link outages (1 when unselected)
    bool insufficient_relays = false;  // count < M, outage certain
};

/// 1 - exp(-c/p); exactly 1 at p = 0.
double link_outage(double c, double p);

/// rho_j = exp(-sum_i c_ij / p_i).
double relay_decode_prob(const Vector& c_column, const Vector& p);

/// Probability that exactly K of the selected relays decode; rho has length N.
double prob_zeta_K(const RelaySchedule& u, const Vector& rho, int K);

/// Probability that exactly tau relays of phi deliver; pr_e_g has length N.
double prob_varsigma_given_zeta(const std::vector<int>& phi, const Vector& pr_e_g, int tau);

OutageBreakdown outage_exact(const ScenarioConfig& s, const LinkCoefficients& c,
                             const RelaySchedule& u, const PowerAllocation& p);

/// High-SNR approximation: first-hop failure ~ sum_i c_ij/p_i, second-hop
/// outage ~ c_j/(c_j + p'_j), success factors ~ 1.
double outage_approx_power(const LinkCoefficients& c, const RelaySchedule& u,
                           const PowerAllocation& p);

/// Same approximation in log-domain variables, evaluated as a posynomial.
double outage_approx_logdomain(const LinkCoefficients& c, const RelaySchedule& u,
                               const Vector& pt, const Vector& pt_relay);

/// Posynomial of the approximation over the compact variable vector
/// y = (pt_0..pt_{M-1}, pt'_{theta_0}..pt'_{theta_{k-1}}).
Posynomial mdnc_outage_posynomial(const LinkCoefficients& c, const RelaySchedule& u);

/// Per-user NoNC outage.
Vector nonc_outage(const LinkCoefficients& c, const RelaySchedule& u, const PowerAllocation& p);

/// Per-user NoNC approximation prod_j (c_ij/p_i + c_j/(c_j + p'_j)).
Vector nonc_outage_approx_power(const LinkCoefficients& c, const RelaySchedule& u,
                                const PowerAllocation& p);

/// Per-user posynomials of the NoNC approximation over the compact vector.
std::vector<Posynomial> nonc_outage_posynomials(const LinkCoefficients& c, const RelaySchedule& u);

/// Compact variable vector (users, then selected relays) from full log powers.
Vector compact_variables(const RelaySchedule& u, const Vector& pt, const Vector& pt_relay);

}  // namespace mdnc
