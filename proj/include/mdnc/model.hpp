// SPDX-License-Identifier: Apache-2.0
//
// Scenario description and per-link coefficients for the M-user, N-relay
// two-hop network.
#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace mdnc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Full network parameterisation. Matrices are M x N (user -> relay), vectors
/// have length N (relay -> base station). Units: metres, W, W/Hz, Hz, s, J.
struct ScenarioConfig {
    int M = 0;
    int N = 0;

    Matrix sigma_h;  // Rayleigh variances of user->relay links
    Matrix d_h;      // distances (m)
    Matrix n_h;      // path-loss exponents
    Matrix N0_h;     // noise PSD (W/Hz)

    Vector sigma_g;
    Vector d_g;
    Vector n_g;
    Vector N0_g;

    double alpha0 = 0.0;  // fixed rate (bit/s)
    double B = 0.0;       // bandwidth (Hz)
    double T = 0.0;       // slot duration (s)
    double beta = 0.0;    // sleep fraction

    double P_S_max = 0.0;
    double P_R_max = 0.0;
    double P0_R = 0.0;
    double P_sleep_R = 0.0;
    double P0_BS = 0.0;
    double P_sleep_BS = 0.0;
    double delta_P = 0.0;

    double E0 = 0.0;
    double pr_out_target = 0.0;

    // Sensitivity switch: count user transmit energy against E0 as well.
    bool include_user_energy_in_budget = false;

    // Bookkeeping for apply_relay_shift: distances before any shift and the
    // accumulated offset. Lets a shift followed by its negation restore the
    // original distances bit for bit. Maintained by apply_relay_shift only.
    Matrix shift_origin_d_h;
    Vector shift_origin_d_g;
    double relay_shift = 0.0;
};

struct LinkCoefficients {
    Matrix c_h;  // M x N, c_ij in W
    Vector c_g;  // N, c_j in W
};

/// (2^{alpha0/B} - 1) * N0 * B / (d^{-n} sigma^2); evaluated in log space so
/// extreme path loss does not underflow before the division.
double link_coefficient(double alpha0, double B, double N0, double d, double n,
                        double sigma2);

/// Throws std::invalid_argument if the scenario is invalid or a coefficient
/// is not finite (the message names the link).
LinkCoefficients build_link_coefficients(const ScenarioConfig& s);

/// User->relay distances grow by delta, relay->BS distances shrink by delta.
ScenarioConfig apply_relay_shift(const ScenarioConfig& s, double delta);

/// Empty iff every invariant holds. Each entry reads "<field>: <constraint>".
std::vector<std::string> validate_scenario(const ScenarioConfig& s);

}  // namespace mdnc
