// SPDX-License-Identifier: Apache-2.0
//
// Batch studies over the optimizer: outage/EE sweeps, the data-energy curve,
// relay relocation, and analytic-vs-simulated verification. Row order is
// fixed by the inputs, never by scheduling, so outputs are reproducible.
#pragma once

#include "mdnc/monte_carlo.hpp"
#include "mdnc/optimizer.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mdnc {

enum class Mode { Goa, Brute, Mc };
const char* mode_name(Mode m);

struct SweepRow {
    double target = 0.0;
    Scheme scheme = Scheme::Mdnc;
    Mode mode = Mode::Goa;
    double delta = 0.0;          // relay shift (relocation study)
    bool feasible = false;
    std::string reason;          // "infeasible", "invalid-delta", ... when !feasible
    RelaySchedule schedule;
    PowerAllocation powers;
    double ee = 0.0;
    double pr_out = 0.0;         // exact; NoNC mean over users
    double pr_out_max = 0.0;
    double pr_out_approx = 0.0;
    double E_tot = 0.0;
    double E_data = 0.0;
    double q_star = 0.0;
    int dinkelbach_iterations = 0;
    int goa_iterations = 0;
    int cuts = 0;
    int newton_iterations = 0;
    // simulation columns (mode mc)
    bool has_mc = false;
    double mc_outage = 0.0;
    double mc_std_error = 0.0;
    double mc_ee = 0.0;
    bool mc_pass = false;
};

struct SweepOptions {
    std::vector<double> targets;   // empty: default_targets()
    std::vector<Scheme> schemes{Scheme::Mdnc};
    std::vector<Mode> modes{Mode::Goa};
    int jobs = 1;
    McConfig mc{};
    DinkelbachOptions solver{};
};

/// 1e-2 down to 5e-6, eight points per decade, log spaced.
std::vector<double> default_targets();

/// Log-spaced values from hi down to lo, `per_decade` points per decade,
/// both ends included.
std::vector<double> log_range(double hi, double lo, int per_decade);

/// One row per (scheme, mode, target), in that nesting order.
std::vector<SweepRow> pareto_sweep(const ScenarioConfig& s, const SweepOptions& opt);

/// Row built from a solved instance.
SweepRow make_row(const Solution& sol, Mode mode);

struct EnergyPoint {
    double target = 0.0;
    bool feasible = false;
    double pr_out = 0.0;
    double E_data = 0.0;
    int relays = 0;
    double max_user_power = 0.0;
    bool at_power_cap = false;   // some user at P_S_max (to 1e-4 relative)
    bool peak = false;           // local maximum of E_data along the curve
};

/// E_data along the optimized sweep (targets in the given order). With a
/// fixed schedule, powers are optimized for that schedule only.
std::vector<EnergyPoint> energy_curve(const ScenarioConfig& s, const std::vector<double>& targets, Scheme scheme,
                                      std::optional<RelaySchedule> fixed = std::nullopt,
                                      const DinkelbachOptions& solver = {}, int jobs = 1);

/// Curve points from sweep rows of one scheme, in row order.
std::vector<EnergyPoint> energy_points(const ScenarioConfig& s, const std::vector<SweepRow>& rows);

/// Schedule of the given size with the highest EE; nullopt if none is feasible.
std::optional<RelaySchedule> best_fixed_subset(const ScenarioConfig& s, double target, int size,
                                               const DinkelbachOptions& solver = {});

/// EE versus relay shift for a fixed schedule (if not given: the best
/// three-relay subset at delta = 0, chosen per target). MDNC with power
/// allocation. Rows ordered by target, then delta.
std::vector<SweepRow> relay_location_study(const ScenarioConfig& s, const std::vector<double>& deltas,
                                           const std::vector<double>& targets,
                                           std::optional<RelaySchedule> fixed = std::nullopt,
                                           const DinkelbachOptions& solver = {}, int jobs = 1);

struct VerifyReport {
    Scheme scheme = Scheme::Mdnc;
    RelaySchedule schedule;
    PowerAllocation powers;
    McConfig mc;
    double analytic_outage = 0.0;
    Vector analytic_user_outage;
    double mc_outage = 0.0;
    Vector mc_user_outage;
    double band = 0.0;           // 3 standard errors under the analytic outage
    double analytic_ee = 0.0;
    double mc_ee = 0.0;
    double ee_band = 0.0;
    bool outage_pass = false;
    bool ee_pass = false;
    bool pass = false;
};

/// Simulates the operating point and compares it with the closed forms based
/// on `c` (so a corrupted coefficient shows up as a failure).
VerifyReport verify(const ScenarioConfig& s, const LinkCoefficients& c, Scheme scheme, const RelaySchedule& u,
                    const PowerAllocation& p, const McConfig& mc);

// --- output ---------------------------------------------------------------

inline constexpr const char* kSweepSchema = "mdnc-sweep/1";
inline constexpr const char* kEnergySchema = "mdnc-energy-curve/1";
inline constexpr const char* kLocationSchema = "mdnc-relay-location/1";
inline constexpr const char* kVerifySchema = "mdnc-verify/1";

/// Shortest round-trip-safe text with 12 significant digits, locale free.
std::string format_number(double v);

void write_sweep_csv(std::ostream& os, const ScenarioConfig& s, const std::vector<SweepRow>& rows,
                     const char* schema = kSweepSchema);
void write_energy_csv(std::ostream& os, const std::vector<EnergyPoint>& pts, Scheme scheme);
/// Two whitespace-separated columns with a '#' header line.
void write_dat(std::ostream& os, const std::string& header, const std::vector<std::pair<double, double>>& xy);
std::string verify_json(const VerifyReport& r);

}  // namespace mdnc
