// SPDX-License-Identifier: Apache-2.0
//
// Rayleigh-fading simulation of the two-hop protocol. Each sample draws every
// channel gain, decides link success against the rate threshold, and applies
// the scheme's outage rule. Energy is deterministic unless the idle-relay
// variant is selected.
#pragma once

#include "mdnc/energy.hpp"
#include "mdnc/model.hpp"
#include "mdnc/schedule.hpp"

#include <cstdint>

namespace mdnc {

struct McConfig {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    std::uint32_t stream = 0;
    int threads = 0;             // 0: hardware concurrency; results do not depend on it
    // Sensitivity variant, off by default and not the reference protocol: a relay that failed to decode does not
    // radiate in its second-hop slot and only draws circuit power.
    bool idle_failed_relays = false;
};

struct McResult {
    Scheme scheme = Scheme::Mdnc;
    std::uint64_t samples = 0;
    std::uint64_t outages = 0;     // MDNC: frames; NoNC: summed over users
    double outage = 0.0;           // MDNC: frame outage; NoNC: mean over users
    double std_error = 0.0;        // sqrt(p(1-p)/n)
    Vector user_outage;            // NoNC per user (MDNC: all equal)
    Vector user_std_error;
    double ee = 0.0;               // with the empirical outage
    double mean_energy = 0.0;      // E_tot, averaged when the variant is on
};

/// Chunk of consecutive samples sharing one substream; the fixed split keeps
/// results independent of thread count.
inline constexpr std::uint64_t kMcChunk = 1u << 16;

McResult monte_carlo_outage(const ScenarioConfig& s, const RelaySchedule& u, const PowerAllocation& p,
                            const McConfig& mc, Scheme scheme = Scheme::Mdnc);

/// Same simulation; ee = M alpha0 T (1 - outage) / E_tot (NoNC: alpha0 T sum_i (1 - outage_i)).
McResult monte_carlo_ee(const ScenarioConfig& s, const RelaySchedule& u, const PowerAllocation& p,
                        const McConfig& mc, Scheme scheme = Scheme::Mdnc);

/// Exponential draws from stream (seed, stream) for distribution checks.
Vector exponential_samples(std::uint64_t seed, std::uint32_t stream, double mean, std::uint64_t n);

}  // namespace mdnc
