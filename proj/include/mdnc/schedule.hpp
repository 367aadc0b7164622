// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mdnc/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mdnc {

/// Binary relay selection; theta is kept sorted and in sync with u.
class RelaySchedule {
public:
    RelaySchedule() = default;
    explicit RelaySchedule(std::vector<std::uint8_t> u);

    static RelaySchedule from_indices(int N, const std::vector<int>& theta);
    static RelaySchedule all(int N);

    int size() const { return static_cast<int>(u_.size()); }
    int count() const { return static_cast<int>(theta_.size()); }
    bool selected(int j) const { return u_[static_cast<std::size_t>(j)] != 0; }
    const std::vector<std::uint8_t>& u() const { return u_; }
    const std::vector<int>& theta() const { return theta_; }

    /// e.g. "{0,2,3}"
    std::string to_string() const;

    friend bool operator==(const RelaySchedule& a, const RelaySchedule& b) { return a.u_ == b.u_; }
    friend bool operator<(const RelaySchedule& a, const RelaySchedule& b) { return a.u_ < b.u_; }

private:
    std::vector<std::uint8_t> u_;
    std::vector<int> theta_;
};

/// Natural-domain powers. p_relay has length N with zeros for unselected relays.
struct PowerAllocation {
    Vector p;
    Vector p_relay;
};

/// Log-domain image: p_i = exp(pt_i) and u_j p'_j = c_j (exp(pt'_j) - 1).
struct LogPowers {
    Vector pt;
    Vector pt_relay;  // length N, 0 for unselected relays
};

LogPowers to_log_domain(const LinkCoefficients& c, const RelaySchedule& u, const PowerAllocation& p);
PowerAllocation from_log_domain(const LinkCoefficients& c, const RelaySchedule& u, const LogPowers& x);

/// Throws std::invalid_argument on cap/coupling violations.
void check_powers(const ScenarioConfig& s, const RelaySchedule& u, const PowerAllocation& p);

/// Users at P_S_max, selected relays at P_R_max.
PowerAllocation max_powers(const ScenarioConfig& s, const RelaySchedule& u);

/// Enumerate k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> k_subsets(int n, int k);

}  // namespace mdnc
