// SPDX-License-Identifier: Apache-2.0
#include "mdnc/schedule.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mdnc {

RelaySchedule::RelaySchedule(std::vector<std::uint8_t> u) : u_(std::move(u)) {
    for (std::size_t j = 0; j < u_.size(); ++j) {
        if (u_[j] > 1) throw std::invalid_argument("relay schedule entries must be 0 or 1");
        if (u_[j]) theta_.push_back(static_cast<int>(j));
    }
}

RelaySchedule RelaySchedule::from_indices(int N, const std::vector<int>& theta) {
    std::vector<std::uint8_t> u(static_cast<std::size_t>(N), 0);
    for (int j : theta) {
        if (j < 0 || j >= N) throw std::invalid_argument("relay index out of range");
        if (u[static_cast<std::size_t>(j)]) throw std::invalid_argument("duplicate relay index");
        u[static_cast<std::size_t>(j)] = 1;
    }
    return RelaySchedule(std::move(u));
}

RelaySchedule RelaySchedule::all(int N) {
    return RelaySchedule(std::vector<std::uint8_t>(static_cast<std::size_t>(N), 1));
}

std::string RelaySchedule::to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t k = 0; k < theta_.size(); ++k) os << (k ? "," : "") << theta_[k];
    os << '}';
    return os.str();
}

LogPowers to_log_domain(const LinkCoefficients& c, const RelaySchedule& u, const PowerAllocation& p) {
    LogPowers x;
    x.pt = p.p.array().log();
    x.pt_relay = Vector::Zero(u.size());
    for (int j : u.theta()) x.pt_relay(j) = std::log1p(p.p_relay(j) / c.c_g(j));
    return x;
}

PowerAllocation from_log_domain(const LinkCoefficients& c, const RelaySchedule& u, const LogPowers& x) {
    PowerAllocation p;
    p.p = x.pt.array().exp();
    p.p_relay = Vector::Zero(u.size());
    for (int j : u.theta()) p.p_relay(j) = c.c_g(j) * std::expm1(x.pt_relay(j));
    return p;
}

void check_powers(const ScenarioConfig& s, const RelaySchedule& u, const PowerAllocation& p) {
    if (p.p.size() != s.M || p.p_relay.size() != s.N || u.size() != s.N)
        throw std::invalid_argument("power allocation has wrong dimensions");
    for (int i = 0; i < s.M; ++i)
        if (!(p.p(i) > 0.0 && p.p(i) <= s.P_S_max))
            throw std::invalid_argument("user power p_" + std::to_string(i) + " outside (0, P_S_max]");
    for (int j = 0; j < s.N; ++j) {
        const double cap = u.selected(j) ? s.P_R_max : 0.0;
        if (!(p.p_relay(j) >= 0.0 && p.p_relay(j) <= cap))
            throw std::invalid_argument("relay power p'_" + std::to_string(j) + " outside [0, u_j P_R_max]");
    }
}

PowerAllocation max_powers(const ScenarioConfig& s, const RelaySchedule& u) {
    PowerAllocation p;
    p.p = Vector::Constant(s.M, s.P_S_max);
    p.p_relay = Vector::Zero(s.N);
    for (int j : u.theta()) p.p_relay(j) = s.P_R_max;
    return p;
}

std::vector<std::vector<int>> k_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t) idx[static_cast<std::size_t>(t)] = t;
    while (true) {
        out.push_back(idx);
        int t = k - 1;
        while (t >= 0 && idx[static_cast<std::size_t>(t)] == n - k + t) --t;
        if (t < 0) break;
        ++idx[static_cast<std::size_t>(t)];
        for (int r = t + 1; r < k; ++r) idx[static_cast<std::size_t>(r)] = idx[static_cast<std::size_t>(r - 1)] + 1;
    }
    return out;
}

}  // namespace mdnc
