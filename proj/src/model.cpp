// SPDX-License-Identifier: Apache-2.0
#include "mdnc/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mdnc {

double link_coefficient(double alpha0, double B, double N0, double d, double n,
                        double sigma2) {
    const double numerator = std::expm1(alpha0 / B * std::log(2.0)) * N0 * B;
    // d^{-n} sigma^2 in the denominator -> multiply by d^{n}
    return std::exp(std::log(numerator) + n * std::log(d) - std::log(sigma2));
}

namespace {

void check_shape(std::vector<std::string>& out, const char* name, const Matrix& m,
                 int rows, int cols) {
    if (m.rows() != rows || m.cols() != cols) {
        std::ostringstream os;
        os << name << ": expected " << rows << "x" << cols << ", got " << m.rows()
           << "x" << m.cols();
        out.push_back(os.str());
    }
}

void check_shape(std::vector<std::string>& out, const char* name, const Vector& v,
                 int n) {
    if (v.size() != n) {
        std::ostringstream os;
        os << name << ": expected length " << n << ", got " << v.size();
        out.push_back(os.str());
    }
}

template <class Dense>
void check_positive(std::vector<std::string>& out, const char* name, const Dense& m) {
    for (Eigen::Index k = 0; k < m.size(); ++k) {
        const double v = m.data()[k];
        if (!(std::isfinite(v) && v > 0.0)) {
            out.push_back(std::string(name) + ": entries must be finite and > 0");
            return;
        }
    }
}

void check_scalar(std::vector<std::string>& out, const char* name, double v) {
    if (!(std::isfinite(v) && v > 0.0)) out.push_back(std::string(name) + ": must be finite and > 0");
}

}  // namespace

std::vector<std::string> validate_scenario(const ScenarioConfig& s) {
    std::vector<std::string> out;
    if (s.M < 1) out.push_back("M: must be >= 1");
    if (s.N < 1) out.push_back("N: must be >= 1");
    if (s.M > s.N) out.push_back("M: M <= N");
    if (s.M >= 1 && s.N >= 1) {
        check_shape(out, "sigma_h", s.sigma_h, s.M, s.N);
        check_shape(out, "d_h", s.d_h, s.M, s.N);
        check_shape(out, "n_h", s.n_h, s.M, s.N);
        check_shape(out, "N0_h", s.N0_h, s.M, s.N);
        check_shape(out, "sigma_g", s.sigma_g, s.N);
        check_shape(out, "d_g", s.d_g, s.N);
        check_shape(out, "n_g", s.n_g, s.N);
        check_shape(out, "N0_g", s.N0_g, s.N);
    }
    check_positive(out, "sigma_h", s.sigma_h);
    check_positive(out, "d_h", s.d_h);
    check_positive(out, "n_h", s.n_h);
    check_positive(out, "N0_h", s.N0_h);
    check_positive(out, "sigma_g", s.sigma_g);
    check_positive(out, "d_g", s.d_g);
    check_positive(out, "n_g", s.n_g);
    check_positive(out, "N0_g", s.N0_g);

    check_scalar(out, "alpha0", s.alpha0);
    check_scalar(out, "B", s.B);
    check_scalar(out, "T", s.T);
    check_scalar(out, "P_S_max", s.P_S_max);
    check_scalar(out, "P_R_max", s.P_R_max);
    check_scalar(out, "P0_R", s.P0_R);
    check_scalar(out, "P_sleep_R", s.P_sleep_R);
    check_scalar(out, "P0_BS", s.P0_BS);
    check_scalar(out, "P_sleep_BS", s.P_sleep_BS);
    check_scalar(out, "delta_P", s.delta_P);
    if (!(s.E0 > 0.0)) out.push_back("E0: must be > 0");  // +inf allowed
    if (!(s.beta > 0.0 && s.beta < 1.0)) out.push_back("beta: beta in (0,1)");
    if (!(s.pr_out_target > 0.0 && s.pr_out_target < 1.0))
        out.push_back("pr_out_target: pr_out_target in (0,1)");
    if (!(s.P0_R > s.P_sleep_R)) out.push_back("P0_R: P0_R > P_sleep_R");
    if (!(s.P0_BS > s.P_sleep_BS)) out.push_back("P0_BS: P0_BS > P_sleep_BS");
    return out;
}

LinkCoefficients build_link_coefficients(const ScenarioConfig& s) {
    const auto violations = validate_scenario(s);
    if (!violations.empty()) {
        std::string msg = "invalid scenario:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw std::invalid_argument(msg);
    }
    LinkCoefficients c;
    c.c_h.resize(s.M, s.N);
    c.c_g.resize(s.N);
    for (int i = 0; i < s.M; ++i)
        for (int j = 0; j < s.N; ++j) {
            const double v = link_coefficient(s.alpha0, s.B, s.N0_h(i, j), s.d_h(i, j),
                                              s.n_h(i, j), s.sigma_h(i, j));
            if (!(std::isfinite(v) && v > 0.0)) {
                std::ostringstream os;
                os << "link coefficient c_h(" << i << "," << j << ") is not finite";
                throw std::invalid_argument(os.str());
            }
            c.c_h(i, j) = v;
        }
    for (int j = 0; j < s.N; ++j) {
        const double v =
            link_coefficient(s.alpha0, s.B, s.N0_g(j), s.d_g(j), s.n_g(j), s.sigma_g(j));
        if (!(std::isfinite(v) && v > 0.0)) {
            std::ostringstream os;
            os << "link coefficient c_g(" << j << ") is not finite";
            throw std::invalid_argument(os.str());
        }
        c.c_g(j) = v;
    }
    return c;
}

ScenarioConfig apply_relay_shift(const ScenarioConfig& s, double delta) {
    ScenarioConfig out = s;
    // Rebase when the distances were edited after the last shift.
    const bool tracked = s.shift_origin_d_h.rows() == s.d_h.rows() &&
                         s.shift_origin_d_h.cols() == s.d_h.cols() &&
                         s.shift_origin_d_g.size() == s.d_g.size() &&
                         (s.shift_origin_d_h.array() + s.relay_shift == s.d_h.array()).all() &&
                         (s.shift_origin_d_g.array() - s.relay_shift == s.d_g.array()).all();
    if (!tracked) {
        out.shift_origin_d_h = s.d_h;
        out.shift_origin_d_g = s.d_g;
        out.relay_shift = 0.0;
    }
    out.relay_shift += delta;
    out.d_h = out.shift_origin_d_h.array() + out.relay_shift;
    out.d_g = out.shift_origin_d_g.array() - out.relay_shift;
    for (Eigen::Index k = 0; k < out.d_h.size(); ++k)
        if (!(out.d_h.data()[k] > 0.0)) {
            std::ostringstream os;
            os << "relay shift " << delta << " makes a user->relay distance " << out.d_h.data()[k]
               << " <= 0";
            throw std::invalid_argument(os.str());
        }
    for (Eigen::Index j = 0; j < out.d_g.size(); ++j)
        if (!(out.d_g(j) > 0.0)) {
            std::ostringstream os;
            os << "relay shift " << delta << " makes relay->BS distance d_g(" << j
               << ") = " << out.d_g(j) << " <= 0";
            throw std::invalid_argument(os.str());
        }
    return out;
}

}  // namespace mdnc
