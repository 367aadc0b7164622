// SPDX-License-Identifier: Apache-2.0
#include "mdnc/sweep.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <ostream>

namespace mdnc {

namespace {

std::string relays_field(const RelaySchedule& u) {
    std::string out;
    for (int j : u.theta()) {
        if (!out.empty()) out += ';';
        out += std::to_string(j);
    }
    return out;
}

nlohmann::json vec_json(const Vector& v) {
    auto a = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

void write_sweep_csv(std::ostream& os, const ScenarioConfig& s, const std::vector<SweepRow>& rows,
                     const char* schema) {
    os << "# schema: " << schema << '\n';
    os << "target,delta,scheme,mode,status,reason,relays,k";
    for (int i = 0; i < s.M; ++i) os << ",p_S" << i + 1;
    for (int j = 0; j < s.N; ++j) os << ",p_R" << j + 1;
    os << ",ee,pr_out,pr_out_max,pr_out_approx,E_tot,E_data,q_star,dinkelbach_iterations,goa_iterations,cuts,"
          "newton_iterations,mc_outage,mc_std_error,mc_ee,mc_pass\n";
    for (const SweepRow& r : rows) {
        os << format_number(r.target) << ',' << format_number(r.delta) << ',' << scheme_name(r.scheme) << ','
           << mode_name(r.mode) << ',' << (r.feasible ? "ok" : "infeasible") << ',' << r.reason << ',';
        if (!r.feasible) {
            // null fields, one per remaining column
            const int rest = 1 + s.M + s.N + 11 + 4;
            for (int k = 0; k < rest; ++k) os << ',';
            os << '\n';
            continue;
        }
        os << relays_field(r.schedule) << ',' << r.schedule.count();
        for (int i = 0; i < s.M; ++i) os << ',' << format_number(r.powers.p(i));
        for (int j = 0; j < s.N; ++j) os << ',' << format_number(r.powers.p_relay(j));
        for (double v : {r.ee, r.pr_out, r.pr_out_max, r.pr_out_approx, r.E_tot, r.E_data, r.q_star})
            os << ',' << format_number(v);
        os << ',' << r.dinkelbach_iterations << ',' << r.goa_iterations << ',' << r.cuts << ',' << r.newton_iterations;
        if (r.has_mc)
            os << ',' << format_number(r.mc_outage) << ',' << format_number(r.mc_std_error) << ','
               << format_number(r.mc_ee) << ',' << (r.mc_pass ? "pass" : "fail");
        else
            os << ",,,,";
        os << '\n';
    }
}

void write_energy_csv(std::ostream& os, const std::vector<EnergyPoint>& pts, Scheme scheme) {
    os << "# schema: " << kEnergySchema << '\n';
    os << "target,scheme,status,pr_out,E_data,relays,max_user_power,at_power_cap,peak\n";
    for (const EnergyPoint& e : pts) {
        os << format_number(e.target) << ',' << scheme_name(scheme) << ',' << (e.feasible ? "ok" : "infeasible");
        if (e.feasible)
            os << ',' << format_number(e.pr_out) << ',' << format_number(e.E_data) << ',' << e.relays << ','
               << format_number(e.max_user_power) << ',' << int(e.at_power_cap) << ',' << int(e.peak);
        else
            os << ",,,,,,";
        os << '\n';
    }
}

void write_dat(std::ostream& os, const std::string& header, const std::vector<std::pair<double, double>>& xy) {
    os << "# " << header << '\n';
    for (const auto& [x, y] : xy) os << format_number(x) << ' ' << format_number(y) << '\n';
}

std::string verify_json(const VerifyReport& r) {
    nlohmann::ordered_json j;
    j["schema"] = kVerifySchema;
    j["scheme"] = scheme_name(r.scheme);
    j["relays"] = r.schedule.theta();
    j["p_user"] = vec_json(r.powers.p);
    j["p_relay"] = vec_json(r.powers.p_relay);
    j["samples"] = r.mc.samples;
    j["seed"] = r.mc.seed;
    j["stream"] = r.mc.stream;
    j["idle_failed_relays"] = r.mc.idle_failed_relays;
    j["outage"] = {{"analytic", r.analytic_outage},
                   {"empirical", r.mc_outage},
                   {"delta", r.mc_outage - r.analytic_outage},
                   {"band", r.band},
                   {"analytic_users", vec_json(r.analytic_user_outage)},
                   {"empirical_users", vec_json(r.mc_user_outage)},
                   {"pass", r.outage_pass}};
    j["ee"] = {{"analytic", r.analytic_ee},
               {"empirical", r.mc_ee},
               {"delta", r.mc_ee - r.analytic_ee},
               {"band", r.ee_band},
               {"pass", r.ee_pass}};
    j["pass"] = r.pass;
    return j.dump(2) + "\n";
}

}  // namespace mdnc
