// SPDX-License-Identifier: Apache-2.0
#include "mdnc/scenario_io.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mdnc {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
    const auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

int bracket_depth(const std::string& s) {
    int depth = 0;
    for (char ch : s) {
        if (ch == '[' || ch == '{') ++depth;
        if (ch == ']' || ch == '}') --depth;
    }
    return depth;
}

double as_number(const json& v, const std::string& key) {
    if (!v.is_number()) throw std::invalid_argument(key + ": expected a number");
    return v.get<double>();
}

Matrix as_matrix(const json& v, const std::string& key) {
    if (!v.is_array() || v.empty() || !v[0].is_array())
        throw std::invalid_argument(key + ": expected a nested array (matrix)");
    const auto rows = static_cast<Eigen::Index>(v.size());
    const auto cols = static_cast<Eigen::Index>(v[0].size());
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (!v[i].is_array() || static_cast<Eigen::Index>(v[i].size()) != cols)
            throw std::invalid_argument(key + ": ragged matrix row " + std::to_string(i));
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = as_number(v[i][j], key);
    }
    return m;
}

Vector as_vector(const json& v, const std::string& key) {
    if (!v.is_array()) throw std::invalid_argument(key + ": expected an array");
    Vector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = as_number(v[i], key);
    return out;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& text) {
    std::map<std::string, json> values;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        const int start = lineno;
        while (bracket_depth(value) > 0 && std::getline(in, line)) {
            ++lineno;
            value += " " + trim(strip_comment(line));
        }
        if (bracket_depth(value) != 0)
            throw std::invalid_argument("line " + std::to_string(start) + ": unbalanced brackets for " + key);
        if (values.count(key))
            throw std::invalid_argument("line " + std::to_string(start) + ": duplicate key " + key);
        try {
            values[key] = json::parse(value);
        } catch (const json::parse_error& e) {
            throw std::invalid_argument("line " + std::to_string(start) + ": cannot parse value of " +
                                        key + ": " + e.what());
        }
    }

    static const std::set<std::string> known = {
        "M",      "N",           "sigma_h", "d_h",     "n_h",       "N0_h",       "sigma_g",
        "d_g",    "n_g",         "N0_g",    "alpha0",  "B",         "T",          "codeword_bits",
        "beta",   "P_S_max",     "P_R_max", "P0_R",    "P_sleep_R", "P0_BS",      "P_sleep_BS",
        "delta_P", "E0",         "pr_out_target", "include_user_energy_in_budget"};
    for (const auto& [k, v] : values)
        if (!known.count(k)) throw std::invalid_argument("unknown key " + k);

    auto need = [&](const std::string& k) -> const json& {
        auto it = values.find(k);
        if (it == values.end()) throw std::invalid_argument("missing key " + k);
        return it->second;
    };

    ScenarioConfig s;
    const json& jm = need("M");
    const json& jn = need("N");
    if (!jm.is_number_integer() || !jn.is_number_integer())
        throw std::invalid_argument("M, N: expected integers");
    s.M = jm.get<int>();
    s.N = jn.get<int>();
    s.sigma_h = as_matrix(need("sigma_h"), "sigma_h");
    s.d_h = as_matrix(need("d_h"), "d_h");
    s.n_h = as_matrix(need("n_h"), "n_h");
    s.N0_h = as_matrix(need("N0_h"), "N0_h");
    s.sigma_g = as_vector(need("sigma_g"), "sigma_g");
    s.d_g = as_vector(need("d_g"), "d_g");
    s.n_g = as_vector(need("n_g"), "n_g");
    s.N0_g = as_vector(need("N0_g"), "N0_g");
    s.alpha0 = as_number(need("alpha0"), "alpha0");
    s.B = as_number(need("B"), "B");
    if (values.count("T") && values.count("codeword_bits"))
        throw std::invalid_argument("T and codeword_bits are mutually exclusive");
    if (values.count("T")) {
        s.T = as_number(values["T"], "T");
    } else {
        const double bits =
            values.count("codeword_bits") ? as_number(values["codeword_bits"], "codeword_bits") : 125000.0;
        s.T = bits / s.alpha0;
    }
    s.beta = as_number(need("beta"), "beta");
    s.P_S_max = as_number(need("P_S_max"), "P_S_max");
    s.P_R_max = as_number(need("P_R_max"), "P_R_max");
    s.P0_R = as_number(need("P0_R"), "P0_R");
    s.P_sleep_R = as_number(need("P_sleep_R"), "P_sleep_R");
    s.P0_BS = as_number(need("P0_BS"), "P0_BS");
    s.P_sleep_BS = as_number(need("P_sleep_BS"), "P_sleep_BS");
    s.delta_P = as_number(need("delta_P"), "delta_P");
    s.E0 = as_number(need("E0"), "E0");
    s.pr_out_target = as_number(need("pr_out_target"), "pr_out_target");
    if (values.count("include_user_energy_in_budget")) {
        const json& b = values["include_user_energy_in_budget"];
        if (!b.is_boolean()) throw std::invalid_argument("include_user_energy_in_budget: expected true/false");
        s.include_user_energy_in_budget = b.get<bool>();
    }
    return s;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open scenario file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_scenario(ss.str());
}

}  // namespace mdnc
