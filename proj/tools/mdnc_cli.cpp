// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: sweeps, energy curves, relay relocation and
// simulation-based verification on a scenario file.
//
// Exit codes: 0 ok, 1 usage/runtime error, 2 invalid scenario,
// 3 every target infeasible, 4 verification failed.

#include "mdnc/scenario_io.hpp"
#include "mdnc/sweep.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace mdnc;

namespace {

constexpr int kExitScenario = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitVerify = 4;

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string scenario;
    std::string scheme = "mdnc";
    std::vector<std::string> modes{"goa"};
    std::string targets;
    std::string deltas = "-150:200:25";
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    std::string out = ".";
    int jobs = 1;
    bool user_energy = false;
    bool idle_relays = false;
};

// "1e-2,1e-3" or "log:HI:LO:PER_DECADE"
std::vector<double> parse_targets(const std::string& text) {
    if (text.empty()) return default_targets();
    if (text.rfind("log:", 0) == 0) {
        double hi = 0, lo = 0;
        int per = 0;
        char c1 = 0, c2 = 0;
        std::istringstream is(text.substr(4));
        if (!(is >> hi >> c1 >> lo >> c2 >> per) || c1 != ':' || c2 != ':')
            throw CLI::ValidationError("--targets", "expected log:HI:LO:PER_DECADE");
        return log_range(hi, lo, per);
    }
    std::vector<double> out;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

// "a,b,c" or "FROM:TO:STEP"
std::vector<double> parse_deltas(const std::string& text) {
    std::vector<double> out;
    if (std::count(text.begin(), text.end(), ':') == 2) {
        double a = 0, b = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream is(text);
        if (!(is >> a >> c1 >> b >> c2 >> step) || !(step > 0))
            throw CLI::ValidationError("--delta", "expected FROM:TO:STEP");
        for (int k = 0; a + k * step <= b + 1e-9 * std::fabs(step); ++k) out.push_back(a + k * step);
        return out;
    }
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

std::vector<Scheme> parse_schemes(const std::string& s) {
    if (s == "mdnc") return {Scheme::Mdnc};
    if (s == "nonc") return {Scheme::Nonc};
    return {Scheme::Mdnc, Scheme::Nonc};
}

Mode parse_mode(const std::string& m) {
    if (m == "goa") return Mode::Goa;
    if (m == "brute") return Mode::Brute;
    return Mode::Mc;
}

ScenarioConfig load(const Common& o) {
    ScenarioConfig s;
    try {
        s = load_scenario(o.scenario);
    } catch (const std::exception& e) {
        throw ScenarioError(e.what());
    }
    if (o.user_energy) s.include_user_energy_in_budget = true;
    const auto problems = validate_scenario(s);
    if (!problems.empty()) {
        std::string msg;
        for (const auto& p : problems) msg += "\n  " + p;
        throw ScenarioError("invalid scenario:" + msg);
    }
    try {
        build_link_coefficients(s);
    } catch (const std::exception& e) {
        throw ScenarioError(e.what());
    }
    return s;
}

std::ofstream open_out(const Common& o, const std::string& name) {
    fs::create_directories(o.out);
    const fs::path p = fs::path(o.out) / name;
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    std::cerr << "wrote " << p.string() << '\n';
    return f;
}

std::string tag(double v) { return format_number(v); }

int run_sweep(const Common& o) {
    const ScenarioConfig s = load(o);
    SweepOptions opt;
    opt.targets = parse_targets(o.targets);
    opt.schemes = parse_schemes(o.scheme);
    opt.modes.clear();
    for (const auto& m : o.modes) opt.modes.push_back(parse_mode(m));
    opt.jobs = o.jobs;
    opt.mc.samples = o.samples;
    opt.mc.seed = o.seed;
    opt.mc.idle_failed_relays = o.idle_relays;
    const auto rows = pareto_sweep(s, opt);
    {
        auto f = open_out(o, "sweep.csv");
        write_sweep_csv(f, s, rows);
    }
    // plot data: achieved outage vs EE, one file per scheme and mode
    for (Scheme sc : opt.schemes)
        for (Mode m : opt.modes) {
            std::vector<std::pair<double, double>> xy;
            for (const auto& r : rows)
                if (r.scheme == sc && r.mode == m && r.feasible) xy.emplace_back(r.pr_out, r.ee);
            auto f = open_out(o, std::string("ee_") + scheme_name(sc) + "_" + mode_name(m) + ".dat");
            write_dat(f, std::string(kSweepSchema) + " pr_out ee_bits_per_joule", xy);
        }
    const bool any = std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.feasible; });
    const bool verify_failed =
        std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.has_mc && !r.mc_pass; });
    if (!any) return kExitInfeasible;
    return verify_failed ? kExitVerify : 0;
}

int run_energy_curve(const Common& o) {
    const ScenarioConfig s = load(o);
    const auto targets = parse_targets(o.targets);
    bool any = false;
    for (Scheme sc : parse_schemes(o.scheme)) {
        const auto pts = energy_curve(s, targets, sc, std::nullopt, {}, o.jobs);
        {
            auto f = open_out(o, std::string("energy_") + scheme_name(sc) + ".csv");
            write_energy_csv(f, pts, sc);
        }
        std::vector<std::pair<double, double>> xy;
        for (const auto& e : pts)
            if (e.feasible) {
                xy.emplace_back(e.pr_out, e.E_data);
                any = true;
            }
        auto f = open_out(o, std::string("energy_") + scheme_name(sc) + ".dat");
        write_dat(f, std::string(kEnergySchema) + " pr_out E_data_joule", xy);
    }
    return any ? 0 : kExitInfeasible;
}

int run_relay_location(const Common& o) {
    const ScenarioConfig s = load(o);
    const auto targets = o.targets.empty() ? std::vector<double>{1e-3} : parse_targets(o.targets);
    const auto deltas = parse_deltas(o.deltas);
    const auto rows = relay_location_study(s, deltas, targets, std::nullopt, {}, o.jobs);
    {
        auto f = open_out(o, "relay_location.csv");
        write_sweep_csv(f, s, rows, kLocationSchema);
    }
    for (double t : targets) {
        std::vector<std::pair<double, double>> xy;
        for (const auto& r : rows)
            if (r.target == t && r.feasible) xy.emplace_back(r.delta, r.ee);
        auto f = open_out(o, "relay_location_" + tag(t) + ".dat");
        write_dat(f, std::string(kLocationSchema) + " delta_m ee_bits_per_joule", xy);
    }
    const bool any = std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.feasible; });
    return any ? 0 : kExitInfeasible;
}

struct VerifyArgs {
    double target = 0.0;
    std::vector<int> relays;
    std::vector<double> p_user, p_relay;
    bool corrupt = false;
};

int run_verify(const Common& o, const VerifyArgs& v) {
    const ScenarioConfig s = load(o);
    LinkCoefficients c = build_link_coefficients(s);
    const Scheme scheme = parse_schemes(o.scheme).front();
    RelaySchedule u;
    PowerAllocation p;
    if (!v.relays.empty()) {
        u = RelaySchedule::from_indices(s.N, v.relays);
        p = max_powers(s, u);
        if (!v.p_user.empty()) {
            if (static_cast<int>(v.p_user.size()) != s.M) throw CLI::ValidationError("--p-user", "need M values");
            for (int i = 0; i < s.M; ++i) p.p(i) = v.p_user[static_cast<std::size_t>(i)];
        }
        if (!v.p_relay.empty()) {
            if (v.p_relay.size() != v.relays.size())
                throw CLI::ValidationError("--p-relay", "need one value per relay in --relays");
            for (std::size_t k = 0; k < v.relays.size(); ++k) p.p_relay(v.relays[k]) = v.p_relay[k];
        }
    } else {
        const double target = v.target > 0.0 ? v.target : s.pr_out_target;
        const Solution sol = dinkelbach_solve(s, c, target, scheme);
        if (!sol.feasible) {
            std::cerr << "target " << tag(target) << " infeasible: " << sol.reason << '\n';
            return kExitInfeasible;
        }
        u = sol.schedule;
        p = sol.powers;
    }
    if (v.corrupt) c.c_g(u.theta().front()) *= 2.0;  // self-test: must fail
    McConfig mc;
    mc.samples = o.samples;
    mc.seed = o.seed;
    mc.idle_failed_relays = o.idle_relays;
    const VerifyReport r = verify(s, c, scheme, u, p, mc);
    const std::string js = verify_json(r);
    {
        auto f = open_out(o, "verify.json");
        f << js;
    }
    std::cout << js;
    return r.pass ? 0 : kExitVerify;
}

void add_common(CLI::App* app, Common& o, bool modes, bool deltas, bool mc) {
    app->add_option("scenario", o.scenario, "scenario file")->required()->check(CLI::ExistingFile);
    app->add_option("--scheme", o.scheme, "mdnc, nonc or both")
        ->check(CLI::IsMember({"mdnc", "nonc", "both"}))
        ->capture_default_str();
    app->add_option("--targets", o.targets, "comma list or log:HI:LO:PER_DECADE");
    if (modes)
        app->add_option("--mode", o.modes, "goa, brute, mc (repeatable)")
            ->check(CLI::IsMember({"goa", "brute", "mc"}))
            ->delimiter(',')
            ->capture_default_str();
    if (deltas) app->add_option("--delta", o.deltas, "comma list or FROM:TO:STEP (m)")->capture_default_str();
    if (mc) {
        app->add_option("--samples", o.samples, "Monte Carlo samples")->check(CLI::PositiveNumber)->capture_default_str();
        app->add_option("--seed", o.seed, "Monte Carlo seed")->capture_default_str();
        app->add_flag("--idle-failed-relays", o.idle_relays,
                      "sensitivity variant (not the reference protocol): relays that failed to decode draw circuit power only");
    }
    app->add_option("--out", o.out, "output directory")->capture_default_str();
    app->add_option("--jobs", o.jobs, "concurrent sweep points")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_flag("--include-user-energy-in-budget", o.user_energy, "count user transmit energy against E0");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-efficient relay scheduling and power allocation for MDNC networks"};
    app.require_subcommand(1);
    Common o;
    VerifyArgs va;

    auto* sweep = app.add_subcommand("sweep", "outage target vs EE sweep (CSV + plot data)");
    add_common(sweep, o, true, false, true);
    auto* curve = app.add_subcommand("energy-curve", "data energy vs achieved outage");
    add_common(curve, o, false, false, false);
    auto* loc = app.add_subcommand("relay-location", "EE vs relay shifting distance, fixed three relays");
    add_common(loc, o, false, true, false);
    auto* ver = app.add_subcommand("verify", "analytic vs Monte Carlo at an operating point (JSON)");
    add_common(ver, o, false, false, true);
    ver->add_option("--target", va.target, "optimize at this target first (default: scenario target)");
    ver->add_option("--relays", va.relays, "relay indices (0-based); bypasses the optimizer")->delimiter(',');
    ver->add_option("--p-user", va.p_user, "user powers (W), default P_S_max")->delimiter(',');
    ver->add_option("--p-relay", va.p_relay, "relay powers (W) for --relays, default P_R_max")->delimiter(',');
    ver->add_flag("--corrupt-coefficient", va.corrupt, "double one coefficient (self-test; expected to fail)");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*sweep) return run_sweep(o);
        if (*curve) return run_energy_curve(o);
        if (*loc) return run_relay_location(o);
        if (*ver) return run_verify(o, va);
    } catch (const ScenarioError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitScenario;
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
