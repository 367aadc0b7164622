#include "fixtures.hpp"

#include "mdnc/energy.hpp"
#include "mdnc/outage.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace mdnc;

TEST_CASE("MDNC energy by direct evaluation") {
    const auto s = test::reference_scenario();
    const auto u = RelaySchedule::from_indices(4, {0, 2});
    PowerAllocation p{Vector::Constant(2, 10.0), Vector::Zero(4)};
    p.p_relay(0) = p.p_relay(2) = 20.0;
    const auto e = total_energy(s, u, p);
    const double T = 125.0 / 300.0;
    CHECK(e.E_BS1 == doctest::Approx(62.5).epsilon(1e-14));
    CHECK(e.E_S == doctest::Approx(20.0 * T).epsilon(1e-14));
    CHECK(e.E_R1 == doctest::Approx(2 * 56.0 * 2 * T).epsilon(1e-14));
    CHECK(e.E_R2 == doctest::Approx(2 * (56.0 + 2.6 * 20.0) * T + 39.0 * 0.1 * T).epsilon(1e-14));
    CHECK(e.E_BS2 == doctest::Approx(130.0 * 2 * T).epsilon(1e-14));
    CHECK(e.E_tot == e.E_S + e.E_R1 + e.E_BS1 + e.E_R2 + e.E_BS2);
    CHECK(e.E_data == doctest::Approx(20.0 * T + 2.6 * 40.0 * T).epsilon(1e-14));
    CHECK(energy_budget_ok(e, 900.0));
    CHECK(energy_budget_ok(e, std::numeric_limits<double>::infinity()));
    CHECK_FALSE(energy_budget_ok(e, 0.0));
    CHECK(e.E_tot - e.E_data == doctest::Approx(circuit_energy(s, Scheme::Mdnc, 2)).epsilon(1e-14));

    CHECK_THROWS_AS(total_energy(s, RelaySchedule(std::vector<std::uint8_t>(4, 0)), p), std::invalid_argument);
}

TEST_CASE("energy structure") {
    auto s = test::reference_scenario();
    const auto u = RelaySchedule::from_indices(4, {1});
    PowerAllocation p{Vector::Constant(2, 3.0), Vector::Zero(4)};
    p.p_relay(1) = 5.0;
    auto s0 = s;
    s0.beta = 0.0;  // outside the valid range, only the formula is exercised
    const auto e0 = total_energy(s0, u, p);
    CHECK(e0.E_R2 == doctest::Approx((56.0 + 2.6 * 5.0) * s.T).epsilon(1e-14));

    const auto e1 = total_energy(s, u, p);
    PowerAllocation p2{p.p * 2.0, p.p_relay * 2.0};
    const auto e2 = total_energy(s, u, p2);
    CHECK(e2.E_S == doctest::Approx(2 * e1.E_S).epsilon(1e-14));
    CHECK(e2.E_R1 == e1.E_R1);
    CHECK(e2.E_BS1 == e1.E_BS1);
    CHECK(e2.E_BS2 == e1.E_BS2);
    CHECK(e2.E_R2 - e1.E_R2 == doctest::Approx(2.6 * 5.0 * s.T).epsilon(1e-12));
}

TEST_CASE("NoNC energy") {
    auto s = test::reference_scenario();
    const auto u = RelaySchedule::from_indices(4, {0, 2});
    PowerAllocation p{Vector::Constant(2, 10.0), Vector::Zero(4)};
    p.p_relay(0) = p.p_relay(2) = 20.0;
    const auto m = total_energy(s, u, p);
    const auto n = nonc_energy(s, u, p);
    CHECK(n.E_BS2 == doctest::Approx(2 * m.E_BS2).epsilon(1e-14));
    CHECK(n.E_R1 == m.E_R1);
    CHECK(n.E_R2 == doctest::Approx(2 * 2 * (56.0 + 2.6 * 20.0) * s.T + 39.0 * 0.1 * s.T).epsilon(1e-14));

    // single user: schemes coincide
    auto s1 = s;
    s1.M = 1;
    PowerAllocation p1{Vector::Constant(1, 10.0), p.p_relay};
    const auto a = total_energy(s1, u, p1);
    const auto b = nonc_energy(s1, u, p1);
    CHECK(a.E_tot == b.E_tot);
    CHECK(a.E_R2 == b.E_R2);
}

TEST_CASE("energy efficiency and subtractive value") {
    const auto s = test::reference_scenario();
    EnergyBreakdown e;
    e.E_tot = s.M * s.alpha0 * s.T;
    CHECK(energy_efficiency(s, 0.0, e) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(energy_efficiency(s, 1.0, e) == 0.0);
    e.E_tot = 0.0;
    CHECK_THROWS_AS(energy_efficiency(s, 0.1, e), std::invalid_argument);

    e.E_tot = 430.0;
    const double pr = 3e-4;
    CHECK(subtractive_value(0.0, s, pr, e) == doctest::Approx(s.M * s.alpha0 * s.T * (1 - pr)).epsilon(1e-15));
    const double q = energy_efficiency(s, pr, e);
    CHECK(std::fabs(subtractive_value(q, s, pr, e)) <= 1e-9);
    CHECK(subtractive_value(q + 1.0, s, pr, e) < subtractive_value(q, s, pr, e));
}

TEST_CASE("tilde_v matches the subtractive value chain") {
    const auto s = test::reference_scenario();
    const auto c = build_link_coefficients(s);
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    for (Scheme scheme : {Scheme::Mdnc, Scheme::Nonc})
        for (int rep = 0; rep < 50; ++rep) {
            const auto u = RelaySchedule::from_indices(4, rep % 2 ? std::vector<int>{0, 2} : std::vector<int>{0, 1, 3});
            PowerAllocation p{Vector::Zero(2), Vector::Zero(4)};
            for (int i = 0; i < 2; ++i) p.p(i) = 0.01 + 9.99 * d(rng);
            for (int j : u.theta()) p.p_relay(j) = 20.0 * d(rng);
            const double q = 1000.0 * d(rng);
            const auto e = scheme_energy(s, scheme, u, p);
            const double pr = scheme == Scheme::Mdnc ? outage_approx_power(c, u, p)
                                                     : nonc_outage_approx_power(c, u, p).mean();
            const double ref = std::log(-subtractive_value(q, s, pr, e) + v_prime_offset(q, s, c, scheme));
            const double got = tilde_v(q, s, c, u, to_log_domain(c, u, p), scheme);
            CHECK(std::fabs(got - ref) <= 1e-12 * std::fabs(ref));
        }
}

TEST_CASE("tilde_v corner cases") {
    const auto s = test::reference_scenario();
    const auto c = build_link_coefficients(s);
    const auto u = RelaySchedule::all(4);
    const auto p = max_powers(s, u);
    const auto x = to_log_domain(c, u, p);
    // q = 0: V' = M alpha0 T Pr_out
    CHECK(tilde_v(0.0, s, c, u, x) ==
          doctest::Approx(std::log(s.M * s.alpha0 * s.T * outage_approx_power(c, u, p))).epsilon(1e-13));
    CHECK_THROWS_AS(tilde_v(-1.0, s, c, u, x), std::domain_error);

    // At q = EE (approximate outage) V = 0 and tilde_v collapses to the offset.
    const double pr = outage_approx_power(c, u, p);
    const double q = energy_efficiency(s, pr, total_energy(s, u, p));
    CHECK(tilde_v(q, s, c, u, x) == doctest::Approx(std::log(v_prime_offset(q, s, c, Scheme::Mdnc))).epsilon(1e-13));

    // strictly increasing in the outage at fixed energy: raising c_h raises
    // only the outage term
    auto c2 = c;
    c2.c_h *= 1.5;
    CHECK(tilde_v(100.0, s, c2, u, x) > tilde_v(100.0, s, c, u, x));
}
