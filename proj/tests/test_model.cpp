#include "fixtures.hpp"

#include "mdnc/model.hpp"
#include "mdnc/scenario_io.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace mdnc;

namespace {

bool has_violation(const std::vector<std::string>& v, const std::string& needle) {
    return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("reference scenario loads and validates") {
    const auto s = test::reference_scenario();
    CHECK(s.M == 2);
    CHECK(s.N == 4);
    CHECK(s.T == doctest::Approx(125000.0 / 300000.0).epsilon(1e-15));
    CHECK(s.d_h(1, 3) == 161.8);
    CHECK(s.N0_g(2) == doctest::Approx(0.0132e-14).epsilon(1e-15));
    CHECK(validate_scenario(s).empty());
}

TEST_CASE("c_11 agrees with a direct recomputation") {
    const auto s = test::reference_scenario();
    const auto c = build_link_coefficients(s);
    // spreadsheet-style: numerator and path loss evaluated separately
    const double gamma = std::pow(2.0, 300000.0 / 125000.0) - 1.0;
    const double num = gamma * 0.063e-14 * 125000.0;
    const double den = std::pow(857.5, -2.557) * 5.1291;
    CHECK(c.c_h(0, 0) == doctest::Approx(num / den).epsilon(1e-12));
    CHECK(c.c_h(0, 0) == doctest::Approx(0.00207842).epsilon(1e-5));
    CHECK(c.c_g(3) == doctest::Approx(0.01233223).epsilon(1e-5));
}

TEST_CASE("unit link gives c = 1") {
    // N0*B*(2^{a/B}-1) = 1 with a/B = 1 -> N0 B = 1
    CHECK(link_coefficient(1.0, 1.0, 1.0, 1.0, 3.7, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("coefficient scaling and monotonicity") {
    auto s = test::reference_scenario();
    const auto c0 = build_link_coefficients(s);

    auto s2 = s;
    s2.sigma_h *= 2.0;
    s2.sigma_g *= 2.0;
    const auto c2 = build_link_coefficients(s2);
    CHECK(((c2.c_h.array() * 2.0 - c0.c_h.array()).abs() / c0.c_h.array()).maxCoeff() < 1e-14);
    CHECK(((c2.c_g.array() * 2.0 - c0.c_g.array()).abs() / c0.c_g.array()).maxCoeff() < 1e-14);

    auto s3 = s;
    s3.N0_h *= 3.0;
    const auto c3 = build_link_coefficients(s3);
    CHECK(((c3.c_h.array() - 3.0 * c0.c_h.array()).abs() / c0.c_h.array()).maxCoeff() < 1e-14);

    for (int i = 0; i < s.M; ++i)
        for (int j = 0; j < s.N; ++j) {
            auto t = s;
            t.d_h(i, j) *= 1.01;
            CHECK(build_link_coefficients(t).c_h(i, j) > c0.c_h(i, j));
            t = s;
            t.N0_h(i, j) *= 1.01;
            CHECK(build_link_coefficients(t).c_h(i, j) > c0.c_h(i, j));
            t = s;
            t.sigma_h(i, j) *= 1.01;
            CHECK(build_link_coefficients(t).c_h(i, j) < c0.c_h(i, j));
        }

    // linear in (2^{alpha0/B} - 1)
    const double g1 = std::expm1(s.alpha0 / s.B * std::log(2.0));
    auto s4 = s;
    s4.alpha0 = s.B * std::log2(1.0 + 5.0 * g1);
    const auto c4 = build_link_coefficients(s4);
    CHECK(((c4.c_h.array() - 5.0 * c0.c_h.array()).abs() / c0.c_h.array()).maxCoeff() < 1e-12);
}

TEST_CASE("extreme path loss is rejected with the link named") {
    auto s = test::reference_scenario();
    s.n_h(1, 2) = 400.0;
    try {
        build_link_coefficients(s);
        FAIL("expected rejection");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("c_h(1,2)") != std::string::npos);
    }
}

TEST_CASE("relay shift") {
    const auto s = test::reference_scenario();
    const auto same = apply_relay_shift(s, 0.0);
    CHECK(same.d_h == s.d_h);
    CHECK(same.d_g == s.d_g);

    const auto up = apply_relay_shift(s, 50.0);
    CHECK(up.d_h(0, 0) == 907.5);
    CHECK(up.d_g(0) == doctest::Approx(271.7).epsilon(1e-14));
    CHECK(up.sigma_h == s.sigma_h);
    CHECK(up.E0 == s.E0);

    CHECK_THROWS_AS(apply_relay_shift(s, -1000.0), std::invalid_argument);
    CHECK_THROWS_AS(apply_relay_shift(s, 400.0), std::invalid_argument);  // d_g(0) = 321.7

    for (double delta : {-150.0, -37.3, 0.1, 25.0, 161.7, 200.0}) {
        const auto back = apply_relay_shift(apply_relay_shift(s, delta), -delta);
        CHECK(back.d_h == s.d_h);
        CHECK(back.d_g == s.d_g);
    }
}

TEST_CASE("validation diagnostics") {
    auto s = test::reference_scenario();
    auto bad = s;
    bad.M = 5;
    CHECK(has_violation(validate_scenario(bad), "M <= N"));

    bad = s;
    bad.beta = 1.5;
    CHECK(has_violation(validate_scenario(bad), "beta in (0,1)"));

    bad = s;
    bad.P_sleep_BS = 200.0;
    CHECK(has_violation(validate_scenario(bad), "P0_BS > P_sleep_BS"));

    bad = s;
    bad.pr_out_target = 1.0;
    CHECK(has_violation(validate_scenario(bad), "pr_out_target"));

    bad = s;
    bad.d_g(2) = -1.0;
    CHECK(has_violation(validate_scenario(bad), "d_g"));
}

TEST_CASE("scenario parser rejects malformed input") {
    CHECK_THROWS_AS(parse_scenario("M = 2\nbogus = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scenario("M = [1, 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scenario("M = 2\n"), std::invalid_argument);  // missing keys
}
