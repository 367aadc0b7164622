#include "fixtures.hpp"

#include "mdnc/energy.hpp"
#include "mdnc/monte_carlo.hpp"
#include "mdnc/outage.hpp"
#include "mdnc/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace mdnc;

TEST_CASE("Philox4x32-10 reference vectors") {
    using C = Philox4x32::Counter;
    CHECK(Philox4x32::block({0, 0, 0, 0}, {0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::block({~0u, ~0u, ~0u, ~0u}, {~0u, ~0u}) == C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("stream draws") {
    PhiloxStream a(7, 0), b(7, 0), other(7, 1), reseed(8, 0);
    int same_other = 0, same_seed = 0;
    for (int i = 0; i < 1000; ++i) {
        const double x = a.uniform();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        CHECK(x == b.uniform());
        same_other += x == other.uniform();
        same_seed += x == reseed.uniform();
    }
    CHECK(same_other == 0);
    CHECK(same_seed == 0);

    // start_block skips whole blocks of two draws
    PhiloxStream c(7, 0), d(7, 0, 5);
    for (int i = 0; i < 10; ++i) c.uniform();
    CHECK(c.uniform() == d.uniform());
}

TEST_CASE("exponential draws have the configured mean") {
    for (double mean : {1e-3, 1.0, 40.0}) {
        const std::uint64_t n = 1'000'000;
        const Vector v = exponential_samples(99, 3, mean, n);
        CHECK(v.minCoeff() >= 0.0);
        const double se = mean / std::sqrt(static_cast<double>(n));
        CHECK(std::fabs(v.mean() - mean) <= 5.0 * se);
        // second moment of Exp is 2 mean^2
        CHECK(std::fabs(v.array().square().mean() / (2.0 * mean * mean) - 1.0) < 0.02);
    }
}

namespace {

struct Point {
    ScenarioConfig s;
    LinkCoefficients c;
    RelaySchedule u;
    PowerAllocation p;
};

// Two relays at 1 W: outage around 1e-2, large enough for tight statistics.
Point lossy_point() {
    Point pt{test::reference_scenario(), {}, RelaySchedule::from_indices(4, {0, 2}), {}};
    pt.c = build_link_coefficients(pt.s);
    pt.p.p = Vector::Constant(pt.s.M, 1.0);
    pt.p.p_relay = Vector::Zero(pt.s.N);
    pt.p.p_relay(0) = pt.p.p_relay(2) = 1.0;
    return pt;
}

}  // namespace

TEST_CASE("simulation is reproducible and independent of thread count") {
    const Point pt = lossy_point();
    McConfig mc;
    mc.samples = 300'000;
    mc.seed = 11;
    mc.threads = 1;
    const McResult a = monte_carlo_outage(pt.s, pt.u, pt.p, mc);
    for (int th : {2, 3, 8}) {
        mc.threads = th;
        const McResult b = monte_carlo_outage(pt.s, pt.u, pt.p, mc);
        CHECK(b.outages == a.outages);
        CHECK(b.ee == a.ee);
    }
    mc.seed = 12;
    CHECK(monte_carlo_outage(pt.s, pt.u, pt.p, mc).outages != a.outages);
    mc.seed = 11;
    mc.stream = 1;
    CHECK(monte_carlo_outage(pt.s, pt.u, pt.p, mc).outages != a.outages);
}

TEST_CASE("silent relays always give an outage") {
    Point pt = lossy_point();
    pt.p.p_relay.setZero();
    McConfig mc;
    mc.samples = 10'000;
    const McResult r = monte_carlo_outage(pt.s, pt.u, pt.p, mc);
    CHECK(r.outage == 1.0);
    CHECK(r.ee == 0.0);
    const McResult n = monte_carlo_outage(pt.s, pt.u, pt.p, mc, Scheme::Nonc);
    CHECK(n.outage == 1.0);
}

TEST_CASE("empirical outage is unbiased over independent seeds") {
    const Point pt = lossy_point();
    const double p0 = outage_exact(pt.s, pt.c, pt.u, pt.p).total;
    REQUIRE(p0 > 1e-3);
    McConfig mc;
    mc.samples = 100'000;
    double sum = 0.0;
    const int seeds = 50;
    for (int k = 0; k < seeds; ++k) {
        mc.seed = 1000 + k;
        const McResult r = monte_carlo_outage(pt.s, pt.u, pt.p, mc);
        CHECK(r.std_error == doctest::Approx(std::sqrt(r.outage * (1.0 - r.outage) / mc.samples)));
        sum += r.outage;
    }
    const double pooled = std::sqrt(p0 * (1.0 - p0) / (seeds * static_cast<double>(mc.samples)));
    CHECK(std::fabs(sum / seeds - p0) < 4.0 * pooled);
}

TEST_CASE("NoNC per-user outage and energy wiring") {
    const Point pt = lossy_point();
    const Vector exact = nonc_outage(pt.c, pt.u, pt.p);
    McConfig mc;
    mc.samples = 2'000'000;
    const McResult r = monte_carlo_ee(pt.s, pt.u, pt.p, mc, Scheme::Nonc);
    REQUIRE(r.user_outage.size() == pt.s.M);
    for (int i = 0; i < pt.s.M; ++i) {
        const double se = std::sqrt(exact(i) * (1.0 - exact(i)) / mc.samples);
        CHECK(std::fabs(r.user_outage(i) - exact(i)) < 4.0 * se);
    }
    const EnergyBreakdown e = nonc_energy(pt.s, pt.u, pt.p);
    CHECK(r.mean_energy == e.E_tot);
    CHECK(r.ee == doctest::Approx(energy_efficiency(pt.s, r.outage, e)).epsilon(1e-14));
}

TEST_CASE("EE uses the empirical outage and the deterministic energy") {
    const auto s = test::reference_scenario();
    const auto u = RelaySchedule::all(s.N);
    const auto p = max_powers(s, u);
    McConfig mc;
    mc.samples = 20'000;
    const McResult r = monte_carlo_ee(s, u, p, mc);
    const EnergyBreakdown e = total_energy(s, u, p);
    CHECK(r.mean_energy == e.E_tot);
    CHECK(r.ee == doctest::Approx(s.M * s.alpha0 * s.T * (1.0 - r.outage) / e.E_tot).epsilon(1e-14));
    if (r.outages == 0) CHECK(r.ee == doctest::Approx(s.M * s.alpha0 * s.T / e.E_tot).epsilon(1e-14));
}

TEST_CASE("idle-relay variant lowers the mean energy only") {
    const Point pt = lossy_point();
    McConfig mc;
    mc.samples = 200'000;
    const McResult base = monte_carlo_outage(pt.s, pt.u, pt.p, mc);
    mc.idle_failed_relays = true;
    const McResult idle = monte_carlo_outage(pt.s, pt.u, pt.p, mc);
    CHECK(idle.outages == base.outages);
    CHECK(idle.mean_energy < base.mean_energy);
    CHECK(idle.ee > base.ee);
}

TEST_CASE("invalid simulation inputs") {
    const Point pt = lossy_point();
    McConfig mc;
    mc.samples = 0;
    CHECK_THROWS_AS(monte_carlo_outage(pt.s, pt.u, pt.p, mc), std::invalid_argument);
}
