#include "fixtures.hpp"
#include "oracles.hpp"

#include "mdnc/outage.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

using namespace mdnc;

namespace {

PowerAllocation random_powers(std::mt19937_64& rng, const RelaySchedule& u, int M, double lo, double hi) {
    std::uniform_real_distribution<double> d(std::log(lo), std::log(hi));
    PowerAllocation p;
    p.p.resize(M);
    p.p_relay = Vector::Zero(u.size());
    for (int i = 0; i < M; ++i) p.p(i) = std::exp(d(rng));
    for (int j : u.theta()) p.p_relay(j) = std::exp(d(rng));
    return p;
}

ScenarioConfig shape_only(int M, int N) {
    ScenarioConfig s;
    s.M = M;
    s.N = N;
    return s;
}

}  // namespace

TEST_CASE("link outage") {
    CHECK(link_outage(1.0, 1e300) == doctest::Approx(0.0));
    CHECK(link_outage(1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
    CHECK(link_outage(1.0, 0.0) == 1.0);
}

TEST_CASE("relay decode probability") {
    Vector c1(1), p1(1);
    c1 << 1.0;
    p1 << 1.0;
    CHECK(relay_decode_prob(c1, p1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    Vector c2(2), p2(2);
    c2 << 1.0, 2.0;
    p2 << 1.0, 1.0;
    CHECK(relay_decode_prob(c2, p2) == doctest::Approx(std::exp(-3.0)).epsilon(1e-15));
    p2 << 1e12, 1e12;
    CHECK(relay_decode_prob(c2, p2) == doctest::Approx(1.0));
}

TEST_CASE("decode-count distribution") {
    const auto u2 = RelaySchedule::all(2);
    Vector rho(2);
    rho << 0.3, 0.8;
    CHECK(prob_zeta_K(u2, rho, 1) == doctest::Approx(0.3 * 0.2 + 0.8 * 0.7).epsilon(1e-15));

    Vector ones = Vector::Ones(3);
    const auto u3 = RelaySchedule::all(3);
    CHECK(prob_zeta_K(u3, ones, 3) == 1.0);
    CHECK(prob_zeta_K(u3, ones, 2) == 0.0);
    CHECK_THROWS_AS(prob_zeta_K(u3, ones, 4), std::out_of_range);
    CHECK_THROWS_AS(prob_zeta_K(u3, ones, -1), std::out_of_range);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const auto u = RelaySchedule::from_indices(6, {0, 2, 3, 5});
    for (int rep = 0; rep < 20; ++rep) {
        Vector r(6);
        for (int j = 0; j < 6; ++j) r(j) = unif(rng);
        std::vector<double> sel;
        for (int j : u.theta()) sel.push_back(r(j));
        for (int K = 0; K <= 4; ++K)
            CHECK(prob_zeta_K(u, r, K) == doctest::Approx(oracle::count_distribution_enumerated(sel, K)).epsilon(1e-13));
    }
}

TEST_CASE("second-hop delivery distribution") {
    Vector e(4);
    e << 0.0, 0.0, 0.0, 0.0;
    CHECK(prob_varsigma_given_zeta({0, 1, 3}, e, 3) == 1.0);
    CHECK(prob_varsigma_given_zeta({0, 1, 3}, e, 2) == 0.0);
    e << 0.2, 0.45, 0.9, 0.1;
    CHECK(prob_varsigma_given_zeta({1, 2}, e, 0) == doctest::Approx(0.45 * 0.9).epsilon(1e-15));
    double total = 0.0;
    for (int tau = 0; tau <= 3; ++tau) total += prob_varsigma_given_zeta({0, 2, 3}, e, tau);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(prob_varsigma_given_zeta({0, 2}, e, 3), std::out_of_range);
}

TEST_CASE("exact outage: single user, single relay by hand") {
    LinkCoefficients c;
    c.c_h = Matrix::Constant(1, 1, 0.3);
    c.c_g = Vector::Constant(1, 0.7);
    PowerAllocation p{Vector::Constant(1, 2.0), Vector::Constant(1, 1.5)};
    const auto u = RelaySchedule::all(1);
    const auto out = outage_exact(shape_only(1, 1), c, u, p);
    const double rho = std::exp(-0.3 / 2.0);
    const double pe = 1.0 - std::exp(-0.7 / 1.5);
    CHECK(out.total == doctest::Approx((1 - rho) + rho * pe).epsilon(1e-15));
    CHECK(out.total == out.pr_A + out.pr_B);
    CHECK(out.zeta[0] + out.zeta[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("exact outage equals exhaustive link enumeration") {
    std::mt19937_64 rng(11);
    for (int M = 1; M <= 2; ++M)
        for (int N = M; N <= 4; ++N)
            for (int rep = 0; rep < 10; ++rep) {
                const auto c = test::random_coefficients(rng, M, N, 0.05, 2.0);
                const auto u = RelaySchedule::all(N);
                const auto p = random_powers(rng, u, M, 0.1, 10.0);
                const auto out = outage_exact(shape_only(M, N), c, u, p);
                CHECK(std::fabs(out.total - oracle::mdnc_outage_enumerated(c, u, p.p, p.p_relay)) <= 1e-12);
                double zs = 0.0;
                for (double z : out.zeta) zs += z;
                CHECK(std::fabs(zs - 1.0) <= 1e-12);
            }
}

TEST_CASE("exact outage corner cases") {
    std::mt19937_64 rng(3);
    const auto c = test::random_coefficients(rng, 2, 4);
    const auto u1 = RelaySchedule::from_indices(4, {2});
    const auto p = max_powers(test::reference_scenario(), u1);
    const auto out = outage_exact(shape_only(2, 4), c, u1, p);
    CHECK(out.insufficient_relays);
    CHECK(out.total == 1.0);

    const auto u = RelaySchedule::all(4);
    PowerAllocation big{Vector::Constant(2, 1e9), Vector::Constant(4, 1e9)};
    CHECK(outage_exact(shape_only(2, 4), c, u, big).total < 1e-15);
    CHECK_THROWS_AS(outage_exact(shape_only(2, 4), c, RelaySchedule(std::vector<std::uint8_t>(4, 0)), big),
                    std::invalid_argument);
}

TEST_CASE("exact outage is nonincreasing in every power") {
    const auto s = test::reference_scenario();
    const auto c = build_link_coefficients(s);
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 50; ++rep) {
        const auto u = RelaySchedule::from_indices(4, rep % 2 ? std::vector<int>{0, 1, 2, 3} : std::vector<int>{0, 2, 3});
        const auto p = random_powers(rng, u, 2, 0.01, 10.0);
        const double base = outage_exact(s, c, u, p).total;
        for (int i = 0; i < 2; ++i) {
            auto q = p;
            q.p(i) *= 1.05;
            CHECK(outage_exact(s, c, u, q).total <= base);
        }
        for (int j : u.theta()) {
            auto q = p;
            q.p_relay(j) *= 1.05;
            CHECK(outage_exact(s, c, u, q).total <= base);
        }
    }
}

TEST_CASE("approximation: hand expansion and limits") {
    LinkCoefficients c;
    c.c_h = Matrix::Constant(1, 1, 0.3);
    c.c_g = Vector::Constant(1, 0.7);
    const auto u = RelaySchedule::all(1);
    PowerAllocation p{Vector::Constant(1, 2.0), Vector::Constant(1, 1.5)};
    CHECK(outage_approx_power(c, u, p) == doctest::Approx(0.3 / 2.0 + 0.7 / (0.7 + 1.5)).epsilon(1e-15));
    p.p_relay(0) = 0.0;
    CHECK(outage_approx_power(c, u, p) == doctest::Approx(0.3 / 2.0 + 1.0).epsilon(1e-15));

    // log domain: pt' = 0 means zero relay power and factor 1
    Vector pt = Vector::Constant(1, std::log(2.0));
    Vector ptr = Vector::Zero(1);
    CHECK(outage_approx_logdomain(c, u, pt, ptr) == doctest::Approx(1.15).epsilon(1e-14));
    CHECK(outage_approx_logdomain(c, u, Vector::Constant(1, 60.0), Vector::Constant(1, 60.0)) < 1e-25);
}

TEST_CASE("approximation: log and power domains agree") {
    std::mt19937_64 rng(19);
    for (int rep = 0; rep < 100; ++rep) {
        const int M = 1 + rep % 2;
        const int N = 4;
        const auto c = test::random_coefficients(rng, M, N);
        const auto u = rep % 3 ? RelaySchedule::all(N) : RelaySchedule::from_indices(N, {1, 3});
        const auto p = random_powers(rng, u, M, 1e-3, 20.0);
        const auto x = to_log_domain(c, u, p);
        const double a = outage_approx_power(c, u, p);
        const double b = outage_approx_logdomain(c, u, x.pt, x.pt_relay);
        CHECK(std::fabs(a - b) <= 1e-10 * a);
        const auto back = from_log_domain(c, u, x);
        CHECK(((back.p - p.p).array().abs() / p.p.array()).maxCoeff() <= 1e-12);
        for (int j : u.theta()) CHECK(std::fabs(back.p_relay(j) - p.p_relay(j)) <= 1e-12 * p.p_relay(j));
    }
}

TEST_CASE("approximation tightens as powers grow") {
    const auto s = test::reference_scenario();
    const auto c = build_link_coefficients(s);
    for (const auto& th : {std::vector<int>{0, 2}, std::vector<int>{0, 1, 2}, std::vector<int>{0, 1, 2, 3}}) {
        const auto u = RelaySchedule::from_indices(4, th);
        const auto p0 = max_powers(s, u);
        double last = INFINITY;
        for (double scale : {0.1, 1.0, 10.0, 100.0, 1000.0}) {
            PowerAllocation p{p0.p * scale, p0.p_relay * scale};
            const double gap = std::fabs(outage_approx_power(c, u, p) / outage_exact(s, c, u, p).total - 1.0);
            CHECK(gap < last);
            last = gap;
        }
        CHECK(last < 1e-3);
    }
}

TEST_CASE("approximation tightness band on the reference scenario") {
    const auto s = test::reference_scenario();
    const auto c = build_link_coefficients(s);
    std::mt19937_64 rng(23);
    int checked = 0;
    for (int rep = 0; rep < 2000; ++rep) {
        const auto subsets = k_subsets(4, 2 + rep % 3);
        const auto u = RelaySchedule::from_indices(4, subsets[static_cast<std::size_t>(rep) % subsets.size()]);
        const auto p = random_powers(rng, u, 2, 0.5, 20.0);
        const double ex = outage_exact(s, c, u, p).total;
        if (ex > 1e-2) continue;
        ++checked;
        CHECK(std::fabs(outage_approx_power(c, u, p) - ex) / ex <= 0.15);
    }
    CHECK(checked > 100);
}

TEST_CASE("log of the approximation is convex") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    const auto s = test::reference_scenario();
    const auto c = build_link_coefficients(s);
    const auto u = RelaySchedule::all(4);
    const ExpSum f(mdnc_outage_posynomial(c, u));
    for (int rep = 0; rep < 100; ++rep) {
        Vector y(6);
        for (int k = 0; k < 2; ++k) y(k) = d(rng);
        for (int k = 2; k < 6; ++k) y(k) = std::fabs(d(rng)) + 0.01;
        const double h = 1e-5;
        Matrix H(6, 6);
        for (int k = 0; k < 6; ++k) {
            Vector gp, gm;
            Vector yp = y, ym = y;
            yp(k) += h;
            ym(k) -= h;
            f.eval_log(yp, &gp, nullptr);
            f.eval_log(ym, &gm, nullptr);
            H.col(k) = (gp - gm) / (2 * h);
        }
        H = 0.5 * (H + H.transpose());
        CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(H).eigenvalues().minCoeff() >= -1e-8);
    }
}

TEST_CASE("NoNC outage") {
    LinkCoefficients c;
    c.c_h = Matrix::Constant(2, 1, 1e-300);
    c.c_g = Vector::Constant(1, 1e-300);
    const auto u1 = RelaySchedule::all(1);
    PowerAllocation p{Vector::Constant(2, 1.0), Vector::Constant(1, 1.0)};
    CHECK(nonc_outage(c, u1, p).maxCoeff() == doctest::Approx(0.0));

    c.c_h << 0.2, 0.5;
    c.c_g << 0.4;
    const auto one = nonc_outage(c, u1, p);
    for (int i = 0; i < 2; ++i)
        CHECK(one(i) == doctest::Approx(1.0 - (1.0 - link_outage(c.c_h(i, 0), 1.0)) * (1.0 - link_outage(0.4, 1.0))).epsilon(1e-15));

    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        const auto cc = test::random_coefficients(rng, 2, 3, 0.05, 2.0);
        const auto u = RelaySchedule::from_indices(3, {0, 2});
        const auto pp = random_powers(rng, u, 2, 0.1, 10.0);
        const auto got = nonc_outage(cc, u, pp);
        const auto ref = oracle::nonc_outage_enumerated(cc, u, pp.p, pp.p_relay);
        for (int i = 0; i < 2; ++i) CHECK(std::fabs(got(i) - ref[static_cast<std::size_t>(i)]) <= 1e-12);
    }
    CHECK(nonc_outage(c, RelaySchedule(std::vector<std::uint8_t>{0}), p).minCoeff() == 1.0);
}

TEST_CASE("NoNC approximation: posynomial and natural forms agree") {
    std::mt19937_64 rng(37);
    const auto c = test::random_coefficients(rng, 2, 4);
    const auto u = RelaySchedule::from_indices(4, {0, 1, 3});
    for (int rep = 0; rep < 20; ++rep) {
        const auto p = random_powers(rng, u, 2, 0.01, 10.0);
        const auto x = to_log_domain(c, u, p);
        const auto y = compact_variables(u, x.pt, x.pt_relay);
        const auto posy = nonc_outage_posynomials(c, u);
        const auto nat = nonc_outage_approx_power(c, u, p);
        for (int i = 0; i < 2; ++i) CHECK(ExpSum(posy[static_cast<std::size_t>(i)]).value(y) == doctest::Approx(nat(i)).epsilon(1e-12));
    }
}
