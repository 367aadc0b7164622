// Shared test helpers.
#pragma once

#include "mdnc/model.hpp"
#include "mdnc/scenario_io.hpp"

#include <random>
#include <string>

namespace mdnc::test {

inline ScenarioConfig reference_scenario() {
    return load_scenario(std::string(MDNC_SCENARIO_DIR) + "/paper.cfg");
}

/// Leading M users and N relays of the reference scenario.
inline ScenarioConfig sub_scenario(int M, int N) {
    const auto s = reference_scenario();
    ScenarioConfig t = s;
    t.M = M;
    t.N = N;
    t.sigma_h = s.sigma_h.topLeftCorner(M, N);
    t.d_h = s.d_h.topLeftCorner(M, N);
    t.n_h = s.n_h.topLeftCorner(M, N);
    t.N0_h = s.N0_h.topLeftCorner(M, N);
    t.sigma_g = s.sigma_g.head(N);
    t.d_g = s.d_g.head(N);
    t.n_g = s.n_g.head(N);
    t.N0_g = s.N0_g.head(N);
    t.shift_origin_d_h = t.d_h;
    t.shift_origin_d_g = t.d_g;
    return t;
}

/// Random non-identical scenario; coefficients land roughly in [1e-3, 1e-1] W.
inline LinkCoefficients random_coefficients(std::mt19937_64& rng, int M, int N, double lo = 1e-3,
                                            double hi = 1e-1) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    LinkCoefficients c;
    c.c_h.resize(M, N);
    c.c_g.resize(N);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < N; ++j) c.c_h(i, j) = std::exp(u(rng));
    for (int j = 0; j < N; ++j) c.c_g(j) = std::exp(u(rng));
    return c;
}

}  // namespace mdnc::test
