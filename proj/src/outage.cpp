// SPDX-License-Identifier: Apache-2.0
#include "mdnc/outage.hpp"

#include "mdnc/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace mdnc {

double link_outage(double c, double p) {
    if (p <= 0.0) return 1.0;
    return -std::expm1(-c / p);
}

double relay_decode_prob(const Vector& c_column, const Vector& p) {
    return std::exp(-(c_column.array() / p.array()).sum());
}

double prob_zeta_K(const RelaySchedule& u, const Vector& rho, int K) {
    const auto& theta = u.theta();
    const int k = u.count();
    if (K < 0 || K > k) throw std::out_of_range("prob_zeta_K: K outside [0, count]");
    CompensatedSum sum;
    for (const auto& idx : k_subsets(k, K)) {
        double prod = 1.0;
        std::size_t next = 0;
        for (int t = 0; t < k; ++t) {
            const double r = rho(theta[static_cast<std::size_t>(t)]);
            if (next < idx.size() && idx[next] == t) {
                prod *= r;
                ++next;
            } else {
                prod *= 1.0 - r;
            }
        }
        sum.add(prod);
    }
    return sum.value();
}

double prob_varsigma_given_zeta(const std::vector<int>& phi, const Vector& pr_e_g, int tau) {
    const int K = static_cast<int>(phi.size());
    if (tau < 0 || tau > K) throw std::out_of_range("prob_varsigma_given_zeta: tau outside [0, K]");
    CompensatedSum sum;
    for (const auto& idx : k_subsets(K, tau)) {
        double prod = 1.0;
        std::size_t next = 0;
        for (int t = 0; t < K; ++t) {
            const double e = pr_e_g(phi[static_cast<std::size_t>(t)]);
            if (next < idx.size() && idx[next] == t) {
                prod *= 1.0 - e;
                ++next;
            } else {
                prod *= e;
            }
        }
        sum.add(prod);
    }
    return sum.value();
}

OutageBreakdown outage_exact(const ScenarioConfig& s, const LinkCoefficients& c,
                             const RelaySchedule& u, const PowerAllocation& p) {
    if (u.count() == 0) throw std::invalid_argument("outage_exact: empty schedule");
    const int M = s.M;
    const int N = u.size();
    OutageBreakdown out;
    out.pr_e_h.resize(M, N);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < N; ++j) out.pr_e_h(i, j) = link_outage(c.c_h(i, j), p.p(i));
    out.pr_e_g = Vector::Ones(N);
    for (int j : u.theta()) out.pr_e_g(j) = link_outage(c.c_g(j), p.p_relay(j));

    Vector rho = Vector::Zero(N);
    for (int j : u.theta()) rho(j) = relay_decode_prob(c.c_h.col(j), p.p);

    const int k = u.count();
    const auto& theta = u.theta();
    out.zeta.resize(static_cast<std::size_t>(k) + 1);
    for (int K = 0; K <= k; ++K) out.zeta[static_cast<std::size_t>(K)] = prob_zeta_K(u, rho, K);

    if (k < M) {
        out.insufficient_relays = true;
        out.pr_A = 1.0;
        out.pr_B = 0.0;
        out.total = 1.0;
        return out;
    }

    CompensatedSum a;
    for (int K = 0; K < M; ++K) a.add(out.zeta[static_cast<std::size_t>(K)]);
    out.pr_A = a.value();

    // Case B: enumerate each decoding set explicitly, since the second-hop
    // term depends on which relays decoded.
    CompensatedSum b;
    for (int K = M; K <= k; ++K) {
        for (const auto& idx : k_subsets(k, K)) {
            std::vector<int> phi;
            double prod = 1.0;
            std::size_t next = 0;
            for (int t = 0; t < k; ++t) {
                const int j = theta[static_cast<std::size_t>(t)];
                if (next < idx.size() && idx[next] == t) {
                    prod *= rho(j);
                    phi.push_back(j);
                    ++next;
                } else {
                    prod *= 1.0 - rho(j);
                }
            }
            CompensatedSum fail;
            for (int tau = 0; tau < M; ++tau) fail.add(prob_varsigma_given_zeta(phi, out.pr_e_g, tau));
            b.add(prod * fail.value());
        }
    }
    out.pr_B = b.value();
    out.total = out.pr_A + out.pr_B;
    return out;
}

double outage_approx_power(const LinkCoefficients& c, const RelaySchedule& u,
                           const PowerAllocation& p) {
    const int M = static_cast<int>(p.p.size());
    const int k = u.count();
    const auto& theta = u.theta();
    if (k < M) return 1.0;
    std::vector<double> a(static_cast<std::size_t>(k)), bg(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t) {
        const int j = theta[static_cast<std::size_t>(t)];
        a[static_cast<std::size_t>(t)] = (c.c_h.col(j).array() / p.p.array()).sum();
        bg[static_cast<std::size_t>(t)] = c.c_g(j) / (c.c_g(j) + p.p_relay(j));
    }
    CompensatedSum total;
    for (int K = 0; K <= k; ++K) {
        for (const auto& idx : k_subsets(k, K)) {
            double first = 1.0;
            std::vector<int> phi;  // positions within theta
            std::size_t next = 0;
            for (int t = 0; t < k; ++t) {
                if (next < idx.size() && idx[next] == t) {
                    phi.push_back(t);
                    ++next;
                } else {
                    first *= a[static_cast<std::size_t>(t)];
                }
            }
            if (K < M) {
                total.add(first);
                continue;
            }
            CompensatedSum second;
            for (int tau = 0; tau < M; ++tau)
                for (const auto& psi : k_subsets(K, tau)) {
                    double prod = 1.0;
                    std::size_t nx = 0;
                    for (int r = 0; r < K; ++r) {
                        if (nx < psi.size() && psi[nx] == r)
                            ++nx;
                        else
                            prod *= bg[static_cast<std::size_t>(phi[static_cast<std::size_t>(r)])];
                    }
                    second.add(prod);
                }
            total.add(first * second.value());
        }
    }
    return total.value();
}

Vector compact_variables(const RelaySchedule& u, const Vector& pt, const Vector& pt_relay) {
    const int M = static_cast<int>(pt.size());
    Vector y(M + u.count());
    y.head(M) = pt;
    for (int t = 0; t < u.count(); ++t) y(M + t) = pt_relay(u.theta()[static_cast<std::size_t>(t)]);
    return y;
}

Posynomial mdnc_outage_posynomial(const LinkCoefficients& c, const RelaySchedule& u) {
    const int M = static_cast<int>(c.c_h.rows());
    const int k = u.count();
    const int n = M + k;
    const auto& theta = u.theta();
    Posynomial out(n);
    if (k < M) {
        out.add_term(Posynomial::Exponents(static_cast<std::size_t>(n), 0), 1.0);
        return out;
    }
    // a_t = sum_i c_ij e^{-pt_i}, b_t = e^{-pt'_j}
    std::vector<Posynomial> a, b;
    for (int t = 0; t < k; ++t) {
        const int j = theta[static_cast<std::size_t>(t)];
        Posynomial at(n);
        for (int i = 0; i < M; ++i) {
            Posynomial::Exponents e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(i)] = -1;
            at.add_term(e, c.c_h(i, j));
        }
        a.push_back(at);
        Posynomial::Exponents e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(M + t)] = -1;
        b.push_back(Posynomial::monomial(n, 1.0, e));
    }
    for (int K = 0; K <= k; ++K) {
        for (const auto& idx : k_subsets(k, K)) {
            Posynomial term = Posynomial::constant(n, 1.0);
            std::vector<int> phi;
            std::size_t next = 0;
            for (int t = 0; t < k; ++t) {
                if (next < idx.size() && idx[next] == t) {
                    phi.push_back(t);
                    ++next;
                } else {
                    term = term * a[static_cast<std::size_t>(t)];
                }
            }
            if (K >= M) {
                Posynomial second(n);
                for (int tau = 0; tau < M; ++tau)
                    for (const auto& psi : k_subsets(K, tau)) {
                        Posynomial prod = Posynomial::constant(n, 1.0);
                        std::size_t nx = 0;
                        for (int r = 0; r < K; ++r) {
                            if (nx < psi.size() && psi[nx] == r)
                                ++nx;
                            else
                                prod = prod * b[static_cast<std::size_t>(phi[static_cast<std::size_t>(r)])];
                        }
                        second += prod;
                    }
                term = term * second;
            }
            out += term;
        }
    }
    return out;
}

double outage_approx_logdomain(const LinkCoefficients& c, const RelaySchedule& u,
                               const Vector& pt, const Vector& pt_relay) {
    const ExpSum f(mdnc_outage_posynomial(c, u));
    return f.value(compact_variables(u, pt, pt_relay));
}

Vector nonc_outage(const LinkCoefficients& c, const RelaySchedule& u, const PowerAllocation& p) {
    const int M = static_cast<int>(p.p.size());
    Vector out = Vector::Ones(M);
    for (int i = 0; i < M; ++i)
        for (int j : u.theta()) {
            const double ok = (1.0 - link_outage(c.c_h(i, j), p.p(i))) *
                              (1.0 - link_outage(c.c_g(j), p.p_relay(j)));
            out(i) *= 1.0 - ok;
        }
    return out;
}

Vector nonc_outage_approx_power(const LinkCoefficients& c, const RelaySchedule& u,
                                const PowerAllocation& p) {
    const int M = static_cast<int>(p.p.size());
    Vector out = Vector::Ones(M);
    for (int i = 0; i < M; ++i)
        for (int j : u.theta())
            out(i) *= c.c_h(i, j) / p.p(i) + c.c_g(j) / (c.c_g(j) + p.p_relay(j));
    return out;
}

std::vector<Posynomial> nonc_outage_posynomials(const LinkCoefficients& c, const RelaySchedule& u) {
    const int M = static_cast<int>(c.c_h.rows());
    const int k = u.count();
    const int n = M + k;
    std::vector<Posynomial> out;
    for (int i = 0; i < M; ++i) {
        Posynomial prod = Posynomial::constant(n, 1.0);
        for (int t = 0; t < k; ++t) {
            const int j = u.theta()[static_cast<std::size_t>(t)];
            Posynomial factor(n);
            Posynomial::Exponents e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(i)] = -1;
            factor.add_term(e, c.c_h(i, j));
            Posynomial::Exponents f(static_cast<std::size_t>(n), 0);
            f[static_cast<std::size_t>(M + t)] = -1;
            factor.add_term(f, 1.0);
            prod = prod * factor;
        }
        out.push_back(prod);
    }
    return out;
}

}  // namespace mdnc
