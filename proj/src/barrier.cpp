// SPDX-License-Identifier: Apache-2.0
#include "mdnc/barrier.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mdnc {

namespace {

struct Barrier {
    const BarrierProblem& prob;
    double t = 1.0;

    int count_bounds() const {
        int m = 0;
        for (Eigen::Index k = 0; k < prob.lower.size(); ++k) {
            m += std::isfinite(prob.lower(k)) ? 1 : 0;
            m += std::isfinite(prob.upper(k)) ? 1 : 0;
        }
        return m;
    }

    bool strictly_inside(const Vector& x) const {
        for (Eigen::Index k = 0; k < x.size(); ++k)
            if (!(x(k) > prob.lower(k) && x(k) < prob.upper(k))) return false;
        for (const auto& f : prob.constraints)
            if (!(f(x, nullptr, nullptr) < 0.0)) return false;
        return true;
    }

    // phi_t(x); +inf outside the domain
    double value(const Vector& x) const {
        if (!strictly_inside(x)) return std::numeric_limits<double>::infinity();
        double v = t * prob.objective(x, nullptr, nullptr);
        for (const auto& f : prob.constraints) v -= std::log(-f(x, nullptr, nullptr));
        for (Eigen::Index k = 0; k < x.size(); ++k) {
            if (std::isfinite(prob.lower(k))) v -= std::log(x(k) - prob.lower(k));
            if (std::isfinite(prob.upper(k))) v -= std::log(prob.upper(k) - x(k));
        }
        return v;
    }

    double eval(const Vector& x, Vector& g, Matrix& H) const {
        const Eigen::Index n = x.size();
        Vector gi;
        Matrix Hi;
        double v = t * prob.objective(x, &g, &H);
        g *= t;
        H *= t;
        for (const auto& f : prob.constraints) {
            const double fi = f(x, &gi, &Hi);
            v -= std::log(-fi);
            g += gi / (-fi);
            H += Hi / (-fi) + gi * gi.transpose() / (fi * fi);
        }
        for (Eigen::Index k = 0; k < n; ++k) {
            if (std::isfinite(prob.lower(k))) {
                const double s = x(k) - prob.lower(k);
                v -= std::log(s);
                g(k) -= 1.0 / s;
                H(k, k) += 1.0 / (s * s);
            }
            if (std::isfinite(prob.upper(k))) {
                const double s = prob.upper(k) - x(k);
                v -= std::log(s);
                g(k) += 1.0 / s;
                H(k, k) += 1.0 / (s * s);
            }
        }
        return v;
    }
};

// Damped Newton on phi_t. Returns false if the iteration budget ran out.
bool center(const Barrier& b, Vector& x, const BarrierOptions& opt, int& iters) {
    Vector g;
    Matrix H;
    for (int it = 0; it < opt.max_newton_per_stage; ++it) {
        const double v = b.eval(x, g, H);
        Eigen::LDLT<Matrix> ldlt(H);
        Vector dx = ldlt.solve(-g);
        double lambda2 = -g.dot(dx);
        if (!(lambda2 >= 0.0) || !dx.allFinite()) {
            // Hessian not numerically PD: fall back to a scaled gradient step.
            dx = -g / std::max(1.0, H.diagonal().cwiseAbs().maxCoeff());
            lambda2 = -g.dot(dx);
        }
        if (lambda2 / 2.0 <= opt.newton_tol) return true;
        ++iters;
        double step = 1.0;
        while (!b.strictly_inside(x + step * dx) && step > 1e-16) step *= opt.backtrack;
        double vn = b.value(x + step * dx);
        while (vn > v - opt.armijo * step * lambda2 && step > 1e-16) {
            step *= opt.backtrack;
            vn = b.value(x + step * dx);
        }
        if (step <= 1e-16 || !(vn <= v)) return true;  // stalled at rounding level
        x += step * dx;
    }
    return false;
}

}  // namespace

BarrierResult barrier_solve(const BarrierProblem& prob, const Vector& x0, const BarrierOptions& opt) {
    Barrier b{prob, opt.t0};
    if (!b.strictly_inside(x0)) throw std::invalid_argument("barrier_solve: start point is not strictly feasible");
    const int m = static_cast<int>(prob.constraints.size()) + b.count_bounds();

    BarrierResult r;
    r.x = x0;
    r.converged = true;
    for (int stage = 0; stage < opt.max_stages; ++stage) {
        r.stages = stage + 1;
        if (!center(b, r.x, opt, r.newton_iterations)) {
            r.converged = false;
            r.message = "newton iteration limit reached during centering";
        }
        if (m / b.t < opt.gap_tol) break;
        if (stage + 1 == opt.max_stages) {
            r.converged = false;
            r.message = "barrier stage limit reached";
        }
        b.t *= opt.mu;
    }
    r.gap = m / b.t;
    r.objective = prob.objective(r.x, nullptr, nullptr);
    r.multipliers.resize(static_cast<Eigen::Index>(prob.constraints.size()));
    for (std::size_t i = 0; i < prob.constraints.size(); ++i)
        r.multipliers(static_cast<Eigen::Index>(i)) = 1.0 / (-b.t * prob.constraints[i](r.x, nullptr, nullptr));
    Vector g;
    Matrix H;
    b.eval(r.x, g, H);
    r.kkt_residual = g.norm() / b.t;
    return r;
}

PhaseOneResult phase_one(const BarrierProblem& prob, const Vector& x0, const BarrierOptions& opt) {
    const Eigen::Index n = x0.size();
    auto max_violation = [&](const Vector& x) {
        double v = -std::numeric_limits<double>::infinity();
        for (const auto& f : prob.constraints) v = std::max(v, f(x, nullptr, nullptr));
        return v;
    };
    PhaseOneResult res;
    res.x = x0;
    res.max_violation = max_violation(x0);
    if (prob.constraints.empty() || res.max_violation < 0.0) {
        res.feasible = true;
        return res;
    }

    // Augmented variable z = (x, s): minimize s s.t. f_i(x) - s <= 0.
    BarrierProblem aug;
    aug.lower.resize(n + 1);
    aug.upper.resize(n + 1);
    aug.lower.head(n) = prob.lower;
    aug.upper.head(n) = prob.upper;
    aug.lower(n) = -std::numeric_limits<double>::infinity();
    aug.upper(n) = std::numeric_limits<double>::infinity();
    aug.objective = [n](const Vector& z, Vector* g, Matrix* H) {
        if (g) *g = Vector::Unit(n + 1, n);
        if (H) *H = Matrix::Zero(n + 1, n + 1);
        return z(n);
    };
    for (const auto& f : prob.constraints) {
        aug.constraints.push_back([f, n](const Vector& z, Vector* g, Matrix* H) {
            Vector gi;
            Matrix Hi;
            const double v = f(z.head(n), g ? &gi : nullptr, H ? &Hi : nullptr);
            if (g) {
                g->resize(n + 1);
                g->head(n) = gi;
                (*g)(n) = -1.0;
            }
            if (H) {
                *H = Matrix::Zero(n + 1, n + 1);
                H->topLeftCorner(n, n) = Hi;
            }
            return v - z(n);
        });
    }

    Barrier b{aug, opt.t0};
    const int m = static_cast<int>(aug.constraints.size()) + b.count_bounds();
    Vector z(n + 1);
    z.head(n) = x0;
    z(n) = res.max_violation + 1.0;
    // A margin below zero gives the main solve some room from the boundary.
    const double margin = 1e-3;
    for (int stage = 0; stage < opt.max_stages; ++stage) {
        center(b, z, opt, res.newton_iterations);
        const double viol = max_violation(z.head(n));
        if (viol < -margin || (viol < 0.0 && m / b.t < opt.gap_tol)) {
            res.feasible = true;
            break;
        }
        // lower bound on the optimal violation is viol - m/t
        if (viol - m / b.t > 0.0 || m / b.t < opt.gap_tol) break;
        b.t *= opt.mu;
    }
    res.x = z.head(n);
    res.max_violation = max_violation(res.x);
    res.feasible = res.max_violation < 0.0;
    return res;
}

}  // namespace mdnc
