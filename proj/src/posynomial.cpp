// SPDX-License-Identifier: Apache-2.0
#include "mdnc/posynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace mdnc {

Posynomial Posynomial::constant(int num_vars, double c) {
    Posynomial p(num_vars);
    p.add_term(Exponents(static_cast<std::size_t>(num_vars), 0), c);
    return p;
}

Posynomial Posynomial::monomial(int num_vars, double c, Exponents a) {
    Posynomial p(num_vars);
    p.add_term(a, c);
    return p;
}

void Posynomial::add_term(const Exponents& a, double c) {
    if (static_cast<int>(a.size()) != n_) throw std::invalid_argument("posynomial term has wrong arity");
    if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("posynomial coefficient must be finite and >= 0");
    if (c == 0.0) return;
    terms_[a] += c;
}

Posynomial& Posynomial::operator+=(const Posynomial& other) {
    if (other.n_ != n_) throw std::invalid_argument("posynomial arity mismatch");
    for (const auto& [a, c] : other.terms_) terms_[a] += c;
    return *this;
}

Posynomial& Posynomial::operator*=(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("posynomial scale must be > 0");
    for (auto& term : terms_) term.second *= c;
    return *this;
}

Posynomial operator*(const Posynomial& a, const Posynomial& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("posynomial arity mismatch");
    Posynomial out(a.n_);
    Posynomial::Exponents e(static_cast<std::size_t>(a.n_));
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
            out.terms_[e] += ca * cb;
        }
    return out;
}

ExpSum::ExpSum(const Posynomial& p) {
    A_.resize(p.num_terms(), p.num_vars());
    b_.resize(p.num_terms());
    Eigen::Index t = 0;
    for (const auto& [a, c] : p.terms()) {
        for (int k = 0; k < p.num_vars(); ++k) A_(t, k) = a[static_cast<std::size_t>(k)];
        b_(t) = std::log(c);
        ++t;
    }
}

double ExpSum::value(const Vector& y) const { return (A_ * y + b_).array().exp().sum(); }

double ExpSum::log_value(const Vector& y) const {
    if (A_.rows() == 0) return -INFINITY;
    const Vector z = A_ * y + b_;
    const double zmax = z.maxCoeff();
    return zmax + std::log((z.array() - zmax).exp().sum());
}

double ExpSum::eval(const Vector& y, Vector* grad, Matrix* hess) const {
    const Vector e = (A_ * y + b_).array().exp();
    if (grad) *grad = A_.transpose() * e;
    if (hess) *hess = A_.transpose() * e.asDiagonal() * A_;
    return e.sum();
}

double ExpSum::eval_log(const Vector& y, Vector* grad, Matrix* hess) const {
    const Vector z = A_ * y + b_;
    const double zmax = z.maxCoeff();
    const Vector w = (z.array() - zmax).exp();
    const double s = w.sum();
    const Vector pi = w / s;  // softmax weights
    if (grad || hess) {
        const Vector g = A_.transpose() * pi;
        if (hess) *hess = A_.transpose() * pi.asDiagonal() * A_ - g * g.transpose();
        if (grad) *grad = g;
    }
    return zmax + std::log(s);
}

}  // namespace mdnc
