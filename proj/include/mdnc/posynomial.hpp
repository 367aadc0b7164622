// SPDX-License-Identifier: Apache-2.0
//
// Posynomials in exponential variables: every term is c * exp(sum_k a_k y_k)
// with c > 0 and integer exponents a. In those variables the log of a
// posynomial is a log-sum-exp of affine functions, hence convex.
#pragma once

#include "mdnc/model.hpp"

#include <map>
#include <vector>

namespace mdnc {

class Posynomial {
public:
    using Exponents = std::vector<int>;

    explicit Posynomial(int num_vars = 0) : n_(num_vars) {}

    static Posynomial constant(int num_vars, double c);
    static Posynomial monomial(int num_vars, double c, Exponents a);

    int num_vars() const { return n_; }
    int num_terms() const { return static_cast<int>(terms_.size()); }
    const std::map<Exponents, double>& terms() const { return terms_; }

    /// Adds c * exp(a . y); like terms are merged.
    void add_term(const Exponents& a, double c);

    Posynomial& operator+=(const Posynomial& other);
    Posynomial& operator*=(double c);
    friend Posynomial operator*(const Posynomial& a, const Posynomial& b);
    friend Posynomial operator+(Posynomial a, const Posynomial& b) { return a += b; }

private:
    int n_;
    std::map<Exponents, double> terms_;
};

/// Compiled form f(y) = sum_t exp(A_t . y + b_t) for fast evaluation.
class ExpSum {
public:
    ExpSum() = default;
    explicit ExpSum(const Posynomial& p);

    int num_vars() const { return static_cast<int>(A_.cols()); }
    int num_terms() const { return static_cast<int>(A_.rows()); }
    const Matrix& exponents() const { return A_; }
    const Vector& log_coefficients() const { return b_; }

    double value(const Vector& y) const;
    /// Stable log-sum-exp.
    double log_value(const Vector& y) const;

    /// Value, gradient and (optionally) Hessian of f.
    double eval(const Vector& y, Vector* grad, Matrix* hess) const;
    /// Value, gradient and (optionally) Hessian of log f.
    double eval_log(const Vector& y, Vector* grad, Matrix* hess) const;

private:
    Matrix A_;
    Vector b_;
};

}  // namespace mdnc
