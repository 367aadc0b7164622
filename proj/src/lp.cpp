// SPDX-License-Identifier: Apache-2.0
#include "mdnc/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mdnc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-9;

// Map from original variable to standard-form columns: x = offset + sign * col
// (or col_plus - col_minus for free variables).
struct VarMap {
    int col = -1;
    int col_minus = -1;
    double offset = 0.0;
    double sign = 1.0;
};

// Tableau simplex on  min c.z  s.t.  A z = b, z >= 0, b >= 0, with an initial
// basis given per row.
class Tableau {
public:
    Tableau(const Matrix& A, const Vector& b, std::vector<int> basis)
        : rows_(static_cast<int>(A.rows())), cols_(static_cast<int>(A.cols())), basis_(std::move(basis)) {
        T_ = Matrix::Zero(rows_ + 1, cols_ + 1);
        T_.topLeftCorner(rows_, cols_) = A;
        T_.col(cols_).head(rows_) = b;
    }

    // Installs objective row (reduced costs) for cost vector c.
    void set_objective(const Vector& c) {
        T_.row(rows_).setZero();
        T_.row(rows_).head(cols_) = c.transpose();
        for (int r = 0; r < rows_; ++r) {
            const double cb = c(basis_[static_cast<std::size_t>(r)]);
            if (cb != 0.0) T_.row(rows_) -= cb * T_.row(r);
        }
    }

    LpStatus run(const std::vector<bool>& allowed, int& pivots, int max_pivots) {
        int degenerate = 0;
        while (pivots < max_pivots) {
            const bool bland = degenerate > 50;
            int enter = -1;
            double best = -kEps;
            for (int j = 0; j < cols_; ++j) {
                if (!allowed[static_cast<std::size_t>(j)]) continue;
                const double rc = T_(rows_, j);
                if (rc < best) {
                    enter = j;
                    if (bland) break;
                    best = rc;
                }
            }
            if (enter < 0) return LpStatus::Optimal;
            int leave = -1;
            double ratio = kInf;
            for (int r = 0; r < rows_; ++r) {
                const double a = T_(r, enter);
                if (a > kEps) {
                    const double q = T_(r, cols_) / a;
                    if (q < ratio - 1e-12 ||
                        (q < ratio + 1e-12 && leave >= 0 && basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(leave)])) {
                        ratio = q;
                        leave = r;
                    }
                }
            }
            if (leave < 0) return LpStatus::Unbounded;
            degenerate = ratio < 1e-12 ? degenerate + 1 : 0;
            pivot(leave, enter);
            ++pivots;
        }
        return LpStatus::IterationLimit;
    }

    void pivot(int r, int c) {
        T_.row(r) /= T_(r, c);
        for (int k = 0; k <= rows_; ++k)
            if (k != r && T_(k, c) != 0.0) T_.row(k) -= T_(k, c) * T_.row(r);
        basis_[static_cast<std::size_t>(r)] = c;
    }

    double objective() const { return -T_(rows_, cols_); }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double at(int r, int c) const { return T_(r, c); }
    double rhs(int r) const { return T_(r, cols_); }
    std::vector<int>& basis() { return basis_; }

    Vector solution() const {
        Vector z = Vector::Zero(cols_);
        for (int r = 0; r < rows_; ++r) z(basis_[static_cast<std::size_t>(r)]) = T_(r, cols_);
        return z;
    }

private:
    int rows_;
    int cols_;
    Matrix T_;
    std::vector<int> basis_;
};

}  // namespace

const char* lp_status_name(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::IterationLimit: return "iteration-limit";
    }
    return "?";
}

void LinearProgram::add_le(const Vector& a, double b) {
    A_ub.conservativeResize(A_ub.rows() + 1, c.size());
    A_ub.row(A_ub.rows() - 1) = a.transpose();
    b_ub.conservativeResize(b_ub.size() + 1);
    b_ub(b_ub.size() - 1) = b;
}

void LinearProgram::add_eq(const Vector& a, double b) {
    A_eq.conservativeResize(A_eq.rows() + 1, c.size());
    A_eq.row(A_eq.rows() - 1) = a.transpose();
    b_eq.conservativeResize(b_eq.size() + 1);
    b_eq(b_eq.size() - 1) = b;
}

LpResult solve_lp(const LinearProgram& lp) {
    const int n = lp.num_vars();
    if (lp.lower.size() != n || lp.upper.size() != n) throw std::invalid_argument("solve_lp: bound size mismatch");
    const int m_ub = static_cast<int>(lp.A_ub.rows());
    const int m_eq = static_cast<int>(lp.A_eq.rows());
    if ((m_ub && lp.A_ub.cols() != n) || (m_eq && lp.A_eq.cols() != n))
        throw std::invalid_argument("solve_lp: constraint matrix width mismatch");

    LpResult res;
    for (int j = 0; j < n; ++j)
        if (lp.lower(j) > lp.upper(j) + kEps) return res;  // empty box

    // Variable substitution into z >= 0.
    std::vector<VarMap> map(static_cast<std::size_t>(n));
    int nz = 0;
    std::vector<std::pair<int, double>> ub_rows;  // (column, bound) for z_col <= bound
    for (int j = 0; j < n; ++j) {
        VarMap& v = map[static_cast<std::size_t>(j)];
        const double l = lp.lower(j), u = lp.upper(j);
        if (std::isfinite(l)) {
            v.col = nz++;
            v.offset = l;
            v.sign = 1.0;
            if (std::isfinite(u)) ub_rows.emplace_back(v.col, u - l);
        } else if (std::isfinite(u)) {
            v.col = nz++;
            v.offset = u;
            v.sign = -1.0;
        } else {
            v.col = nz++;
            v.col_minus = nz++;
        }
    }

    // Rows: A_ub (with slack), bound rows (with slack), A_eq.
    const int m_b = static_cast<int>(ub_rows.size());
    const int m = m_ub + m_b + m_eq;
    const int n_slack = m_ub + m_b;
    Matrix A = Matrix::Zero(m, nz + n_slack + m);  // room for one artificial per row
    Vector b = Vector::Zero(m);
    Vector cz = Vector::Zero(nz + n_slack + m);
    auto put_row = [&](int r, const Eigen::RowVectorXd& a, double rhs) {
        double shift = 0.0;
        for (int j = 0; j < n; ++j) {
            const VarMap& v = map[static_cast<std::size_t>(j)];
            const double aj = a(j);
            if (aj == 0.0) continue;
            if (v.col_minus >= 0) {
                A(r, v.col) += aj;
                A(r, v.col_minus) -= aj;
            } else {
                A(r, v.col) += aj * v.sign;
                shift += aj * v.offset;
            }
        }
        b(r) = rhs - shift;
    };
    for (int r = 0; r < m_ub; ++r) {
        put_row(r, lp.A_ub.row(r), lp.b_ub(r));
        A(r, nz + r) = 1.0;
    }
    for (int k = 0; k < m_b; ++k) {
        const int r = m_ub + k;
        A(r, ub_rows[static_cast<std::size_t>(k)].first) = 1.0;
        b(r) = ub_rows[static_cast<std::size_t>(k)].second;
        A(r, nz + r) = 1.0;
    }
    for (int k = 0; k < m_eq; ++k) put_row(m_ub + m_b + k, lp.A_eq.row(k), lp.b_eq(k));
    for (int j = 0; j < n; ++j) {
        const VarMap& v = map[static_cast<std::size_t>(j)];
        if (v.col_minus >= 0) {
            cz(v.col) += lp.c(j);
            cz(v.col_minus) -= lp.c(j);
        } else {
            cz(v.col) += lp.c(j) * v.sign;
        }
    }

    // Initial basis: slack where it is feasible, artificial otherwise.
    const int art0 = nz + n_slack;
    std::vector<int> basis(static_cast<std::size_t>(m));
    std::vector<bool> is_art_row(static_cast<std::size_t>(m), false);
    for (int r = 0; r < m; ++r) {
        if (b(r) < 0.0) {
            A.row(r) *= -1.0;
            b(r) = -b(r);
        }
        if (r < n_slack && A(r, nz + r) > 0.0) {
            basis[static_cast<std::size_t>(r)] = nz + r;
        } else {
            A(r, art0 + r) = 1.0;
            basis[static_cast<std::size_t>(r)] = art0 + r;
            is_art_row[static_cast<std::size_t>(r)] = true;
        }
    }

    Tableau tab(A, b, basis);
    const int total = nz + n_slack + m;
    const int max_pivots = 50 * (total + m) + 1000;
    std::vector<bool> allowed(static_cast<std::size_t>(total), true);

    // Phase one.
    Vector c1 = Vector::Zero(total);
    bool any_art = false;
    for (int r = 0; r < m; ++r)
        if (is_art_row[static_cast<std::size_t>(r)]) {
            c1(art0 + r) = 1.0;
            any_art = true;
        }
    if (any_art) {
        tab.set_objective(c1);
        const LpStatus st = tab.run(allowed, res.pivots, max_pivots);
        if (st == LpStatus::IterationLimit) {
            res.status = st;
            return res;
        }
        const double scale = 1.0 + b.cwiseAbs().maxCoeff();
        if (tab.objective() > 1e-9 * scale) {
            res.status = LpStatus::Infeasible;
            return res;
        }
        // Drive remaining (zero-level) artificials out of the basis.
        for (int r = 0; r < m; ++r) {
            if (tab.basis()[static_cast<std::size_t>(r)] < art0) continue;
            int enter = -1;
            for (int j = 0; j < art0; ++j)
                if (std::fabs(tab.at(r, j)) > 1e-9) {
                    enter = j;
                    break;
                }
            if (enter >= 0) tab.pivot(r, enter);  // redundant row otherwise
        }
    }
    for (int j = art0; j < total; ++j) allowed[static_cast<std::size_t>(j)] = false;

    // Phase two.
    tab.set_objective(cz);
    const LpStatus st = tab.run(allowed, res.pivots, max_pivots);
    res.status = st;
    if (st != LpStatus::Optimal) return res;

    const Vector z = tab.solution();
    res.x.resize(n);
    for (int j = 0; j < n; ++j) {
        const VarMap& v = map[static_cast<std::size_t>(j)];
        res.x(j) = v.col_minus >= 0 ? z(v.col) - z(v.col_minus) : v.offset + v.sign * z(v.col);
    }
    res.objective = lp.c.dot(res.x);
    return res;
}

MilpResult solve_milp(const LinearProgram& lp, const std::vector<bool>& binary, double int_tol) {
    const int n = lp.num_vars();
    if (static_cast<int>(binary.size()) != n) throw std::invalid_argument("solve_milp: binary mask size mismatch");

    struct Node {
        Vector lower;
        Vector upper;
        double bound;
    };
    LinearProgram base = lp;
    for (int j = 0; j < n; ++j)
        if (binary[static_cast<std::size_t>(j)]) {
            base.lower(j) = std::max(base.lower(j), 0.0);
            base.upper(j) = std::min(base.upper(j), 1.0);
        }

    MilpResult best;
    best.objective = kInf;
    std::vector<Node> open;
    open.push_back({base.lower, base.upper, -kInf});
    LinearProgram work = base;

    while (!open.empty()) {
        // best-bound selection among open nodes (first on ties)
        std::size_t pick = 0;
        for (std::size_t k = 1; k < open.size(); ++k)
            if (open[k].bound < open[pick].bound) pick = k;
        Node node = open[pick];
        open.erase(open.begin() + static_cast<std::ptrdiff_t>(pick));

        // depth-first dive from this node
        while (true) {
            if (node.bound >= best.objective) break;
            work.lower = node.lower;
            work.upper = node.upper;
            const LpResult r = solve_lp(work);
            ++best.nodes;
            if (r.status == LpStatus::Unbounded) {
                best.status = LpStatus::Unbounded;
                return best;
            }
            if (r.status != LpStatus::Optimal) break;
            if (r.objective >= best.objective - 1e-12 * (1.0 + std::fabs(best.objective))) break;

            int branch = -1;
            double closest = kInf;
            for (int j = 0; j < n; ++j) {
                if (!binary[static_cast<std::size_t>(j)]) continue;
                const double f = r.x(j) - std::floor(r.x(j));
                if (f < int_tol || f > 1.0 - int_tol) continue;
                const double d = std::fabs(r.x(j) - 0.5);
                if (d < closest - 1e-12) {
                    closest = d;
                    branch = j;
                }
            }
            if (branch < 0) {
                ++best.leaves;
                best.status = LpStatus::Optimal;
                best.objective = r.objective;
                best.x = r.x;
                for (int j = 0; j < n; ++j)
                    if (binary[static_cast<std::size_t>(j)]) best.x(j) = std::round(best.x(j));
                break;
            }
            Node down = node, up = node;
            down.upper(branch) = 0.0;
            up.lower(branch) = 1.0;
            down.bound = up.bound = r.objective;
            // dive toward the nearer integer, keep the sibling open
            if (r.x(branch) >= 0.5) {
                open.push_back(down);
                node = up;
            } else {
                open.push_back(up);
                node = down;
            }
        }
    }
    return best;
}

}  // namespace mdnc
