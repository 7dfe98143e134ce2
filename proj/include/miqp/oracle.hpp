#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "miqp/bnb.hpp"
#include "miqp/dual.hpp"
#include "miqp/errors.hpp"
#include "miqp/linalg.hpp"
#include "miqp/qp.hpp"

// Reference implementations for testing and acceptance runs. Deliberately the
// simplest algorithms that can decide the same questions: fixed-step projected
// gradient instead of the active-set solver, exhaustive enumeration instead of
// branch-and-bound. They share only the dense linear algebra with the
// production code, so agreement between the two paths is evidence.

namespace miqp::oracle {

struct PgResult {
    Vector x;
    double value = 0.0;
    long long iterations = 0;
};

/// Fixed-step projected gradient for min x'Qx + c'x + d over x >= 0,
/// step 1/(2 lambda_max + 1e-8), stopping at ||min{x,g}||_inf <= tol.
inline PgResult projected_gradient_qp(const QpProblem& p, double tol,
                                      long long max_iter = 5000000) {
    const std::size_t m = p.size();
    const double lmax = max_eigenvalue(p.Q);
    const double step = 1.0 / (2.0 * lmax + 1e-8);

    Vector x(m, 0.0);
    for (long long it = 0; it < max_iter; ++it) {
        Vector g = p.Q.matvec(x);
        for (std::size_t i = 0; i < m; ++i) g[i] = 2.0 * g[i] + p.c[i];
        double res = 0.0;
        for (std::size_t i = 0; i < m; ++i) res = std::max(res, std::abs(std::min(x[i], g[i])));
        if (res <= tol) {
            const double value = p.value(x);
            return {std::move(x), value, it};
        }
        for (std::size_t i = 0; i < m; ++i) x[i] = std::max(0.0, x[i] - step * g[i]);
    }
    throw IterLimitExceeded("projected_gradient_qp: no convergence within the iteration cap");
}

namespace detail {

// Minimum-violation point of {x : A x <= b} by gradient descent on
// 1/2 sum max(0, a_i'x - b_i)^2. Returns the smallest max-violation seen.
inline double min_constraint_violation(const Matrix& a, const Vector& b) {
    const std::size_t m = a.rows(), n = a.cols();
    if (m == 0) return 0.0;
    double lip = 0.0;
    for (std::size_t i = 0; i < m; ++i) lip += norm2_sq(a.row(i));
    if (lip == 0.0) {  // all-zero rows: violation is fixed
        double v = 0.0;
        for (std::size_t i = 0; i < m; ++i) v = std::max(v, -b[i]);
        return v;
    }
    const double step = 1.0 / lip;

    Vector x(n, 0.0);
    double best = std::numeric_limits<double>::infinity();
    double h_prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 200000; ++it) {
        Vector resid(m);
        double h = 0.0, maxviol = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double r = a.row_dot(i, x) - b[i];
            resid[i] = std::max(0.0, r);
            maxviol = std::max(maxviol, r);
            h += 0.5 * resid[i] * resid[i];
        }
        best = std::min(best, std::max(0.0, maxviol));
        if (best <= 1e-9) return best;
        if (it % 100 == 99) {
            if (h_prev - h <= 1e-18 * (1.0 + h)) return best;  // stalled at the minimum
            h_prev = h;
        }
        for (std::size_t j = 0; j < n; ++j) {
            double gj = 0.0;
            for (std::size_t i = 0; i < m; ++i) gj += resid[i] * a(i, j);
            x[j] -= step * gj;
        }
    }
    return best;
}

// Projected gradient on the dual of  min x'Qx + c'x + d  s.t.  A x <= b  (Q pd
// via its factor), with a divergence bail-out for infeasible systems.
struct DualPg {
    bool unbounded = false;
    Vector lambda;
};

inline DualPg dual_pg(const SymMatrix& qt, const Vector& ct, double tol) {
    const std::size_t m = ct.size();
    const double lmax = max_eigenvalue(qt);
    const double step = 1.0 / (2.0 * lmax + 1e-8);
    DualPg out;
    Vector l(m, 0.0);
    for (long long it = 0; it < 2000000; ++it) {
        Vector g = qt.matvec(l);
        double value = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            value += l[i] * g[i] + ct[i] * l[i];
            g[i] = 2.0 * g[i] + ct[i];
        }
        if (value < -1e12) {
            out.unbounded = true;
            return out;
        }
        double res = 0.0;
        for (std::size_t i = 0; i < m; ++i) res = std::max(res, std::abs(std::min(l[i], g[i])));
        if (res <= tol) {
            out.lambda = std::move(l);
            return out;
        }
        for (std::size_t i = 0; i < m; ++i) l[i] = std::max(0.0, l[i] - step * g[i]);
    }
    throw IterLimitExceeded("brute_force_miqp: dual projected gradient hit the iteration cap");
}

}  // namespace detail

struct BruteForceResult {
    bool feasible = false;
    Vector x;
    double value = std::numeric_limits<double>::infinity();
};

/// Exhaustive minimum over all integer assignments in the box (inclusive
/// per-variable ranges, one per integer variable). For mixed instances the
/// continuous remainder is solved through its dual by projected gradient and
/// the primal recovered from the first-order condition. The box must cover
/// every assignment that could be optimal or feasible; at most 1e7 assignments.
inline BruteForceResult brute_force_miqp(const Instance& inst,
                                         const std::vector<std::pair<long long, long long>>& box) {
    inst.validate();
    if (box.size() != inst.n1) throw DimensionMismatch("brute_force_miqp: box size != n1");
    double total = 1.0;
    for (const auto& [lo, hi] : box) {
        if (hi < lo) throw DimensionMismatch("brute_force_miqp: empty range");
        total *= static_cast<double>(hi - lo + 1);
        if (total > 1e7) throw BoxTooLarge();
    }

    const std::size_t n1 = inst.n1;
    const std::size_t k = inst.n - n1;  // continuous variables
    const std::size_t m = inst.num_constraints();

    // Depth-n1 continuous machinery, shared across assignments.
    SpdFactor f2;
    std::vector<Vector> qinv_rows;  // Q2^-1 a_i for the trailing columns of A
    SymMatrix qt2(m);
    Matrix a2(m, k);
    if (k > 0) {
        f2 = cholesky_spd(inst.Q.trailing_block(k));
        if (m > 0) a2 = inst.A.trailing_cols(k);
        qinv_rows.resize(m);
        for (std::size_t i = 0; i < m; ++i) qinv_rows[i] = spd_solve(f2, a2.row(i));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j)
                qt2.set(i, j, 0.25 * dot(a2.row(i), qinv_rows[j]));
    }

    BruteForceResult best;
    std::vector<long long> r(n1);
    for (std::size_t i = 0; i < n1; ++i) r[i] = box[i].first;

    while (true) {
        // reduced data for this assignment, straight from the definitions
        Vector c2(k);
        for (std::size_t j = 0; j < k; ++j) {
            double s = inst.c[n1 + j];
            for (std::size_t i = 0; i < n1; ++i)
                s += 2.0 * inst.Q(i, n1 + j) * static_cast<double>(r[i]);
            c2[j] = s;
        }
        Vector b2(m);
        for (std::size_t i = 0; i < m; ++i) {
            double s = inst.b[i];
            for (std::size_t j = 0; j < n1; ++j) s -= inst.A(i, j) * static_cast<double>(r[j]);
            b2[i] = s;
        }

        Vector x_full(inst.n);
        for (std::size_t i = 0; i < n1; ++i) x_full[i] = static_cast<double>(r[i]);

        bool feasible = false;
        if (k == 0) {
            feasible = true;
            for (double s : b2) feasible = feasible && s >= -1e-6;
        } else if (m == 0) {
            Vector rhs = c2;
            for (double& v : rhs) v *= -0.5;
            const Vector y = spd_solve(f2, rhs);
            for (std::size_t j = 0; j < k; ++j) x_full[n1 + j] = y[j];
            feasible = true;
        } else if (detail::min_constraint_violation(a2, b2) <= 1e-6) {
            Vector ct2(m);
            const Vector u = spd_solve(f2, c2);
            for (std::size_t i = 0; i < m; ++i) ct2[i] = b2[i] + 0.5 * dot(a2.row(i), u);
            const detail::DualPg pg = detail::dual_pg(qt2, ct2, 1e-7);
            if (!pg.unbounded) {
                Vector rhs = c2;
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = 0; j < k; ++j) rhs[j] += pg.lambda[i] * a2(i, j);
                for (double& v : rhs) v *= -0.5;
                const Vector x2 = spd_solve(f2, rhs);
                double viol = 0.0;
                for (std::size_t i = 0; i < m; ++i)
                    viol = std::max(viol, a2.row_dot(i, x2) - b2[i]);
                if (viol <= 1e-6) {
                    for (std::size_t j = 0; j < k; ++j) x_full[n1 + j] = x2[j];
                    feasible = true;
                }
            }
        }

        if (feasible) {
            const double value = inst.objective(x_full);
            if (!best.feasible || value < best.value) {
                best.feasible = true;
                best.value = value;
                best.x = x_full;
            }
        }

        // odometer
        std::size_t pos = 0;
        while (pos < n1 && r[pos] == box[pos].second) {
            r[pos] = box[pos].first;
            ++pos;
        }
        if (pos == n1) break;
        ++r[pos];
    }
    return best;
}

struct KktReport {
    bool pass = false;
    double stationarity = 0.0;
    double feasibility = 0.0;
    double complementarity = 0.0;
};

/// Checks the first-order conditions of  min x'Qx + c'x + d  s.t.  A x <= b
/// at (x, lambda): stationarity ||2Qx + c + A'lambda||_inf, feasibility
/// max(A x - b), complementarity max |lambda_i (A x - b)_i|, all against tol.
inline KktReport kkt_check_primal(const PrimalRelaxation& rel, const Vector& x,
                                  const Vector& lambda, double tol) {
    KktReport rep;
    Vector grad = rel.Q.matvec(x);
    for (std::size_t j = 0; j < grad.size(); ++j) grad[j] = 2.0 * grad[j] + rel.c[j];
    for (std::size_t i = 0; i < rel.num_constraints(); ++i)
        for (std::size_t j = 0; j < grad.size(); ++j) grad[j] += rel.A(i, j) * lambda[i];
    rep.stationarity = inf_norm(grad);

    for (std::size_t i = 0; i < rel.num_constraints(); ++i) {
        const double slack = rel.A.row_dot(i, x) - rel.b[i];
        rep.feasibility = std::max(rep.feasibility, slack);
        rep.complementarity = std::max(rep.complementarity, std::abs(lambda[i] * slack));
    }
    rep.feasibility = std::max(0.0, rep.feasibility);
    rep.pass = rep.stationarity <= tol && rep.feasibility <= tol && rep.complementarity <= tol;
    return rep;
}

}  // namespace miqp::oracle
