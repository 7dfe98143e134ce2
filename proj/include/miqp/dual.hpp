#pragma once

#include <cstddef>
#include <vector>

#include "miqp/errors.hpp"
#include "miqp/linalg.hpp"
#include "miqp/qp.hpp"

namespace miqp {

/// Inequality-constrained strictly convex QP:
///   min x'Qx + c'x + d   s.t.  A x <= b,   with Q positive definite.
struct PrimalRelaxation {
    SymMatrix Q;
    Vector c;
    double d = 0.0;
    Matrix A;  // m x n'
    Vector b;  // m

    std::size_t dim() const { return c.size(); }
    std::size_t num_constraints() const { return b.size(); }

    double objective(const Vector& x) const { return dot(x, Q.matvec(x)) + dot(c, x) + d; }
};

/// Dual objective data (Qt, ct, dt) of the relaxation plus the columns needed
/// to recover the primal minimizer from multipliers in O(m n') work:
///   Qt = 1/4 A Q^-1 A',  ct = 1/2 A Q^-1 c + b,  dt = 1/4 c'Q^-1 c - d,
///   recovery column i = -1/2 Q^-1 a_i,  y_unc = -1/2 Q^-1 c.
/// The dual of the relaxation is  max over lambda >= 0  of  -(l'Qt l + ct'l + dt).
struct DualData {
    SymMatrix qtilde;
    Vector ctilde;
    double dtilde = 0.0;
    std::vector<Vector> recovery_cols;
    Vector y_unc;

    QpProblem dual_qp() const { return QpProblem{qtilde, ctilde, dtilde}; }
};

inline DualData build_dual(const PrimalRelaxation& rel) {
    const std::size_t m = rel.num_constraints();
    const SpdFactor f = cholesky_spd(rel.Q);

    DualData dd;
    Vector rhs = rel.c;
    for (double& v : rhs) v *= -0.5;
    dd.y_unc = spd_solve(f, rhs);

    dd.recovery_cols.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        Vector ai = rel.A.row(i);
        for (double& v : ai) v *= -0.5;
        dd.recovery_cols[i] = spd_solve(f, ai);
    }

    dd.qtilde = SymMatrix(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j)
            dd.qtilde.set(i, j, -0.5 * rel.A.row_dot(i, dd.recovery_cols[j]));

    dd.ctilde.resize(m);
    for (std::size_t i = 0; i < m; ++i) dd.ctilde[i] = rel.b[i] - rel.A.row_dot(i, dd.y_unc);

    dd.dtilde = -0.5 * dot(rel.c, dd.y_unc) - rel.d;
    return dd;
}

/// Value of the dual function at lambda >= 0; a lower bound on the relaxation optimum.
inline double dual_bound(const DualData& dd, const Vector& lambda) {
    return -(dot(lambda, dd.qtilde.matvec(lambda)) + dot(dd.ctilde, lambda) + dd.dtilde);
}

/// Primal minimizer of the Lagrangian at lambda: -1/2 Q^-1 (c + A'lambda),
/// assembled from the precomputed columns.
inline Vector recover_primal(const DualData& dd, const Vector& lambda) {
    Vector x = dd.y_unc;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        const Vector& col = dd.recovery_cols[i];
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += lambda[i] * col[j];
    }
    return x;
}

}  // namespace miqp
