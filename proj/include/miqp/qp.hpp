#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "miqp/errors.hpp"
#include "miqp/linalg.hpp"

namespace miqp {

/// Convex quadratic over the non-negative orthant:
///   min q(x) = x'Qx + c'x + d   s.t.  x >= 0,
/// with Q symmetric positive semidefinite. Gradient g(x) = 2Qx + c.
struct QpProblem {
    SymMatrix Q;
    Vector c;
    double d = 0.0;

    std::size_t size() const { return c.size(); }

    double value(const Vector& x) const {
        return dot(x, Q.matvec(x)) + dot(c, x) + d;
    }
};

inline Vector gradient(const QpProblem& p, const Vector& x) {
    if (x.size() != p.size()) throw DimensionMismatch("gradient: length mismatch");
    Vector g = p.Q.matvec(x);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = 2.0 * g[i] + p.c[i];
    return g;
}

struct SolverConfig {
    double epsilon = 1.0;  // active-set estimate scale; needs 0 < epsilon < 1/(2 lambda_max(Q))
    double delta = 0.5;    // Armijo backtracking ratio, in (0,1)
    double gamma = 0.1;    // Armijo slope fraction, in (0,1/2)
    double eta = 1e-8;     // truncated-Newton curvature threshold
    double tol = 1e-5;     // KKT tolerance
    double cutoff = -std::numeric_limits<double>::infinity();  // early-pruning threshold
    int max_iter = 100000;
    int armijo_max_j = 60;
};

/// Default configuration for a given problem: epsilon at 90% of the
/// 1/(2 lambda_max) admissibility bound (1 when Q = 0), eta scaled to the spectrum.
inline SolverConfig make_config(const QpProblem& p) {
    SolverConfig cfg;
    const double lmax = max_eigenvalue(p.Q);
    cfg.epsilon = lmax > 0.0 ? 0.45 / lmax : 1.0;
    cfg.eta = 1e-8 * (1.0 + lmax);
    return cfg;
}

struct ActiveSetPartition {
    std::vector<std::size_t> active;
    std::vector<std::size_t> nonactive;
};

/// Active-set estimate at a feasible point: i is non-active iff x_i > epsilon*g_i(x).
inline ActiveSetPartition estimate_active_set(const Vector& x, const Vector& g, double epsilon) {
    ActiveSetPartition part;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > epsilon * g[i])
            part.nonactive.push_back(i);
        else
            part.active.push_back(i);
    }
    return part;
}

/// ||min{x, g(x)}||_inf; zero exactly at KKT points of the non-negativity QP.
inline double kkt_residual(const QpProblem& p, const Vector& x) {
    const Vector g = gradient(p, x);
    double r = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, std::abs(std::min(x[i], g[i])));
    return r;
}

enum class QpStatus { Optimal, CutoffReached, IterLimit };

struct QpResult {
    QpStatus status = QpStatus::IterLimit;
    Vector x;
    double value = 0.0;
    double kkt_residual = 0.0;
    int iterations = 0;
    ActiveSetPartition final_partition;
};

struct CgOutcome {
    Vector direction;  // gradient-related direction d_N
    Vector y_final;    // final CG iterate, a displacement: candidate is x~_N + y_final
    bool truncated = false;
    int steps = 0;
};

/// Conjugate gradient on the subspace displacement system (2 Qnn) s = -gN from
/// s = 0, with a truncated-Newton snapshot rule: the first step whose curvature
/// falls to eta*||p||^2 freezes the gradient-related direction (-gN at step 0,
/// the current iterate afterwards) while the iteration keeps running. The loop
/// exits on numerically zero curvature, on a residual below 1e-12*(1+||gN||),
/// or after |N|+2 steps. A gradient with ||gN||_inf <= 1e-14 is treated as a
/// stationary subspace and everything returned is zero.
inline CgOutcome cg_subspace(const SymMatrix& qnn, const Vector& gn, double eta) {
    const std::size_t n = gn.size();
    if (qnn.order() != n) throw DimensionMismatch("cg_subspace: Qnn vs gN");
    CgOutcome out;
    if (inf_norm(gn) <= 1e-14) {
        out.direction.assign(n, 0.0);
        out.y_final.assign(n, 0.0);
        return out;
    }

    const double residual_stop = 1e-12 * (1.0 + std::sqrt(norm2_sq(gn)));
    const std::size_t cap = n + 2;

    Vector y(n, 0.0);
    Vector g = gn;  // model gradient (2 Qnn) y + gN
    Vector p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = -gn[i];
    double g_sq = norm2_sq(g);
    bool check = true;
    std::size_t l = 0;

    while (l < cap) {
        if (std::sqrt(g_sq) <= residual_stop) break;  // converged: y solves the Newton system
        Vector ap = qnn.matvec(p);
        for (double& v : ap) v *= 2.0;
        const double curv = dot(p, ap);
        const double p_sq = norm2_sq(p);
        if (curv <= 1e-14 * p_sq) break;  // zero-curvature ray
        if (check && curv <= eta * p_sq) {
            out.direction = (l == 0) ? p : y;  // p at l=0 equals -gN
            out.truncated = true;
            check = false;
        }
        const double alpha = g_sq / curv;
        for (std::size_t i = 0; i < n; ++i) y[i] += alpha * p[i];
        for (std::size_t i = 0; i < n; ++i) g[i] += alpha * ap[i];
        const double g_sq_next = norm2_sq(g);
        const double beta = g_sq_next / g_sq;
        for (std::size_t i = 0; i < n; ++i) p[i] = -g[i] + beta * p[i];
        g_sq = g_sq_next;
        ++l;
    }

    if (l == 0) {
        out.y_final.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) out.y_final[i] = -gn[i];
    } else {
        out.y_final = y;
    }
    if (check) out.direction = out.y_final;
    out.steps = static_cast<int>(l);
    return out;
}

struct ArmijoStep {
    double alpha = 0.0;
    Vector x_next;
    double q_next = 0.0;
};

/// Projected Armijo backtracking along d from the feasible point x~:
/// alpha = delta^j for the first j with
///   q([x~ + delta^j d]^#) <= q(x~) + gamma*delta^j*g(x~)'d.
inline ArmijoStep armijo_projected(const QpProblem& p, const Vector& x_tilde, const Vector& d,
                                   const SolverConfig& cfg) {
    const Vector g = gradient(p, x_tilde);
    const double slope = dot(g, d);
    if (slope >= 0.0) throw NonDescentDirection();
    const double q0 = p.value(x_tilde);

    double step = 1.0;
    for (int j = 0; j <= cfg.armijo_max_j; ++j) {
        Vector cand(x_tilde.size());
        for (std::size_t i = 0; i < cand.size(); ++i)
            cand[i] = std::max(0.0, x_tilde[i] + step * d[i]);
        const double qc = p.value(cand);
        if (qc <= q0 + cfg.gamma * step * slope) return {step, std::move(cand), qc};
        step *= cfg.delta;
    }
    throw LineSearchFailure();
}

/// Per-iteration measurements, collected only when a trace sink is supplied.
struct QpIterationRecord {
    double q_x = 0.0;       // q(x^k)
    double q_tilde = 0.0;   // q(x~^k), after zeroing the estimated actives
    double dist_sq = 0.0;   // ||x~^k - x^k||^2
    double gn_norm_sq = 0.0;
    double dn_dot_gn = 0.0;
    double alpha = std::numeric_limits<double>::quiet_NaN();   // NaN when no line search ran
    double q_next = std::numeric_limits<double>::quiet_NaN();  // NaN when the iteration exited
    bool null_step = false;
};

struct QpTrace {
    std::vector<QpIterationRecord> iterations;
};

namespace detail {

inline QpResult qp_finish(const QpProblem& p, QpStatus status, Vector x, int iterations,
                          double epsilon) {
    QpResult res;
    res.status = status;
    res.value = p.value(x);
    res.kkt_residual = kkt_residual(p, x);
    res.final_partition = estimate_active_set(x, gradient(p, x), epsilon);
    res.x = std::move(x);
    res.iterations = iterations;
    return res;
}

}  // namespace detail

/// Feasible active-set solve of min x'Qx + c'x + d over x >= 0.
///
/// Each iteration estimates the active set at x^k, zeroes those variables to
/// get x~^k, runs the subspace CG for a gradient-related direction and the
/// candidate x-bar, tests the candidate for optimality, and otherwise takes a
/// projected Armijo step. Terminates Optimal when ||min{x,g}||_inf <= tol,
/// CutoffReached as soon as a feasible iterate's objective falls to cfg.cutoff,
/// IterLimit after cfg.max_iter iterations.
inline QpResult qp_solve(const QpProblem& p, const SolverConfig& cfg, const Vector& x0,
                         QpTrace* trace = nullptr) {
    const std::size_t m = p.size();
    if (x0.size() != m) throw DimensionMismatch("qp_solve: x0 length mismatch");

    Vector x = clamp_nonneg(x0);
    double qx = p.value(x);
    int iterations = 0;

    // Recession probe: on an unbounded problem the iterates drift along a ray
    // on which q falls linearly, far too slowly to reach a deep cutoff point
    // by point. Extrapolating the recent displacement window and projecting
    // gives a concrete feasible point whose value certifies the cutoff once
    // q there is verified by evaluation.
    const bool probe_active = std::isfinite(cfg.cutoff);
    constexpr int kProbeWindow = 8;
    Vector probe_anchor;

    for (int k = 0; k < cfg.max_iter; ++k) {
        iterations = k + 1;

        if (qx <= cfg.cutoff)
            return detail::qp_finish(p, QpStatus::CutoffReached, std::move(x), iterations,
                                     cfg.epsilon);

        Vector g = gradient(p, x);
        double res = 0.0;
        for (std::size_t i = 0; i < m; ++i) res = std::max(res, std::abs(std::min(x[i], g[i])));
        if (res <= cfg.tol)
            return detail::qp_finish(p, QpStatus::Optimal, std::move(x), iterations, cfg.epsilon);

        if (probe_active && k % kProbeWindow == 0) {
            if (!probe_anchor.empty()) {
                Vector delta(m);
                for (std::size_t i = 0; i < m; ++i) delta[i] = x[i] - probe_anchor[i];
                const double slope = dot(g, delta);
                if (slope < 0.0) {
                    const double curv = dot(delta, p.Q.matvec(delta));
                    const double t_need = (qx - cfg.cutoff) / (-slope) * 1.01 + 1.0;
                    double t = t_need;
                    if (curv > 0.0) t = std::min(-slope / (2.0 * curv), t_need);
                    if (t > 0.0 && std::isfinite(t)) {
                        Vector z(m);
                        for (std::size_t i = 0; i < m; ++i)
                            z[i] = std::max(0.0, x[i] + t * delta[i]);
                        if (p.value(z) <= cfg.cutoff)
                            return detail::qp_finish(p, QpStatus::CutoffReached, std::move(z),
                                                     iterations, cfg.epsilon);
                    }
                }
            }
            probe_anchor = x;
        }

        const ActiveSetPartition part = estimate_active_set(x, g, cfg.epsilon);

        Vector x_tilde = x;
        double dist_sq = 0.0;
        for (std::size_t i : part.active) {
            dist_sq += x_tilde[i] * x_tilde[i];
            x_tilde[i] = 0.0;
        }
        const double q_tilde = p.value(x_tilde);

        QpIterationRecord rec;
        rec.q_x = qx;
        rec.q_tilde = q_tilde;
        rec.dist_sq = dist_sq;

        if (q_tilde <= cfg.cutoff) {
            if (trace) trace->iterations.push_back(rec);
            return detail::qp_finish(p, QpStatus::CutoffReached, std::move(x_tilde), iterations,
                                     cfg.epsilon);
        }

        const Vector g_tilde = gradient(p, x_tilde);
        Vector gn(part.nonactive.size());
        for (std::size_t i = 0; i < gn.size(); ++i) gn[i] = g_tilde[part.nonactive[i]];

        const CgOutcome cg = cg_subspace(p.Q.submatrix(part.nonactive), gn, cfg.eta);
        rec.gn_norm_sq = norm2_sq(gn);
        rec.dn_dot_gn = dot(cg.direction, gn);

        // candidate point x-bar (Step 8): actives zero, non-actives x~ + y
        Vector x_bar = x_tilde;
        for (std::size_t i = 0; i < part.nonactive.size(); ++i)
            x_bar[part.nonactive[i]] += cg.y_final[i];
        Vector x_bar_proj = clamp_nonneg(std::move(x_bar));
        if (p.value(x_bar_proj) <= cfg.cutoff) {
            if (trace) trace->iterations.push_back(rec);
            return detail::qp_finish(p, QpStatus::CutoffReached, std::move(x_bar_proj), iterations,
                                     cfg.epsilon);
        }
        if (kkt_residual(p, x_bar_proj) <= cfg.tol) {
            if (trace) trace->iterations.push_back(rec);
            return detail::qp_finish(p, QpStatus::Optimal, std::move(x_bar_proj), iterations,
                                     cfg.epsilon);
        }

        // A slope whose Armijo decrease would drown in the rounding of q cannot
        // be line searched; the zeroing step to x~ already carries the descent.
        if (cfg.gamma * (-rec.dn_dot_gn) <= 1e-14 * (1.0 + std::abs(q_tilde))) {
            rec.null_step = true;
            if (trace) trace->iterations.push_back(rec);
            x = std::move(x_tilde);
            qx = q_tilde;
            continue;
        }

        Vector d(m, 0.0);
        for (std::size_t i = 0; i < part.nonactive.size(); ++i)
            d[part.nonactive[i]] = cg.direction[i];
        ArmijoStep step;
        try {
            step = armijo_projected(p, x_tilde, d, cfg);
        } catch (const LineSearchFailure&) {
            // No certifiable decrease at this scale: the iterate has grown so
            // large (unbounded dual) that q's rounding swallows the Armijo
            // test. Report the stall instead of aborting the enumeration.
            if (trace) trace->iterations.push_back(rec);
            return detail::qp_finish(p, QpStatus::IterLimit, std::move(x_tilde), iterations,
                                     cfg.epsilon);
        }
        rec.alpha = step.alpha;
        rec.q_next = step.q_next;
        if (trace) trace->iterations.push_back(rec);

        x = std::move(step.x_next);
        qx = step.q_next;
    }
    return detail::qp_finish(p, QpStatus::IterLimit, std::move(x), iterations, cfg.epsilon);
}

}  // namespace miqp
