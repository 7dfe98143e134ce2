#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "miqp/dual.hpp"
#include "miqp/errors.hpp"
#include "miqp/linalg.hpp"
#include "miqp/qp.hpp"

namespace miqp {

/// Convex mixed-integer QP:
///   min x'Qx + c'x + d   s.t.  A x <= b,  x_i integral for i < n1,
/// with Q positive definite. Integer variables come first and are branched on
/// in index order.
struct Instance {
    std::size_t n = 0;
    std::size_t n1 = 0;
    SymMatrix Q;
    Vector c;
    double d = 0.0;
    Matrix A;  // m x n
    Vector b;  // m

    std::size_t num_constraints() const { return b.size(); }

    double objective(const Vector& x) const { return dot(x, Q.matvec(x)) + dot(c, x) + d; }

    void validate() const {
        if (n1 > n) throw DimensionMismatch("instance: n1 > n");
        if (Q.order() != n || c.size() != n) throw DimensionMismatch("instance: Q/c size");
        if (A.rows() != b.size() || (A.rows() > 0 && A.cols() != n))
            throw DimensionMismatch("instance: A/b size");
    }
};

/// Everything that depends only on the depth of the enumeration tree, computed
/// once up front: trailing blocks of Q with their factors, trailing columns of
/// A, the dual quadratic term with its spectral data, the minima-line
/// directions z used for O(n-l) updates of the continuous minimizer, and the
/// primal-recovery columns.
struct DepthTables {
    std::size_t n = 0;
    std::size_t n1 = 0;
    std::size_t m = 0;

    // indexed by depth l in [0, n1]
    std::vector<SymMatrix> q;                       // trailing (n-l) block of Q
    std::vector<SpdFactor> factor;                  // Cholesky of q[l]
    std::vector<Matrix> a;                          // trailing n-l columns of A
    std::vector<SymMatrix> qtilde;                  // 1/4 A_l Q_l^-1 A_l'
    std::vector<double> lambda_max;                 // lambda_max(qtilde[l])
    std::vector<double> epsilon;                    // active-set scale for depth l
    std::vector<std::vector<Vector>> recovery_cols; // m columns of -1/2 Q_l^-1 a_i

    // indexed by depth l in [0, n1): data for fixing the next variable
    std::vector<Vector> z;     // minima-line direction, length n-l, z[0] = 1
    std::vector<Vector> az;    // A_{l+1} * tail(z[l]), length m
    std::vector<Vector> qcol;  // first column of q[l], length n-l
};

inline DepthTables preprocess(const Instance& inst) {
    inst.validate();
    const std::size_t n = inst.n, n1 = inst.n1, m = inst.num_constraints();

    DepthTables dt;
    dt.n = n;
    dt.n1 = n1;
    dt.m = m;
    dt.q.resize(n1 + 1);
    dt.factor.resize(n1 + 1);
    dt.a.resize(n1 + 1);
    dt.qtilde.resize(n1 + 1);
    dt.lambda_max.resize(n1 + 1);
    dt.epsilon.resize(n1 + 1);
    dt.recovery_cols.resize(n1 + 1);
    dt.z.resize(n1);
    dt.az.resize(n1);
    dt.qcol.resize(n1);

    for (std::size_t l = 0; l <= n1; ++l) {
        const std::size_t k = n - l;
        dt.q[l] = inst.Q.trailing_block(k);
        dt.factor[l] = cholesky_spd(dt.q[l]);
        dt.a[l] = inst.A.rows() > 0 ? inst.A.trailing_cols(k) : Matrix(0, k);

        dt.recovery_cols[l].resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            Vector rhs = dt.a[l].row(i);
            for (double& v : rhs) v *= -0.5;
            dt.recovery_cols[l][i] = spd_solve(dt.factor[l], rhs);
        }
        dt.qtilde[l] = SymMatrix(m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j)
                dt.qtilde[l].set(i, j, -0.5 * dt.a[l].row_dot(i, dt.recovery_cols[l][j]));

        dt.lambda_max[l] = max_eigenvalue(dt.qtilde[l]);
        dt.epsilon[l] = dt.lambda_max[l] > 0.0 ? 0.45 / dt.lambda_max[l] : 1.0;
    }

    for (std::size_t l = 0; l < n1; ++l) {
        const std::size_t k = n - l;
        dt.qcol[l] = dt.q[l].column(0);
        Vector rhs(dt.qcol[l].begin() + 1, dt.qcol[l].end());
        const Vector w = spd_solve(dt.factor[l + 1], rhs);
        Vector zl(k);
        zl[0] = 1.0;
        for (std::size_t i = 0; i < k - 1; ++i) zl[i + 1] = -w[i];
        dt.az[l] = Vector(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < k - 1; ++j) s += dt.a[l + 1](i, j) * zl[j + 1];
            dt.az[l][i] = s;
        }
        dt.z[l] = std::move(zl);
    }
    return dt;
}

/// One enumeration node: the fixing r of the first `depth` variables plus the
/// incrementally maintained reduced data. y is the unconstrained minimizer of
/// the reduced objective, Ay caches A_l * y, and (ctilde, dtilde) complete the
/// reduced dual objective. warm_lambda is the parent's dual solution.
struct Node {
    std::size_t depth = 0;
    std::vector<long long> fixing;
    Vector y;
    Vector c_red;
    double d_red = 0.0;
    Vector b_red;
    Vector ay;
    Vector ctilde;
    double dtilde = 0.0;
    Vector warm_lambda;
};

inline Node root_node(const Instance& inst, const DepthTables& dt) {
    Node node;
    node.depth = 0;
    node.c_red = inst.c;
    node.d_red = inst.d;
    node.b_red = inst.b;
    Vector rhs = inst.c;
    for (double& v : rhs) v *= -0.5;
    node.y = spd_solve(dt.factor[0], rhs);
    node.ay = dt.a[0].matvec(node.y);
    node.ctilde.resize(dt.m);
    for (std::size_t i = 0; i < dt.m; ++i) node.ctilde[i] = node.b_red[i] - node.ay[i];
    node.dtilde = -0.5 * dot(node.c_red, node.y) - node.d_red;
    node.warm_lambda.assign(dt.m, 0.0);
    return node;
}

/// Child of `parent` obtained by fixing the next integer variable to v, in
/// O(n - depth + m) work. The caller supplies the warm-start multipliers.
inline Node make_child(const Node& parent, long long v, const DepthTables& dt) {
    if (parent.depth >= dt.n1) throw DepthExceeded();
    const std::size_t pl = parent.depth;  // parent depth
    const std::size_t k = dt.n - pl - 1;  // child dimension
    const double vd = static_cast<double>(v);
    const double alpha = vd - parent.y[0];
    const Vector& z = dt.z[pl];
    const Vector& qcol = dt.qcol[pl];

    Node child;
    child.depth = pl + 1;
    child.fixing = parent.fixing;
    child.fixing.push_back(v);

    child.y.resize(k);
    for (std::size_t i = 0; i < k; ++i) child.y[i] = parent.y[i + 1] + alpha * z[i + 1];

    child.c_red.resize(k);
    for (std::size_t i = 0; i < k; ++i) child.c_red[i] = parent.c_red[i + 1] + 2.0 * vd * qcol[i + 1];

    child.d_red = parent.d_red + parent.c_red[0] * vd + qcol[0] * vd * vd;

    child.b_red.resize(dt.m);
    child.ay.resize(dt.m);
    child.ctilde.resize(dt.m);
    for (std::size_t i = 0; i < dt.m; ++i) {
        const double a_col = dt.a[pl](i, 0);  // column of A for the fixed variable
        child.b_red[i] = parent.b_red[i] - vd * a_col;
        child.ay[i] = parent.ay[i] - parent.y[0] * a_col + alpha * dt.az[pl][i];
        child.ctilde[i] = child.b_red[i] - child.ay[i];
    }
    child.dtilde = -0.5 * dot(child.c_red, child.y) - child.d_red;
    child.warm_lambda = parent.warm_lambda;
    return child;
}

/// Non-incremental reconstruction of the node for a fixing r, straight from
/// the definitions; used as a consistency oracle for make_child chains.
inline Node rebuild_direct(const Instance& inst, const std::vector<long long>& fixing) {
    const std::size_t l = fixing.size();
    const std::size_t k = inst.n - l;
    const std::size_t m = inst.num_constraints();

    Node node;
    node.depth = l;
    node.fixing = fixing;

    node.c_red.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        double s = inst.c[l + j];
        for (std::size_t i = 0; i < l; ++i) s += 2.0 * inst.Q(i, l + j) * static_cast<double>(fixing[i]);
        node.c_red[j] = s;
    }

    node.d_red = inst.d;
    for (std::size_t i = 0; i < l; ++i) {
        node.d_red += inst.c[i] * static_cast<double>(fixing[i]);
        for (std::size_t j = 0; j < l; ++j)
            node.d_red += inst.Q(i, j) * static_cast<double>(fixing[i]) * static_cast<double>(fixing[j]);
    }

    node.b_red.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        double s = inst.b[i];
        for (std::size_t j = 0; j < l; ++j) s -= inst.A(i, j) * static_cast<double>(fixing[j]);
        node.b_red[i] = s;
    }

    const SpdFactor f = cholesky_spd(inst.Q.trailing_block(k));
    Vector rhs = node.c_red;
    for (double& v : rhs) v *= -0.5;
    node.y = spd_solve(f, rhs);

    const Matrix a_l = inst.A.rows() > 0 ? inst.A.trailing_cols(k) : Matrix(0, k);
    node.ay = a_l.matvec(node.y);
    node.ctilde.resize(m);
    for (std::size_t i = 0; i < m; ++i) node.ctilde[i] = node.b_red[i] - node.ay[i];

    node.dtilde = 0.25 * dot(node.c_red, spd_solve(f, node.c_red)) - node.d_red;
    node.warm_lambda.assign(m, 0.0);
    return node;
}

/// Integer branching values around the fractional relaxation value, in
/// increasing distance, alternating sides starting with the nearest integer;
/// ties go to the lower value. Either side can be killed independently once a
/// bound on it proves the rest of that side useless.
class BranchValues {
public:
    enum class Side { Down, Up };

    explicit BranchValues(double center)
        : center_(center),
          down_(static_cast<long long>(std::floor(center))),
          up_(static_cast<long long>(std::floor(center)) + 1) {}

    bool next(long long& v) {
        if (!down_alive_ && !up_alive_) return false;
        bool take_down;
        if (!down_alive_)
            take_down = false;
        else if (!up_alive_)
            take_down = true;
        else
            take_down = (center_ - static_cast<double>(down_)) <=
                        (static_cast<double>(up_) - center_);
        if (take_down) {
            v = down_--;
            last_ = Side::Down;
        } else {
            v = up_++;
            last_ = Side::Up;
        }
        return true;
    }

    void kill(Side s) {
        if (s == Side::Down)
            down_alive_ = false;
        else
            up_alive_ = false;
    }
    void kill_last() { kill(last_); }
    Side last_side() const { return last_; }

private:
    double center_;
    long long down_;
    long long up_;
    bool down_alive_ = true;
    bool up_alive_ = true;
    Side last_ = Side::Down;
};

struct NodeRelaxation {
    QpStatus status = QpStatus::Optimal;
    double bound = 0.0;
    Vector lambda;
    std::optional<Vector> xstar;  // reduced-space minimizer, present when Optimal
    int iterations = 0;
    bool solved = false;  // true when a dual solve actually ran (m > 0)
};

namespace detail {

inline SolverConfig node_config(const DepthTables& dt, std::size_t depth, const SolverConfig& base,
                                double ub) {
    SolverConfig cfg = base;
    cfg.epsilon = dt.epsilon[depth];
    cfg.eta = 1e-8 * (1.0 + dt.lambda_max[depth]);
    cfg.cutoff = -ub;
    return cfg;
}

inline Vector recover_at_depth(const DepthTables& dt, std::size_t depth, const Vector& y,
                               const Vector& lambda) {
    Vector x = y;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        const Vector& col = dt.recovery_cols[depth][i];
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += lambda[i] * col[j];
    }
    return x;
}

}  // namespace detail

/// Lower bound for a node from the dual of its continuous relaxation, solved
/// with cutoff -ub so the iteration stops as soon as the bound certifies the
/// node prunable. On Optimal the reduced-space primal minimizer is recovered
/// from the precomputed columns.
inline NodeRelaxation solve_node_relaxation(const Node& node, const DepthTables& dt, double ub,
                                            const SolverConfig& base) {
    NodeRelaxation rel;
    if (dt.m == 0) {
        rel.status = QpStatus::Optimal;
        rel.bound = -node.dtilde;
        rel.xstar = node.y;
        return rel;
    }
    const SolverConfig cfg = detail::node_config(dt, node.depth, base, ub);
    const QpProblem dual{dt.qtilde[node.depth], node.ctilde, node.dtilde};
    QpResult r = qp_solve(dual, cfg, node.warm_lambda);
    rel.status = r.status;
    rel.bound = -r.value;
    rel.lambda = std::move(r.x);
    rel.iterations = r.iterations;
    rel.solved = true;
    if (r.status == QpStatus::Optimal)
        rel.xstar = detail::recover_at_depth(dt, node.depth, node.y, rel.lambda);
    return rel;
}

struct LeafCandidate {
    Vector x;  // full-length solution, integer part exactly integral
    double value = 0.0;
    Vector lambda;
};

struct LeafOutcome {
    double bound = std::numeric_limits<double>::infinity();
    std::optional<LeafCandidate> candidate;
    int iterations = 0;
    bool solved = false;
};

namespace detail {

inline Vector assemble_solution(const std::vector<long long>& fixing, const Vector& x_cont) {
    Vector x(fixing.size() + x_cont.size());
    for (std::size_t i = 0; i < fixing.size(); ++i) x[i] = static_cast<double>(fixing[i]);
    for (std::size_t i = 0; i < x_cont.size(); ++i) x[fixing.size() + i] = x_cont[i];
    return x;
}

}  // namespace detail

/// Evaluates a node at depth n1, where all integer variables are fixed. In the
/// pure-integer case this is a slack check on b_red; in the mixed case the
/// reduced continuous problem is solved through its dual, re-solved to 1e-9
/// when it may improve the incumbent, and the recovered point is accepted if
/// it violates no constraint by more than 1e-6.
inline LeafOutcome leaf_evaluate(const Node& node, const DepthTables& dt, double ub,
                                 const SolverConfig& base) {
    LeafOutcome out;
    if (dt.n1 == dt.n) {
        double min_slack = std::numeric_limits<double>::infinity();
        for (double s : node.b_red) min_slack = std::min(min_slack, s);
        if (min_slack < -1e-6) return out;  // infeasible fixing, bound stays +inf
        out.bound = node.d_red;
        out.candidate = LeafCandidate{detail::assemble_solution(node.fixing, {}), node.d_red, {}};
        return out;
    }

    if (dt.m == 0) {
        out.bound = -node.dtilde;
        out.candidate = LeafCandidate{detail::assemble_solution(node.fixing, node.y), out.bound, {}};
        return out;
    }

    NodeRelaxation rel = solve_node_relaxation(node, dt, ub, base);
    out.iterations = rel.iterations;
    out.solved = rel.solved;
    out.bound = rel.bound;
    if (rel.status == QpStatus::IterLimit) {
        out.bound = std::numeric_limits<double>::infinity();  // non-converging dual: infeasible fixing
        return out;
    }
    if (rel.status == QpStatus::CutoffReached) return out;  // bound >= ub already
    if (rel.bound >= ub - 1e-9) return out;                 // cannot improve the incumbent

    // High-precision re-solve of the same dual, warm-started at the optimum.
    SolverConfig polish = detail::node_config(dt, node.depth, base, ub);
    polish.tol = 1e-9;
    const QpProblem dual{dt.qtilde[node.depth], node.ctilde, node.dtilde};
    QpResult r = qp_solve(dual, polish, rel.lambda);
    if (r.status != QpStatus::Optimal) {
        out.bound = -r.value;
        return out;
    }
    out.bound = -r.value;

    Vector x_cont = detail::recover_at_depth(dt, node.depth, node.y, r.x);
    double viol = 0.0;
    for (std::size_t i = 0; i < dt.m; ++i)
        viol = std::max(viol, dt.a[node.depth].row_dot(i, x_cont) - node.b_red[i]);
    if (viol <= 1e-6)
        out.candidate =
            LeafCandidate{detail::assemble_solution(node.fixing, x_cont), out.bound, std::move(r.x)};
    return out;
}

/// Re-solves the reduced continuous problem under the optimal fixing to high
/// precision and returns the recovered continuous part. No-op in the pure
/// integer case. Throws PolishFailed when a violation above 1e-6 persists.
inline Vector postprocess(const Instance& inst, const std::vector<long long>& fixing,
                          const Vector& x_cont, const Vector& lambda) {
    const std::size_t l = fixing.size();
    if (l == inst.n) return x_cont;

    const Node red = rebuild_direct(inst, fixing);  // reduced data from the definitions
    PrimalRelaxation rel;
    rel.Q = inst.Q.trailing_block(inst.n - l);
    rel.c = red.c_red;
    rel.d = red.d_red;
    rel.A = inst.A.rows() > 0 ? inst.A.trailing_cols(inst.n - l) : Matrix(0, inst.n - l);
    rel.b = red.b_red;

    if (rel.num_constraints() == 0) return red.y;

    const DualData dd = build_dual(rel);
    QpProblem dual = dd.dual_qp();
    SolverConfig cfg = make_config(dual);
    cfg.tol = 1e-9;
    QpResult r = qp_solve(dual, cfg, clamp_nonneg(lambda));
    if (r.status != QpStatus::Optimal) throw PolishFailed("postprocess: dual re-solve failed");

    Vector x = recover_primal(dd, r.x);
    double viol = 0.0;
    for (std::size_t i = 0; i < rel.num_constraints(); ++i)
        viol = std::max(viol, rel.A.row_dot(i, x) - rel.b[i]);
    if (viol > 1e-6) throw PolishFailed("postprocess: constraint violation above 1e-6");
    return x;
}

enum class MiqpStatus { Optimal, Infeasible, TimeLimit };

struct MiqpOptions {
    double tol = 1e-5;
    double time_limit = 0.0;  // wall-clock seconds; <= 0 disables
    double initial_ub = 1e30;
    bool warmstart = true;
    bool early_pruning = true;
    int qp_max_iter = 100000;
    // A node whose dual certifies a bound at or above this value (an infeasible
    // fixing in every practical instance) is pruned even while the incumbent is
    // still the initial upper bound. Problems with a true optimum above it are
    // reported infeasible.
    double infeasible_bound = 1e12;
};

struct MiqpResult {
    MiqpStatus status = MiqpStatus::Infeasible;
    Vector x;
    double value = std::numeric_limits<double>::infinity();
    long long nodes = 0;
    long long it_root = 0;
    double it_per_node_mean = 0.0;
    double preprocess_seconds = 0.0;
    double solve_seconds = 0.0;
    double max_constraint_violation = 0.0;
};

namespace detail {

struct Incumbent {
    double value;
    std::vector<long long> fixing;
    Vector x_cont;
    Vector lambda;
};

struct SearchCtx {
    const Instance& inst;
    const DepthTables& dt;
    const MiqpOptions& opts;
    SolverConfig base;
    double ub;
    std::optional<Incumbent> best = {};
    long long nodes = 0;
    long long root_iterations = 0;
    long long nonroot_iterations = 0;
    long long nonroot_solves = 0;
    std::chrono::steady_clock::time_point deadline = {};
    bool has_deadline = false;
    bool timed_out = false;
};

inline void record_iterations(SearchCtx& ctx, const Node& node, int iterations, bool solved) {
    if (!solved) return;
    if (node.depth == 0) {
        ctx.root_iterations += iterations;
    } else {
        ctx.nonroot_iterations += iterations;
        ctx.nonroot_solves += 1;
    }
}

// Returns true when the node's bound proves its side of the parent's value
// sequence exhausted (prune + outer-sibling cut).
inline bool visit(SearchCtx& ctx, Node& node) {
    if (ctx.has_deadline && std::chrono::steady_clock::now() >= ctx.deadline) {
        ctx.timed_out = true;
        return false;
    }
    ++ctx.nodes;
    const double prune_level = std::min(ctx.ub, ctx.opts.infeasible_bound);

    if (node.depth == ctx.dt.n1) {
        LeafOutcome leaf = leaf_evaluate(node, ctx.dt, prune_level, ctx.base);
        record_iterations(ctx, node, leaf.iterations, leaf.solved);
        if (leaf.candidate && leaf.candidate->value < ctx.ub) {
            ctx.ub = leaf.candidate->value;
            Incumbent inc;
            inc.value = leaf.candidate->value;
            inc.fixing = node.fixing;
            inc.x_cont = Vector(leaf.candidate->x.begin() + static_cast<std::ptrdiff_t>(node.fixing.size()),
                                leaf.candidate->x.end());
            inc.lambda = leaf.candidate->lambda;
            ctx.best = std::move(inc);
        }
        return leaf.bound >= std::min(ctx.ub, ctx.opts.infeasible_bound) - 1e-9;
    }

    const double cutoff_ub = ctx.opts.early_pruning ? prune_level : ctx.opts.infeasible_bound;
    NodeRelaxation rel = solve_node_relaxation(node, ctx.dt, cutoff_ub, ctx.base);
    record_iterations(ctx, node, rel.iterations, rel.solved);

    if (rel.status == QpStatus::IterLimit) return true;  // non-converging dual: infeasible node
    if (rel.bound >= std::min(ctx.ub, ctx.opts.infeasible_bound) - 1e-9) return true;

    BranchValues values((*rel.xstar)[0]);
    long long v = 0;
    while (values.next(v)) {
        Node child = make_child(node, v, ctx.dt);
        child.warm_lambda = ctx.opts.warmstart ? rel.lambda : Vector(ctx.dt.m, 0.0);
        const bool side_done = visit(ctx, child);
        if (ctx.timed_out) return false;
        if (side_done) values.kill_last();
    }
    return false;
}

}  // namespace detail

/// Depth-first branch-and-bound: preprocess, then enumerate fixings in
/// increasing distance to the relaxation values, bounding each node through
/// the dual of its continuous relaxation with warm starts and early pruning.
inline MiqpResult solve_miqp(const Instance& inst, const MiqpOptions& opts = {}) {
    inst.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const DepthTables dt = preprocess(inst);
    const auto t1 = std::chrono::steady_clock::now();

    SolverConfig base;
    base.tol = opts.tol;
    base.max_iter = opts.qp_max_iter;

    detail::SearchCtx ctx{inst, dt, opts, base, opts.initial_ub};
    if (opts.time_limit > 0.0) {
        ctx.has_deadline = true;
        ctx.deadline = t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                std::chrono::duration<double>(opts.time_limit));
    }

    Node root = root_node(inst, dt);
    detail::visit(ctx, root);
    const auto t2 = std::chrono::steady_clock::now();

    MiqpResult res;
    res.nodes = ctx.nodes;
    res.it_root = ctx.root_iterations;
    res.it_per_node_mean = ctx.nonroot_solves > 0
                               ? static_cast<double>(ctx.nonroot_iterations) /
                                     static_cast<double>(ctx.nonroot_solves)
                               : 0.0;
    res.preprocess_seconds = std::chrono::duration<double>(t1 - t0).count();
    res.solve_seconds = std::chrono::duration<double>(t2 - t1).count();

    if (ctx.best) {
        const detail::Incumbent& inc = *ctx.best;
        Vector x_cont = postprocess(inst, inc.fixing, inc.x_cont, inc.lambda);
        res.x = detail::assemble_solution(inc.fixing, x_cont);
        res.value = inst.objective(res.x);
        if (std::abs(res.value - inc.value) > 1e-6 * (1.0 + std::abs(res.value)))
            throw SolverError("solve_miqp: dual bound and objective of the incumbent disagree");
        for (std::size_t i = 0; i < inst.num_constraints(); ++i)
            res.max_constraint_violation =
                std::max(res.max_constraint_violation, inst.A.row_dot(i, res.x) - inst.b[i]);
        res.max_constraint_violation = std::max(0.0, res.max_constraint_violation);
        res.status = ctx.timed_out ? MiqpStatus::TimeLimit : MiqpStatus::Optimal;
    } else {
        res.status = ctx.timed_out ? MiqpStatus::TimeLimit : MiqpStatus::Infeasible;
    }
    return res;
}

}  // namespace miqp
