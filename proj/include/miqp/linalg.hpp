#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <vector>

#include "miqp/errors.hpp"

namespace miqp {

namespace monitor {
// Factorization counter; lets tests verify that the search loop never factors.
inline std::atomic<long long> cholesky_calls{0};
}  // namespace monitor

using Vector = std::vector<double>;

inline double dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double inf_norm(const Vector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double norm2_sq(const Vector& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

/// Componentwise max{0, v}: projection onto the non-negative orthant.
inline Vector clamp_nonneg(Vector v) {
    for (double& x : v) x = std::max(0.0, x);
    return v;
}

/// Dense symmetric matrix, row-major, both triangles stored.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t order) : n_(order), a_(order * order, 0.0) {}

    static SymMatrix identity(std::size_t order) {
        SymMatrix s(order);
        for (std::size_t i = 0; i < order; ++i) s.a_[i * order + i] = 1.0;
        return s;
    }

    std::size_t order() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    /// Sets entries (i,j) and (j,i); the stored matrix stays exactly symmetric.
    void set(std::size_t i, std::size_t j, double v) {
        a_[i * n_ + j] = v;
        a_[j * n_ + i] = v;
    }

    Vector matvec(const Vector& x) const {
        if (x.size() != n_) throw DimensionMismatch("matvec: length mismatch");
        Vector y(n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            const double* row = &a_[i * n_];
            double s = 0.0;
            for (std::size_t j = 0; j < n_; ++j) s += row[j] * x[j];
            y[i] = s;
        }
        return y;
    }

    /// Trailing principal block of the given order (last `order` rows/columns).
    SymMatrix trailing_block(std::size_t order) const {
        SymMatrix s(order);
        const std::size_t off = n_ - order;
        for (std::size_t i = 0; i < order; ++i)
            for (std::size_t j = 0; j < order; ++j)
                s.a_[i * order + j] = a_[(off + i) * n_ + (off + j)];
        return s;
    }

    /// Principal submatrix on the given (sorted or not) index set.
    SymMatrix submatrix(const std::vector<std::size_t>& idx) const {
        SymMatrix s(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < idx.size(); ++j)
                s.a_[i * idx.size() + j] = a_[idx[i] * n_ + idx[j]];
        return s;
    }

    Vector column(std::size_t j) const {
        Vector c(n_);
        for (std::size_t i = 0; i < n_; ++i) c[i] = a_[i * n_ + j];
        return c;
    }

    double max_abs() const {
        double m = 0.0;
        for (double x : a_) m = std::max(m, std::abs(x));
        return m;
    }

    const std::vector<double>& raw() const { return a_; }
    std::vector<double>& raw() { return a_; }

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

/// Dense rectangular matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, 0.0) {}

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    double operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }

    double row_dot(std::size_t i, const Vector& x) const {
        if (x.size() != c_) throw DimensionMismatch("row_dot: length mismatch");
        const double* row = &a_[i * c_];
        double s = 0.0;
        for (std::size_t j = 0; j < c_; ++j) s += row[j] * x[j];
        return s;
    }

    Vector row(std::size_t i) const {
        return Vector(a_.begin() + static_cast<std::ptrdiff_t>(i * c_),
                      a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * c_));
    }

    Vector column(std::size_t j) const {
        Vector v(r_);
        for (std::size_t i = 0; i < r_; ++i) v[i] = a_[i * c_ + j];
        return v;
    }

    Vector matvec(const Vector& x) const {
        Vector y(r_);
        for (std::size_t i = 0; i < r_; ++i) y[i] = row_dot(i, x);
        return y;
    }

    /// Last `k` columns as a new matrix.
    Matrix trailing_cols(std::size_t k) const {
        Matrix t(r_, k);
        const std::size_t off = c_ - k;
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < k; ++j) t.a_[i * k + j] = a_[i * c_ + off + j];
        return t;
    }

    const std::vector<double>& raw() const { return a_; }
    std::vector<double>& raw() { return a_; }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<double> a_;
};

/// Lower-triangular Cholesky factor L with L L^T equal to the source matrix.
struct SpdFactor {
    std::size_t order = 0;
    std::vector<double> lower;  // row-major, entries above the diagonal are zero

    double at(std::size_t i, std::size_t j) const { return lower[i * order + j]; }
};

/// Cholesky factorization of a symmetric positive definite matrix.
/// Throws NotPositiveDefinite when a pivot falls below 1e-13*(1+max diagonal).
inline SpdFactor cholesky_spd(const SymMatrix& s) {
    monitor::cholesky_calls.fetch_add(1, std::memory_order_relaxed);
    const std::size_t n = s.order();
    double max_diag = n > 0 ? s(0, 0) : 0.0;
    for (std::size_t i = 1; i < n; ++i) max_diag = std::max(max_diag, s(i, i));
    const double pivot_tol = 1e-13 * (1.0 + max_diag);

    SpdFactor f;
    f.order = n;
    f.lower.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = s(i, j);
            for (std::size_t k = 0; k < j; ++k) sum -= f.lower[i * n + k] * f.lower[j * n + k];
            if (i == j) {
                if (sum <= pivot_tol) throw NotPositiveDefinite();
                f.lower[i * n + i] = std::sqrt(sum);
            } else {
                f.lower[i * n + j] = sum / f.lower[j * n + j];
            }
        }
    }
    return f;
}

/// Solves S x = rhs given the Cholesky factor of S.
inline Vector spd_solve(const SpdFactor& f, const Vector& rhs) {
    const std::size_t n = f.order;
    if (rhs.size() != n) throw DimensionMismatch("spd_solve: rhs length mismatch");
    Vector x(rhs);
    // forward: L y = rhs
    for (std::size_t i = 0; i < n; ++i) {
        double s = x[i];
        for (std::size_t k = 0; k < i; ++k) s -= f.lower[i * n + k] * x[k];
        x[i] = s / f.lower[i * n + i];
    }
    // backward: L^T x = y
    for (std::size_t ii = n; ii-- > 0;) {
        double s = x[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= f.lower[k * n + ii] * x[k];
        x[ii] = s / f.lower[ii * n + ii];
    }
    return x;
}

/// Largest-eigenvalue estimate for a symmetric psd matrix by power iteration.
/// Non-convergence after the cap returns the Gershgorin row bound, which can
/// only overestimate; returns 0 for the zero matrix.
inline double max_eigenvalue(const SymMatrix& s) {
    const std::size_t n = s.order();
    if (n == 0) return 0.0;
    if (s.max_abs() == 0.0) return 0.0;

    Vector v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double lambda = 0.0;
    constexpr int kMaxIter = 10000;
    constexpr double kRelTol = 1e-10;
    for (int it = 0; it < kMaxIter; ++it) {
        Vector w = s.matvec(v);
        const double nw = std::sqrt(norm2_sq(w));
        if (nw == 0.0) break;  // v landed in the null space; restart is pointless for psd
        for (std::size_t i = 0; i < n; ++i) w[i] /= nw;
        const double next = dot(w, s.matvec(w));
        const bool converged = std::abs(next - lambda) <= kRelTol * std::max(1.0, std::abs(next));
        lambda = next;
        v = std::move(w);
        if (converged) return lambda;
    }
    // Gershgorin upper bound
    double bound = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += std::abs(s(i, j));
        bound = std::max(bound, row);
    }
    return bound;
}

}  // namespace miqp
