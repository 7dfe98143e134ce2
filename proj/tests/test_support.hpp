#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "miqp/instance_io.hpp"
#include "miqp/linalg.hpp"

// Shared helpers for the test suites. The eigendecomposition here is the
// oracle for the power-iteration estimate and for spectrum-controlled random
// matrices; it must stay independent of the production numerics.

namespace testsupport {

inline bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

/// All eigenvalues of a symmetric matrix by the cyclic Jacobi method,
/// descending order.
inline std::vector<double> sym_eigenvalues(const miqp::SymMatrix& s) {
    const std::size_t n = s.order();
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = s(i, j);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
        if (off <= 1e-26 * static_cast<double>(n * n)) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - sn * akq;
                    a[k * n + q] = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - sn * aqk;
                    a[q * n + k] = sn * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a[i * n + i];
    std::sort(ev.rbegin(), ev.rend());
    return ev;
}

/// Random orthonormal rows via Gram-Schmidt on U[-1,1] draws.
inline std::vector<miqp::Vector> random_orthonormal(std::size_t n, miqp::Rng& rng) {
    std::vector<miqp::Vector> basis;
    while (basis.size() < n) {
        miqp::Vector v(n);
        for (double& x : v) x = rng.uniform(-1.0, 1.0);
        for (const miqp::Vector& u : basis) {
            const double proj = miqp::dot(u, v);
            for (std::size_t j = 0; j < n; ++j) v[j] -= proj * u[j];
        }
        const double norm = std::sqrt(miqp::norm2_sq(v));
        if (norm < 1e-8) continue;
        for (double& x : v) x /= norm;
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Symmetric matrix with the given spectrum: V' diag(ev) V for a random
/// orthonormal V.
inline miqp::SymMatrix sym_with_spectrum(const std::vector<double>& ev, miqp::Rng& rng) {
    const std::size_t n = ev.size();
    const auto basis = random_orthonormal(n, rng);
    miqp::SymMatrix s(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double v = 0.0;
            for (std::size_t k = 0; k < n; ++k) v += ev[k] * basis[k][i] * basis[k][j];
            s.set(i, j, v);
        }
    return s;
}

/// Random SPD matrix with eigenvalues in [lo, hi].
inline miqp::SymMatrix random_spd(std::size_t n, miqp::Rng& rng, double lo = 0.1,
                                  double hi = 1.0) {
    std::vector<double> ev(n);
    for (double& v : ev) v = rng.uniform(lo, hi);
    return sym_with_spectrum(ev, rng);
}

}  // namespace testsupport
