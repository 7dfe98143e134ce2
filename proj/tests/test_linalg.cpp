#include <catch2/catch_amalgamated.hpp>

#include "miqp/linalg.hpp"
#include "test_support.hpp"

using namespace miqp;

namespace {

SymMatrix sym2(double a, double b, double c) {
    SymMatrix s(2);
    s.set(0, 0, a);
    s.set(0, 1, b);
    s.set(1, 1, c);
    return s;
}

}  // namespace

TEST_CASE("cholesky of the identity is the identity") {
    const SpdFactor f = cholesky_spd(SymMatrix::identity(2));
    CHECK(f.at(0, 0) == 1.0);
    CHECK(f.at(1, 0) == 0.0);
    CHECK(f.at(1, 1) == 1.0);
}

TEST_CASE("cholesky 2x2 factor") {
    const SpdFactor f = cholesky_spd(sym2(4.0, 2.0, 3.0));
    CHECK(f.at(0, 0) == Catch::Approx(2.0).epsilon(1e-14));
    CHECK(f.at(1, 0) == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(f.at(1, 1) == Catch::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("cholesky rejects indefinite matrices") {
    CHECK_THROWS_AS(cholesky_spd(sym2(1.0, 2.0, 1.0)), NotPositiveDefinite);
}

TEST_CASE("cholesky reconstruction on random SPD matrices") {
    Rng rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0.0, 29.0));
        const SymMatrix s = testsupport::random_spd(n, rng, 0.05, 2.0);
        const SpdFactor f = cholesky_spd(s);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double v = 0.0;
                for (std::size_t k = 0; k <= std::min(i, j); ++k) v += f.at(i, k) * f.at(j, k);
                err = std::max(err, std::abs(v - s(i, j)));
            }
        CHECK(err <= 1e-10 * (1.0 + s.max_abs()));
    }
}

TEST_CASE("spd_solve with identity factor") {
    const SpdFactor f = cholesky_spd(SymMatrix::identity(2));
    const Vector x = spd_solve(f, {3.0, -1.0});
    CHECK(x[0] == 3.0);
    CHECK(x[1] == -1.0);
}

TEST_CASE("spd_solve 2x2 system") {
    const SpdFactor f = cholesky_spd(sym2(4.0, 2.0, 3.0));
    const Vector x = spd_solve(f, {6.0, 5.0});
    CHECK(x[0] == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(x[1] == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("spd_solve of zero rhs is zero") {
    Rng rng(5);
    const SymMatrix s = testsupport::random_spd(6, rng);
    const Vector x = spd_solve(cholesky_spd(s), Vector(6, 0.0));
    CHECK(inf_norm(x) == 0.0);
}

TEST_CASE("spd_solve rejects wrong rhs length") {
    const SpdFactor f = cholesky_spd(SymMatrix::identity(3));
    CHECK_THROWS_AS(spd_solve(f, {1.0, 2.0}), DimensionMismatch);
}

TEST_CASE("solve round-trips random systems") {
    Rng rng(23);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform(0.0, 28.0));
        const SymMatrix s = testsupport::random_spd(n, rng, 0.05, 2.0);
        const SpdFactor f = cholesky_spd(s);
        for (int t = 0; t < 10; ++t) {
            Vector x(n);
            for (double& v : x) v = rng.uniform(-2.0, 2.0);
            const Vector back = spd_solve(f, s.matvec(x));
            for (std::size_t i = 0; i < n; ++i)
                CHECK(testsupport::rel_close(back[i], x[i], 1e-8));
        }
    }
}

TEST_CASE("max_eigenvalue on simple matrices") {
    CHECK(max_eigenvalue(SymMatrix::identity(3)) == Catch::Approx(1.0).epsilon(1e-9));
    SymMatrix d(2);
    d.set(0, 0, 1.0);
    d.set(1, 1, 3.0);
    CHECK(max_eigenvalue(d) == Catch::Approx(3.0).epsilon(1e-9));
    CHECK(max_eigenvalue(SymMatrix(4)) == 0.0);
}

TEST_CASE("max_eigenvalue matches the dense eigendecomposition oracle") {
    Rng rng(47);
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform(0.0, 10.0));
        std::vector<double> ev(n);
        for (double& v : ev) v = rng.uniform(0.0, 1.0);
        const SymMatrix s = testsupport::sym_with_spectrum(ev, rng);
        const double expect = *std::max_element(ev.begin(), ev.end());
        const double got = max_eigenvalue(s);
        CHECK(got >= (1.0 - 1e-6) * expect);
        // the Gershgorin fallback may overestimate, but never by more than the row bound
        double gersh = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < n; ++j) row += std::abs(s(i, j));
            gersh = std::max(gersh, row);
        }
        CHECK(got <= gersh + 1e-12);
    }
}

TEST_CASE("max_eigenvalue never underestimates on constructed spectra") {
    Rng rng(301);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform(0.0, 20.0));
        std::vector<double> ev(n);
        for (double& v : ev) v = rng.uniform(0.0, 5.0);
        const SymMatrix s = testsupport::sym_with_spectrum(ev, rng);
        const double lmax = *std::max_element(ev.begin(), ev.end());
        CHECK(max_eigenvalue(s) >= (1.0 - 1e-6) * lmax);
    }
}
