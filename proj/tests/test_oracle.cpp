#include <catch2/catch_amalgamated.hpp>

#include "miqp/oracle.hpp"
#include "test_support.hpp"

using namespace miqp;

TEST_CASE("projected gradient separable example") {
    QpProblem p{SymMatrix::identity(2), {-2.0, 2.0}, 0.0};
    const oracle::PgResult r = oracle::projected_gradient_qp(p, 1e-8);
    CHECK(r.x[0] == Catch::Approx(1.0).margin(1e-7));
    CHECK(r.x[1] == Catch::Approx(0.0).margin(1e-8));
    CHECK(r.value == Catch::Approx(-1.0).margin(1e-9));
}

TEST_CASE("projected gradient stays at the origin for non-negative c") {
    Rng rng(12);
    QpProblem p;
    p.Q = testsupport::random_spd(6, rng);
    p.c = {0.1, 0.2, 0.0, 0.4, 0.5, 0.6};
    const oracle::PgResult r = oracle::projected_gradient_qp(p, 1e-8);
    CHECK(inf_norm(r.x) == 0.0);
    CHECK(r.iterations == 0);
}

TEST_CASE("projected gradient and qp_solve are two agreeing code paths") {
    Rng rng(90);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t m = 1 + static_cast<std::size_t>(rng.uniform(0.0, 11.0));
        QpProblem p;
        p.Q = testsupport::random_spd(m, rng, 0.05, 1.0);
        p.c.resize(m);
        for (double& v : p.c) v = rng.uniform(-1.0, 1.0);
        const oracle::PgResult pg = oracle::projected_gradient_qp(p, 1e-7);
        const QpResult as = qp_solve(p, make_config(p), Vector(m, 0.0));
        REQUIRE(as.status == QpStatus::Optimal);
        CHECK(std::abs(as.value - pg.value) <= 1e-5 * (1.0 + std::abs(pg.value)));
    }
}

TEST_CASE("brute force solves the one-dimensional toy") {
    Instance inst;
    inst.n = 1;
    inst.n1 = 1;
    inst.Q = SymMatrix(1);
    inst.Q.set(0, 0, 1.0);
    inst.c = {-3.0};
    inst.d = 0.0;
    inst.A = Matrix(1, 1);
    inst.A(0, 0) = 1.0;
    inst.b = {10.0};
    const oracle::BruteForceResult r = oracle::brute_force_miqp(inst, {{-5, 10}});
    REQUIRE(r.feasible);
    CHECK(r.value == Catch::Approx(-2.0).margin(1e-12));
}

TEST_CASE("brute force detects infeasibility") {
    Instance inst;
    inst.n = 1;
    inst.n1 = 1;
    inst.Q = SymMatrix(1);
    inst.Q.set(0, 0, 1.0);
    inst.c = {0.0};
    inst.d = 0.0;
    inst.A = Matrix(2, 1);
    inst.A(0, 0) = 1.0;
    inst.A(1, 0) = -1.0;
    inst.b = {-1.0, 0.0};
    const oracle::BruteForceResult r = oracle::brute_force_miqp(inst, {{-5, 5}});
    CHECK_FALSE(r.feasible);
}

TEST_CASE("brute force rejects oversized boxes") {
    Instance inst;
    inst.n = 4;
    inst.n1 = 4;
    inst.Q = SymMatrix::identity(4);
    inst.c = {0.0, 0.0, 0.0, 0.0};
    inst.d = 0.0;
    inst.A = Matrix(0, 4);
    const std::vector<std::pair<long long, long long>> box(4, {-100, 100});
    CHECK_THROWS_AS(oracle::brute_force_miqp(inst, box), BoxTooLarge);
}

TEST_CASE("brute force handles mixed instances through the dual") {
    Instance inst;
    inst.n = 2;
    inst.n1 = 1;
    inst.Q = SymMatrix::identity(2);
    inst.c = {-3.0, -1.0};
    inst.d = 0.0;
    inst.A = Matrix(1, 2);
    inst.A(0, 0) = 1.0;
    inst.A(0, 1) = 1.0;
    inst.b = {10.0};
    const oracle::BruteForceResult r = oracle::brute_force_miqp(inst, {{-4, 6}});
    REQUIRE(r.feasible);
    CHECK(r.value == Catch::Approx(-2.25).margin(1e-6));
}

TEST_CASE("kkt check accepts the binding example at tight tolerance") {
    PrimalRelaxation rel;
    rel.Q = SymMatrix::identity(2);
    rel.c = {0.0, 0.0};
    rel.d = 0.0;
    rel.A = Matrix(1, 2);
    rel.A(0, 0) = 1.0;
    rel.A(0, 1) = 1.0;
    rel.b = {-1.0};
    const oracle::KktReport rep = oracle::kkt_check_primal(rel, {-0.5, -0.5}, {1.0}, 1e-9);
    CHECK(rep.pass);
}

TEST_CASE("kkt check accepts an interior optimum with zero multipliers") {
    Rng rng(3);
    PrimalRelaxation rel;
    rel.Q = testsupport::random_spd(3, rng);
    rel.c = {0.2, -0.4, 0.1};
    rel.d = 0.0;
    const Vector y = spd_solve(cholesky_spd(rel.Q), {-0.1, 0.2, -0.05});
    rel.A = Matrix(1, 3);
    rel.A(0, 0) = 1.0;
    rel.b = {rel.A.row_dot(0, y) + 1.0};  // slack at the minimizer
    const oracle::KktReport rep = oracle::kkt_check_primal(rel, y, {0.0}, 1e-9);
    CHECK(rep.pass);
}

TEST_CASE("kkt check is sensitive to perturbations") {
    PrimalRelaxation rel;
    rel.Q = SymMatrix::identity(2);
    rel.c = {0.0, 0.0};
    rel.d = 0.0;
    rel.A = Matrix(1, 2);
    rel.A(0, 0) = 1.0;
    rel.A(0, 1) = 1.0;
    rel.b = {-1.0};
    const oracle::KktReport rep = oracle::kkt_check_primal(rel, {-0.5 + 1e-3, -0.5}, {1.0}, 1e-6);
    CHECK_FALSE(rep.pass);
    CHECK(rep.stationarity > 1e-6);
}
