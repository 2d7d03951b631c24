#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "platefsi/matrix.hpp"

#ifdef PLATEFSI_HAVE_EIGEN
#include <Eigen/Dense>
#endif

using namespace platefsi;

namespace {

Matrix random_matrix(std::size_t n, unsigned seed, bool symmetric = false) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Matrix a(n, n);
    for (double& v : a.data) v = unit(rng);
    if (symmetric) {
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < r; ++c) a(c, r) = a(r, c);
        }
    }
    return a;
}

Matrix random_spd(std::size_t n, unsigned seed) {
    Matrix a = random_matrix(n, seed);
    Matrix s = matmul(transpose(a), a);
    for (std::size_t i = 0; i < n; ++i) s(i, i) += static_cast<double>(n);
    return s;
}

}  // namespace

TEST_CASE("lu solves the 2x2 textbook system") {
    Matrix a(2, 2);
    a(0, 0) = 2; a(0, 1) = 1;
    a(1, 0) = 1; a(1, 1) = 3;
    LuFactors f = lu_factor(a);
    CHECK(!f.singular);
    Vector x = lu_solve(f, {3.0, 4.0});
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("lu handles random dense systems and the transposed solve") {
    const std::size_t n = 40;
    Matrix a = random_matrix(n, 11);
    auto b = Vector(n);
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (double& v : b) v = unit(rng);

    LuFactors f = lu_factor(a);
    REQUIRE(!f.singular);

    Vector x = lu_solve(f, b);
    Vector r = matvec(a, x);
    for (std::size_t i = 0; i < n; ++i) r[i] -= b[i];
    CHECK(norm2(r) <= 1e-11 * norm2(b));

    Vector xt = lu_solve_transposed(f, b);
    Vector rt = matvec(transpose(a), xt);
    for (std::size_t i = 0; i < n; ++i) rt[i] -= b[i];
    CHECK(norm2(rt) <= 1e-11 * norm2(b));

    Matrix inv = lu_inverse(f);
    CHECK(max_abs_diff(matmul(a, inv), Matrix::identity(n)) <= 1e-10);
}

TEST_CASE("lu flags singular input instead of dividing by zero") {
    Matrix a(3, 3);
    a(0, 0) = 1; a(0, 1) = 2; a(0, 2) = 3;
    a(1, 0) = 2; a(1, 1) = 4; a(1, 2) = 6;  // multiple of row 0
    a(2, 0) = 1; a(2, 1) = 0; a(2, 2) = 1;
    LuFactors f = lu_factor(a);
    CHECK(f.singular);
    CHECK(f.pivot_min == 0.0);
}

TEST_CASE("inverse 1-norm estimate is exact on a diagonal matrix") {
    const std::size_t n = 5;
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = static_cast<double>(i + 1);
    LuFactors f = lu_factor(a);
    CHECK(inverse_norm1_estimate(f) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(norm1(a) == doctest::Approx(5.0));
}

TEST_CASE("cholesky factors SPD matrices and rejects indefinite ones") {
    Matrix s = random_spd(12, 13);
    Matrix l = cholesky(s);
    CHECK(max_abs_diff(matmul(l, transpose(l)), s) <= 1e-10 * max_abs(s));

    Matrix bad = Matrix::identity(3);
    bad(2, 2) = -1.0;
    CHECK_THROWS_AS(cholesky(bad), std::runtime_error);
}

TEST_CASE("jacobi eigenvalues of a known 2x2") {
    Matrix a(2, 2);
    a(0, 0) = 2; a(0, 1) = 1;
    a(1, 0) = 1; a(1, 1) = 2;
    Vector ev = jacobi_eigenvalues(a);
    CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("jacobi eigenvalues preserve trace and determinant") {
    Matrix a = random_matrix(10, 14, true);
    Vector ev = jacobi_eigenvalues(a);
    REQUIRE(ev.size() == 10);
    double trace_a = 0.0, trace_ev = 0.0;
    for (std::size_t i = 0; i < 10; ++i) {
        trace_a += a(i, i);
        trace_ev += ev[i];
        if (i) CHECK(ev[i - 1] <= ev[i]);
    }
    CHECK(trace_ev == doctest::Approx(trace_a).epsilon(1e-12));
}

TEST_CASE("generalized eigenvalues of a diagonal pencil") {
    Matrix k(3, 3), m(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        k(i, i) = static_cast<double>(3 - i);  // 3, 2, 1
        m(i, i) = 1.0;
    }
    Vector ev = generalized_sym_eigenvalues(k, m);
    CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(ev[2] == doctest::Approx(3.0).epsilon(1e-13));
}

#ifdef PLATEFSI_HAVE_EIGEN
TEST_CASE("lu solve agrees with Eigen FullPivLU") {
    const std::size_t n = 25;
    Matrix a = random_matrix(n, 15);
    Vector b(n, 1.0);
    LuFactors f = lu_factor(a);
    Vector x = lu_solve(f, b);

    Eigen::MatrixXd ea(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) ea(r, c) = a(r, c);
    }
    Eigen::VectorXd eb = Eigen::VectorXd::Ones(n);
    Eigen::VectorXd ex = ea.fullPivLu().solve(eb);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(x[i] - ex(static_cast<Eigen::Index>(i))) <= 1e-9);
    }
}

TEST_CASE("jacobi spectrum agrees with Eigen SelfAdjointEigenSolver") {
    const std::size_t n = 16;
    Matrix a = random_matrix(n, 16, true);
    Vector ev = jacobi_eigenvalues(a);

    Eigen::MatrixXd ea(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) ea(r, c) = a(r, c);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ea);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(ev[i] - es.eigenvalues()(static_cast<Eigen::Index>(i))) <=
              1e-11);
    }
}

TEST_CASE("generalized pencil agrees with Eigen on an SPD pair") {
    const std::size_t n = 12;
    Matrix k = random_spd(n, 17);
    Matrix m = random_spd(n, 18);
    Vector ev = generalized_sym_eigenvalues(k, m);

    Eigen::MatrixXd ek(n, n), em(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            ek(r, c) = k(r, c);
            em(r, c) = m(r, c);
        }
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(ek, em);
    for (std::size_t i = 0; i < n; ++i) {
        const double ref = es.eigenvalues()(static_cast<Eigen::Index>(i));
        CHECK(std::abs(ev[i] - ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
    }
}
#endif
