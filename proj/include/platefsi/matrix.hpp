#ifndef PLATEFSI_MATRIX_HPP
#define PLATEFSI_MATRIX_HPP

#include <cstddef>
#include <vector>

// Small dense row-major matrix type plus the factorizations the solver
// stack needs (LU with partial pivoting, Cholesky, cyclic Jacobi). Inner
// loops route through the kernels layer.
namespace platefsi {

using Vector = std::vector<double>;

struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    Vector data;  // row-major

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    double* row(std::size_t r) { return data.data() + r * cols; }
    const double* row(std::size_t r) const { return data.data() + r * cols; }

    static Matrix identity(std::size_t n);
};

Matrix transpose(const Matrix& a);
Matrix matmul(const Matrix& a, const Matrix& b);
Vector matvec(const Matrix& a, const Vector& x);
double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);
// a += c * b (same shape)
void add_scaled(Matrix& a, double c, const Matrix& b);

double norm2(const Vector& v);
double max_abs(const Vector& v);

// LU factorization with partial pivoting, kept together with the row
// permutation and the smallest |pivot| seen. A zero pivot marks the
// factorization singular; solves then return non-finite entries.
struct LuFactors {
    Matrix lu;
    std::vector<std::size_t> perm;
    double pivot_min = 0.0;
    bool singular = false;

    std::size_t n() const { return lu.rows; }
};

LuFactors lu_factor(Matrix a);
Vector lu_solve(const LuFactors& f, const Vector& b);
Vector lu_solve_transposed(const LuFactors& f, const Vector& b);
// Solve for several right-hand sides given as columns of B.
Matrix lu_solve_columns(const LuFactors& f, const Matrix& b);
Matrix lu_inverse(const LuFactors& f);

double norm1(const Matrix& a);
// Hager-style estimate of ||A^-1||_1 from the LU factors.
double inverse_norm1_estimate(const LuFactors& f);

// Lower-triangular Cholesky factor of an SPD matrix; throws
// std::runtime_error if a non-positive diagonal shows up.
Matrix cholesky(const Matrix& a);

// Eigenvalues of a symmetric matrix by cyclic Jacobi, ascending.
Vector jacobi_eigenvalues(Matrix a);

// Full spectrum of K v = lambda M v with K symmetric and M SPD,
// via Cholesky reduction and Jacobi. Ascending.
Vector generalized_sym_eigenvalues(const Matrix& k, const Matrix& m);

}  // namespace platefsi

#endif
