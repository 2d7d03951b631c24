#include "platefsi/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "platefsi/kernels.hpp"

namespace platefsi {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols, a.rows);
    for (std::size_t r = 0; r < a.rows; ++r)
        for (std::size_t c = 0; c < a.cols; ++c) t(c, r) = a(r, c);
    return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: shape mismatch");
    Matrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        double* oi = out.row(i);
        const double* ai = a.row(i);
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (ai[k] != 0.0) kernels::axpy(ai[k], b.row(k), oi, b.cols);
        }
    }
    return out;
}

Vector matvec(const Matrix& a, const Vector& x) {
    if (a.cols != x.size()) throw std::invalid_argument("matvec: shape mismatch");
    Vector y(a.rows);
    kernels::gemv(a.data.data(), a.rows, a.cols, x.data(), y.data());
    return y;
}

double max_abs(const Matrix& a) { return kernels::max_abs(a.data.data(), a.data.size()); }

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i)
        m = std::max(m, std::fabs(a.data[i] - b.data[i]));
    return m;
}

void add_scaled(Matrix& a, double c, const Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("add_scaled: shape mismatch");
    kernels::axpy(c, b.data.data(), a.data.data(), a.data.size());
}

double norm2(const Vector& v) {
    return std::sqrt(kernels::dot(v.data(), v.data(), v.size()));
}

double max_abs(const Vector& v) { return kernels::max_abs(v.data(), v.size()); }

LuFactors lu_factor(Matrix a) {
    if (a.rows != a.cols) throw std::invalid_argument("lu_factor: matrix not square");
    const std::size_t n = a.rows;
    LuFactors f;
    f.perm.resize(n);
    std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
    f.pivot_min = std::numeric_limits<double>::infinity();

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::fabs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::fabs(a(i, k));
            if (v > best) { best = v; p = i; }
        }
        if (p != k) {
            std::swap_ranges(a.row(k), a.row(k) + n, a.row(p));
            std::swap(f.perm[k], f.perm[p]);
        }
        const double piv = a(k, k);
        f.pivot_min = std::min(f.pivot_min, std::fabs(piv));
        if (piv == 0.0) { f.singular = true; continue; }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = a(i, k) / piv;
            a(i, k) = m;
            if (m != 0.0) kernels::axpy(-m, a.row(k) + k + 1, a.row(i) + k + 1, n - k - 1);
        }
    }
    if (n == 0) f.pivot_min = 0.0;
    f.lu = std::move(a);
    return f;
}

Vector lu_solve(const LuFactors& f, const Vector& b) {
    const std::size_t n = f.n();
    if (b.size() != n) throw std::invalid_argument("lu_solve: rhs size mismatch");
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = b[f.perm[i]] - kernels::dot(f.lu.row(i), x.data(), i);
    for (std::size_t ii = n; ii-- > 0;) {
        const double s = kernels::dot(f.lu.row(ii) + ii + 1, x.data() + ii + 1, n - ii - 1);
        x[ii] = (x[ii] - s) / f.lu(ii, ii);
    }
    return x;
}

Matrix lu_solve_columns(const LuFactors& f, const Matrix& b) {
    if (b.rows != f.n()) throw std::invalid_argument("lu_solve_columns: shape mismatch");
    Matrix out(b.rows, b.cols);
    Vector col(b.rows);
    for (std::size_t c = 0; c < b.cols; ++c) {
        for (std::size_t r = 0; r < b.rows; ++r) col[r] = b(r, c);
        Vector x = lu_solve(f, col);
        for (std::size_t r = 0; r < b.rows; ++r) out(r, c) = x[r];
    }
    return out;
}

Matrix lu_inverse(const LuFactors& f) {
    return lu_solve_columns(f, Matrix::identity(f.n()));
}

double norm1(const Matrix& a) {
    double best = 0.0;
    for (std::size_t c = 0; c < a.cols; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < a.rows; ++r) s += std::fabs(a(r, c));
        best = std::max(best, s);
    }
    return best;
}

Vector lu_solve_transposed(const LuFactors& f, const Vector& b) {
    // With P A = L U:  A^T x = b  <=>  U^T v = b,  L^T w = v,  x = P^T w.
    const std::size_t n = f.n();
    if (b.size() != n) throw std::invalid_argument("lu_solve_transposed: rhs size mismatch");
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t j = 0; j < i; ++j) s -= f.lu(j, i) * v[j];
        v[i] = s / f.lu(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = v[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= f.lu(j, ii) * v[j];
        v[ii] = s;
    }
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[f.perm[i]] = v[i];
    return x;
}

double inverse_norm1_estimate(const LuFactors& f) {
    // Hager's 1-norm estimator on A^-1 using forward and transpose solves.
    const std::size_t n = f.n();
    if (n == 0 || f.singular) return std::numeric_limits<double>::infinity();
    Vector x(n, 1.0 / static_cast<double>(n));
    double est = 0.0;
    for (int iter = 0; iter < 5; ++iter) {
        Vector y = lu_solve(f, x);
        double y1 = 0.0;
        for (double v : y) y1 += std::fabs(v);
        est = std::max(est, y1);
        Vector xi(n);
        for (std::size_t i = 0; i < n; ++i) xi[i] = y[i] >= 0.0 ? 1.0 : -1.0;
        Vector z = lu_solve_transposed(f, xi);
        std::size_t jmax = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::fabs(z[i]) > std::fabs(z[jmax])) jmax = i;
        if (std::fabs(z[jmax]) <= kernels::dot(z.data(), x.data(), n)) break;
        std::fill(x.begin(), x.end(), 0.0);
        x[jmax] = 1.0;
    }
    return est;
}

Matrix cholesky(const Matrix& a) {
    if (a.rows != a.cols) throw std::invalid_argument("cholesky: matrix not square");
    const std::size_t n = a.rows;
    Matrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a(i, j) - kernels::dot(l.row(i), l.row(j), j);
            if (i == j) {
                if (s <= 0.0) throw std::runtime_error("cholesky: matrix not positive definite");
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return l;
}

Vector jacobi_eigenvalues(Matrix a) {
    if (a.rows != a.cols) throw std::invalid_argument("jacobi: matrix not square");
    const std::size_t n = a.rows;
    const double scale = std::max(max_abs(a), 1e-300);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::fabs(a(p, q)));
        if (off <= 1e-15 * scale) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::fabs(apq) <= 1e-18 * scale) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    Vector ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

Vector generalized_sym_eigenvalues(const Matrix& k, const Matrix& m) {
    if (k.rows != m.rows || k.cols != m.cols || k.rows != k.cols)
        throw std::invalid_argument("generalized eigenvalues: shape mismatch");
    const std::size_t n = k.rows;
    const Matrix l = cholesky(m);
    // B = L^-1 K L^-T, formed by two triangular solves.
    Matrix b = k;
    // forward-substitute L on the left, column by column
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) {
            double s = b(r, c);
            for (std::size_t j = 0; j < r; ++j) s -= l(r, j) * b(j, c);
            b(r, c) = s / l(r, r);
        }
    }
    // then L on the right (i.e. forward-substitute on rows)
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            double s = b(r, c);
            for (std::size_t j = 0; j < c; ++j) s -= b(r, j) * l(c, j);
            b(r, c) = s / l(c, c);
        }
    }
    return jacobi_eigenvalues(std::move(b));
}

}  // namespace platefsi
