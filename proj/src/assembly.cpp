#include "platefsi/assembly.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "platefsi/kernels.hpp"

namespace platefsi {

XGrams build_gram_x(const SineBasis& basis) {
    const std::size_t n = basis.n_modes;
    const Matrix& c = basis.transfer_inverse;
    const double half_pi = 0.5 * std::numbers::pi;

    // Raw diagonal pairings of sin(kx) on (0,pi):
    //   d0 = pi/2, d1 = k^2 pi/2, d2 = k^4 pi/2, and int sin'' sin = -d1.
    Vector d0(n), d1(n), d2(n), dm(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double kk = static_cast<double>(k + 1);
        d0[k] = half_pi;
        d1[k] = kk * kk * half_pi;
        d2[k] = kk * kk * kk * kk * half_pi;
        dm[k] = -kk * kk * half_pi;
    }

    auto congruence = [&](const Vector& d) {
        Matrix out(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t cc = 0; cc < n; ++cc) {
                double s = 0.0;
                for (std::size_t k = 0; k < n; ++k) s += d[k] * (c(k, r) * c(k, cc));
                out(r, cc) = s;
            }
        return out;
    };

    XGrams x;
    x.m00 = congruence(d0);
    x.m11 = congruence(d1);
    x.m22 = congruence(d2);
    x.m20 = congruence(dm);  // same congruence either way: the raw pairing is diagonal
    x.m02 = transpose(x.m20);

    // int_0^pi sin(kx) dx = 2/k for odd k, 0 for even k.
    x.integral.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            if (k % 2 == 0) s += c(k, i) * 2.0 / static_cast<double>(k + 1);
        x.integral[i] = s;
    }
    return x;
}

YGrams build_gram_y(const LagrangeBasisY& basis, const QuadratureRule& rule) {
    const std::size_t n = basis.n_nodes;
    YGrams y;
    y.m00 = Matrix(n, n);
    y.m11 = Matrix(n, n);
    y.m22 = Matrix(n, n);
    y.m20 = Matrix(n, n);
    y.m02 = Matrix(n, n);
    y.m10 = Matrix(n, n);
    y.integral.assign(n, 0.0);

    // Composite rule: each macro-element integrated over its 3 subintervals
    // with the given rule. Quadrature points stay strictly inside elements,
    // so broken derivatives never hit a macro boundary.
    Vector v0(n), v1(n), v2(n);
    for (std::size_t m = 0; m < basis.m2; ++m) {
        const std::size_t base = 3 * m;
        for (std::size_t sub = 0; sub < 3; ++sub) {
            const double a = basis.nodes[base + sub];
            const double b = basis.nodes[base + sub + 1];
            const double mid = 0.5 * (a + b);
            const double half = 0.5 * (b - a);
            for (std::size_t q = 0; q < rule.order(); ++q) {
                const double yy = mid + half * rule.points[q];
                const double w = half * rule.weights[q];
                basis.eval_all(yy, 0, v0);
                basis.eval_all(yy, 1, v1);
                basis.eval_all(yy, 2, v2);
                for (std::size_t r = base; r <= base + 3; ++r) {
                    y.integral[r] += w * v0[r];
                    for (std::size_t c = base; c <= base + 3; ++c) {
                        // Parenthesized so (r, c) and (c, r) round identically.
                        y.m00(r, c) += w * (v0[r] * v0[c]);
                        y.m11(r, c) += w * (v1[r] * v1[c]);
                        y.m22(r, c) += w * (v2[r] * v2[c]);
                        y.m20(r, c) += w * (v2[r] * v0[c]);
                        y.m10(r, c) += w * (v1[r] * v0[c]);
                    }
                }
            }
        }
    }
    y.m02 = transpose(y.m20);

    y.at_lo.assign(n, 0.0);
    y.at_hi.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        y.at_lo[j] = basis.eval(j, basis.lo, 0);
        y.at_hi[j] = basis.eval(j, basis.hi, 0);
    }
    return y;
}

GramTable build_gram_table(const Discretization& disc, std::size_t quad_order) {
    GramTable g;
    g.x = build_gram_x(disc.sine);
    g.y = build_gram_y(disc.lagrange, gauss_rule(quad_order));
    g.n1_bar = disc.grid.n1_bar;
    g.n2 = disc.grid.n2;
    return g;
}

Matrix kron_xy(const Matrix& yblock, const Matrix& xblock) {
    Matrix out(yblock.rows * xblock.rows, yblock.cols * xblock.cols);
    add_scaled_kron(out, 1.0, yblock, xblock);
    return out;
}

void add_scaled_kron(Matrix& out, double c, const Matrix& yblock, const Matrix& xblock) {
    const std::size_t nb = xblock.rows;
    if (out.rows != yblock.rows * nb || out.cols != yblock.cols * xblock.cols)
        throw std::invalid_argument("add_scaled_kron: shape mismatch");
    for (std::size_t jt = 0; jt < yblock.rows; ++jt) {
        for (std::size_t j = 0; j < yblock.cols; ++j) {
            const double cy = c * yblock(jt, j);
            if (cy == 0.0) continue;
            for (std::size_t it = 0; it < nb; ++it) {
                double* dst = out.row(jt * nb + it) + j * xblock.cols;
                kernels::axpy(cy, xblock.row(it), dst, xblock.cols);
            }
        }
    }
}

double tensor_quadratic_form(const Matrix& yblock, const Matrix& xblock, const Vector& q) {
    const std::size_t nb = xblock.rows;
    const std::size_t n2 = yblock.rows;
    if (q.size() != nb * n2)
        throw std::invalid_argument("tensor_quadratic_form: size mismatch");
    // q^T (Y (x) X) q = sum_{jt,j} Y(jt,j) * (q_jt . X q_j) with q_j the
    // x-slice at y-node j.
    Matrix xq(nb, n2);
    Vector tmp(nb);
    for (std::size_t j = 0; j < n2; ++j) {
        kernels::gemv(xblock.data.data(), nb, nb, q.data() + j * nb, tmp.data());
        for (std::size_t i = 0; i < nb; ++i) xq(i, j) = tmp[i];
    }
    double total = 0.0;
    for (std::size_t jt = 0; jt < n2; ++jt) {
        const double* qjt = q.data() + jt * nb;
        for (std::size_t j = 0; j < n2; ++j) {
            const double yv = yblock(jt, j);
            if (yv == 0.0) continue;
            double s = 0.0;
            for (std::size_t i = 0; i < nb; ++i) s += qjt[i] * xq(i, j);
            total += yv * s;
        }
    }
    return total;
}

AssemblyParts build_parts(const GramTable& grams, double sigma, const AssemblyHooks& hooks) {
    const std::size_t dof = grams.n1_bar * grams.n2;
    AssemblyParts p;
    p.stiffness = Matrix(dof, dof);
    p.mass_ux = Matrix(dof, dof);
    p.flow = Matrix(dof, dof);

    // a(U,V) split as the full Laplacian pairing plus the (1-sigma) corner
    // bracket [2 Uxy Vxy - Uxx Vyy - Uyy Vxx]:
    //   int dU dV  = X22*Y00 + X00*Y22 + (Uxx,Vyy) + (Uyy,Vxx) cross blocks.
    add_scaled_kron(p.stiffness, 1.0, grams.y.m00, grams.x.m22);
    add_scaled_kron(p.stiffness, 1.0, grams.y.m22, grams.x.m00);
    add_scaled_kron(p.stiffness, 1.0, grams.y.m20, grams.x.m02);  // (Uxx, Vyy)
    add_scaled_kron(p.stiffness, 1.0, grams.y.m02, grams.x.m20);  // (Uyy, Vxx)
    const double cs = static_cast<double>(hooks.corner_sign);
    const double one_minus_sigma = 1.0 - sigma;
    add_scaled_kron(p.stiffness, cs * 2.0 * one_minus_sigma, grams.y.m11, grams.x.m11);
    add_scaled_kron(p.stiffness, -cs * one_minus_sigma, grams.y.m20, grams.x.m02);
    add_scaled_kron(p.stiffness, -cs * one_minus_sigma, grams.y.m02, grams.x.m20);

    add_scaled_kron(p.mass_ux, 1.0, grams.y.m00, grams.x.m11);

    // Flow pairing (U_y, V): derivative sits on the trial function, i.e.
    // the transposed first-derivative y block in the (test,trial) layout.
    const Matrix y01 = transpose(grams.y.m10);
    add_scaled_kron(p.flow, 1.0, hooks.transpose_flow_pairing ? grams.y.m10 : y01,
                    grams.x.m00);

    p.load_unit.assign(dof, 0.0);
    for (std::size_t j = 0; j < grams.n2; ++j)
        for (std::size_t i = 0; i < grams.n1_bar; ++i)
            p.load_unit[j * grams.n1_bar + i] = grams.x.integral[i] * grams.y.integral[j];
    return p;
}

LinearSystem assemble_system(const GramTable& grams, const PlateParameters& params,
                             const GridSpec& grid, const AssemblyHooks& hooks) {
    if (grams.n1_bar != grid.n1_bar || grams.n2 != grid.n2)
        throw std::invalid_argument("assemble_system: gram table does not match grid");
    params.validate();
    AssemblyParts p = build_parts(grams, params.sigma, hooks);
    LinearSystem sys;
    sys.matrix = std::move(p.stiffness);
    add_scaled(sys.matrix, params.mu, p.mass_ux);
    add_scaled(sys.matrix, -params.alpha, p.flow);
    sys.rhs = std::move(p.load_unit);
    kernels::scale(params.g_const, sys.rhs.data(), sys.rhs.size());
    sys.params = params;
    return sys;
}

LinearSystem assemble_oracle(const Discretization& disc, const PlateParameters& params) {
    params.validate();
    const GridSpec& grid = disc.grid;
    const std::size_t nb = grid.n1_bar;
    const std::size_t n2 = grid.n2;
    const std::size_t dof = nb * n2;
    const double sigma = params.sigma;

    // Composite Gauss tables. x panels resolve the fastest sine mode
    // (>= 4 panels per mode); y panels follow the macro-element subintervals.
    const std::size_t x_panels = std::max<std::size_t>(8, 4 * nb);
    const QuadratureRule rx = gauss_rule(10);
    const QuadratureRule ry = gauss_rule(10);

    struct PointTable {
        Vector coord, weight;
        // vals[deriv] is (#points) x (#functions)
        Matrix vals[3];
    };

    PointTable tx;
    {
        const auto panels = uniform_panels(0.0, std::numbers::pi, x_panels);
        const std::size_t np = panels.size() * rx.order();
        tx.coord.reserve(np);
        tx.weight.reserve(np);
        for (int d = 0; d < 3; ++d) tx.vals[d] = Matrix(np, nb);
        std::size_t row = 0;
        Vector buf(nb);
        for (const auto& [a, b] : panels) {
            const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (std::size_t q = 0; q < rx.order(); ++q, ++row) {
                const double xx = mid + half * rx.points[q];
                tx.coord.push_back(xx);
                tx.weight.push_back(half * rx.weights[q]);
                for (int d = 0; d < 3; ++d) {
                    disc.sine.eval_all(xx, d, buf);
                    for (std::size_t i = 0; i < nb; ++i) tx.vals[d](row, i) = buf[i];
                }
            }
        }
    }

    PointTable ty;
    {
        const std::size_t np = 3 * grid.m2 * ry.order();
        ty.coord.reserve(np);
        ty.weight.reserve(np);
        for (int d = 0; d < 3; ++d) ty.vals[d] = Matrix(np, n2);
        std::size_t row = 0;
        Vector buf(n2);
        for (std::size_t m = 0; m < grid.m2; ++m) {
            for (std::size_t sub = 0; sub < 3; ++sub) {
                const double a = grid.y_nodes[3 * m + sub];
                const double b = grid.y_nodes[3 * m + sub + 1];
                const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
                for (std::size_t q = 0; q < ry.order(); ++q, ++row) {
                    const double yy = mid + half * ry.points[q];
                    ty.coord.push_back(yy);
                    ty.weight.push_back(half * ry.weights[q]);
                    for (int d = 0; d < 3; ++d) {
                        disc.lagrange.eval_all(yy, d, buf);
                        for (std::size_t j = 0; j < n2; ++j) ty.vals[d](row, j) = buf[j];
                    }
                }
            }
        }
    }

    LinearSystem sys;
    sys.matrix = Matrix(dof, dof);
    sys.rhs.assign(dof, 0.0);
    sys.params = params;

    const std::size_t nqx = tx.coord.size();
    const std::size_t nqy = ty.coord.size();

    for (std::size_t jt = 0; jt < n2; ++jt) {
        for (std::size_t it = 0; it < nb; ++it) {
            const std::size_t s = jt * nb + it;
            for (std::size_t j = 0; j < n2; ++j) {
                for (std::size_t i = 0; i < nb; ++i) {
                    const std::size_t t = j * nb + i;
                    double acc = 0.0;
                    for (std::size_t qy = 0; qy < nqy; ++qy) {
                        const double pj0 = ty.vals[0](qy, j), pj1 = ty.vals[1](qy, j),
                                     pj2 = ty.vals[2](qy, j);
                        const double pt0 = ty.vals[0](qy, jt), pt1 = ty.vals[1](qy, jt),
                                     pt2 = ty.vals[2](qy, jt);
                        if (pj0 == 0.0 && pj1 == 0.0 && pj2 == 0.0) continue;
                        if (pt0 == 0.0 && pt1 == 0.0 && pt2 == 0.0) continue;
                        const double wy = ty.weight[qy];
                        double inner = 0.0;
                        for (std::size_t qx = 0; qx < nqx; ++qx) {
                            const double si0 = tx.vals[0](qx, i), si1 = tx.vals[1](qx, i),
                                         si2 = tx.vals[2](qx, i);
                            const double st0 = tx.vals[0](qx, it), st1 = tx.vals[1](qx, it),
                                         st2 = tx.vals[2](qx, it);
                            // trial U = Psi_i Phi_j, test V = Psi_it Phi_jt
                            const double uxx = si2 * pj0, uyy = si0 * pj2, uxy = si1 * pj1;
                            const double vxx = st2 * pt0, vyy = st0 * pt2, vxy = st1 * pt1;
                            const double ux = si1 * pj0, uy = si0 * pj1;
                            const double vx = st1 * pt0, v = st0 * pt0;
                            double val = (uxx + uyy) * (vxx + vyy) +
                                         (1.0 - sigma) * (2.0 * uxy * vxy - uxx * vyy - uyy * vxx);
                            val += params.mu * ux * vx - params.alpha * uy * v;
                            inner += tx.weight[qx] * val;
                        }
                        acc += wy * inner;
                    }
                    sys.matrix(s, t) = acc;
                }
            }
            double bacc = 0.0;
            for (std::size_t qy = 0; qy < nqy; ++qy) {
                const double pt0 = ty.vals[0](qy, jt);
                if (pt0 == 0.0) continue;
                double inner = 0.0;
                for (std::size_t qx = 0; qx < nqx; ++qx)
                    inner += tx.weight[qx] * tx.vals[0](qx, it);
                bacc += ty.weight[qy] * pt0 * inner;
            }
            sys.rhs[s] = params.g_const * bacc;
        }
    }
    return sys;
}

}  // namespace platefsi
