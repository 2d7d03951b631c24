#ifndef PLATEFSI_ASSEMBLY_HPP
#define PLATEFSI_ASSEMBLY_HPP

#include <cstddef>

#include "platefsi/basis.hpp"
#include "platefsi/matrix.hpp"
#include "platefsi/model.hpp"
#include "platefsi/quadrature.hpp"

namespace platefsi {

// 1D derivative-pairing (Gram) matrices. Convention throughout:
// the ROW index is the test function, the COLUMN index the trial function,
// and the name's two digits are the derivative orders applied to the
// (row, column) functions in that order, e.g. m02(r,c) = int f_r f_c'' .
struct XGrams {
    Matrix m00, m11, m22, m20, m02;
    Vector integral;  // int_0^pi Psi_i dx, from the analytic sine integral
};

struct YGrams {
    Matrix m00, m11, m22, m20, m02, m10;
    Vector integral;            // int_{-l}^{l} Phi_j dy
    Vector at_lo, at_hi;        // Phi_j(-l), Phi_j(+l)
};

struct GramTable {
    XGrams x;
    YGrams y;
    std::size_t n1_bar = 0;
    std::size_t n2 = 0;
};

// Raw sine Grams are diagonal (analytic orthogonality on (0,pi)); the
// normalized matrices follow by congruence with the transfer inverse.
XGrams build_gram_x(const SineBasis& basis);
// Element-wise Gauss quadrature per macro-element (composite over the 3
// subintervals); second derivatives are the broken ones.
YGrams build_gram_y(const LagrangeBasisY& basis, const QuadratureRule& rule);
GramTable build_gram_table(const Discretization& disc, std::size_t quad_order = 6);

// Dense system A X = b over the non-Dirichlet dofs; A is nonsymmetric for
// alpha != 0 but A + alpha*Flow is symmetric.
struct LinearSystem {
    Matrix matrix;
    Vector rhs;
    PlateParameters params;
};

// Test hooks for the verification negative controls. corner_sign = -1
// flips the (1-sigma) bracket; transpose_flow_pairing swaps the
// orientation of the first-derivative y pairing in the flow block.
struct AssemblyHooks {
    int corner_sign = 1;
    bool transpose_flow_pairing = false;
};

// a(.,.) stiffness (sigma-weighted plate form), the u_x mass-like block,
// the flow block and the unit-amplitude load:
//   A(alpha, mu) = K + mu*M - alpha*F,   b = G * b_unit.
struct AssemblyParts {
    Matrix stiffness;   // K
    Matrix mass_ux;     // M = pairing of (u_x, v_x)
    Matrix flow;        // F = pairing of (u_y, v)
    Vector load_unit;   // b for G = 1
};

AssemblyParts build_parts(const GramTable& grams, double sigma,
                          const AssemblyHooks& hooks = {});

LinearSystem assemble_system(const GramTable& grams, const PlateParameters& params,
                             const GridSpec& grid, const AssemblyHooks& hooks = {});

// Brute-force verification oracle: every entry of A and b by direct 2D
// composite Gauss quadrature of the variational integrand, with pointwise
// basis products and no tensor factorization. Small grids only.
LinearSystem assemble_oracle(const Discretization& disc, const PlateParameters& params);

// Global matrix from an n2 x n2 y-block and an n1_bar x n1_bar x-block in
// the x-fastest dof layout: out[(jt,it),(j,i)] = yb(jt,j) * xb(it,i).
Matrix kron_xy(const Matrix& yblock, const Matrix& xblock);
void add_scaled_kron(Matrix& out, double c, const Matrix& yblock, const Matrix& xblock);

// q^T (yblock (x) xblock) q without forming the global matrix.
double tensor_quadratic_form(const Matrix& yblock, const Matrix& xblock, const Vector& q);

}  // namespace platefsi

#endif
