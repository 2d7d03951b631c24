#ifndef PLATEFSI_BASIS_HPP
#define PLATEFSI_BASIS_HPP

#include <cstddef>
#include <memory>
#include <span>

#include "platefsi/matrix.hpp"
#include "platefsi/model.hpp"

namespace platefsi {

// Interpolatory sine basis in x. Raw family is sin(k x), k = 1..n_modes;
// the transfer matrix T[r][c] = sin((c+1) * x_{r+2}) maps raw coefficients
// to interior-node values, and column i of transfer_inverse holds the raw
// coefficients of the normalized basis function Psi_i with
// Psi_i(x_{k+2}) = delta_{ik}. Every Psi_i and Psi_i'' vanishes at 0 and pi.
struct SineBasis {
    std::size_t n_modes = 0;
    Vector interior_nodes;
    Matrix transfer;
    Matrix transfer_inverse;
    double condition_estimate = 0.0;  // 1-norm estimate of cond(T)

    // d^deriv/dx^deriv Psi_i(x), deriv in 0..2, i in 0..n_modes-1.
    double eval(std::size_t i, double x, int deriv) const;
    // All basis functions at once; out must have n_modes entries.
    void eval_all(double x, int deriv, std::span<double> out) const;
};

SineBasis build_sine_basis(const GridSpec& grid);

// C^0 piecewise-cubic Lagrange basis in y on m2 macro-elements of 4
// consecutive nodes. Kronecker at the nodes, partition of unity, support
// on at most two adjacent macro-elements. Derivatives are element-wise
// (broken) at macro-element boundaries; evaluation there uses the element
// to the right (the left one at y = +l).
struct LagrangeBasisY {
    std::size_t m2 = 0;
    std::size_t n_nodes = 0;  // 3*m2 + 1
    double lo = 0.0, hi = 0.0;
    Vector nodes;

    std::size_t macro_of(double y) const;
    double eval(std::size_t j, double y, int deriv) const;
    // Fills all n_nodes entries (at most 4 nonzero).
    void eval_all(double y, int deriv, std::span<double> out) const;
};

LagrangeBasisY build_lagrange_basis(const GridSpec& grid);

struct Discretization {
    GridSpec grid;
    SineBasis sine;
    LagrangeBasisY lagrange;
};

std::shared_ptr<const Discretization> build_discretization(const GridSpec& grid);

}  // namespace platefsi

#endif
