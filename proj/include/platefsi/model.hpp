#ifndef PLATEFSI_MODEL_HPP
#define PLATEFSI_MODEL_HPP

#include <cstddef>
#include <memory>
#include <vector>

#include "platefsi/matrix.hpp"

namespace platefsi {

// Physical and model constants of the hinged-free plate problem on
// (0,pi) x (-l,l). sigma is the Poisson ratio, mu the linearized prestress
// coefficient, alpha the flow-speed parameter, g_const the constant forcing
// amplitude, p_prestress/s_stretch the nonlinear problem's P and S.
struct PlateParameters {
    double sigma = 0.2;
    double mu = -0.5;
    double alpha = 0.0;
    double g_const = 1.0;
    double p_prestress = 1.0;
    double s_stretch = 1.0;
    double half_width = 0.2;

    // Throws std::invalid_argument on out-of-range values
    // (sigma outside (0,1), half_width <= 0, s_stretch < 0, g_const < 0).
    void validate() const;
};

// Tensor grid: n1 x-nodes uniform on [0,pi] (the two boundary nodes carry
// no dofs), m2 y macro-elements of 3 subintervals each, n2 = 3*m2+1 y-nodes
// uniform on [-l,l]. Dof layout is x-fastest: t = (j-1)*n1_bar + i with
// interior x-index i=1..n1_bar and y-index j=1..n2 (1-based).
struct GridSpec {
    std::size_t n1 = 0;
    std::size_t m2 = 0;
    double half_width = 0.0;

    std::size_t n1_bar = 0;
    std::size_t n2 = 0;
    std::size_t dof = 0;
    Vector x_nodes;  // n1 values, 0..pi
    Vector y_nodes;  // n2 values, -l..l
};

GridSpec make_grid(std::size_t n1, std::size_t m2, double half_width);

// 1-based nodal indexing; throws std::out_of_range on invalid (i, j).
std::size_t dof_index(const GridSpec& grid, std::size_t i, std::size_t j);
// Inverse of dof_index: flat index t (1-based) -> (i, j).
std::pair<std::size_t, std::size_t> node_of_dof(const GridSpec& grid, std::size_t t);

struct SineBasis;
struct LagrangeBasisY;

// Grid plus the two 1D basis families built on it. Immutable after
// construction; shared read-only by fields, assembly and analysis.
struct Discretization;

}  // namespace platefsi

#endif
