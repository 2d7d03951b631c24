#include "platefsi/model.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace platefsi {

void PlateParameters::validate() const {
    if (!(sigma > 0.0 && sigma < 1.0))
        throw std::invalid_argument("sigma must lie in (0,1), got " + std::to_string(sigma));
    if (!(half_width > 0.0))
        throw std::invalid_argument("half_width must be > 0, got " + std::to_string(half_width));
    if (!(s_stretch >= 0.0))
        throw std::invalid_argument("s_stretch must be >= 0, got " + std::to_string(s_stretch));
    if (!(g_const >= 0.0))
        throw std::invalid_argument("g_const must be >= 0, got " + std::to_string(g_const));
}

GridSpec make_grid(std::size_t n1, std::size_t m2, double half_width) {
    if (n1 < 3)
        throw std::invalid_argument("make_grid: n1 must be >= 3 (need interior x-nodes)");
    if (m2 < 1) throw std::invalid_argument("make_grid: m2 must be >= 1");
    if (!(half_width > 0.0)) throw std::invalid_argument("make_grid: half_width must be > 0");

    GridSpec g;
    g.n1 = n1;
    g.m2 = m2;
    g.half_width = half_width;
    g.n1_bar = n1 - 2;
    g.n2 = 3 * m2 + 1;
    g.dof = g.n1_bar * g.n2;

    g.x_nodes.resize(n1);
    const double hx = std::numbers::pi / static_cast<double>(n1 - 1);
    for (std::size_t i = 0; i < n1; ++i) g.x_nodes[i] = static_cast<double>(i) * hx;
    g.x_nodes.back() = std::numbers::pi;

    g.y_nodes.resize(g.n2);
    const double hy = 2.0 * half_width / static_cast<double>(g.n2 - 1);
    for (std::size_t j = 0; j < g.n2; ++j)
        g.y_nodes[j] = -half_width + static_cast<double>(j) * hy;
    g.y_nodes.back() = half_width;

    return g;
}

std::size_t dof_index(const GridSpec& grid, std::size_t i, std::size_t j) {
    if (i < 1 || i > grid.n1_bar)
        throw std::out_of_range("dof_index: interior x-index i out of range");
    if (j < 1 || j > grid.n2) throw std::out_of_range("dof_index: y-index j out of range");
    return (j - 1) * grid.n1_bar + i;
}

std::pair<std::size_t, std::size_t> node_of_dof(const GridSpec& grid, std::size_t t) {
    if (t < 1 || t > grid.dof) throw std::out_of_range("node_of_dof: flat index out of range");
    const std::size_t z = t - 1;
    return {z % grid.n1_bar + 1, z / grid.n1_bar + 1};
}

}  // namespace platefsi
