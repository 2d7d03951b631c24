#include "platefsi/basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "platefsi/kernels.hpp"

namespace platefsi {

namespace {

constexpr double kDomainSlack = 1e-12;

double raw_sine(std::size_t k, double x, int deriv) {
    const double kk = static_cast<double>(k);
    switch (deriv) {
        case 0: return std::sin(kk * x);
        case 1: return kk * std::cos(kk * x);
        case 2: return -kk * kk * std::sin(kk * x);
        default: throw std::invalid_argument("sine eval: deriv must be 0, 1 or 2");
    }
}

}  // namespace

double SineBasis::eval(std::size_t i, double x, int deriv) const {
    if (i >= n_modes) throw std::out_of_range("sine eval: basis index out of range");
    if (x < -kDomainSlack || x > std::numbers::pi + kDomainSlack)
        throw std::domain_error("sine eval: x outside [0, pi]");
    double s = 0.0;
    for (std::size_t k = 0; k < n_modes; ++k)
        s += transfer_inverse(k, i) * raw_sine(k + 1, x, deriv);
    return s;
}

void SineBasis::eval_all(double x, int deriv, std::span<double> out) const {
    if (out.size() != n_modes) throw std::invalid_argument("sine eval_all: bad output size");
    if (x < -kDomainSlack || x > std::numbers::pi + kDomainSlack)
        throw std::domain_error("sine eval: x outside [0, pi]");
    Vector raw(n_modes);
    for (std::size_t k = 0; k < n_modes; ++k) raw[k] = raw_sine(k + 1, x, deriv);
    // Psi_i = sum_k C[k][i] * raw_k  ->  out = C^T raw
    for (std::size_t i = 0; i < n_modes; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < n_modes; ++k) s += transfer_inverse(k, i) * raw[k];
        out[i] = s;
    }
}

SineBasis build_sine_basis(const GridSpec& grid) {
    SineBasis b;
    b.n_modes = grid.n1_bar;
    b.interior_nodes.assign(grid.x_nodes.begin() + 1, grid.x_nodes.end() - 1);

    b.transfer = Matrix(b.n_modes, b.n_modes);
    for (std::size_t r = 0; r < b.n_modes; ++r)
        for (std::size_t c = 0; c < b.n_modes; ++c)
            b.transfer(r, c) = std::sin(static_cast<double>(c + 1) * b.interior_nodes[r]);

    LuFactors f = lu_factor(b.transfer);
    if (f.singular)
        throw std::runtime_error("build_sine_basis: transfer matrix is singular");
    b.transfer_inverse = lu_inverse(f);
    b.condition_estimate = norm1(b.transfer) * inverse_norm1_estimate(f);
    return b;
}

std::size_t LagrangeBasisY::macro_of(double y) const {
    const double h = (hi - lo) / static_cast<double>(m2);
    auto m = static_cast<long>(std::floor((y - lo) / h));
    if (m < 0) m = 0;
    if (m >= static_cast<long>(m2)) m = static_cast<long>(m2) - 1;
    return static_cast<std::size_t>(m);
}

double LagrangeBasisY::eval(std::size_t j, double y, int deriv) const {
    if (j >= n_nodes) throw std::out_of_range("lagrange eval: basis index out of range");
    if (y < lo - kDomainSlack || y > hi + kDomainSlack)
        throw std::domain_error("lagrange eval: y outside [-l, l]");
    const std::size_t m = macro_of(y);
    const std::size_t base = 3 * m;
    if (j < base || j > base + 3) return 0.0;  // unsupported on the active macro-element
    const double t0 = nodes[base], t1 = nodes[base + 1], t2 = nodes[base + 2],
                 t3 = nodes[base + 3];
    const double t[4] = {t0, t1, t2, t3};
    const std::size_t r = j - base;
    double u = 0.0, v = 0.0, w = 0.0;
    {
        std::size_t idx = 0;
        double off[3];
        for (std::size_t s = 0; s < 4; ++s)
            if (s != r) off[idx++] = t[s];
        u = off[0];
        v = off[1];
        w = off[2];
    }
    const double d = (t[r] - u) * (t[r] - v) * (t[r] - w);
    switch (deriv) {
        case 0: return (y - u) * (y - v) * (y - w) / d;
        case 1: return ((y - v) * (y - w) + (y - u) * (y - w) + (y - u) * (y - v)) / d;
        case 2: return 2.0 * (3.0 * y - u - v - w) / d;
        default: throw std::invalid_argument("lagrange eval: deriv must be 0, 1 or 2");
    }
}

void LagrangeBasisY::eval_all(double y, int deriv, std::span<double> out) const {
    if (out.size() != n_nodes) throw std::invalid_argument("lagrange eval_all: bad output size");
    std::fill(out.begin(), out.end(), 0.0);
    const std::size_t base = 3 * macro_of(y);
    for (std::size_t r = 0; r < 4; ++r) out[base + r] = eval(base + r, y, deriv);
}

LagrangeBasisY build_lagrange_basis(const GridSpec& grid) {
    LagrangeBasisY b;
    b.m2 = grid.m2;
    b.n_nodes = grid.n2;
    b.lo = -grid.half_width;
    b.hi = grid.half_width;
    b.nodes = grid.y_nodes;
    return b;
}

std::shared_ptr<const Discretization> build_discretization(const GridSpec& grid) {
    auto d = std::make_shared<Discretization>();
    d->grid = grid;
    d->sine = build_sine_basis(grid);
    d->lagrange = build_lagrange_basis(grid);
    return d;
}

}  // namespace platefsi
