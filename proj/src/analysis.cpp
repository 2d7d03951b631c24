#include "platefsi/analysis.hpp"

#include <cmath>
#include <cstdio>

#include "platefsi/kernels.hpp"

namespace platefsi {

namespace {

Matrix basis_table_x(const SineBasis& sine, const Vector& xs, int dx) {
    Matrix out(xs.size(), sine.n_modes);
    for (std::size_t r = 0; r < xs.size(); ++r) {
        sine.eval_all(xs[r], dx, {out.row(r), sine.n_modes});
    }
    return out;
}

Matrix basis_table_y(const LagrangeBasisY& lag, const Vector& ys, int dy) {
    Matrix out(ys.size(), lag.n_nodes);
    for (std::size_t r = 0; r < ys.size(); ++r) {
        lag.eval_all(ys[r], dy, {out.row(r), lag.n_nodes});
    }
    return out;
}

Matrix coeffs_as_matrix(const Field& field) {
    const GridSpec& grid = field.disc->grid;
    if (field.coeffs.size() != grid.dof) {
        throw std::invalid_argument("field coefficient count does not match grid");
    }
    Matrix q(grid.n2, grid.n1_bar);
    std::copy(field.coeffs.begin(), field.coeffs.end(), q.data.begin());
    return q;
}

}  // namespace

double evaluate_field(const Field& field, double x, double y, int dx, int dy) {
    const Discretization& disc = *field.disc;
    const GridSpec& grid = disc.grid;
    Vector px(grid.n1_bar), py(grid.n2);
    disc.sine.eval_all(x, dx, px);
    disc.lagrange.eval_all(y, dy, py);
    double acc = 0.0;
    for (std::size_t j = 0; j < grid.n2; ++j) {
        if (py[j] == 0.0) continue;
        acc += py[j] * kernels::dot(field.coeffs.data() + j * grid.n1_bar,
                                    px.data(), grid.n1_bar);
    }
    return acc;
}

Matrix evaluate_lattice(const Field& field, const Vector& xs, const Vector& ys,
                        int dx, int dy) {
    const Discretization& disc = *field.disc;
    Matrix px = basis_table_x(disc.sine, xs, dx);   // nx x n1_bar
    Matrix py = basis_table_y(disc.lagrange, ys, dy);  // ny x n2
    Matrix q = coeffs_as_matrix(field);             // n2 x n1_bar
    return matmul(matmul(py, q), transpose(px));    // ny x nx
}

double l2_norm(const Field& field, const GramTable& grams) {
    return std::sqrt(std::max(0.0,
        tensor_quadratic_form(grams.y.m00, grams.x.m00, field.coeffs)));
}

double l2_norm_ux(const Field& field, const GramTable& grams) {
    return std::sqrt(std::max(0.0,
        tensor_quadratic_form(grams.y.m00, grams.x.m11, field.coeffs)));
}

double h2_broken_seminorm(const Field& field, const GramTable& grams) {
    const Vector& q = field.coeffs;
    double s = tensor_quadratic_form(grams.y.m00, grams.x.m22, q) +
               2.0 * tensor_quadratic_form(grams.y.m11, grams.x.m11, q) +
               tensor_quadratic_form(grams.y.m22, grams.x.m00, q);
    return std::sqrt(std::max(0.0, s));
}

double energy_norm_sq(const Field& field, const GramTable& grams, double sigma) {
    AssemblyParts parts = build_parts(grams, sigma);
    Vector kq = matvec(parts.stiffness, field.coeffs);
    return kernels::dot(field.coeffs.data(), kq.data(), field.coeffs.size());
}

ModalityReport classify_modality(const Field& field, std::size_t n_samples,
                                 double rel_threshold) {
    if (n_samples == 0) {
        throw std::invalid_argument("classify_modality: n_samples must be positive");
    }
    const double pi = std::acos(-1.0);
    Vector xs(n_samples);
    for (std::size_t s = 0; s < n_samples; ++s) {
        xs[s] = pi * static_cast<double>(s + 1) / static_cast<double>(n_samples + 1);
    }
    Vector ys{0.0};
    Matrix mid = evaluate_lattice(field, xs, ys);

    ModalityReport report;
    report.amplitude = kernels::max_abs(mid.data.data(), mid.data.size());
    if (report.amplitude < 1e-14) {
        report.trivial = true;
        return report;
    }
    const double band = rel_threshold * report.amplitude;
    int prev = 0;
    for (std::size_t s = 0; s < n_samples; ++s) {
        const double v = mid(0, s);
        if (std::abs(v) < band) continue;
        const int sign = v > 0.0 ? 1 : -1;
        report.sign_profile.push_back(sign);
        if (prev != 0 && sign != prev) ++report.zero_count;
        prev = sign;
    }
    report.modality_m = report.zero_count + 1;
    return report;
}

LiftResult lift_to_nonlinear(const Field& linear_solution, double g_linear,
                             double mu, double p_load, double s_stiff,
                             const GramTable& grams) {
    if (!(s_stiff > 0.0)) {
        throw HypothesisViolated("lift requires S > 0");
    }
    if (!(mu + p_load > 0.0)) {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "lift requires mu + P > 0, got mu = %.17g, P = %.17g",
                      mu, p_load);
        throw HypothesisViolated(buf);
    }
    const double norm_ux = l2_norm_ux(linear_solution, grams);
    if (norm_ux < 1e-14) {
        throw TrivialInput("lift input has vanishing ||U_x||");
    }

    LiftResult result;
    result.scale = std::sqrt((mu + p_load) / s_stiff) / norm_ux;
    result.implied_g_scale = 1.0 / result.scale;
    result.g = result.scale * g_linear;
    result.lifted.disc = linear_solution.disc;
    result.lifted.coeffs = linear_solution.coeffs;
    kernels::scale(result.scale, result.lifted.coeffs.data(),
                   result.lifted.coeffs.size());
    const double ux = l2_norm_ux(result.lifted, grams);
    result.bracket_value = s_stiff * ux * ux - p_load;
    return result;
}

double nonlinear_residual(const Field& u, double g, double sigma, double alpha,
                          double p_load, double s_stiff, const GramTable& grams) {
    AssemblyParts parts = build_parts(grams, sigma);
    const Vector& q = u.coeffs;
    const std::size_t n = q.size();

    Vector kq = matvec(parts.stiffness, q);
    Vector mq = matvec(parts.mass_ux, q);
    Vector fq = matvec(parts.flow, q);
    const double ux_sq = kernels::dot(q.data(), mq.data(), n);
    const double bracket = s_stiff * ux_sq - p_load;

    Vector r = kq;
    kernels::axpy(bracket, mq.data(), r.data(), n);
    kernels::axpy(-alpha, fq.data(), r.data(), n);
    kernels::axpy(-g, parts.load_unit.data(), r.data(), n);

    double denom = kernels::max_abs(kq.data(), n);
    denom = std::max(denom, std::abs(bracket) * kernels::max_abs(mq.data(), n));
    denom = std::max(denom, std::abs(alpha) * kernels::max_abs(fq.data(), n));
    denom = std::max(denom, std::abs(g) * kernels::max_abs(parts.load_unit.data(), n));
    denom = std::max(denom, 1e-300);
    return kernels::max_abs(r.data(), n) / denom;
}

}  // namespace platefsi
