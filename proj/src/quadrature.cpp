#include "platefsi/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace platefsi {

namespace {

// Legendre P_n and P_n' at x via the three-term recurrence.
std::pair<double, double> legendre(std::size_t n, double x) {
    double p0 = 1.0, p1 = x;
    if (n == 0) return {1.0, 0.0};
    for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
    }
    const double dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

}  // namespace

QuadratureRule gauss_rule(std::size_t n) {
    if (n < 1 || n > 16) throw std::invalid_argument("gauss_rule: n must be in 1..16");
    QuadratureRule rule;
    rule.points.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        // Chebyshev-like initial guess for the i-th positive root.
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 64; ++it) {
            const auto [p, d] = legendre(n, x);
            dp = d;
            const double dx = p / d;
            x -= dx;
            if (std::fabs(dx) < 1e-16) {
                dp = legendre(n, x).second;
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.points[i] = -x;
        rule.weights[i] = w;
        rule.points[n - 1 - i] = x;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.points[n / 2] = 0.0;  // exact midpoint for odd rules
    return rule;
}

double integrate_elementwise(const std::function<double(double)>& f,
                             const std::vector<Interval>& elements,
                             const QuadratureRule& rule) {
    if (elements.empty())
        throw std::invalid_argument("integrate_elementwise: empty element list");
    double total = 0.0;
    for (const auto& [a, b] : elements) {
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        double s = 0.0;
        for (std::size_t q = 0; q < rule.order(); ++q)
            s += rule.weights[q] * f(mid + half * rule.points[q]);
        total += half * s;
    }
    return total;
}

std::vector<Interval> uniform_panels(double a, double b, std::size_t count) {
    if (count == 0) throw std::invalid_argument("uniform_panels: count must be positive");
    std::vector<Interval> panels;
    panels.reserve(count);
    const double h = (b - a) / static_cast<double>(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double lo = a + static_cast<double>(k) * h;
        const double hi = (k + 1 == count) ? b : a + static_cast<double>(k + 1) * h;
        panels.emplace_back(lo, hi);
    }
    return panels;
}

}  // namespace platefsi
