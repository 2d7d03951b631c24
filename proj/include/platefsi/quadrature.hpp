#ifndef PLATEFSI_QUADRATURE_HPP
#define PLATEFSI_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace platefsi {

// Gauss-Legendre rule on [-1,1]: exact for polynomials of degree <= 2n-1,
// weights sum to 2, points symmetric about 0.
struct QuadratureRule {
    std::vector<double> points;
    std::vector<double> weights;

    std::size_t order() const { return points.size(); }
};

// n in 1..16; nodes found by Newton iteration on the Legendre recurrence.
QuadratureRule gauss_rule(std::size_t n);

using Interval = std::pair<double, double>;

// Composite Gauss sum of f over a list of intervals.
double integrate_elementwise(const std::function<double(double)>& f,
                             const std::vector<Interval>& elements,
                             const QuadratureRule& rule);

// Split [a,b] into `count` equal panels.
std::vector<Interval> uniform_panels(double a, double b, std::size_t count);

}  // namespace platefsi

#endif
