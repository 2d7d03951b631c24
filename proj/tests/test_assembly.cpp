#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "platefsi/assembly.hpp"
#include "platefsi/kernels.hpp"
#include "platefsi/quadrature.hpp"

using namespace platefsi;

namespace {

const double pi = std::acos(-1.0);

// direct composite quadrature of a 1D pairing, independent of the gram path
double pair_integral(const std::function<double(double)>& f,
                     const std::function<double(double)>& g, double a, double b,
                     std::size_t panels) {
    return integrate_elementwise([&](double t) { return f(t) * g(t); },
                                 uniform_panels(a, b, panels), gauss_rule(10));
}

}  // namespace

TEST_CASE("raw sine pairings recover the analytic diagonal values") {
    // int_0^pi sin'' (2x) * sin''(2x) = k^4 pi / 2 = 8 pi for k = 2
    auto s2 = [](double x) { return std::sin(2 * x); };
    auto d2 = [](double x) { return -4.0 * std::sin(2 * x); };
    CHECK(pair_integral(s2, s2, 0, pi, 16) == doctest::Approx(pi / 2).epsilon(1e-12));
    CHECK(pair_integral(d2, d2, 0, pi, 16) == doctest::Approx(8 * pi).epsilon(1e-12));
    // cross pairings of distinct frequencies vanish
    auto s3 = [](double x) { return std::sin(3 * x); };
    CHECK(std::abs(pair_integral(s2, s3, 0, pi, 16)) <= 1e-12);
}

TEST_CASE("x gram matrices match direct quadrature of the normalized basis") {
    GridSpec grid = make_grid(6, 2, 0.2);
    auto disc = build_discretization(grid);
    const SineBasis& sine = disc->sine;
    XGrams x = build_gram_x(sine);

    for (std::size_t r = 0; r < grid.n1_bar; ++r) {
        for (std::size_t c = 0; c < grid.n1_bar; ++c) {
            auto fr0 = [&](double t) { return sine.eval(r, t, 0); };
            auto fc0 = [&](double t) { return sine.eval(c, t, 0); };
            auto fr1 = [&](double t) { return sine.eval(r, t, 1); };
            auto fc1 = [&](double t) { return sine.eval(c, t, 1); };
            auto fr2 = [&](double t) { return sine.eval(r, t, 2); };
            auto fc2 = [&](double t) { return sine.eval(c, t, 2); };
            CHECK(std::abs(x.m00(r, c) - pair_integral(fr0, fc0, 0, pi, 32)) <= 1e-10);
            CHECK(std::abs(x.m11(r, c) - pair_integral(fr1, fc1, 0, pi, 32)) <= 1e-9);
            CHECK(std::abs(x.m22(r, c) - pair_integral(fr2, fc2, 0, pi, 32)) <= 1e-7);
            CHECK(std::abs(x.m20(r, c) - pair_integral(fr2, fc0, 0, pi, 32)) <= 1e-9);
            CHECK(std::abs(x.m02(r, c) - pair_integral(fr0, fc2, 0, pi, 32)) <= 1e-9);
        }
        auto fr0 = [&](double t) { return sine.eval(r, t, 0); };
        auto one = [](double) { return 1.0; };
        CHECK(std::abs(x.integral[r] - pair_integral(fr0, one, 0, pi, 32)) <= 1e-10);
    }
}

TEST_CASE("y gram identities from the partition of unity") {
    GridSpec grid = make_grid(6, 3, 0.2);
    auto disc = build_discretization(grid);
    YGrams y = build_gram_y(disc->lagrange, gauss_rule(6));

    for (std::size_t r = 0; r < grid.n2; ++r) {
        double row00 = 0.0, row10 = 0.0, row11 = 0.0;
        for (std::size_t c = 0; c < grid.n2; ++c) {
            row00 += y.m00(r, c);
            row10 += y.m10(r, c);
            row11 += y.m11(r, c);
            CHECK(y.m00(r, c) == y.m00(c, r));
            CHECK(y.m11(r, c) == doctest::Approx(y.m11(c, r)).epsilon(1e-13));
            CHECK(y.m02(r, c) == doctest::Approx(y.m20(c, r)).epsilon(1e-13));
        }
        // sum_c Phi_c = 1: rows against the constant function
        CHECK(row00 == doctest::Approx(y.integral[r]).epsilon(1e-12));
        CHECK(std::abs(row11) <= 1e-12);
        // int Phi_r' * 1 = boundary values
        CHECK(row10 == doctest::Approx(y.at_hi[r] * 1.0 - y.at_lo[r] * 1.0)
                           .epsilon(1e-11));
    }
}

TEST_CASE("y grams match an independent quadrature at a different order") {
    GridSpec grid = make_grid(6, 2, 0.25);
    auto disc = build_discretization(grid);
    const LagrangeBasisY& lag = disc->lagrange;
    YGrams y = build_gram_y(lag, gauss_rule(6));

    std::vector<Interval> panels;
    for (std::size_t e = 0; e + 1 < grid.n2; ++e) {
        panels.push_back({grid.y_nodes[e], grid.y_nodes[e + 1]});
    }
    const QuadratureRule rule = gauss_rule(9);
    for (std::size_t r = 0; r < grid.n2; ++r) {
        for (std::size_t c = 0; c < grid.n2; ++c) {
            auto direct = [&](int dr, int dc) {
                return integrate_elementwise(
                    [&](double t) { return lag.eval(r, t, dr) * lag.eval(c, t, dc); },
                    panels, rule);
            };
            CHECK(std::abs(y.m00(r, c) - direct(0, 0)) <= 1e-12);
            CHECK(std::abs(y.m11(r, c) - direct(1, 1)) <= 1e-10);
            CHECK(std::abs(y.m22(r, c) - direct(2, 2)) <= 1e-8);
            CHECK(std::abs(y.m20(r, c) - direct(2, 0)) <= 1e-10);
            CHECK(std::abs(y.m10(r, c) - direct(1, 0)) <= 1e-11);
        }
    }
}

TEST_CASE("kron layout is x-fastest with rows as test functions") {
    Matrix yb(2, 2), xb(3, 3);
    int v = 1;
    for (double& e : yb.data) e = v++;
    for (double& e : xb.data) e = 0.5 * v++;
    Matrix k = kron_xy(yb, xb);
    REQUIRE(k.rows == 6);
    for (std::size_t jt = 0; jt < 2; ++jt) {
        for (std::size_t it = 0; it < 3; ++it) {
            for (std::size_t j = 0; j < 2; ++j) {
                for (std::size_t i = 0; i < 3; ++i) {
                    CHECK(k(jt * 3 + it, j * 3 + i) == yb(jt, j) * xb(it, i));
                }
            }
        }
    }

    Matrix acc(6, 6);
    add_scaled_kron(acc, -2.0, yb, xb);
    CHECK(max_abs_diff(acc, kron_xy(yb, xb)) ==
          doctest::Approx(3.0 * max_abs(k)).epsilon(1e-14));

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Vector q(6);
    for (double& e : q) e = unit(rng);
    Vector kq = matvec(k, q);
    const double direct = kernels::dot(q.data(), kq.data(), 6);
    CHECK(tensor_quadratic_form(yb, xb, q) ==
          doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("tensor assembly equals the brute-force oracle across parameters") {
    GridSpec grid = make_grid(6, 2, 0.2);
    auto disc = build_discretization(grid);
    GramTable grams = build_gram_table(*disc);

    for (double mu : {-0.5, 0.0, 1.0}) {
        for (double alpha : {0.0, -10.0, -125.0}) {
            PlateParameters p;
            p.mu = mu;
            p.alpha = alpha;
            LinearSystem fast = assemble_system(grams, p, grid);
            LinearSystem slow = assemble_oracle(*disc, p);
            const double scale = max_abs(slow.matrix);
            CHECK(max_abs_diff(fast.matrix, slow.matrix) <= 1e-9 * scale);
            for (std::size_t t = 0; t < grid.dof; ++t) {
                CHECK(std::abs(fast.rhs[t] - slow.rhs[t]) <=
                      1e-9 * max_abs(slow.rhs));
            }
        }
    }
}

TEST_CASE("alpha enters only through the flow block") {
    GridSpec grid = make_grid(6, 2, 0.2);
    auto disc = build_discretization(grid);
    GramTable grams = build_gram_table(*disc);
    AssemblyParts parts = build_parts(grams, 0.2);

    PlateParameters p0, p1;
    p1.alpha = -77.5;
    LinearSystem a0 = assemble_system(grams, p0, grid);
    LinearSystem a1 = assemble_system(grams, p1, grid);

    Matrix diff = a1.matrix;
    add_scaled(diff, -1.0, a0.matrix);
    add_scaled(diff, p1.alpha, parts.flow);
    CHECK(max_abs(diff) <= 1e-12 * max_abs(a1.matrix));

    // the rhs does not depend on alpha
    for (std::size_t t = 0; t < grid.dof; ++t) CHECK(a0.rhs[t] == a1.rhs[t]);
}

TEST_CASE("load vector factors into the 1D basis integrals") {
    GridSpec grid = make_grid(6, 2, 0.2);
    auto disc = build_discretization(grid);
    GramTable grams = build_gram_table(*disc);
    AssemblyParts parts = build_parts(grams, 0.2);
    for (std::size_t j = 0; j < grid.n2; ++j) {
        for (std::size_t i = 0; i < grid.n1_bar; ++i) {
            CHECK(parts.load_unit[j * grid.n1_bar + i] ==
                  doctest::Approx(grams.x.integral[i] * grams.y.integral[j])
                      .epsilon(1e-14));
        }
    }
}

TEST_CASE("assembly hooks corrupt exactly their targets") {
    GridSpec grid = make_grid(6, 2, 0.2);
    auto disc = build_discretization(grid);
    GramTable grams = build_gram_table(*disc);

    AssemblyParts clean = build_parts(grams, 0.2);
    AssemblyHooks corner;
    corner.corner_sign = -1;
    AssemblyParts flipped = build_parts(grams, 0.2, corner);
    CHECK(max_abs_diff(clean.stiffness, flipped.stiffness) > 1e-3);
    CHECK(max_abs_diff(clean.flow, flipped.flow) == 0.0);

    AssemblyHooks swap;
    swap.transpose_flow_pairing = true;
    AssemblyParts transposed = build_parts(grams, 0.2, swap);
    CHECK(max_abs_diff(clean.stiffness, transposed.stiffness) == 0.0);
    CHECK(max_abs_diff(clean.flow, transposed.flow) > 1e-6);
    CHECK(max_abs_diff(transpose(transposed.flow), clean.flow) <= 1e-15);
}

TEST_CASE("gram table rejects a mismatched grid") {
    GridSpec small = make_grid(6, 2, 0.2);
    GridSpec big = make_grid(8, 2, 0.2);
    auto disc = build_discretization(small);
    GramTable grams = build_gram_table(*disc);
    PlateParameters p;
    CHECK_THROWS_AS(assemble_system(grams, p, big), std::invalid_argument);
}
