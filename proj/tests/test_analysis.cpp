#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "platefsi/analysis.hpp"
#include "platefsi/solver.hpp"

using namespace platefsi;

namespace {

const double pi = std::acos(-1.0);

struct Setup {
    GridSpec grid;
    std::shared_ptr<const Discretization> disc;
    GramTable grams;
};

Setup make_setup(std::size_t n1, std::size_t m2, double l = 0.2) {
    Setup s;
    s.grid = make_grid(n1, m2, l);
    s.disc = build_discretization(s.grid);
    s.grams = build_gram_table(*s.disc);
    return s;
}

// nodal coefficients of sin(k x) * p(y)
Field separable_field(const Setup& s, int k, const std::function<double(double)>& p) {
    Field f{s.disc, Vector(s.grid.dof)};
    for (std::size_t j = 1; j <= s.grid.n2; ++j) {
        for (std::size_t i = 1; i <= s.grid.n1_bar; ++i) {
            f.coeffs[(j - 1) * s.grid.n1_bar + (i - 1)] =
                std::sin(k * s.grid.x_nodes[i]) * p(s.grid.y_nodes[j - 1]);
        }
    }
    return f;
}

Field solve_field(const Setup& s, const PlateParameters& p) {
    LinearSystem system = assemble_system(s.grams, p, s.grid);
    SolveReport report = lu_solve(system);
    return {s.disc, std::move(report.solution)};
}

}  // namespace

TEST_CASE("field evaluation reproduces a separable interpolant exactly") {
    Setup s = make_setup(8, 2);
    Field f = separable_field(s, 1, [](double) { return 1.0; });
    for (double x : {0.3, 1.0, pi / 2, 2.9}) {
        for (double y : {-0.2, -0.05, 0.0, 0.13, 0.2}) {
            CHECK(std::abs(evaluate_field(f, x, y) - std::sin(x)) <= 1e-12);
            CHECK(std::abs(evaluate_field(f, x, y, 1, 0) - std::cos(x)) <= 1e-11);
            CHECK(std::abs(evaluate_field(f, x, y, 2, 0) + std::sin(x)) <= 1e-10);
            CHECK(std::abs(evaluate_field(f, x, y, 0, 1)) <= 1e-11);
        }
    }
}

TEST_CASE("lattice evaluation agrees with pointwise evaluation") {
    Setup s = make_setup(6, 2);
    Field f = separable_field(s, 2, [](double y) { return 1.0 + y; });
    Vector xs{0.1, 0.7, 1.9, 3.0};
    Vector ys{-0.15, 0.0, 0.2};
    Matrix lattice = evaluate_lattice(f, xs, ys, 1, 1);
    for (std::size_t r = 0; r < ys.size(); ++r) {
        for (std::size_t c = 0; c < xs.size(); ++c) {
            CHECK(lattice(r, c) ==
                  doctest::Approx(evaluate_field(f, xs[c], ys[r], 1, 1))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("norms of sin(x) on the strip match closed forms") {
    Setup s = make_setup(8, 2);
    Field f = separable_field(s, 1, [](double) { return 1.0; });
    // ||u||^2 = int sin^2 * int 1 = (pi/2) * 0.4 = 0.2 pi
    CHECK(l2_norm(f, s.grams) == doctest::Approx(std::sqrt(0.2 * pi)).epsilon(1e-12));
    // u_x = cos(x): same norm
    CHECK(l2_norm_ux(f, s.grams) ==
          doctest::Approx(std::sqrt(0.2 * pi)).epsilon(1e-12));
}

TEST_CASE("broken H2 seminorm of the twist field sin(x) y") {
    Setup s = make_setup(8, 2);
    Field f = separable_field(s, 1, [](double y) { return y; });
    // u_xx = -sin(x) y, u_xy = cos(x), u_yy = 0:
    // |u|_2^2 = pi l^3 / 3 + 2 pi l
    const double l = 0.2;
    const double expected = std::sqrt(pi * l * l * l / 3.0 + 2.0 * pi * l);
    CHECK(h2_broken_seminorm(f, s.grams) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("energy splits into the coercive identity") {
    Setup s = make_setup(8, 2);
    PlateParameters p;
    p.alpha = -40.0;
    Field u = solve_field(s, p);
    const double sigma = 0.2;
    const double energy = energy_norm_sq(u, s.grams, sigma);
    const double semi = h2_broken_seminorm(u, s.grams);
    const double lap =
        tensor_quadratic_form(s.grams.y.m00, s.grams.x.m22, u.coeffs) +
        tensor_quadratic_form(s.grams.y.m22, s.grams.x.m00, u.coeffs) +
        tensor_quadratic_form(s.grams.y.m20, s.grams.x.m02, u.coeffs) +
        tensor_quadratic_form(s.grams.y.m02, s.grams.x.m20, u.coeffs);
    // The split sums four large quadratic forms whose term magnitudes dwarf
    // the result, so agreement is limited by accumulation rounding (~1e-10
    // relative here), not by the identity itself.
    CHECK(energy == doctest::Approx((1 - sigma) * semi * semi + sigma * lap)
                        .epsilon(1e-8));
    CHECK(lap >= 0.0);
}

TEST_CASE("finite differences confirm the evaluated derivatives") {
    Setup s = make_setup(10, 3);
    PlateParameters p;
    p.alpha = -125.0;
    Field u = solve_field(s, p);

    const double h = 1e-5;
    int checked = 0;
    for (int sx = 1; sx <= 5 && checked < 20; ++sx) {
        for (int sy = 1; sy <= 4 && checked < 20; ++sy) {
            const double x = pi * sx / 6.0;
            const double y = -0.2 + 0.4 * sy / 5.0;
            // keep the whole stencil inside one macro-element
            const double fxp = evaluate_field(u, x + h, y);
            const double fxm = evaluate_field(u, x - h, y);
            const double fyp = evaluate_field(u, x, y + h);
            const double fym = evaluate_field(u, x, y - h);
            const double f0 = evaluate_field(u, x, y);
            CHECK(std::abs(evaluate_field(u, x, y, 1, 0) - (fxp - fxm) / (2 * h)) <=
                  1e-6);
            CHECK(std::abs(evaluate_field(u, x, y, 0, 1) - (fyp - fym) / (2 * h)) <=
                  1e-6);
            CHECK(std::abs(evaluate_field(u, x, y, 2, 0) -
                           (fxp - 2 * f0 + fxm) / (h * h)) <= 1e-4);
            CHECK(std::abs(evaluate_field(u, x, y, 0, 2) -
                           (fyp - 2 * f0 + fym) / (h * h)) <= 1e-4);
            ++checked;
        }
    }
    CHECK(checked == 20);
}

TEST_CASE("modality classification of pure modes") {
    Setup s = make_setup(10, 2);
    for (int k = 1; k <= 4; ++k) {
        Field f = separable_field(s, k, [](double) { return 1.0; });
        ModalityReport report = classify_modality(f, 512, 1e-3);
        CHECK(!report.trivial);
        CHECK(report.zero_count == k - 1);
        CHECK(report.modality_m == k);
        CHECK(report.amplitude == doctest::Approx(1.0).epsilon(1e-3));
    }

    Field zero{s.disc, Vector(s.grid.dof, 0.0)};
    ModalityReport trivial = classify_modality(zero, 512, 1e-3);
    CHECK(trivial.trivial);
    CHECK(trivial.modality_m == 0);
    CHECK(trivial.amplitude == 0.0);
}

TEST_CASE("dead band keeps the count stable under sub-threshold noise") {
    Setup s = make_setup(10, 2);
    Field base = separable_field(s, 2, [](double) { return 1.0; });
    ModalityReport clean = classify_modality(base, 512, 1e-3);
    REQUIRE(clean.modality_m == 2);

    // perturbation half the dead band: samples near the crossing fall in the
    // band and are skipped, everything else keeps its sign
    Field noise = separable_field(s, 1, [](double) { return 1.0; });
    Field noisy{s.disc, base.coeffs};
    for (std::size_t t = 0; t < s.grid.dof; ++t) {
        noisy.coeffs[t] += 5e-4 * noise.coeffs[t];
    }
    ModalityReport report = classify_modality(noisy, 512, 1e-3);
    CHECK(report.modality_m == 2);
    CHECK(report.zero_count == 1);
}

TEST_CASE("lift rescales linear solutions into nonlinear ones") {
    Setup s = make_setup(6, 2);
    PlateParameters p;
    p.alpha = -10.0;

    for (double mu : {-0.5, 0.0, 1.0}) {
        for (double p_load : {1.0, 2.0}) {
            for (double s_stiff : {0.5, 1.0}) {
                p.mu = mu;
                Field u = solve_field(s, p);
                LiftResult lift = lift_to_nonlinear(u, p.g_const, mu, p_load,
                                                    s_stiff, s.grams);
                CHECK(std::abs(lift.bracket_value - mu) <= 1e-10);
                CHECK(lift.scale > 0.0);
                CHECK(lift.implied_g_scale ==
                      doctest::Approx(1.0 / lift.scale).epsilon(1e-14));

                // homogeneity: scaling the input does not move the output
                Field seven{s.disc, u.coeffs};
                for (double& c : seven.coeffs) c *= 7.0;
                LiftResult lift7 = lift_to_nonlinear(seven, 7.0 * p.g_const, mu,
                                                     p_load, s_stiff, s.grams);
                for (std::size_t t = 0; t < s.grid.dof; ++t) {
                    CHECK(std::abs(lift7.lifted.coeffs[t] - lift.lifted.coeffs[t]) <=
                          1e-12);
                }

                const double res =
                    nonlinear_residual(lift.lifted, lift.g, p.sigma, p.alpha,
                                       p_load, s_stiff, s.grams);
                CHECK(res < 1e-8);
            }
        }
    }
}

TEST_CASE("lift rejects violated hypotheses and trivial input") {
    Setup s = make_setup(6, 2);
    PlateParameters p;
    p.alpha = -10.0;
    Field u = solve_field(s, p);

    CHECK_THROWS_AS(lift_to_nonlinear(u, 1.0, -2.0, 1.0, 1.0, s.grams),
                    HypothesisViolated);  // mu + P < 0
    CHECK_THROWS_AS(lift_to_nonlinear(u, 1.0, -1.0, 1.0, 1.0, s.grams),
                    HypothesisViolated);  // mu + P = 0
    CHECK_THROWS_AS(lift_to_nonlinear(u, 1.0, -0.5, 1.0, 0.0, s.grams),
                    HypothesisViolated);  // S = 0
    Field zero{s.disc, Vector(s.grid.dof, 0.0)};
    CHECK_THROWS_AS(lift_to_nonlinear(zero, 1.0, -0.5, 1.0, 1.0, s.grams),
                    TrivialInput);
}

TEST_CASE("residual is sensitive to a wrong bracket") {
    Setup s = make_setup(6, 2);
    PlateParameters p;
    p.alpha = -10.0;
    Field u = solve_field(s, p);
    LiftResult lift = lift_to_nonlinear(u, p.g_const, p.mu, 1.0, 1.0, s.grams);

    const double good = nonlinear_residual(lift.lifted, lift.g, p.sigma, p.alpha,
                                           1.0, 1.0, s.grams);
    // off-by-one load constant shifts the bracket by 1
    const double bad = nonlinear_residual(lift.lifted, lift.g, p.sigma, p.alpha,
                                          0.0, 1.0, s.grams);
    CHECK(good < 1e-8);
    CHECK(bad > 1e-3);
}
