#ifndef PLATEFSI_ANALYSIS_HPP
#define PLATEFSI_ANALYSIS_HPP

#include <memory>
#include <stdexcept>
#include <vector>

#include "platefsi/assembly.hpp"
#include "platefsi/basis.hpp"
#include "platefsi/matrix.hpp"
#include "platefsi/model.hpp"

namespace platefsi {

// Coefficient vector bound to its discretization, layout t0 = j0*n1_bar + i0.
struct Field {
    std::shared_ptr<const Discretization> disc;
    Vector coeffs;
};

struct HypothesisViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TrivialInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double evaluate_field(const Field& field, double x, double y, int dx = 0, int dy = 0);

// Tensor-product evaluation on a lattice: result(r, c) = d^(dx,dy) u(xs[c], ys[r]).
Matrix evaluate_lattice(const Field& field, const Vector& xs, const Vector& ys,
                        int dx = 0, int dy = 0);

double l2_norm(const Field& field, const GramTable& grams);
double l2_norm_ux(const Field& field, const GramTable& grams);
double h2_broken_seminorm(const Field& field, const GramTable& grams);
// a(u,u) with the plate constant sigma (no mu or alpha terms).
double energy_norm_sq(const Field& field, const GramTable& grams, double sigma);

struct ModalityReport {
    bool trivial = false;
    int zero_count = 0;
    int modality_m = 0;  // zero_count + 1, or 0 when trivial
    double amplitude = 0.0;
    std::vector<int> sign_profile;  // signs of the out-of-band midline samples
};

// Classifies u by its midline trace x -> u(x, 0): samples at n_samples
// uniform interior points, drops samples inside the dead band
// |u| < rel_threshold * amplitude, counts sign changes of the rest.
ModalityReport classify_modality(const Field& field, std::size_t n_samples,
                                 double rel_threshold);

struct LiftResult {
    Field lifted;                  // u = scale * U
    double scale = 0.0;            // sqrt((mu + P)/S) / ||U_x||_0
    double implied_g_scale = 0.0;  // 1/scale: load divisor taking G_linear to g
    double g = 0.0;                // scale * G_linear
    double bracket_value = 0.0;    // S ||u_x||_0^2 - P, equals mu exactly
};

// Rescales a solution of the linear problem with in-plane parameter mu into
// a solution of the cubically nonlinear one with tension S ||u_x||^2 - P.
// Requires S > 0 and mu + P > 0 (HypothesisViolated otherwise) and a
// nontrivial input (TrivialInput when ||U_x|| vanishes).
LiftResult lift_to_nonlinear(const Field& linear_solution, double g_linear,
                             double mu, double p_load, double s_stiff,
                             const GramTable& grams);

// Relative strong-form residual of the nonlinear Galerkin equations at u:
// max-norm of K q + (S||u_x||^2 - P) M q - alpha F q - g b over the max-norm
// of the largest participating term.
double nonlinear_residual(const Field& u, double g, double sigma, double alpha,
                          double p_load, double s_stiff, const GramTable& grams);

}  // namespace platefsi

#endif
