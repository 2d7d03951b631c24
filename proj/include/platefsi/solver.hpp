#ifndef PLATEFSI_SOLVER_HPP
#define PLATEFSI_SOLVER_HPP

#include <optional>

#include "platefsi/assembly.hpp"
#include "platefsi/matrix.hpp"

namespace platefsi {

// Result of one dense LU solve. near_singular is raised when the smallest
// pivot drops below 1e-13 * max|A| -- near a resonance of the
// non-self-adjoint operator this is expected; the caller decides whether
// to flag-and-continue.
struct SolveReport {
    Vector solution;
    double residual_norm = 0.0;  // ||A x - b||_2 / max(||b||_2, tiny)
    double pivot_min = 0.0;
    bool near_singular = false;
    std::optional<double> condition_estimate;
};

constexpr double kNearSingularFactor = 1e-13;

SolveReport lu_solve(const LinearSystem& system, bool want_condition = false);

// Smallest eigenvalue of the buckling-type pencil K v = lambda M v with
// K the alpha/mu-free plate stiffness and M the (u_x, v_x) pairing, by
// inverse power iteration with M-normalization. Deterministic all-ones
// seed; throws std::runtime_error if 10000 iterations do not converge.
double estimate_lambda1(const GramTable& grams, double sigma);

}  // namespace platefsi

#endif
