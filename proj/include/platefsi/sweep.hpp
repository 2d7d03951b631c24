#ifndef PLATEFSI_SWEEP_HPP
#define PLATEFSI_SWEEP_HPP

#include <functional>
#include <optional>
#include <vector>

#include "platefsi/analysis.hpp"
#include "platefsi/assembly.hpp"
#include "platefsi/model.hpp"

namespace platefsi {

// Parameter sweep over alpha at fixed sigma, mu, G. The system matrix is
// A(alpha) = A_sym - alpha * F with A_sym = K + mu*M cached once;
// rebuild_each reassembles from scratch per step instead (cache audit path).
struct SweepConfig {
    double alpha_start = 0.0;
    double alpha_end = -8000.0;
    double alpha_step = 1.0;  // magnitude; direction comes from the endpoints
    std::size_t n_samples = 512;
    double rel_threshold = 1e-3;
    bool rebuild_each = false;
};

struct SweepRecord {
    double alpha = 0.0;
    int modality_m = 0;
    int zero_count = 0;
    double amplitude = 0.0;
    double l2 = 0.0;
    double energy = 0.0;
    bool flagged = false;  // near-singular solve, kept and marked
};

std::vector<SweepRecord> run_sweep(
    const std::shared_ptr<const Discretization>& disc, const GramTable& grams,
    const PlateParameters& params, const SweepConfig& config,
    const std::function<void(const SweepRecord&)>& on_record = {});

// Maximal runs of constant modality, in sweep order. alpha_lo/alpha_hi are
// the smallest/largest alpha of the run.
struct ModalityBand {
    double alpha_lo = 0.0;
    double alpha_hi = 0.0;
    int modality_m = 0;
};

std::vector<ModalityBand> detect_thresholds(const std::vector<SweepRecord>& records);

// First alpha whose amplitude exceeds 10x the median of the up-to-50
// preceding amplitudes: a resonance-spike heuristic.
std::optional<double> detect_onset(const std::vector<SweepRecord>& records);

}  // namespace platefsi

#endif
