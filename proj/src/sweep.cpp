#include "platefsi/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "platefsi/kernels.hpp"
#include "platefsi/solver.hpp"

namespace platefsi {

namespace {

Vector alpha_schedule(const SweepConfig& config) {
    if (!(config.alpha_step > 0.0)) {
        throw std::invalid_argument("sweep: alpha_step must be positive");
    }
    const double span = config.alpha_end - config.alpha_start;
    const double stride = std::copysign(config.alpha_step, span);
    const auto count = static_cast<std::size_t>(
        std::floor(std::abs(span) / config.alpha_step + 1e-9)) + 1;
    Vector alphas(count);
    for (std::size_t k = 0; k < count; ++k) {
        alphas[k] = config.alpha_start + stride * static_cast<double>(k);
    }
    alphas.back() = std::abs(alphas.back() - config.alpha_end) < 1e-9
                        ? config.alpha_end
                        : alphas.back();
    return alphas;
}

}  // namespace

std::vector<SweepRecord> run_sweep(
    const std::shared_ptr<const Discretization>& disc, const GramTable& grams,
    const PlateParameters& params, const SweepConfig& config,
    const std::function<void(const SweepRecord&)>& on_record) {
    const GridSpec& grid = disc->grid;
    AssemblyParts parts = build_parts(grams, params.sigma);

    Matrix a_sym = parts.stiffness;
    add_scaled(a_sym, params.mu, parts.mass_ux);
    Vector rhs = parts.load_unit;
    kernels::scale(params.g_const, rhs.data(), rhs.size());

    Vector alphas = alpha_schedule(config);
    std::vector<SweepRecord> records;
    records.reserve(alphas.size());

    for (double alpha : alphas) {
        PlateParameters p = params;
        p.alpha = alpha;

        LinearSystem system;
        if (config.rebuild_each) {
            system = assemble_system(grams, p, grid);
        } else {
            system.matrix = a_sym;
            add_scaled(system.matrix, -alpha, parts.flow);
            system.rhs = rhs;
            system.params = p;
        }

        SolveReport report = lu_solve(system);
        Field field{disc, std::move(report.solution)};

        SweepRecord rec;
        rec.alpha = alpha;
        rec.flagged = report.near_singular;
        ModalityReport modality =
            classify_modality(field, config.n_samples, config.rel_threshold);
        rec.modality_m = modality.modality_m;
        rec.zero_count = modality.zero_count;
        rec.amplitude = modality.amplitude;
        rec.l2 = l2_norm(field, grams);
        Vector kq = matvec(parts.stiffness, field.coeffs);
        rec.energy = kernels::dot(field.coeffs.data(), kq.data(), kq.size());

        if (on_record) on_record(rec);
        records.push_back(rec);
    }
    return records;
}

std::vector<ModalityBand> detect_thresholds(const std::vector<SweepRecord>& records) {
    std::vector<ModalityBand> bands;
    for (const SweepRecord& rec : records) {
        if (bands.empty() || bands.back().modality_m != rec.modality_m) {
            bands.push_back({rec.alpha, rec.alpha, rec.modality_m});
        }
        ModalityBand& band = bands.back();
        band.alpha_lo = std::min(band.alpha_lo, rec.alpha);
        band.alpha_hi = std::max(band.alpha_hi, rec.alpha);
    }
    return bands;
}

std::optional<double> detect_onset(const std::vector<SweepRecord>& records) {
    for (std::size_t k = 1; k < records.size(); ++k) {
        const std::size_t window = std::min<std::size_t>(k, 50);
        Vector previous(window);
        for (std::size_t s = 0; s < window; ++s) {
            previous[s] = records[k - window + s].amplitude;
        }
        std::nth_element(previous.begin(), previous.begin() + window / 2,
                         previous.end());
        const double median = previous[window / 2];
        if (median > 0.0 && records[k].amplitude > 10.0 * median) {
            return records[k].alpha;
        }
    }
    return std::nullopt;
}

}  // namespace platefsi
