#include "platefsi/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "platefsi/analysis.hpp"
#include "platefsi/assembly.hpp"
#include "platefsi/basis.hpp"
#include "platefsi/kernels.hpp"
#include "platefsi/solver.hpp"
#include "platefsi/sweep.hpp"

namespace platefsi::cli {

namespace {

namespace fs = std::filesystem;

Vector uniform_samples(double lo, double hi, std::size_t count) {
    Vector out(count);
    for (std::size_t k = 0; k < count; ++k) {
        out[k] = lo + (hi - lo) * static_cast<double>(k) /
                          static_cast<double>(count - 1);
    }
    out.back() = hi;
    return out;
}

FieldTable sample_field(const Field& field, const RunConfig& config) {
    const GridSpec& grid = field.disc->grid;
    FieldTable table;
    table.x = uniform_samples(0.0, std::acos(-1.0), config.export_nx);
    table.y = uniform_samples(-grid.half_width, grid.half_width, config.export_ny);
    table.u = evaluate_lattice(field, table.x, table.y);
    return table;
}

void export_field(const Field& field, const RunConfig& config,
                  const std::string& stem) {
    fs::create_directories(config.out_dir);
    const FieldTable table = sample_field(field, config);
    const std::string base = (fs::path(config.out_dir) / stem).string();
    if (config.export_format == "csv" || config.export_format == "both") {
        write_field_csv(base + ".csv", table);
    }
    if (config.export_format == "vtk" || config.export_format == "both") {
        write_field_vtk(base + ".vtk", table);
    }
    write_field_nodes_csv(base + "_nodes.csv", field);
}

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
}

}  // namespace

int cmd_solve(const RunConfig& config) {
    const GridSpec grid = make_grid(config.n1, config.m2, config.params.half_width);
    auto disc = build_discretization(grid);
    const GramTable grams = build_gram_table(*disc, config.quad_order);

    LinearSystem system = assemble_system(grams, config.params, grid);
    SolveReport report = lu_solve(system, true);
    Field field{disc, report.solution};

    ModalityReport modality =
        classify_modality(field, config.n_samples, config.rel_threshold);
    const double l2 = l2_norm(field, grams);
    const double energy = energy_norm_sq(field, grams, config.params.sigma);
    const double lambda1 = estimate_lambda1(grams, config.params.sigma);

    export_field(field, config, "field");

    nlohmann::json summary = {
        {"alpha", config.params.alpha},
        {"mu", config.params.mu},
        {"sigma", config.params.sigma},
        {"l", config.params.half_width},
        {"G", config.params.g_const},
        {"n1", config.n1},
        {"m2", config.m2},
        {"dof", grid.dof},
        {"residual", report.residual_norm},
        {"pivot_min", report.pivot_min},
        {"near_singular", report.near_singular},
        {"condition_estimate", report.condition_estimate.value_or(0.0)},
        {"modality", modality.modality_m},
        {"zero_count", modality.zero_count},
        {"amplitude", modality.amplitude},
        {"l2", l2},
        {"energy", energy},
        {"lambda1", lambda1},
    };
    write_json((fs::path(config.out_dir) / "summary.json").string(), summary);

    std::cout << "dof " << grid.dof << ", alpha " << format_double(config.params.alpha)
              << ", residual " << format_double(report.residual_norm)
              << (report.near_singular ? " [near-singular]" : "") << '\n';
    std::cout << "modality " << modality.modality_m << " (zero crossings "
              << modality.zero_count << "), amplitude "
              << format_double(modality.amplitude) << ", l2 " << format_double(l2)
              << '\n';
    std::cout << "lambda1 " << format_double(lambda1) << ", wrote "
              << config.out_dir << '/' << "field*, summary.json\n";
    return 0;
}

int cmd_sweep(const RunConfig& config) {
    const GridSpec grid = make_grid(config.n1, config.m2, config.params.half_width);
    auto disc = build_discretization(grid);
    const GramTable grams = build_gram_table(*disc, config.quad_order);

    SweepConfig sweep;
    sweep.alpha_start = config.alpha_start;
    sweep.alpha_end = config.alpha_end;
    sweep.alpha_step = config.alpha_step;
    sweep.n_samples = config.n_samples;
    sweep.rel_threshold = config.rel_threshold;

    fs::create_directories(config.out_dir);
    const std::string sweep_path = (fs::path(config.out_dir) / "sweep.csv").string();
    std::ofstream out(sweep_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + sweep_path);
    write_sweep_header(out);

    std::size_t flagged = 0;
    auto stream_record = [&](const SweepRecord& rec) {
        write_sweep_record(out, rec);
        out.flush();
        if (rec.flagged) ++flagged;
    };
    std::vector<SweepRecord> records =
        run_sweep(disc, grams, config.params, sweep, stream_record);

    std::vector<ModalityBand> bands = detect_thresholds(records);
    write_thresholds_csv((fs::path(config.out_dir) / "thresholds.csv").string(),
                         bands);

    std::cout << records.size() << " steps from alpha "
              << format_double(config.alpha_start) << " to "
              << format_double(config.alpha_end) << ", " << flagged
              << " flagged\n";
    for (const ModalityBand& band : bands) {
        std::cout << "  m=" << band.modality_m << " for alpha in ["
                  << format_double(band.alpha_lo) << ", "
                  << format_double(band.alpha_hi) << "]\n";
    }
    if (auto onset = detect_onset(records)) {
        std::cout << "amplitude spike at alpha " << format_double(*onset) << '\n';
    }
    std::cout << "wrote " << config.out_dir << "/sweep.csv, thresholds.csv\n";
    return 0;
}

int cmd_lift(const RunConfig& config, const std::string& field_path) {
    const std::string path = field_path.empty()
        ? (fs::path(config.out_dir) / "field_nodes.csv").string()
        : field_path;
    Field linear = read_field_nodes_csv(path);
    const GramTable grams = build_gram_table(*linear.disc, config.quad_order);

    LiftResult lift =
        lift_to_nonlinear(linear, config.params.g_const, config.params.mu,
                          config.params.p_prestress, config.params.s_stretch, grams);
    const double residual = nonlinear_residual(
        lift.lifted, lift.g, config.params.sigma, config.params.alpha,
        config.params.p_prestress, config.params.s_stretch, grams);

    export_field(lift.lifted, config, "lifted");

    nlohmann::json summary = {
        {"mu", config.params.mu},
        {"P", config.params.p_prestress},
        {"S", config.params.s_stretch},
        {"scale", lift.scale},
        {"implied_g_scale", lift.implied_g_scale},
        {"g", lift.g},
        {"bracket", lift.bracket_value},
        {"bracket_minus_mu", lift.bracket_value - config.params.mu},
        {"residual", residual},
    };
    write_json((fs::path(config.out_dir) / "lift_summary.json").string(), summary);

    std::cout << "scale " << format_double(lift.scale) << " (load divisor "
              << format_double(lift.implied_g_scale) << "), g "
              << format_double(lift.g) << '\n';
    std::cout << "bracket " << format_double(lift.bracket_value)
              << ", bracket - mu " << format_double(lift.bracket_value -
                                                    config.params.mu)
              << ", residual " << format_double(residual) << '\n';
    std::cout << "wrote " << config.out_dir << "/lifted*, lift_summary.json\n";
    return 0;
}

int cmd_verify(const VerifyOptions& options) {
    std::vector<CheckResult> results = run_verification(options);
    std::cout << "kernels backend: "
              << kernels::backend_name(kernels::active_backend()) << '\n';
    for (const CheckResult& r : results) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << "  measure "
                  << format_double(r.measure) << "  tol "
                  << format_double(r.tolerance) << "  (" << r.detail << ")\n";
    }
    if (!all_passed(results)) {
        std::cout << "verification FAILED\n";
        return 3;
    }
    std::cout << "verification passed (" << results.size() << " checks)\n";
    return 0;
}

int run(int argc, const char* const* argv) {
    CLI::App app{"hinged-free plate equilibria: solve, sweep, lift, verify"};
    app.require_subcommand(1);

    std::string config_path, out_dir, export_format, field_path;
    bool coarse = false;
    VerifyOptions verify_options;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_option("--export", export_format,
                        "export format: csv, vtk or both")
            ->check(CLI::IsMember({"csv", "vtk", "both"}));
    };

    CLI::App* solve = app.add_subcommand("solve", "solve one linear system");
    add_common(solve);
    CLI::App* sweep = app.add_subcommand("sweep", "sweep the flow parameter");
    add_common(sweep);
    sweep->add_flag("--coarse", coarse, "use alpha_step = 10");
    CLI::App* lift = app.add_subcommand("lift", "rescale to the nonlinear problem");
    add_common(lift);
    lift->add_option("--field", field_path, "nodal field CSV (default <out>/field_nodes.csv)");
    CLI::App* verify = app.add_subcommand("verify", "run the self-check battery");
    verify->add_flag("--flip-corner-sign", verify_options.flip_corner_sign,
                     "fault injection: negate the mixed-derivative bracket");
    verify->add_flag("--transpose-flow-pairing",
                     verify_options.transpose_flow_pairing,
                     "fault injection: transpose the flow pairing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    RunConfig config;
    try {
        if (!config_path.empty()) config = load_config(config_path);
        if (!out_dir.empty()) config.out_dir = out_dir;
        if (!export_format.empty()) config.export_format = export_format;
        if (coarse) config.alpha_step = 10.0;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (solve->parsed()) return cmd_solve(config);
        if (sweep->parsed()) return cmd_sweep(config);
        if (lift->parsed()) return cmd_lift(config, field_path);
        if (verify->parsed()) return cmd_verify(verify_options);
    } catch (const HypothesisViolated& e) {
        std::cerr << "hypothesis violated: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace platefsi::cli
