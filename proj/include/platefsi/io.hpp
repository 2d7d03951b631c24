#ifndef PLATEFSI_IO_HPP
#define PLATEFSI_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "platefsi/analysis.hpp"
#include "platefsi/matrix.hpp"
#include "platefsi/model.hpp"
#include "platefsi/sweep.hpp"

namespace platefsi {

// One flat JSON object; unknown keys are rejected so typos cannot silently
// fall back to defaults.
struct RunConfig {
    PlateParameters params;
    std::size_t n1 = 14;
    std::size_t m2 = 4;
    std::size_t quad_order = 6;
    double alpha_start = 0.0;
    double alpha_end = -8000.0;
    double alpha_step = 1.0;
    std::size_t n_samples = 512;
    double rel_threshold = 1e-3;
    std::size_t export_nx = 101;
    std::size_t export_ny = 41;
    std::string out_dir = "out";
    std::string export_format = "csv";  // csv | vtk | both
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

// Lattice of sample points plus values(r, c) = u(x[c], y[r]); flattened to
// (x, y, u) triplets with x fastest on write, re-inflated on read.
struct FieldTable {
    Vector x;  // size nx
    Vector y;  // size ny
    Matrix u;  // ny rows, nx cols
};

void write_field_csv(const std::string& path, const FieldTable& table);
FieldTable read_field_csv(const std::string& path);

void write_field_vtk(const std::string& path, const FieldTable& table);
FieldTable read_field_vtk(const std::string& path);

// Nodal export: one row per dof, 1-based (i, j) plus node coordinates and
// the coefficient. Carries enough structure to rebuild the discretization.
void write_field_nodes_csv(const std::string& path, const Field& field);
Field read_field_nodes_csv(const std::string& path);

void write_sweep_header(std::ostream& out);
void write_sweep_record(std::ostream& out, const SweepRecord& record);
void write_sweep_csv(const std::string& path, const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_sweep_csv(const std::string& path);

void write_thresholds_csv(const std::string& path,
                          const std::vector<ModalityBand>& bands);

}  // namespace platefsi

#endif
