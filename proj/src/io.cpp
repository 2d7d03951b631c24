#include "platefsi/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "platefsi/basis.hpp"

namespace platefsi {

namespace {

using nlohmann::json;

double require_number(const json& value, const std::string& key) {
    if (!value.is_number()) {
        throw std::invalid_argument("config key '" + key + "' must be a number");
    }
    return value.get<double>();
}

std::size_t require_count(const json& value, const std::string& key,
                          std::size_t lo, std::size_t hi) {
    if (!value.is_number_integer() || value.get<long long>() < 0) {
        throw std::invalid_argument("config key '" + key +
                                    "' must be a non-negative integer");
    }
    const auto n = static_cast<std::size_t>(value.get<long long>());
    if (n < lo || n > hi) {
        throw std::invalid_argument("config key '" + key + "' out of range [" +
                                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return n;
}

std::string require_string(const json& value, const std::string& key) {
    if (!value.is_string()) {
        throw std::invalid_argument("config key '" + key + "' must be a string");
    }
    return value.get<std::string>();
}

double parse_double_token(const std::string& token, const std::string& context) {
    double out = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last) {
        throw std::runtime_error(context + ": bad numeric token '" + token + "'");
    }
    return out;
}

long long parse_int_token(const std::string& token, const std::string& context) {
    long long out = 0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), out);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
        throw std::runtime_error(context + ": bad integer token '" + token + "'");
    }
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else if (c != '\r') {
            current += c;
        }
    }
    fields.push_back(current);
    return fields;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

void expect_header(std::istream& in, const std::string& expected,
                   const std::string& path) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error(path + ": missing header");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected) {
        throw std::runtime_error(path + ": expected header '" + expected +
                                 "', got '" + line + "'");
    }
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json j = json::parse(json_text);
    if (!j.is_object()) {
        throw std::invalid_argument("config root must be a JSON object");
    }

    RunConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "sigma") {
            cfg.params.sigma = require_number(value, key);
        } else if (key == "mu") {
            cfg.params.mu = require_number(value, key);
        } else if (key == "alpha") {
            cfg.params.alpha = require_number(value, key);
        } else if (key == "G") {
            cfg.params.g_const = require_number(value, key);
        } else if (key == "P") {
            cfg.params.p_prestress = require_number(value, key);
        } else if (key == "S") {
            cfg.params.s_stretch = require_number(value, key);
        } else if (key == "l") {
            cfg.params.half_width = require_number(value, key);
        } else if (key == "n1") {
            cfg.n1 = require_count(value, key, 3, 4096);
        } else if (key == "m2") {
            cfg.m2 = require_count(value, key, 1, 4096);
        } else if (key == "quad_order") {
            cfg.quad_order = require_count(value, key, 1, 16);
        } else if (key == "alpha_start") {
            cfg.alpha_start = require_number(value, key);
        } else if (key == "alpha_end") {
            cfg.alpha_end = require_number(value, key);
        } else if (key == "alpha_step") {
            cfg.alpha_step = require_number(value, key);
            if (!(cfg.alpha_step > 0.0)) {
                throw std::invalid_argument("config key 'alpha_step' must be > 0");
            }
        } else if (key == "n_samples") {
            cfg.n_samples = require_count(value, key, 8, 1u << 20);
        } else if (key == "rel_threshold") {
            cfg.rel_threshold = require_number(value, key);
            if (cfg.rel_threshold < 0.0 || cfg.rel_threshold >= 1.0) {
                throw std::invalid_argument(
                    "config key 'rel_threshold' must lie in [0, 1)");
            }
        } else if (key == "export_nx") {
            cfg.export_nx = require_count(value, key, 2, 100000);
        } else if (key == "export_ny") {
            cfg.export_ny = require_count(value, key, 2, 100000);
        } else if (key == "out_dir") {
            cfg.out_dir = require_string(value, key);
        } else if (key == "export_format") {
            cfg.export_format = require_string(value, key);
            if (cfg.export_format != "csv" && cfg.export_format != "vtk" &&
                cfg.export_format != "both") {
                throw std::invalid_argument(
                    "config key 'export_format' must be csv, vtk or both");
            }
        } else {
            throw std::invalid_argument("unknown config key: " + key);
        }
    }

    cfg.params.validate();
    make_grid(cfg.n1, cfg.m2, cfg.params.half_width);  // range check
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in = open_in(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string format_double(double value) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

void write_field_csv(const std::string& path, const FieldTable& table) {
    std::ofstream out = open_out(path);
    out << "x,y,u\n";
    for (std::size_t r = 0; r < table.y.size(); ++r) {
        for (std::size_t c = 0; c < table.x.size(); ++c) {
            out << format_double(table.x[c]) << ',' << format_double(table.y[r])
                << ',' << format_double(table.u(r, c)) << '\n';
        }
    }
}

FieldTable read_field_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    expect_header(in, "x,y,u", path);

    std::vector<double> xs, ys, us;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 3) {
            throw std::runtime_error(path + ": expected 3 columns, got " +
                                     std::to_string(fields.size()));
        }
        xs.push_back(parse_double_token(fields[0], path));
        ys.push_back(parse_double_token(fields[1], path));
        us.push_back(parse_double_token(fields[2], path));
    }
    if (xs.empty()) throw std::runtime_error(path + ": no data rows");

    std::size_t nx = 1;
    while (nx < xs.size() && ys[nx] == ys[0]) ++nx;
    if (xs.size() % nx != 0) {
        throw std::runtime_error(path + ": rows do not form a lattice");
    }
    const std::size_t ny = xs.size() / nx;

    FieldTable table;
    table.x.assign(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(nx));
    table.y.resize(ny);
    table.u = Matrix(ny, nx);
    for (std::size_t r = 0; r < ny; ++r) {
        table.y[r] = ys[r * nx];
        for (std::size_t c = 0; c < nx; ++c) {
            const std::size_t k = r * nx + c;
            if (xs[k] != table.x[c] || ys[k] != table.y[r]) {
                throw std::runtime_error(path + ": inconsistent lattice at row " +
                                         std::to_string(k + 2));
            }
            table.u(r, c) = us[k];
        }
    }
    return table;
}

void write_field_vtk(const std::string& path, const FieldTable& table) {
    const std::size_t nx = table.x.size();
    const std::size_t ny = table.y.size();
    std::ofstream out = open_out(path);
    out << "# vtk DataFile Version 3.0\n";
    out << "plate deflection\n";
    out << "ASCII\n";
    out << "DATASET STRUCTURED_GRID\n";
    out << "DIMENSIONS " << nx << ' ' << ny << " 1\n";
    out << "POINTS " << nx * ny << " double\n";
    for (std::size_t r = 0; r < ny; ++r) {
        for (std::size_t c = 0; c < nx; ++c) {
            out << format_double(table.x[c]) << ' ' << format_double(table.y[r])
                << " 0\n";
        }
    }
    out << "POINT_DATA " << nx * ny << '\n';
    out << "SCALARS u double 1\n";
    out << "LOOKUP_TABLE default\n";
    for (std::size_t r = 0; r < ny; ++r) {
        for (std::size_t c = 0; c < nx; ++c) {
            out << format_double(table.u(r, c)) << '\n';
        }
    }
}

FieldTable read_field_vtk(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    std::size_t nx = 0, ny = 0, nz = 0;
    bool have_dims = false;

    auto next_tokens = [&](const std::string& want) {
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            std::string word;
            ls >> word;
            if (word == want) return ls;
        }
        throw std::runtime_error(path + ": missing " + want + " section");
    };

    {
        std::istringstream ls = next_tokens("DIMENSIONS");
        ls >> nx >> ny >> nz;
        if (!ls || nx < 1 || ny < 1 || nz != 1) {
            throw std::runtime_error(path + ": bad DIMENSIONS line");
        }
        have_dims = true;
    }
    (void)have_dims;

    std::size_t n_points = 0;
    {
        std::istringstream ls = next_tokens("POINTS");
        ls >> n_points;
        if (!ls || n_points != nx * ny) {
            throw std::runtime_error(path + ": POINTS count mismatch");
        }
    }

    FieldTable table;
    table.x.resize(nx);
    table.y.resize(ny);
    table.u = Matrix(ny, nx);
    for (std::size_t k = 0; k < n_points; ++k) {
        double px = 0, py = 0, pz = 0;
        if (!(in >> px >> py >> pz)) {
            throw std::runtime_error(path + ": truncated POINTS block");
        }
        const std::size_t r = k / nx;
        const std::size_t c = k % nx;
        if (r == 0) table.x[c] = px;
        if (c == 0) table.y[r] = py;
        if (px != table.x[c] || py != table.y[r]) {
            throw std::runtime_error(path + ": POINTS block is not a lattice");
        }
    }
    std::getline(in, line);  // finish the partially consumed line

    next_tokens("POINT_DATA");
    {
        std::istringstream ls = next_tokens("SCALARS");
        std::string name;
        ls >> name;
        if (name != "u") {
            throw std::runtime_error(path + ": expected SCALARS u, got " + name);
        }
    }
    next_tokens("LOOKUP_TABLE");
    for (std::size_t k = 0; k < n_points; ++k) {
        double v = 0;
        if (!(in >> v)) {
            throw std::runtime_error(path + ": truncated scalar block");
        }
        table.u(k / nx, k % nx) = v;
    }
    return table;
}

void write_field_nodes_csv(const std::string& path, const Field& field) {
    const GridSpec& grid = field.disc->grid;
    std::ofstream out = open_out(path);
    out << "i,j,x,y,u\n";
    for (std::size_t j = 1; j <= grid.n2; ++j) {
        for (std::size_t i = 1; i <= grid.n1_bar; ++i) {
            const std::size_t t0 = (j - 1) * grid.n1_bar + (i - 1);
            out << i << ',' << j << ',' << format_double(grid.x_nodes[i]) << ','
                << format_double(grid.y_nodes[j - 1]) << ','
                << format_double(field.coeffs[t0]) << '\n';
        }
    }
}

Field read_field_nodes_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    expect_header(in, "i,j,x,y,u", path);

    struct Row {
        std::size_t i, j;
        double x, y, u;
    };
    std::vector<Row> rows;
    std::string line;
    std::size_t max_i = 0, max_j = 0;
    double max_y = 0.0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 5) {
            throw std::runtime_error(path + ": expected 5 columns");
        }
        Row row;
        const long long i = parse_int_token(fields[0], path);
        const long long j = parse_int_token(fields[1], path);
        if (i < 1 || j < 1) throw std::runtime_error(path + ": indices must be 1-based");
        row.i = static_cast<std::size_t>(i);
        row.j = static_cast<std::size_t>(j);
        row.x = parse_double_token(fields[2], path);
        row.y = parse_double_token(fields[3], path);
        row.u = parse_double_token(fields[4], path);
        max_i = std::max(max_i, row.i);
        max_j = std::max(max_j, row.j);
        max_y = std::max(max_y, std::abs(row.y));
        rows.push_back(row);
    }
    if (rows.empty()) throw std::runtime_error(path + ": no data rows");
    if (max_j < 4 || (max_j - 1) % 3 != 0) {
        throw std::runtime_error(path + ": node count is not 3*m2 + 1 in y");
    }
    if (rows.size() != max_i * max_j) {
        throw std::runtime_error(path + ": incomplete node lattice");
    }

    GridSpec grid = make_grid(max_i + 2, (max_j - 1) / 3, max_y);
    Field field{build_discretization(grid), Vector(grid.dof,
                std::numeric_limits<double>::quiet_NaN())};
    for (const Row& row : rows) {
        const double gx = grid.x_nodes[row.i];
        const double gy = grid.y_nodes[row.j - 1];
        if (std::abs(row.x - gx) > 1e-12 || std::abs(row.y - gy) > 1e-12) {
            throw std::runtime_error(path + ": node coordinates disagree with grid");
        }
        field.coeffs[(row.j - 1) * grid.n1_bar + (row.i - 1)] = row.u;
    }
    for (double v : field.coeffs) {
        if (std::isnan(v)) {
            throw std::runtime_error(path + ": duplicate or missing node rows");
        }
    }
    return field;
}

void write_sweep_header(std::ostream& out) {
    out << "alpha,modality,zero_count,amplitude,l2,energy,flag\n";
}

void write_sweep_record(std::ostream& out, const SweepRecord& record) {
    out << format_double(record.alpha) << ',' << record.modality_m << ','
        << record.zero_count << ',' << format_double(record.amplitude) << ','
        << format_double(record.l2) << ',' << format_double(record.energy) << ','
        << (record.flagged ? 1 : 0) << '\n';
}

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRecord>& records) {
    std::ofstream out = open_out(path);
    write_sweep_header(out);
    for (const SweepRecord& record : records) write_sweep_record(out, record);
}

std::vector<SweepRecord> read_sweep_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    expect_header(in, "alpha,modality,zero_count,amplitude,l2,energy,flag", path);
    std::vector<SweepRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 7) {
            throw std::runtime_error(path + ": expected 7 columns");
        }
        SweepRecord rec;
        rec.alpha = parse_double_token(fields[0], path);
        rec.modality_m = static_cast<int>(parse_int_token(fields[1], path));
        rec.zero_count = static_cast<int>(parse_int_token(fields[2], path));
        rec.amplitude = parse_double_token(fields[3], path);
        rec.l2 = parse_double_token(fields[4], path);
        rec.energy = parse_double_token(fields[5], path);
        rec.flagged = parse_int_token(fields[6], path) != 0;
        records.push_back(rec);
    }
    return records;
}

void write_thresholds_csv(const std::string& path,
                          const std::vector<ModalityBand>& bands) {
    std::ofstream out = open_out(path);
    out << "alpha_lo,alpha_hi,m\n";
    for (const ModalityBand& band : bands) {
        out << format_double(band.alpha_lo) << ',' << format_double(band.alpha_hi)
            << ',' << band.modality_m << '\n';
    }
}

}  // namespace platefsi
