#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"

namespace gfvfa::io {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

inline std::string column_header(std::string_view prefix, Index cols) {
    std::string h;
    for (Index c = 0; c < cols; ++c) {
        if (c) h += ',';
        h += std::string(prefix) + std::to_string(c + 1);
    }
    return h;
}

/// Real matrix as CSV under a header naming columns `<prefix>1..N`.
inline std::string matrix_csv(const RealMatrix& m, std::string_view prefix = "c") {
    std::string out = column_header(prefix, m.cols()) + "\n";
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
            if (c) out += ',';
            out += format_double(m(r, c));
        }
        out += '\n';
    }
    return out;
}

/// Complex vector as two-column CSV (real, imag); row i is vertex i+1.
inline std::string complex_vector_csv(const ComplexVector& v) {
    std::string out = "real,imag\n";
    for (Index i = 0; i < v.size(); ++i) out += format_double(v(i).real()) + "," + format_double(v(i).imag()) + "\n";
    return out;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

inline bool parse_number(const std::string& cell, double& out) {
    if (cell.empty()) return false;
    try {
        std::size_t used = 0;
        out = std::stod(cell, &used);
        return used == cell.size();
    } catch (const std::logic_error&) {
        return false;
    }
}

}  // namespace detail

/// Numeric CSV reader. '#' lines and blank lines are skipped; a first row
/// with any non-numeric cell is treated as a header. Rows must not be ragged.
inline RealMatrix parse_csv_matrix(std::string_view text, std::string_view source = "csv") {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<std::vector<double>> rows;
    bool first = true;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
        const auto cells = detail::split_csv_line(line);
        std::vector<double> values(cells.size());
        bool numeric = true;
        for (std::size_t i = 0; i < cells.size(); ++i) numeric = numeric && detail::parse_number(cells[i], values[i]);
        if (!numeric) {
            if (first) {
                first = false;
                continue;
            }
            throw ParseError(std::string(source) + " line " + std::to_string(line_no) + ": non-numeric cell");
        }
        first = false;
        if (!rows.empty() && values.size() != rows.front().size())
            throw ParseError(std::string(source) + " line " + std::to_string(line_no) + ": ragged row (" +
                             std::to_string(values.size()) + " cells, expected " +
                             std::to_string(rows.front().size()) + ")");
        rows.push_back(std::move(values));
    }
    if (rows.empty()) throw ParseError(std::string(source) + ": no numeric rows");
    RealMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
    return m;
}

inline RealMatrix read_csv_matrix(const std::filesystem::path& path) {
    return parse_csv_matrix(read_text(path), path.string());
}

/// Reads a (real, imag) CSV or a single real column as a complex vector.
inline ComplexVector parse_complex_vector(std::string_view text, std::string_view source = "csv") {
    const RealMatrix m = parse_csv_matrix(text, source);
    if (m.cols() == 1) return m.col(0).cast<Complex>();
    if (m.cols() != 2) throw ParseError(std::string(source) + ": expected one or two columns");
    ComplexVector v(m.rows());
    for (Index i = 0; i < m.rows(); ++i) v(i) = Complex(m(i, 0), m(i, 1));
    return v;
}

inline ComplexVector read_complex_vector(const std::filesystem::path& path) {
    return parse_complex_vector(read_text(path), path.string());
}

/// Writes `<stem>.re.csv` and `<stem>.im.csv`.
inline void write_complex_matrix(const std::filesystem::path& stem, const ComplexMatrix& m,
                                 std::string_view prefix = "c") {
    write_text(stem.string() + ".re.csv", matrix_csv(m.real(), prefix));
    write_text(stem.string() + ".im.csv", matrix_csv(m.imag(), prefix));
}

inline ComplexMatrix read_complex_matrix(const std::filesystem::path& stem) {
    const RealMatrix re = read_csv_matrix(stem.string() + ".re.csv");
    const RealMatrix im = read_csv_matrix(stem.string() + ".im.csv");
    if (re.rows() != im.rows() || re.cols() != im.cols())
        throw ParseError("real and imaginary parts of '" + stem.string() + "' differ in shape");
    ComplexMatrix m(re.rows(), re.cols());
    m.real() = re;
    m.imag() = im;
    return m;
}

/// 8-bit binary PGM of |m|, scaled so the largest magnitude maps to 255.
inline std::string magnitude_pgm(const ComplexMatrix& m) {
    const RealMatrix mag = m.cwiseAbs();
    const double peak = mag.size() ? mag.maxCoeff() : 0.0;
    std::string out = "P5\n" + std::to_string(m.cols()) + " " + std::to_string(m.rows()) + "\n255\n";
    out.reserve(out.size() + static_cast<std::size_t>(m.size()));
    for (Index r = 0; r < m.rows(); ++r)
        for (Index c = 0; c < m.cols(); ++c) {
            const double level = peak > 0.0 ? std::round(255.0 * mag(r, c) / peak) : 0.0;
            out.push_back(static_cast<char>(static_cast<unsigned char>(std::clamp(level, 0.0, 255.0))));
        }
    return out;
}

/// Writes the paired real/imag CSVs, `<stem>.abs.csv` and `<stem>.pgm`.
inline void write_distribution(const std::filesystem::path& stem, const ComplexMatrix& m) {
    write_complex_matrix(stem, m, "k");
    write_text(stem.string() + ".abs.csv", matrix_csv(m.cwiseAbs(), "k"));
    write_text(stem.string() + ".pgm", magnitude_pgm(m));
}

struct ColumnStats {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
};

struct IngestedSignal {
    ComplexVector values;
    ColumnStats stats;
};

/// Column `column` (1-based) of a numeric CSV as a real graph signal.
inline IngestedSignal ingest_matrix_csv(const std::filesystem::path& path, Index column) {
    const RealMatrix m = read_csv_matrix(path);
    if (column < 1 || column > m.cols())
        throw InvalidArgument("column " + std::to_string(column) + " out of range (1.." + std::to_string(m.cols()) + ")");
    const RealVector col = m.col(column - 1);
    return {col.cast<Complex>(), {col.minCoeff(), col.maxCoeff(), col.mean()}};
}

}  // namespace gfvfa::io
