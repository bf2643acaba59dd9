#include "scd/dataset.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "scd/errors.hpp"
#include "scd/rng.hpp"

namespace scd {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_cell(const std::string& cell, std::size_t line_no, std::size_t col_no) {
    std::string t = trim(cell);
    if (t.empty())
        throw InvalidInputError("csv: empty cell at line " + std::to_string(line_no) +
                                ", column " + std::to_string(col_no));
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v))
        throw InvalidInputError("csv: non-numeric cell '" + t + "' at line " +
                                std::to_string(line_no) + ", column " + std::to_string(col_no));
    return v;
}

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

DataMatrix load_csv_matrix(const std::string& path, const CsvOptions& opts) {
    std::ifstream in(path);
    if (!in)
        throw InvalidInputError("csv: cannot open file '" + path + "'");

    std::vector<std::pair<std::size_t, std::string>> lines; // (1-based line number, text)
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        lines.emplace_back(line_no, raw);
    }
    while (!lines.empty() && trim(lines.back().second).empty())
        lines.pop_back();
    if (opts.has_header) {
        if (lines.empty())
            throw InvalidInputError("csv: file '" + path + "' has no data rows");
        lines.erase(lines.begin());
    }
    if (lines.empty())
        throw InvalidInputError("csv: file '" + path + "' has no data rows");

    std::size_t cols = 0;
    std::vector<std::vector<double>> rows;
    rows.reserve(lines.size());
    for (const auto& [no, text] : lines) {
        if (trim(text).empty())
            throw InvalidInputError("csv: blank line " + std::to_string(no));
        std::vector<std::string> cells = split_commas(text);
        if (cols == 0) cols = cells.size();
        if (cells.size() != cols)
            throw InvalidInputError("csv: ragged row at line " + std::to_string(no) +
                                    " (expected " + std::to_string(cols) + " cells, got " +
                                    std::to_string(cells.size()) + ")");
        std::vector<double> vals(cells.size());
        for (std::size_t j = 0; j < cells.size(); ++j)
            vals[j] = parse_cell(cells[j], no, j + 1);
        rows.push_back(std::move(vals));
    }

    std::size_t feat_cols = cols;
    if (opts.labels_last) {
        if (cols < 2)
            throw InvalidInputError("csv: label column requires at least 2 columns");
        feat_cols = cols - 1;
    }

    DataMatrix out;
    out.features.resize(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(feat_cols));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < feat_cols; ++j)
            out.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        if (opts.labels_last) {
            double lv = rows[i][feat_cols];
            double nearest = std::nearbyint(lv);
            if (std::abs(lv - nearest) > 1e-9)
                throw InvalidInputError("csv: label at line " + std::to_string(lines[i].first) +
                                        " is not an integer");
            out.labels.push_back(static_cast<int>(nearest));
        }
    }
    return out;
}

std::string matrix_to_csv(const Matrix& m, const std::vector<int>* labels) {
    if (labels && static_cast<Eigen::Index>(labels->size()) != m.rows())
        throw InvalidInputError("csv: label count does not match row count");
    std::ostringstream out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        if (labels) out << ',' << (*labels)[static_cast<std::size_t>(i)];
        out << '\n';
    }
    return out.str();
}

void save_csv_matrix(const Matrix& m, const std::string& path, const std::vector<int>* labels) {
    std::ofstream out(path);
    if (!out)
        throw InvalidInputError("csv: cannot write file '" + path + "'");
    out << matrix_to_csv(m, labels);
    if (!out)
        throw InvalidInputError("csv: write failed for '" + path + "'");
}

DataMatrix gen_blobs(int n, int c, int dim, double spread, std::uint64_t seed) {
    if (c < 2 || n < c)
        throw InvalidInputError("gen_blobs: requires n >= c >= 2");
    if (dim < 1)
        throw InvalidInputError("gen_blobs: dim must be >= 1");
    if (!(spread > 0.0))
        throw InvalidInputError("gen_blobs: spread must be positive");

    std::mt19937_64 gen(seed);
    DataMatrix out;
    out.features.resize(n, dim);
    out.labels.reserve(static_cast<std::size_t>(n));

    int base = n / c, extra = n % c;
    int row = 0;
    for (int k = 0; k < c; ++k) {
        int size = base + (k < extra ? 1 : 0);
        double center0 = 8.0 * spread * static_cast<double>(k);
        for (int i = 0; i < size; ++i, ++row) {
            for (int d = 0; d < dim; ++d) {
                double offset = spread * normal01(gen);
                out.features(row, d) = (d == 0 ? center0 : 0.0) + offset;
            }
            out.labels.push_back(k);
        }
    }
    return out;
}

Matrix gen_random_graph(int n, std::uint64_t seed) {
    if (n < 3)
        throw InvalidInputError("gen_random_graph: n must be >= 3");
    std::mt19937_64 gen(seed);
    Matrix a = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) a(i, j) = uniform01(gen);
    return 0.5 * (a + a.transpose());
}

} // namespace scd
