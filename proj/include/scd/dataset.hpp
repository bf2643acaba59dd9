#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scd/numerics.hpp"

namespace scd {

struct DataMatrix {
    Matrix features;         // n x d
    std::vector<int> labels; // empty when the source had no labels
    bool has_labels() const { return !labels.empty(); }
};

struct CsvOptions {
    bool has_header = false;
    bool labels_last = false; // last column holds integer class labels
};

// Reads a rectangular numeric CSV. Ragged rows, non-numeric cells and empty
// files are rejected with messages naming the 1-based file line.
DataMatrix load_csv_matrix(const std::string& path, const CsvOptions& opts = {});

// Writes a matrix as CSV with round-trip precision (%.17g). When labels are
// given they become the last column.
void save_csv_matrix(const Matrix& m, const std::string& path,
                     const std::vector<int>* labels = nullptr);

// Same serialization as save_csv_matrix, returned as a string.
std::string matrix_to_csv(const Matrix& m, const std::vector<int>* labels = nullptr);

// Gaussian blobs: c clusters of isotropic spread around centers placed on the
// first axis 8*spread apart, sizes balanced (first n mod c clusters get one
// extra point). Labels are cluster ids 0..c-1. Requires n >= c >= 2, dim >= 1,
// spread > 0.
DataMatrix gen_blobs(int n, int c, int dim, double spread, std::uint64_t seed);

// Dense symmetric weight matrix with zero diagonal and i.i.d. uniform(0,1)
// off-diagonal weights. Requires n >= 3.
Matrix gen_random_graph(int n, std::uint64_t seed);

std::string format_double(double v); // %.17g

} // namespace scd
