#pragma once

#include <string>

#include "scd/numerics.hpp"

namespace scd {

enum class Cut { ratio, normalized };

const char* cut_name(Cut cut);
Cut cut_from_name(const std::string& name); // "ratio" | "normalized"

struct Graph {
    Matrix weights;   // symmetric, nonnegative, zero diagonal
    Vector degrees;   // the D of the scaled indicator: ones for ratio cut, row sums for normalized
    Matrix laplacian; // Deg - S (ratio) or I - Deg^{-1/2} S Deg^{-1/2} (normalized)
    Cut cut = Cut::ratio;
    int neighbor_k = 0; // 0 when built from a raw weight matrix
    int size() const { return static_cast<int>(weights.rows()); }
};

// Squared Euclidean distances between rows of x, exact zero diagonal.
Matrix pairwise_sq_dists(const Matrix& x);

// Adaptive-neighbor weights: each row i weights its k nearest rows (self
// excluded, distance ties broken to the smaller index) as
//   w_ij = (d_{k+1} - d_ij) / (k d_{k+1} - sum_{m<=k} d_m)
// so rows sum to 1 and the (k+1)-th neighbor gets weight zero. Requires
// 1 <= k <= n-2; a row whose k+1 nearest distances are all equal has a zero
// denominator and is rejected as a degenerate neighborhood.
Matrix can_weights(const Matrix& sq_dists, int k);

// Graph from feature rows: symmetrized adaptive-neighbor weights plus the
// Laplacian of the requested cut.
Graph build_graph(const Matrix& features, int k, Cut cut);

// Graph from a raw weight matrix: must be square, symmetric within 1e-12,
// nonnegative, zero diagonal. Normalized cut rejects zero-degree vertices.
Graph build_graph_from_weights(Matrix s, Cut cut);

} // namespace scd
