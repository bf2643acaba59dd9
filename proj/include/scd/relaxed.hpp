#pragma once

#include <vector>

#include "scd/graph.hpp"
#include "scd/numerics.hpp"

namespace scd {

// Hard clustering of n points into clusters 0..num_clusters-1.
struct Assignment {
    std::vector<int> labels;
    int num_clusters = 0;

    int size() const { return static_cast<int>(labels.size()); }
    // Throws InvalidInputError on out-of-range labels or empty clusters.
    void validate() const;
    std::vector<int> cluster_sizes() const; // counts per cluster id
};

// Relabels so cluster ids appear in first-occurrence order; two assignments
// describe the same partition iff their canonical label vectors are equal.
std::vector<int> canonical_labels(const std::vector<int>& labels);
bool same_partition(const std::vector<int>& a, const std::vector<int>& b);

struct RelaxedSolution {
    Matrix basis;      // n x c, orthonormal columns spanning the bottom eigenspace
    Vector eigenvalues; // all n Laplacian eigenvalues, ascending
    Cut cut = Cut::ratio;

    int clusters() const { return static_cast<int>(basis.cols()); }
    // Sum of the c smallest eigenvalues: a lower bound on any cut objective.
    double lower_bound() const;
};

// Bottom-c eigenvectors of the graph Laplacian. Requires 2 <= c <= n-1.
RelaxedSolution solve_relaxed(const Graph& g, int c);

// Scaled indicator f(Y) = D^{1/2} Y (Y^T D Y)^{-1/2}: column j is supported on
// cluster j with entries sqrt(d_i / sum_{k in C_j} d_k). Orthonormal columns.
// Throws InvalidInputError if a cluster is empty.
Matrix scaled_indicator(const Assignment& y, const Vector& degrees);
Matrix scaled_indicator(const Assignment& y, const Graph& g);

// tr(G^T L G); for a scaled indicator this is the graph-cut objective of the
// partition (sum over clusters of cut weight divided by size or volume).
double cut_objective(const Matrix& g_mat, const Graph& g);
double cut_objective(const Assignment& y, const Graph& g);

} // namespace scd
