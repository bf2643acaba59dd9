#include "scd/relaxed.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

#include "scd/errors.hpp"

namespace scd {

void Assignment::validate() const {
    if (num_clusters < 1)
        throw InvalidInputError("assignment: cluster count must be positive");
    std::vector<int> counts(static_cast<std::size_t>(num_clusters), 0);
    for (int v : labels) {
        if (v < 0 || v >= num_clusters)
            throw InvalidInputError("assignment: label " + std::to_string(v) +
                                    " outside [0, " + std::to_string(num_clusters) + ")");
        ++counts[static_cast<std::size_t>(v)];
    }
    for (int j = 0; j < num_clusters; ++j)
        if (counts[static_cast<std::size_t>(j)] == 0)
            throw InvalidInputError("assignment: cluster " + std::to_string(j) + " is empty");
}

std::vector<int> Assignment::cluster_sizes() const {
    std::vector<int> counts(static_cast<std::size_t>(num_clusters), 0);
    for (int v : labels) {
        if (v >= 0 && v < num_clusters) ++counts[static_cast<std::size_t>(v)];
    }
    return counts;
}

std::vector<int> canonical_labels(const std::vector<int>& labels) {
    std::vector<int> out(labels.size());
    std::unordered_map<int, int> remap;
    int next = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = remap.try_emplace(labels[i], next);
        if (inserted) ++next;
        out[i] = it->second;
    }
    return out;
}

bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    return canonical_labels(a) == canonical_labels(b);
}

double RelaxedSolution::lower_bound() const {
    return eigenvalues.head(clusters()).sum();
}

RelaxedSolution solve_relaxed(const Graph& g, int c) {
    const int n = g.size();
    if (c < 2 || c > n - 1)
        throw InvalidInputError("solve_relaxed: requires 2 <= c <= n-1");
    EigenDecomposition eig = sym_eig(g.laplacian);
    RelaxedSolution rs;
    rs.basis = eig.eigenvectors.leftCols(c);
    rs.eigenvalues = eig.eigenvalues;
    rs.cut = g.cut;
    return rs;
}

Matrix scaled_indicator(const Assignment& y, const Vector& degrees) {
    y.validate();
    const int n = y.size();
    if (static_cast<Eigen::Index>(n) != degrees.size())
        throw InvalidInputError("scaled_indicator: degree count does not match labels");
    const int c = y.num_clusters;
    Vector volumes = Vector::Zero(c);
    for (int i = 0; i < n; ++i)
        volumes(y.labels[static_cast<std::size_t>(i)]) += degrees(i);
    Matrix g_mat = Matrix::Zero(n, c);
    for (int i = 0; i < n; ++i) {
        int j = y.labels[static_cast<std::size_t>(i)];
        g_mat(i, j) = std::sqrt(degrees(i) / volumes(j));
    }
    return g_mat;
}

Matrix scaled_indicator(const Assignment& y, const Graph& g) {
    return scaled_indicator(y, g.degrees);
}

double cut_objective(const Matrix& g_mat, const Graph& g) {
    if (g_mat.rows() != g.laplacian.rows())
        throw InvalidInputError("cut_objective: dimension mismatch");
    return (g_mat.transpose() * g.laplacian * g_mat).trace();
}

double cut_objective(const Assignment& y, const Graph& g) {
    return cut_objective(scaled_indicator(y, g), g);
}

} // namespace scd
