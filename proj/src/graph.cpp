#include "scd/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "scd/errors.hpp"

namespace scd {

const char* cut_name(Cut cut) {
    return cut == Cut::ratio ? "ratio" : "normalized";
}

Cut cut_from_name(const std::string& name) {
    if (name == "ratio") return Cut::ratio;
    if (name == "normalized") return Cut::normalized;
    throw InvalidInputError("unknown cut '" + name + "' (expected ratio|normalized)");
}

Matrix pairwise_sq_dists(const Matrix& x) {
    if (x.rows() < 2)
        throw InvalidInputError("pairwise_sq_dists: need at least 2 rows");
    const Eigen::Index n = x.rows();
    Vector sq = x.rowwise().squaredNorm();
    Matrix d = sq.replicate(1, n) + sq.transpose().replicate(n, 1) - 2.0 * (x * x.transpose());
    d = d.cwiseMax(0.0);
    d.diagonal().setZero();
    d = 0.5 * (d + d.transpose());
    return d;
}

Matrix can_weights(const Matrix& sq_dists, int k) {
    const Eigen::Index n = sq_dists.rows();
    if (sq_dists.cols() != n)
        throw InvalidInputError("can_weights: distance matrix must be square");
    if (k < 1 || k > static_cast<int>(n) - 2)
        throw InvalidInputError("can_weights: requires 1 <= k <= n-2");

    Matrix w = Matrix::Zero(n, n);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n) - 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        // rank non-self distances, ties to the smaller index
        std::size_t m = 0;
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != i) order[m++] = j;
        std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
            return sq_dists(i, a) < sq_dists(i, b);
        });

        double d_cut = sq_dists(i, order[static_cast<std::size_t>(k)]); // (k+1)-th nearest
        double near_sum = 0.0;
        for (int m2 = 0; m2 < k; ++m2) near_sum += sq_dists(i, order[static_cast<std::size_t>(m2)]);
        double denom = static_cast<double>(k) * d_cut - near_sum;
        if (!(denom > 0.0))
            throw InvalidInputError("can_weights: degenerate neighborhood at row " +
                                    std::to_string(i) + " (k+1 nearest distances equal)");
        for (int m2 = 0; m2 < k; ++m2) {
            Eigen::Index j = order[static_cast<std::size_t>(m2)];
            w(i, j) = std::max(d_cut - sq_dists(i, j), 0.0) / denom;
        }
    }
    return w;
}

namespace {

Graph finalize_graph(Matrix s, Cut cut, int neighbor_k) {
    const Eigen::Index n = s.rows();
    Vector row_sums = s.rowwise().sum();
    Graph g;
    g.cut = cut;
    g.neighbor_k = neighbor_k;
    if (cut == Cut::ratio) {
        g.degrees = Vector::Ones(n);
        g.laplacian = Matrix(row_sums.asDiagonal()) - s;
    } else {
        for (Eigen::Index i = 0; i < n; ++i)
            if (!(row_sums(i) > 0.0))
                throw InvalidInputError("build_graph: vertex " + std::to_string(i) +
                                        " has zero degree (disconnected under normalized cut)");
        g.degrees = row_sums;
        Vector inv_sqrt = row_sums.array().rsqrt();
        g.laplacian = Matrix::Identity(n, n) -
                      Matrix(inv_sqrt.asDiagonal()) * s * Matrix(inv_sqrt.asDiagonal());
        g.laplacian = 0.5 * (g.laplacian + g.laplacian.transpose());
    }
    g.weights = std::move(s);
    return g;
}

} // namespace

Graph build_graph(const Matrix& features, int k, Cut cut) {
    Matrix d = pairwise_sq_dists(features);
    Matrix w = can_weights(d, k);
    Matrix s = 0.5 * (w + w.transpose());
    return finalize_graph(std::move(s), cut, k);
}

Graph build_graph_from_weights(Matrix s, Cut cut) {
    const Eigen::Index n = s.rows();
    if (s.cols() != n || n < 2)
        throw InvalidInputError("build_graph: weight matrix must be square with n >= 2");
    double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
    if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw InvalidInputError("build_graph: weight matrix must be symmetric");
    if (s.minCoeff() < 0.0)
        throw InvalidInputError("build_graph: weight matrix has a negative entry");
    if (s.diagonal().cwiseAbs().maxCoeff() > 0.0)
        throw InvalidInputError("build_graph: weight matrix must have a zero diagonal");
    s = 0.5 * (s + s.transpose());
    return finalize_graph(std::move(s), cut, 0);
}

} // namespace scd
