#include "scd/theory.hpp"

#include <algorithm>
#include <cmath>

#include "scd/errors.hpp"

namespace scd {

double j_kmeans(const Matrix& basis, const Assignment& y) {
    y.validate();
    if (basis.rows() != static_cast<Eigen::Index>(y.size()))
        throw InvalidInputError("j_kmeans: basis rows and label count differ");
    const int c = y.num_clusters;
    Matrix means = Matrix::Zero(c, basis.cols());
    std::vector<int> counts = y.cluster_sizes();
    for (int i = 0; i < y.size(); ++i)
        means.row(y.labels[static_cast<std::size_t>(i)]) += basis.row(i);
    for (int j = 0; j < c; ++j)
        means.row(j) /= static_cast<double>(counts[static_cast<std::size_t>(j)]);
    double total = 0.0;
    for (int i = 0; i < y.size(); ++i)
        total += (basis.row(i) - means.row(y.labels[static_cast<std::size_t>(i)])).squaredNorm();
    return total;
}

double j_isr(const Matrix& basis, const Assignment& y, const Graph& g) {
    if (basis.cols() != static_cast<Eigen::Index>(y.num_clusters))
        throw InvalidInputError("j_isr: basis columns and cluster count differ");
    Matrix cross = basis.transpose() * scaled_indicator(y, g);
    double nuclear = thin_svd(cross).singular_values.sum();
    return basis.squaredNorm() + static_cast<double>(y.num_clusters) - 2.0 * nuclear;
}

SandwichReport sandwich_check(const Matrix& basis, const Assignment& y) {
    y.validate();
    if (basis.rows() != static_cast<Eigen::Index>(y.size()) ||
        basis.cols() != static_cast<Eigen::Index>(y.num_clusters))
        throw InvalidInputError("sandwich_check: basis shape must be n x c");
    const int c = y.num_clusters;
    std::vector<int> counts = y.cluster_sizes();

    // (Y^T Y)^{-1/2} Y^T basis: row j is the scaled column sum of cluster j
    Matrix w = Matrix::Zero(c, basis.cols());
    for (int i = 0; i < y.size(); ++i)
        w.row(y.labels[static_cast<std::size_t>(i)]) += basis.row(i);
    for (int j = 0; j < c; ++j)
        w.row(j) /= std::sqrt(static_cast<double>(counts[static_cast<std::size_t>(j)]));

    SandwichReport report;
    report.sigma = thin_svd(w).singular_values;
    report.j_kmeans = j_kmeans(basis, y);
    report.j_isr = basis.squaredNorm() + static_cast<double>(c) - 2.0 * report.sigma.sum();
    report.eps_var = 0.0;
    for (Eigen::Index i = 0; i < report.sigma.size(); ++i) {
        double s = report.sigma(i);
        report.eps_var = std::max(report.eps_var, (1.0 - s) / (1.0 + s));
    }
    report.eps_var = std::max(report.eps_var, 0.0);
    report.eps = report.eps_var + 2.0 * std::sqrt(report.eps_var);
    return report;
}

RhoReport rho_report_for_residual(const EigenDecomposition& laplacian_eig,
                                  const Matrix& residual) {
    const Vector& lambda = laplacian_eig.eigenvalues;
    const Eigen::Index n = lambda.size();
    if (laplacian_eig.eigenvectors.rows() != residual.rows())
        throw InvalidInputError("rho: residual rows and eigenvector rows differ");
    double lambda_max = lambda(n - 1);
    if (!(lambda_max > 0.0))
        throw InvalidInputError("rho: graph has no nonzero eigenvalue (degenerate)");
    const double cutoff = 1e-9 * lambda_max;

    RhoReport report;
    report.lambda_max = lambda_max;
    report.lambda_min = 0.0;
    report.rho_sq = 0.0;
    report.l_delta = 0.0;
    // projections onto each eigenvector give both tr(D^T L D) and the
    // non-null-space mass in one pass
    for (Eigen::Index i = 0; i < n; ++i) {
        double mass = (laplacian_eig.eigenvectors.col(i).transpose() * residual).squaredNorm();
        report.l_delta += lambda(i) * mass;
        if (lambda(i) >= cutoff) {
            if (report.lambda_min == 0.0) report.lambda_min = lambda(i); // ascending order
            report.rho_sq += mass;
        }
    }
    return report;
}

RhoReport rho_check(const RelaxedSolution& rs, const Assignment& y, const Graph& g) {
    EigenDecomposition eig = sym_eig(g.laplacian);
    Matrix indicator = scaled_indicator(y, g);
    Matrix rotation = procrustes(rs.basis.transpose() * indicator);
    Matrix residual = indicator - rs.basis * rotation;
    return rho_report_for_residual(eig, residual);
}

} // namespace scd
