#pragma once

#include "scd/relaxed.hpp"

namespace scd {

// Within-cluster sum of squares of the basis rows around their cluster means.
double j_kmeans(const Matrix& basis, const Assignment& y);

// min over rotations of ||f(Y) - basis R||_F^2, closed form via the nuclear
// norm of basis^T f(Y). f(Y) uses the graph's degree convention.
double j_isr(const Matrix& basis, const Assignment& y, const Graph& g);

struct SandwichReport {
    double j_kmeans = 0.0;
    double j_isr = 0.0;     // rotation distance with the unweighted indicator
    Vector sigma;           // singular values of (Y^T Y)^{-1/2} Y^T basis
    double eps_var = 0.0;   // max_i max(0, (1 - sigma_i) / (1 + sigma_i))
    double eps = 0.0;       // eps_var + 2 sqrt(eps_var)
};

// The two objectives above on the same assignment (unweighted indicator, as
// under the ratio cut) plus the spread factor that brackets them:
//   j_kmeans <= j_isr <= (1 + eps) j_kmeans.
SandwichReport sandwich_check(const Matrix& basis, const Assignment& y);

struct RhoReport {
    double rho_sq = 0.0;      // ||P Delta||_F^2, P = projector onto nonzero eigenspace
    double l_delta = 0.0;     // tr(Delta^T L Delta)
    double lambda_min = 0.0;  // smallest nonzero Laplacian eigenvalue
    double lambda_max = 0.0;  // largest Laplacian eigenvalue
};

// Residual Delta = f(Y) - basis R with R the Procrustes alignment; the report
// satisfies lambda_min * rho_sq <= l_delta <= lambda_max * rho_sq.
// Eigenvalues below 1e-9 * lambda_max count as zero; a graph with no nonzero
// eigenvalue is rejected.
RhoReport rho_check(const RelaxedSolution& rs, const Assignment& y, const Graph& g);

// Same report for an explicit residual matrix.
RhoReport rho_report_for_residual(const EigenDecomposition& laplacian_eig,
                                  const Matrix& residual);

} // namespace scd
