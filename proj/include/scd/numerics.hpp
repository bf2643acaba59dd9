#pragma once

#include <Eigen/Dense>

namespace scd {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct EigenDecomposition {
    Vector eigenvalues;  // ascending
    Matrix eigenvectors; // column i pairs with eigenvalues[i]
};

struct SvdResult {
    Matrix u;
    Vector singular_values; // descending, nonnegative
    Matrix v;
};

// Full eigendecomposition of a symmetric matrix. Eigenvalues ascending;
// eigenvectors orthonormal with a deterministic sign (first component of each
// column with magnitude > 1e-12 is made positive). Rejects non-square or
// asymmetric input; throws NumericalError if the solver fails.
EigenDecomposition sym_eig(const Matrix& a);

// Thin SVD, singular values descending, deterministic sign convention applied
// to the columns of U (V follows).
SvdResult thin_svd(const Matrix& m);

// Orthogonal Procrustes solution R = U V^T from the SVD of m: the orthogonal
// matrix maximizing tr(R^T m). m must be square.
Matrix procrustes(const Matrix& m);

} // namespace scd
