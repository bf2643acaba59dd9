#include "scd/numerics.hpp"

#include <cmath>

#include "scd/errors.hpp"

namespace scd {

namespace {

constexpr double kSignEps = 1e-12;

// Flips each column so its first component of magnitude > 1e-12 is positive.
// Eigenvector and singular-vector signs are otherwise solver-dependent.
void fix_column_signs(Matrix& u, Matrix* v) {
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
        double lead = 0.0;
        for (Eigen::Index i = 0; i < u.rows(); ++i) {
            if (std::abs(u(i, j)) > kSignEps) {
                lead = u(i, j);
                break;
            }
        }
        if (lead < 0.0) {
            u.col(j) = -u.col(j);
            if (v) v->col(j) = -v->col(j);
        }
    }
}

} // namespace

EigenDecomposition sym_eig(const Matrix& a) {
    if (a.rows() != a.cols())
        throw InvalidInputError("sym_eig: matrix must be square");
    if (a.rows() == 0)
        throw InvalidInputError("sym_eig: matrix must be non-empty");
    double scale = a.cwiseAbs().maxCoeff();
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, scale))
        throw InvalidInputError("sym_eig: matrix must be symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
    if (solver.info() != Eigen::Success)
        throw NumericalError("sym_eig: eigendecomposition failed to converge");
    EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
    fix_column_signs(out.eigenvectors, nullptr);
    return out;
}

SvdResult thin_svd(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0)
        throw InvalidInputError("thin_svd: matrix must be non-empty");
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SvdResult out{svd.matrixU(), svd.singularValues(), svd.matrixV()};
    fix_column_signs(out.u, &out.v);
    return out;
}

Matrix procrustes(const Matrix& m) {
    if (m.rows() != m.cols())
        throw InvalidInputError("procrustes: matrix must be square");
    SvdResult svd = thin_svd(m);
    return svd.u * svd.v.transpose();
}

} // namespace scd
