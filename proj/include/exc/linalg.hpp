#pragma once

#include <Eigen/Dense>

#include "exc/errors.hpp"

namespace exc {

/// Result of a positive-semidefinite Cholesky factorization. `jitter` is the
/// diagonal shift that had to be added before the factorization went through
/// (0 when none was needed).
struct CholeskyResult {
    Eigen::MatrixXd L;
    double jitter = 0.0;
};

/// Lower-triangular factorization of a symmetric PSD matrix.
///
/// Exact zero pivots (semidefinite directions, e.g. duplicated locations or a
/// zero matrix) are handled by zeroing the corresponding column. If the matrix
/// is indefinite beyond rounding, a jitter ladder is applied: 1e-10*trace,
/// escalating tenfold up to 1e-6*trace, after which NotPsd is thrown.
CholeskyResult robust_cholesky(const Eigen::MatrixXd& cov);

/// Solve L * y = b where L came from robust_cholesky. Zero-pivot rows get
/// y_i = 0, which is consistent whenever b lies in the range of L.
Eigen::VectorXd forward_solve_psd(const Eigen::MatrixXd& L, const Eigen::VectorXd& b);
Eigen::MatrixXd forward_solve_psd(const Eigen::MatrixXd& L, const Eigen::MatrixXd& B);

/// Solve (L*L^T) x = b with the same zero-pivot convention.
Eigen::VectorXd cholesky_solve_psd(const Eigen::MatrixXd& L, const Eigen::VectorXd& b);
Eigen::MatrixXd cholesky_solve_psd(const Eigen::MatrixXd& L, const Eigen::MatrixXd& B);

/// Throws DimensionMismatch / NotPsd when `m` is not a valid covariance
/// matrix: square, symmetric to 1e-12 relative, eigenvalues >= -1e-10*trace.
void check_covariance(const Eigen::MatrixXd& m);

}  // namespace exc
