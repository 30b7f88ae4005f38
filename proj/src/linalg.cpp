#include "exc/linalg.hpp"

#include <cmath>

namespace exc {

namespace {

// Outer-product Cholesky with a zero-pivot convention for PSD matrices.
// Returns false when an indefinite pivot or an unrepresentable semidefinite
// column is met.
bool try_psd_cholesky(const Eigen::MatrixXd& a, Eigen::MatrixXd& L) {
    const Eigen::Index n = a.rows();
    const double scale = std::max(a.diagonal().maxCoeff(), 1.0);
    const double pivot_tol = 1e-13 * scale;
    const double column_tol = 1e-10 * scale;

    L = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double pivot = a(j, j) - L.row(j).head(j).squaredNorm();
        if (pivot <= pivot_tol) {
            if (pivot < -column_tol) return false;
            // Semidefinite direction: the rest of the column must be
            // reproducible from earlier columns, otherwise indefinite.
            L(j, j) = 0.0;
            for (Eigen::Index i = j + 1; i < n; ++i) {
                double resid = a(i, j) - L.row(i).head(j).dot(L.row(j).head(j));
                if (std::fabs(resid) > column_tol) return false;
            }
            continue;
        }
        L(j, j) = std::sqrt(pivot);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            L(i, j) = (a(i, j) - L.row(i).head(j).dot(L.row(j).head(j))) / L(j, j);
        }
    }
    return true;
}

}  // namespace

CholeskyResult robust_cholesky(const Eigen::MatrixXd& cov) {
    if (cov.rows() != cov.cols()) throw DimensionMismatch("robust_cholesky: matrix not square");

    CholeskyResult result;
    if (try_psd_cholesky(cov, result.L)) return result;

    const double trace = cov.trace();
    double jitter = 1e-10 * std::max(trace, 0.0);
    if (jitter <= 0.0) jitter = 1e-14;
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(cov.rows(), cov.cols());
    for (int rung = 0; rung < 5; ++rung, jitter *= 10.0) {
        if (try_psd_cholesky(cov + jitter * eye, result.L)) {
            result.jitter = jitter;
            return result;
        }
    }
    throw NotPsd("robust_cholesky: matrix indefinite after jitter ladder");
}

Eigen::VectorXd forward_solve_psd(const Eigen::MatrixXd& L, const Eigen::VectorXd& b) {
    const Eigen::Index n = L.rows();
    if (b.size() != n) throw DimensionMismatch("forward_solve_psd: size mismatch");
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double s = b(i) - L.row(i).head(i).dot(y.head(i));
        y(i) = (L(i, i) > 0.0) ? s / L(i, i) : 0.0;
    }
    return y;
}

Eigen::MatrixXd forward_solve_psd(const Eigen::MatrixXd& L, const Eigen::MatrixXd& B) {
    Eigen::MatrixXd Y(B.rows(), B.cols());
    for (Eigen::Index c = 0; c < B.cols(); ++c) Y.col(c) = forward_solve_psd(L, B.col(c));
    return Y;
}

Eigen::VectorXd cholesky_solve_psd(const Eigen::MatrixXd& L, const Eigen::VectorXd& b) {
    Eigen::VectorXd y = forward_solve_psd(L, b);
    const Eigen::Index n = L.rows();
    Eigen::VectorXd x(n);
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        double s = y(i);
        for (Eigen::Index j = i + 1; j < n; ++j) s -= L(j, i) * x(j);
        x(i) = (L(i, i) > 0.0) ? s / L(i, i) : 0.0;
    }
    return x;
}

Eigen::MatrixXd cholesky_solve_psd(const Eigen::MatrixXd& L, const Eigen::MatrixXd& B) {
    Eigen::MatrixXd X(B.rows(), B.cols());
    for (Eigen::Index c = 0; c < B.cols(); ++c) X.col(c) = cholesky_solve_psd(L, B.col(c));
    return X;
}

void check_covariance(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("covariance matrix not square");
    const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
    if (((m - m.transpose()).cwiseAbs().maxCoeff()) > 1e-12 * scale) {
        throw NotPsd("covariance matrix not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    const double floor = -1e-10 * std::max(m.trace(), 1e-300);
    if (es.eigenvalues().minCoeff() < floor) {
        throw NotPsd("covariance matrix has negative eigenvalues");
    }
}

}  // namespace exc
