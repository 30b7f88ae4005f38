#include "exc/mvn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "exc/normal.hpp"
#include "exc/rng.hpp"

namespace exc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// sqrt of the first primes, generators of the Richtmyer sequence.
const double kSqrtPrimes[] = {
    1.4142135623730951, 1.7320508075688772, 2.23606797749979,  2.6457513110645907,
    3.3166247903554,    3.605551275463989,  4.123105625617661, 4.358898943540674,
    4.795831523312719,  5.385164807134504,  5.5677643628300215, 6.082762530298219,
    6.4031242374328485, 6.557438524302,     6.855654600401044, 7.280109889280518,
    7.681145747868608,  7.810249675906654,  8.18535277187245,  8.426149773176359};

// Truncated-normal mean E[Y | Y <= beta] for a standard normal Y.
double truncated_mean(double beta) {
    double cdf = norm_cdf(beta);
    if (cdf < 1e-300) return beta - 1.0 / std::max(-beta, 1.0);
    return -norm_pdf(beta) / cdf;
}

// Gibson-Glasbey-Elston ordering fused with a PSD Cholesky of the
// correlation matrix. Variables with the smallest expected conditional
// acceptance probability come first. Returns false on an indefinite pivot.
bool ordered_psd_cholesky(Eigen::MatrixXd r, Eigen::VectorXd z, Eigen::MatrixXd& L,
                          Eigen::VectorXd& b) {
    const Eigen::Index m = r.rows();
    const double pivot_tol = 1e-13;
    const double column_tol = 1e-9;
    L = Eigen::MatrixXd::Zero(m, m);
    b = z;
    Eigen::VectorXd yhat(m);

    for (Eigen::Index i = 0; i < m; ++i) {
        // Pick the remaining variable with minimal conditional probability.
        Eigen::Index best = i;
        double best_p = kInf;
        for (Eigen::Index j = i; j < m; ++j) {
            double denom2 = r(j, j) - L.row(j).head(i).squaredNorm();
            double denom = std::sqrt(std::max(denom2, 1e-30));
            double num = b(j) - L.row(j).head(i).dot(yhat.head(i));
            double p = norm_cdf(num / denom);
            if (p < best_p) {
                best_p = p;
                best = j;
            }
        }
        if (best != i) {
            r.row(i).swap(r.row(best));
            r.col(i).swap(r.col(best));
            std::swap(b(i), b(best));
            L.row(i).swap(L.row(best));
        }

        double pivot = r(i, i) - L.row(i).head(i).squaredNorm();
        if (pivot <= pivot_tol) {
            if (pivot < -column_tol) return false;
            L(i, i) = 0.0;
            yhat(i) = 0.0;
            continue;
        }
        L(i, i) = std::sqrt(pivot);
        for (Eigen::Index j = i + 1; j < m; ++j) {
            L(j, i) = (r(j, i) - L.row(j).head(i).dot(L.row(i).head(i))) / L(i, i);
        }
        double beta = (b(i) - L.row(i).head(i).dot(yhat.head(i))) / L(i, i);
        yhat(i) = truncated_mean(beta);
    }
    return true;
}

// Randomized Richtmyer QMC over the separation-of-variables integrand.
CdfResult qmc_orthant(const Eigen::MatrixXd& L, const Eigen::VectorXd& b, const QmcConfig& cfg) {
    const int m = static_cast<int>(b.size());
    Rng rng(derive_seed({cfg.seed, 0x51c6u, static_cast<std::uint64_t>(m)}));

    // First factor is constant across samples.
    double e0;
    if (L(0, 0) > 0.0) {
        e0 = norm_cdf(b(0) / L(0, 0));
    } else {
        e0 = b(0) >= 0.0 ? 1.0 : 0.0;
    }
    if (e0 <= 0.0) return {0.0, 0.0};

    std::vector<double> shift(m - 1);
    std::vector<double> y(m);
    std::vector<double> rep_mean(cfg.randomization_count);

    for (int rep = 0; rep < cfg.randomization_count; ++rep) {
        for (double& s : shift) s = rng.next_uniform();
        double acc = 0.0;
        for (int j = 0; j < cfg.sample_count; ++j) {
            double f = e0;
            double e_prev = e0;
            for (int i = 1; i < m; ++i) {
                double u = (j + 1) * kSqrtPrimes[i - 1] + shift[i - 1];
                u -= std::floor(u);
                u = std::fabs(2.0 * u - 1.0);  // baker's transform
                // Sample the previous variable inside its accepted region.
                double arg = std::clamp(u * e_prev, 1e-300, 1.0 - 1e-16);
                y[i - 1] = norm_quantile(arg);
                double num = b(i);
                for (int k2 = 0; k2 < i; ++k2) num -= L(i, k2) * y[k2];
                double e;
                if (L(i, i) > 0.0) {
                    e = norm_cdf(num / L(i, i));
                } else {
                    e = num >= 0.0 ? 1.0 : 0.0;
                }
                f *= e;
                e_prev = e;
            }
            acc += f;
        }
        rep_mean[rep] = acc / cfg.sample_count;
    }

    double mean = 0.0;
    for (double v : rep_mean) mean += v;
    mean /= cfg.randomization_count;
    double var = 0.0;
    for (double v : rep_mean) var += (v - mean) * (v - mean);
    var /= cfg.randomization_count * (cfg.randomization_count - 1.0);
    return {std::clamp(mean, 0.0, 1.0), std::sqrt(var)};
}

}  // namespace

CdfResult mvn_cdf(const OrthantBound& upper, const Eigen::VectorXd& mean,
                  const Eigen::MatrixXd& cov, const QmcConfig& cfg) {
    const Eigen::Index dim = upper.size();
    if (mean.size() != dim || cov.rows() != dim || cov.cols() != dim) {
        throw DimensionMismatch("mvn_cdf: dimensions of upper/mean/cov disagree");
    }
    if (dim == 0) return {1.0, 0.0};
    if (dim > 20) throw DimensionCap("mvn_cdf: dimension beyond supported cap (20)");
    cfg.validate();

    // Centre, drop unconstrained margins, resolve degenerate (zero-variance)
    // margins as indicators.
    std::vector<Eigen::Index> keep;
    keep.reserve(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        double bi = upper(i) - mean(i);
        if (std::isnan(bi)) throw DimensionMismatch("mvn_cdf: NaN bound");
        if (bi == -kInf) return {0.0, 0.0};
        if (bi == kInf) continue;
        if (cov(i, i) <= 0.0) {
            if (bi < 0.0) return {0.0, 0.0};
            continue;
        }
        keep.push_back(i);
    }
    const Eigen::Index m = static_cast<Eigen::Index>(keep.size());
    if (m == 0) return {1.0, 0.0};

    Eigen::VectorXd b(m);
    Eigen::MatrixXd c(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        b(i) = upper(keep[i]) - mean(keep[i]);
        for (Eigen::Index j = 0; j < m; ++j) c(i, j) = cov(keep[i], keep[j]);
    }

    if (m == 1) {
        return {norm_cdf(b(0) / std::sqrt(c(0, 0))), 0.0};
    }

    // Scale to correlation form.
    Eigen::VectorXd sd = c.diagonal().cwiseSqrt();
    Eigen::VectorXd z = b.cwiseQuotient(sd);
    Eigen::MatrixXd r = c.cwiseQuotient(sd * sd.transpose());

    if (m == 2) {
        return {bvn_cdf(z(0), z(1), std::clamp(r(0, 1), -1.0, 1.0)), 0.0};
    }

    Eigen::MatrixXd L;
    Eigen::VectorXd zb;
    if (!ordered_psd_cholesky(r, z, L, zb)) {
        // Same ladder policy as robust_cholesky, expressed on the unit
        // diagonal of the correlation matrix.
        double jitter = 1e-10;
        bool ok = false;
        for (int rung = 0; rung < 5 && !ok; ++rung, jitter *= 10.0) {
            Eigen::MatrixXd rj = r + jitter * Eigen::MatrixXd::Identity(m, m);
            ok = ordered_psd_cholesky(rj, z, L, zb);
        }
        if (!ok) throw NotPsd("mvn_cdf: covariance indefinite after jitter ladder");
    }
    return qmc_orthant(L, zb, cfg);
}

Eigen::MatrixXd mvn_sample(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov, int n,
                           std::uint64_t seed) {
    const Eigen::Index dim = mean.size();
    if (cov.rows() != dim || cov.cols() != dim) {
        throw DimensionMismatch("mvn_sample: mean/cov dimensions disagree");
    }
    CholeskyResult chol = robust_cholesky(cov);
    Rng rng(derive_seed({seed, 0x5a3fu}));
    Eigen::MatrixXd draws(n, dim);
    Eigen::VectorXd xi(dim);
    for (int i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) xi(j) = rng.next_normal();
        draws.row(i) = (mean + chol.L * xi).transpose();
    }
    return draws;
}

}  // namespace exc
