#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "exc/errors.hpp"
#include "exc/linalg.hpp"

namespace exc {

/// Settings for the randomized quasi-Monte-Carlo CDF evaluation (dim >= 3).
/// `randomization_count` independent shifts of the lattice give the standard
/// error estimate.
struct QmcConfig {
    int sample_count = 4096;
    std::uint64_t seed = 0;
    int randomization_count = 16;

    void validate() const {
        if (sample_count < 128) throw ConfigError("qmc sample_count must be >= 128");
        if (randomization_count < 8) throw ConfigError("qmc randomization_count must be >= 8");
    }
};

/// Upper integration limits for an orthant probability. +inf marks an
/// unconstrained margin, -inf makes the probability exactly zero.
using OrthantBound = Eigen::VectorXd;

struct CdfResult {
    double probability = 0.0;
    double std_error = 0.0;
};

/// P(N <= upper) for N ~ Normal(mean, cov).
///
/// dim 1 goes through erfc and dim 2 through the deterministic bivariate
/// quadrature (std_error = 0 for both). dim >= 3 uses randomized QMC on the
/// separation-of-variables form with Gibson/Glasbey/Elston variable
/// reordering. Degenerate (semidefinite) covariances are supported.
CdfResult mvn_cdf(const OrthantBound& upper, const Eigen::VectorXd& mean,
                  const Eigen::MatrixXd& cov, const QmcConfig& cfg = {});

/// n draws from Normal(mean, cov), one per row. Bit-reproducible for a fixed
/// seed.
Eigen::MatrixXd mvn_sample(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov, int n,
                           std::uint64_t seed);

}  // namespace exc
