#pragma once

#include <cmath>

namespace exc {

inline double norm_pdf(double x) {
    static const double inv_sqrt_2pi = 0.3989422804014326779399461;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

/// Standard normal CDF. Accurate to full double precision including deep
/// tails (goes through erfc rather than erf).
inline double norm_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.7071067811865475244008444);
}

/// Inverse standard normal CDF, |error| below 1e-14 over (0,1).
double norm_quantile(double p);

/// Bivariate standard normal CDF P(X <= h, Y <= k) for correlation rho,
/// following the Drezner/Wesolowsky scheme with the Gauss-Legendre point
/// counts from Genz (2004), "Numerical computation of rectangular bivariate
/// and trivariate normal and t probabilities". Absolute accuracy ~5e-16.
double bvn_cdf(double h, double k, double rho);

}  // namespace exc
