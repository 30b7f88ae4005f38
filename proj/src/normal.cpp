#include "exc/normal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "exc/rng.hpp"

namespace exc {

namespace {

// Acklam's rational approximation to the normal quantile (~1.1e-9 relative),
// refined below with one Halley step against erfc.
double acklam_quantile(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;

    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    double q = p - 0.5;
    double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double norm_quantile(double p) {
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    if (p >= 1.0) return std::numeric_limits<double>::infinity();
    double x = acklam_quantile(p);
    // Halley refinement: solves norm_cdf(x) - p = 0 to machine precision.
    double e = norm_cdf(x) - p;
    double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
    x = x - u / (1.0 + 0.5 * x * u);
    return x;
}

double Rng::next_normal() { return norm_quantile(next_uniform()); }

namespace {

// Gauss-Legendre abscissae/weights on [-1,1], positive half.
const double gl6_w[] = {0.1713244923791704, 0.3607615730481386, 0.4679139345726910};
const double gl6_x[] = {0.9324695142031521, 0.6612093864662645, 0.2386191860831969};
const double gl12_w[] = {0.04717533638651183, 0.1069393259953184, 0.1600783285433462,
                         0.2031674267230659,  0.2334925365383548, 0.2491470458134028};
const double gl12_x[] = {0.9815606342467192, 0.9041172563704749, 0.7699026741943047,
                         0.5873179542866175, 0.3678314989981802, 0.1252334085114689};
const double gl20_w[] = {0.01761400713915212, 0.04060142980038694, 0.06267204833410907,
                         0.08327674157670475, 0.1019301198172404,  0.1181945319615184,
                         0.1316886384491766,  0.1420961093183820,  0.1491729864726037,
                         0.1527533871307258};
const double gl20_x[] = {0.9931285991850949,  0.9639719272779138, 0.9122344282513259,
                         0.8391169718222188,  0.7463319064601508, 0.6360536807265150,
                         0.5108670019508271,  0.3737060887154195, 0.2277858511416451,
                         0.07652652113349734};

// P(X > dh, Y > dk) for standard bivariate normal with correlation r.
double bvn_upper(double dh, double dk, double r) {
    const double twopi = 6.283185307179586476925286;
    const double* w;
    const double* x;
    int ng;
    double ar = std::fabs(r);
    if (ar < 0.3) {
        ng = 3;
        w = gl6_w;
        x = gl6_x;
    } else if (ar < 0.75) {
        ng = 6;
        w = gl12_w;
        x = gl12_x;
    } else {
        ng = 10;
        w = gl20_w;
        x = gl20_x;
    }

    double h = dh, k = dk;
    double hk = h * k;
    double bvn = 0.0;
    if (ar < 0.925) {
        double hs = (h * h + k * k) / 2.0;
        double asr = std::asin(r);
        for (int i = 0; i < ng; ++i) {
            for (int sgn = -1; sgn <= 1; sgn += 2) {
                double sn = std::sin(asr * (sgn * x[i] + 1.0) / 2.0);
                bvn += w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
            }
        }
        bvn = bvn * asr / (2.0 * twopi) + norm_cdf(-h) * norm_cdf(-k);
    } else {
        if (r < 0.0) {
            k = -k;
            hk = -hk;
        }
        if (ar < 1.0) {
            double as = (1.0 - r) * (1.0 + r);
            double a = std::sqrt(as);
            double bs = (h - k) * (h - k);
            double c = (4.0 - hk) / 8.0;
            double d = (12.0 - hk) / 16.0;
            double asr = -(bs / as + hk) / 2.0;
            if (asr > -100.0) {
                bvn = a * std::exp(asr) *
                      (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as * as / 5.0);
            }
            if (-hk < 100.0) {
                double b = std::sqrt(bs);
                bvn -= std::exp(-hk / 2.0) * std::sqrt(twopi) * norm_cdf(-b / a) * b *
                       (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
            }
            a /= 2.0;
            for (int i = 0; i < ng; ++i) {
                for (int sgn = -1; sgn <= 1; sgn += 2) {
                    double xs = a * (sgn * x[i] + 1.0);
                    xs = xs * xs;
                    double rs = std::sqrt(1.0 - xs);
                    double asr1 = -(bs / xs + hk) / 2.0;
                    if (asr1 > -100.0) {
                        bvn += a * w[i] * std::exp(asr1) *
                               (std::exp(-hk * (1.0 - rs) / (2.0 * (1.0 + rs))) / rs -
                                (1.0 + c * xs * (1.0 + d * xs)));
                    }
                }
            }
            bvn = -bvn / twopi;
        }
        if (r > 0.0) {
            bvn += norm_cdf(-std::max(h, k));
        } else {
            bvn = -bvn;
            if (k > h) bvn += norm_cdf(k) - norm_cdf(h);
        }
    }
    return std::clamp(bvn, 0.0, 1.0);
}

}  // namespace

double bvn_cdf(double h, double k, double rho) {
    if (std::isnan(h) || std::isnan(k) || std::isnan(rho)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    // Infinite bounds reduce to univariate cases.
    if (h == -std::numeric_limits<double>::infinity() ||
        k == -std::numeric_limits<double>::infinity()) {
        return 0.0;
    }
    if (h == std::numeric_limits<double>::infinity()) return norm_cdf(k);
    if (k == std::numeric_limits<double>::infinity()) return norm_cdf(h);
    if (rho >= 1.0) return norm_cdf(std::min(h, k));
    if (rho <= -1.0) return std::max(0.0, norm_cdf(h) + norm_cdf(k) - 1.0);
    return bvn_upper(-h, -k, rho);
}

}  // namespace exc
