#include "equilab/normal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "equilab/errors.hpp"

namespace equilab {
namespace {

constexpr double kSqrtPiInv = 0.56418958354775628695;  // 1/sqrt(pi)
constexpr double kThreshold = 0.46875;
constexpr double kXSmall = 1.11e-16;
constexpr double kXBig = 26.543;
constexpr double kSqrt2 = 1.41421356237309504880;

constexpr double kA[5] = {3.16112374387056560e00, 1.13864154151050156e02, 3.77485237685302021e02,
                          3.20937758913846947e03, 1.85777706184603153e-1};
constexpr double kB[4] = {2.36012909523441209e01, 2.44024637934444173e02, 1.28261652607737228e03,
                          2.84423683343917062e03};
constexpr double kC[9] = {5.64188496988670089e-1, 8.88314979438837594e00, 6.61191906371416295e01,
                          2.98635138197400131e02, 8.81952221241769090e02, 1.71204761263407058e03,
                          2.05107837782607147e03, 1.23033935479799725e03, 2.15311535474403846e-8};
constexpr double kD[8] = {1.57449261107098347e01, 1.17693950891312499e02, 5.37181101862009858e02,
                          1.62138957456669019e03, 3.29079923573345963e03, 4.36261909014324716e03,
                          3.43936767414372164e03, 1.23033935480374942e03};
constexpr double kP[6] = {3.05326634961232344e-1, 3.60344899949804439e-1, 1.25781726111229246e-1,
                          1.60837851487422766e-2, 6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr double kQ[5] = {2.56852019228982242e00, 1.87295284992346047e00, 5.27905102951428412e-1,
                          6.05183413124413191e-2, 2.33520497626869185e-3};

// erf for |x| <= kThreshold.
double erf_small(double x) noexcept {
  const double y = std::fabs(x);
  const double ysq = y > kXSmall ? y * y : 0.0;
  double num = kA[4] * ysq;
  double den = ysq;
  for (int i = 0; i < 3; ++i) {
    num = (num + kA[i]) * ysq;
    den = (den + kB[i]) * ysq;
  }
  return x * (num + kA[3]) / (den + kB[3]);
}

// exp(-y*y) split so the rounding of y*y does not leak into the tail.
double gauss_factor(double y) noexcept {
  const double ysq = std::trunc(y * 16.0) / 16.0;
  const double del = (y - ysq) * (y + ysq);
  return std::exp(-ysq * ysq) * std::exp(-del);
}

// erfc for y > kThreshold.
double erfc_positive(double y) noexcept {
  if (y <= 4.0) {
    double num = kC[8] * y;
    double den = y;
    for (int i = 0; i < 7; ++i) {
      num = (num + kC[i]) * y;
      den = (den + kD[i]) * y;
    }
    return gauss_factor(y) * (num + kC[7]) / (den + kD[7]);
  }
  if (y >= kXBig) return 0.0;
  const double ysq = 1.0 / (y * y);
  double num = kP[5] * ysq;
  double den = ysq;
  for (int i = 0; i < 4; ++i) {
    num = (num + kP[i]) * ysq;
    den = (den + kQ[i]) * ysq;
  }
  const double r = (kSqrtPiInv - ysq * (num + kP[4]) / (den + kQ[4])) / y;
  return gauss_factor(y) * r;
}

// Acklam's rational approximation; relative error ~1e-9, refined below.
double quantile_start(double p) noexcept {
  constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                           1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                           6.680131188771972e+01,  -1.328068155288572e+01};
  constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                           -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                           3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Standard normal lower tail, relative-accurate for x < 0.
double std_cdf(double x) noexcept { return 0.5 * erfc(-x / kSqrt2); }

}  // namespace

double erf(double x) noexcept {
  if (std::isnan(x)) return x;
  const double y = std::fabs(x);
  if (y <= kThreshold) return erf_small(x);
  const double r = 1.0 - erfc_positive(y);
  return x < 0 ? -r : r;
}

double erfc(double x) noexcept {
  if (std::isnan(x)) return x;
  const double y = std::fabs(x);
  if (y <= kThreshold) return 1.0 - erf_small(x);
  const double r = erfc_positive(y);
  return x < 0 ? 2.0 - r : r;
}

double normal_cdf(double x, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ValidationError("sigma", "must be finite and > 0");
  if (!std::isfinite(x)) throw ValidationError("x", "must be finite");
  return std_cdf(x / sigma);
}

double normal_quantile(double p, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ValidationError("sigma", "must be finite and > 0");
  if (!(p > 0.0 && p < 1.0)) throw ValidationError("p", "must lie in (0, 1)");
  // Work in the lower half so the residual is measured against a tail that
  // erfc resolves to full relative precision; 1 - p is exact for p > 1/2.
  const bool upper = p > 0.5;
  const double tail = upper ? 1.0 - p : p;
  double z = quantile_start(tail);
  for (int iter = 0; iter < 3; ++iter) {
    const double e = std_cdf(z) - tail;
    const double density = std::exp(-0.5 * z * z) / 2.50662827463100050242;
    if (density == 0.0) break;
    const double u = e / density;
    const double step = u / (1.0 + 0.5 * z * u);  // Halley
    z -= step;
    if (std::fabs(step) <= 1e-17 * std::max(1.0, std::fabs(z))) break;
  }
  return (upper ? -z : z) * sigma;
}

double normal_interval_mass(double lo, double hi, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ValidationError("sigma", "must be finite and > 0");
  if (!(lo < hi)) return 0.0;
  const double a = lo / (sigma * kSqrt2);
  const double b = hi / (sigma * kSqrt2);
  double mass;
  if (a >= 0.0) {
    mass = 0.5 * (erfc(a) - erfc(b));
  } else if (b <= 0.0) {
    mass = 0.5 * (erfc(-b) - erfc(-a));
  } else {
    mass = 0.5 * (erf(b) - erf(a));
  }
  return std::max(0.0, mass);
}

}  // namespace equilab
