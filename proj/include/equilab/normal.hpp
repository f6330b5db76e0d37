#pragma once

namespace equilab {

/// Error function and its complement, Cody's rational Chebyshev
/// approximations (Math. Comp. 1969). Absolute error below 1e-15 on the
/// whole real line; erfc keeps full relative accuracy in the upper tail.
double erf(double x) noexcept;
double erfc(double x) noexcept;

/// Phi(x / sigma) for the centered normal law with standard deviation sigma.
/// Throws ValidationError("sigma") unless sigma > 0; x must be finite.
double normal_cdf(double x, double sigma = 1.0);

/// Inverse of normal_cdf in x. p must lie in (0, 1).
double normal_quantile(double p, double sigma = 1.0);

/// Probability that a centered normal(sigma) draw lands in [lo, hi].
/// Evaluated through erf/erfc so that narrow or far-tail intervals keep
/// their relative accuracy instead of cancelling. Returns 0 when lo >= hi.
double normal_interval_mass(double lo, double hi, double sigma);

}  // namespace equilab
