#pragma once

// Test-only reference computations. Nothing here shares code with the
// library paths they check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace equilab::oracle {

/// erf(z) = 2z/sqrt(pi) * exp(-z^2) * sum_n (2z^2)^n / (1*3*...*(2n+1)).
/// Every term is positive, so long double accumulation has no cancellation.
/// At least 50 terms are always summed.
inline long double erf_series(long double z) {
  if (z < 0) return -erf_series(-z);
  const long double two_z2 = 2.0L * z * z;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int n = 1; n < 2000; ++n) {
    term *= two_z2 / static_cast<long double>(2 * n + 1);
    sum += term;
    if (n >= 50 && term < 1e-24L * sum) break;
  }
  constexpr long double kSqrtPi = 1.772453850905516027298167483341145183L;
  return 2.0L * z / kSqrtPi * std::exp(-z * z) * sum;
}

inline double normal_cdf(double x, double sigma) {
  constexpr long double kSqrt2 = 1.414213562373095048801688724209698079L;
  return static_cast<double>(0.5L * (1.0L + erf_series(static_cast<long double>(x) / (sigma * kSqrt2))));
}

/// sup_t |#{x < t}/N - t| and |#{x <= t}/N - t| over the critical points
/// t in {x_i} ∪ {i/N} ∪ {0, 1}, counting by linear scan (O(N^2)).
inline double star_discrepancy_brute(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  std::vector<double> candidates(xs);
  for (std::size_t i = 0; i <= xs.size(); ++i) candidates.push_back(static_cast<double>(i) / n);
  double worst = 0.0;
  for (double t : candidates) {
    std::size_t lt = 0;
    std::size_t le = 0;
    for (double x : xs) {
      lt += x < t ? 1 : 0;
      le += x <= t ? 1 : 0;
    }
    worst = std::max({worst, std::fabs(static_cast<double>(lt) / n - t), std::fabs(static_cast<double>(le) / n - t)});
  }
  return worst;
}

}  // namespace equilab::oracle
