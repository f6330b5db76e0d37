#pragma once

#include <cstddef>

namespace equilab {

/// 1/sqrt(2*pi); the schedule scale must exceed it strictly.
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;

/// Standard deviations sigma_n = c * 2^n of the centered Gaussian factors of
/// the transverse product measure. With c > 1/sqrt(2*pi) every factor puts
/// mass at most 2^-n on [-1/2, 1/2].
struct GaussianSchedule {
  static constexpr int kMaxIndex = 1000;
  static constexpr int kDefaultMaxIndex = 200;

  double c = 1.0;
  int n_max = kDefaultMaxIndex;

  /// Throws ValidationError naming "c" or "n_max".
  void validate() const;

  /// sigma_n for 1 <= n; indices past n_max reuse sigma_{n_max}.
  double sigma(std::size_t n) const noexcept;

  friend bool operator==(const GaussianSchedule&, const GaussianSchedule&) = default;
};

}  // namespace equilab
