#include "equilab/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "equilab/errors.hpp"
#include "equilab/schedule.hpp"

namespace equilab {

SequencePrefix::SequencePrefix(std::vector<double> values) : values_(std::move(values)) {
  const auto bad = std::find_if(values_.begin(), values_.end(), [](double v) { return !std::isfinite(v); });
  if (bad != values_.end()) {
    throw ValidationError("values", "non-finite value at index " +
                                        std::to_string(std::distance(values_.begin(), bad) + 1));
  }
}

ShiftVector::ShiftVector(Rule rule) : rule_(std::move(rule)) {
  const auto finite = [](double v) { return std::isfinite(v); };
  const bool ok = std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Constant>) return finite(r.value);
        else if constexpr (std::is_same_v<T, Linear>) return finite(r.slope);
        else return std::all_of(r.values.begin(), r.values.end(), finite);
      },
      rule_);
  if (!ok) throw ValidationError("shift", "shift parameters must be finite");
}

double ShiftVector::at(std::size_t k) const noexcept {
  return std::visit(
      [k](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Constant>) return r.value;
        else if constexpr (std::is_same_v<T, Linear>) return r.slope * static_cast<double>(k);
        else return (k >= 1 && k <= r.values.size()) ? r.values[k - 1] : 0.0;
      },
      rule_);
}

ShiftVector ShiftVector::operator-() const {
  return std::visit(
      [](const auto& r) -> ShiftVector {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Constant>) return ShiftVector(Constant{-r.value});
        else if constexpr (std::is_same_v<T, Linear>) return ShiftVector(Linear{-r.slope});
        else {
          Explicit neg{r.values};
          for (auto& v : neg.values) v = -v;
          return ShiftVector(std::move(neg));
        }
      },
      rule_);
}

void GaussianSchedule::validate() const {
  if (!std::isfinite(c) || !(c > kInvSqrt2Pi)) {
    throw ValidationError("c", "schedule scale must be finite and > 1/sqrt(2*pi) ~ 0.39894 (sigma_n = c*2^n)");
  }
  if (n_max < 1 || n_max > kMaxIndex) {
    throw ValidationError("n_max", "must lie in [1, " + std::to_string(kMaxIndex) + "]");
  }
  if (!std::isfinite(sigma(static_cast<std::size_t>(n_max)))) {
    throw ValidationError("c", "c*2^n_max overflows double precision");
  }
}

double GaussianSchedule::sigma(std::size_t n) const noexcept {
  const auto capped = std::min<std::size_t>(n, static_cast<std::size_t>(n_max));
  return std::ldexp(c, static_cast<int>(capped));
}

}  // namespace equilab
