#include "equilab/measures.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "equilab/errors.hpp"
#include "equilab/generators.hpp"
#include "equilab/rng.hpp"

namespace equilab {
namespace {

void check_interval(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw ValidationError("interval", "lo and hi must be finite");
  if (lo > hi) throw ValidationError("interval", "requires lo <= hi");
}

void check_range(const GaussianSchedule& schedule, std::size_t n_from, std::size_t n_to) {
  if (n_from < 1) throw ValidationError("n_from", "must be >= 1");
  if (n_to > static_cast<std::size_t>(schedule.n_max)) {
    throw ValidationError("n_to", "exceeds schedule n_max = " + std::to_string(schedule.n_max));
  }
}

}  // namespace

double gaussian_mass(const CylinderEvent& event, const GaussianSchedule& schedule) {
  schedule.validate();
  check_interval(event.lo, event.hi);
  if (!std::isfinite(event.shift)) throw ValidationError("shift", "must be finite");
  if (event.n < 1 || event.n > static_cast<std::size_t>(schedule.n_max)) {
    throw ValidationError("n", "index " + std::to_string(event.n) + " outside schedule range [1, " +
                                   std::to_string(schedule.n_max) + "]");
  }
  return normal_interval_mass(event.lo + event.shift, event.hi + event.shift, schedule.sigma(event.n));
}

MassPair shift_monotonicity_check(const CylinderEvent& event, const GaussianSchedule& schedule) {
  CylinderEvent centered = event;
  centered.shift = 0.0;
  return {gaussian_mass(event, schedule), gaussian_mass(centered, schedule)};
}

double geometric_envelope(std::size_t n_from, std::size_t n_to) noexcept {
  if (n_from > n_to) return 0.0;
  // 2^-(n_from-1) - 2^-n_to, exact in binary floating point.
  return std::ldexp(1.0, -static_cast<int>(n_from - 1)) - std::ldexp(1.0, -static_cast<int>(n_to));
}

double borel_cantelli_sum(const GaussianSchedule& schedule, const ShiftVector& shift, Interval interval,
                          std::size_t n_from, std::size_t n_to) {
  schedule.validate();
  check_interval(interval.lo, interval.hi);
  if (n_from > n_to) throw ValidationError("n_from", "requires n_from <= n_to");
  check_range(schedule, n_from, n_to);
  double sum = 0.0;
  for (std::size_t n = n_from; n <= n_to; ++n) {
    sum += gaussian_mass({n, interval.lo, interval.hi, shift.at(n)}, schedule);
  }
  return sum;
}

std::size_t last_hit_index(const GaussianSchedule& schedule, const ShiftVector& shift, Interval interval,
                           std::size_t n_from, std::size_t n_to, std::uint64_t replica_seed) {
  for (std::size_t k = n_to; k >= n_from && k >= 1; --k) {
    const double h = shift.at(k);
    const double x = gaussian_coordinate(schedule, k, replica_seed);
    if (interval.lo + h <= x && x <= interval.hi + h) return k;
  }
  return 0;
}

LimsupEstimate limsup_hit_estimate(const GaussianSchedule& schedule, const ShiftVector& shift, Interval interval,
                                   std::size_t n_from, std::size_t n_to, std::size_t replicas, std::uint64_t seed,
                                   unsigned workers) {
  schedule.validate();
  check_interval(interval.lo, interval.hi);
  if (replicas < 1) throw ValidationError("M", "replica count must be >= 1");
  LimsupEstimate est;
  est.replicas = replicas;
  if (n_from > n_to) return est;
  check_range(schedule, n_from, n_to);

  std::vector<char> hit(replicas, 0);
  parallel_for(replicas, workers, [&](std::size_t r) {
    hit[r] = last_hit_index(schedule, shift, interval, n_from, n_to, replica_seed(seed, r)) != 0 ? 1 : 0;
  });
  for (char h : hit) est.hits += static_cast<std::size_t>(h);
  est.fraction = static_cast<double>(est.hits) / static_cast<double>(replicas);
  est.union_bound = borel_cantelli_sum(schedule, shift, interval, n_from, n_to);
  est.envelope = geometric_envelope(n_from, n_to);
  est.slack = 3.0 * std::sqrt(est.union_bound / static_cast<double>(replicas));
  est.within_bound = est.fraction <= est.union_bound + est.slack;
  return est;
}

}  // namespace equilab
