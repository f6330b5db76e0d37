#pragma once

#include <cstddef>
#include <cstdint>

#include "equilab/normal.hpp"
#include "equilab/parallel.hpp"
#include "equilab/schedule.hpp"
#include "equilab/sequence.hpp"

namespace equilab {

/// Sequences whose n-th coordinate lies in [lo + shift, hi + shift], all
/// other coordinates free.
struct CylinderEvent {
  std::size_t n = 1;
  double lo = -0.5;
  double hi = 0.5;
  double shift = 0.0;
};

struct Interval {
  double lo = -0.5;
  double hi = 0.5;
};

/// Product-measure mass of a cylinder event: Phi((hi+h)/s) - Phi((lo+h)/s)
/// with s = sigma_n. A degenerate interval (lo == hi) has mass 0.
double gaussian_mass(const CylinderEvent& event, const GaussianSchedule& schedule);

struct MassPair {
  double shifted = 0.0;
  double centered = 0.0;
};

/// Mass of the event as given and of the same event with its shift zeroed.
MassPair shift_monotonicity_check(const CylinderEvent& event, const GaussianSchedule& schedule);

/// sum_{n=n_from}^{n_to} 2^-n.
double geometric_envelope(std::size_t n_from, std::size_t n_to) noexcept;

/// Partial Borel-Cantelli sum of the shifted cylinder-event masses over
/// [n_from, n_to]. Terms that underflow contribute 0.
double borel_cantelli_sum(const GaussianSchedule& schedule, const ShiftVector& shift, Interval interval,
                          std::size_t n_from, std::size_t n_to);

/// Largest k in [n_from, n_to] whose coordinate, drawn under `replica_seed`,
/// lands in [lo + h_k, hi + h_k]; 0 when no event in the range occurs.
std::size_t last_hit_index(const GaussianSchedule& schedule, const ShiftVector& shift, Interval interval,
                           std::size_t n_from, std::size_t n_to, std::uint64_t replica_seed);

struct LimsupEstimate {
  /// Replicas hitting at least one event in [n_from, n_to], over M.
  double fraction = 0.0;
  std::size_t hits = 0;
  std::size_t replicas = 0;
  /// borel_cantelli_sum over the same range.
  double union_bound = 0.0;
  double envelope = 0.0;
  /// 3 * sqrt(union_bound / M).
  double slack = 0.0;
  bool within_bound = true;
};

/// Monte Carlo stand-in for P(limsup E_n^(h_n)): "infinitely often" is read
/// as "at least once in [n_from, n_to]". An empty range (n_from > n_to)
/// yields fraction 0. Replica r uses seed replica_seed(seed, r), so hits are
/// nested across ranges that share a seed and independent of `workers`.
LimsupEstimate limsup_hit_estimate(const GaussianSchedule& schedule, const ShiftVector& shift, Interval interval,
                                   std::size_t n_from, std::size_t n_to, std::size_t replicas, std::uint64_t seed,
                                   unsigned workers = default_workers());

}  // namespace equilab
