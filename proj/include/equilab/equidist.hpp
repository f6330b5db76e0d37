#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "equilab/sequence.hpp"

namespace equilab {

/// Hit ratio of the closed subinterval [c, d] within the reference
/// interval [a, b]; ties at either endpoint count as inside.
struct IntervalRatio {
  double c = 0.0;
  double d = 1.0;
  double a = 0.0;
  double b = 1.0;
  std::size_t count = 0;
  std::size_t n = 0;
  double empirical = 0.0;
  double target = 0.0;

  double deviation() const noexcept { return empirical - target; }
};

/// Continuous test function on [0, 1] for Weyl averages.
class TestFunction {
 public:
  struct Monomial {
    int power = 0;
  };
  struct TrigCos {
    int harmonic = 1;
  };
  struct TrigSin {
    int harmonic = 1;
  };
  struct PiecewiseLinear {
    std::vector<std::pair<double, double>> knots;
  };
  using Form = std::variant<Monomial, TrigCos, TrigSin, PiecewiseLinear>;

  /// Validates the form and computes its integral over [0, 1].
  TestFunction(std::string id, Form form);

  /// Parses "mono<p>", "cos<h>", "sin<h>" or "pwl:x0:y0,x1:y1,...".
  static TestFunction parse(const std::string& id);

  /// monomial 0..4 and cos/sin with harmonics 1..3, in that order.
  static std::vector<TestFunction> default_bank();

  double operator()(double x) const noexcept;

  const std::string& id() const noexcept { return id_; }
  const Form& form() const noexcept { return form_; }
  double exact_integral() const noexcept { return exact_integral_; }

 private:
  std::string id_;
  Form form_;
  double exact_integral_ = 0.0;
};

/// Natural-density estimate of J = { k <= N : x_k outside [lo, hi] }.
struct IndexDensityEstimate {
  std::string predicate;
  /// counts[i] = #(J ∩ [1, i + 1]).
  std::vector<std::size_t> counts;
  double final_estimate = 0.0;

  double density_at(std::size_t n) const { return static_cast<double>(counts.at(n - 1)) / static_cast<double>(n); }
};

enum class Verdict { consistent, inconsistent };

const char* to_string(Verdict v) noexcept;

struct EquidistReport {
  std::size_t n = 0;
  double star_discrepancy = 0.0;
  std::vector<IntervalRatio> ratio_table;
  /// Ordered by function id.
  std::map<std::string, double> weyl_residuals;
  Verdict verdict = Verdict::inconsistent;
  double threshold = 0.0;
  /// Fraction of points outside the reference interval [a, b].
  double outside_fraction = 0.0;
  double a = 0.0;
  double b = 1.0;
};

struct WeylAverage {
  double average = 0.0;
  double residual = 0.0;
};

/// Elementwise x - floor(x), landing in [0, 1).
SequencePrefix fractional_parts(const SequencePrefix& prefix);

/// {x} - 1/2, landing in [-1/2, 1/2).
SequencePrefix center_shift(const SequencePrefix& prefix);

IntervalRatio interval_ratio(const SequencePrefix& prefix, double c, double d, double a, double b);

/// D*_N = 1/(2N) + max_i |x_(i) - (2i-1)/(2N)| over the sorted values.
/// Requires a nonempty prefix inside [0, 1).
double star_discrepancy(const SequencePrefix& prefix);

/// Mean of f({x_k}) and its distance from the integral of f. The terms are
/// summed in sorted order with compensation, so the result is exactly
/// invariant under permutations of the prefix.
WeylAverage weyl_average(const SequencePrefix& prefix, const TestFunction& f);

IndexDensityEstimate index_set_density(const SequencePrefix& prefix, double lo, double hi);

/// 2/sqrt(N) + 0.01 clamped to [0.01, 0.5].
double default_threshold(std::size_t n) noexcept;

struct UdEvidence {
  Verdict verdict = Verdict::inconsistent;
  EquidistReport report;
  IndexDensityEstimate outside;
};

/// Thresholded u.d.-in-[a, b] diagnostic. The prefix is rescaled affinely
/// onto [0, 1]; points outside [a, b] are clamped to the nearest end for the
/// discrepancy and tallied in `outside`. Consistent iff D*_N < threshold and
/// the outside fraction does not exceed threshold. Weyl residuals over
/// `bank` are computed on the same rescaled, clamped values.
UdEvidence ud_verdict(const SequencePrefix& prefix, double a, double b, std::size_t grid, double threshold,
                      const std::vector<TestFunction>& bank = {});

}  // namespace equilab
