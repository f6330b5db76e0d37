#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "equilab/schedule.hpp"
#include "equilab/sequence.hpp"

namespace equilab {

/// Declarative recipe for a prefix. Deterministic kinds ignore `seed`.
struct GeneratorSpec {
  /// x_k = {k * alpha}.
  struct Kronecker {
    double alpha = 0.0;
    friend bool operator==(const Kronecker&, const Kronecker&) = default;
  };
  /// x_k = radical inverse of k in `base`.
  struct VanDerCorput {
    std::uint64_t base = 2;
    friend bool operator==(const VanDerCorput&, const VanDerCorput&) = default;
  };
  /// Independent uniform draws on [a, b).
  struct IidUniform {
    double a = 0.0;
    double b = 1.0;
    friend bool operator==(const IidUniform&, const IidUniform&) = default;
  };
  /// One point of the product measure prod_k normal(0, sigma_k).
  struct Gaussian {
    GaussianSchedule schedule;
    friend bool operator==(const Gaussian&, const Gaussian&) = default;
  };
  using Kind = std::variant<Kronecker, VanDerCorput, IidUniform, Gaussian>;

  Kind kind{VanDerCorput{}};
  std::optional<ShiftVector> shift;
  std::uint64_t seed = 0;

  /// Throws ValidationError naming the offending field.
  void validate() const;

  /// "kronecker", "van_der_corput", "iid_uniform" or "gaussian_schedule".
  std::string kind_name() const;

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

/// Radical inverse of k >= 1 in base >= 2, in [0, 1).
double radical_inverse(std::uint64_t k, std::uint64_t base) noexcept;

/// The k-th coordinate (k >= 1) of a transverse-measure draw keyed by seed,
/// via inverse-CDF sampling. Coordinates are independent across k and seeds.
double gaussian_coordinate(const GaussianSchedule& schedule, std::size_t k, std::uint64_t seed);

SequencePrefix generate(const GeneratorSpec& spec, std::size_t n);
SequencePrefix sample_gaussian_prefix(const GaussianSchedule& schedule, std::size_t n, std::uint64_t seed);
SequencePrefix apply_shift(const SequencePrefix& prefix, const ShiftVector& shift);

}  // namespace equilab
