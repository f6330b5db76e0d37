#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace equilab {

/// A finite prefix x_1..x_N of a real sequence. Construction rejects NaN and
/// infinities, so every consumer may assume a total order on the values.
class SequencePrefix {
 public:
  SequencePrefix() = default;
  explicit SequencePrefix(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  /// Moves the storage out; the prefix is left empty.
  std::vector<double> release() && noexcept { return std::move(values_); }

  friend bool operator==(const SequencePrefix&, const SequencePrefix&) = default;

 private:
  std::vector<double> values_;
};

/// Translation vector (h_k)_{k>=1}. Indices are 1-based throughout.
class ShiftVector {
 public:
  struct Constant {
    double value = 0.0;
    friend bool operator==(const Constant&, const Constant&) = default;
  };
  /// Finitely supported: h_k = 0 beyond the stored length.
  struct Explicit {
    std::vector<double> values;
    friend bool operator==(const Explicit&, const Explicit&) = default;
  };
  /// h_k = slope * k.
  struct Linear {
    double slope = 0.0;
    friend bool operator==(const Linear&, const Linear&) = default;
  };
  using Rule = std::variant<Constant, Explicit, Linear>;

  ShiftVector() = default;
  ShiftVector(Rule rule);  // NOLINT(google-explicit-constructor)

  static ShiftVector constant(double c) { return ShiftVector(Constant{c}); }
  static ShiftVector explicit_values(std::vector<double> v) { return ShiftVector(Explicit{std::move(v)}); }
  static ShiftVector linear(double slope) { return ShiftVector(Linear{slope}); }

  double at(std::size_t k) const noexcept;
  const Rule& rule() const noexcept { return rule_; }

  /// The termwise negation -h.
  ShiftVector operator-() const;

  friend bool operator==(const ShiftVector&, const ShiftVector&) = default;

 private:
  Rule rule_{Constant{}};
};

}  // namespace equilab
