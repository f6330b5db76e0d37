#include "equilab/generators.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "equilab/errors.hpp"
#include "equilab/normal.hpp"
#include "equilab/rng.hpp"

namespace equilab {
namespace {

constexpr std::uint64_t kGaussianStream = 1;
constexpr std::uint64_t kUniformStream = 2;

void require_length(std::size_t n) {
  if (n < 1) throw ValidationError("n", "prefix length must be >= 1");
}

}  // namespace

void GeneratorSpec::validate() const {
  std::visit(
      [](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Kronecker>) {
          if (!std::isfinite(k.alpha)) throw ValidationError("alpha", "must be finite");
        } else if constexpr (std::is_same_v<T, VanDerCorput>) {
          if (k.base < 2) throw ValidationError("base", "must be >= 2");
        } else if constexpr (std::is_same_v<T, IidUniform>) {
          if (!std::isfinite(k.a) || !std::isfinite(k.b)) throw ValidationError("a", "bounds must be finite");
          if (!(k.a < k.b)) throw ValidationError("b", "requires a < b");
          if (!std::isfinite(k.b - k.a)) throw ValidationError("b", "b - a overflows");
        } else {
          k.schedule.validate();
        }
      },
      kind);
}

std::string GeneratorSpec::kind_name() const {
  static constexpr const char* kNames[] = {"kronecker", "van_der_corput", "iid_uniform", "gaussian_schedule"};
  return kNames[kind.index()];
}

double radical_inverse(std::uint64_t k, std::uint64_t base) noexcept {
  // Digit reversal in exact integer arithmetic while it fits, then one division.
  std::uint64_t reversed = 0;
  std::uint64_t scale = 1;
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  double inv_tail = 1.0;
  double tail = 0.0;
  while (k > 0) {
    const std::uint64_t digit = k % base;
    k /= base;
    if (scale < kLimit / base) {
      reversed = reversed * base + digit;
      scale *= base;
    } else {
      // Digits past 2^62 only feed the rounding tail.
      inv_tail /= static_cast<double>(base);
      tail += static_cast<double>(digit) * inv_tail;
    }
  }
  double r = static_cast<double>(reversed) / static_cast<double>(scale);
  if (tail != 0.0) r += tail / static_cast<double>(scale);
  return r < 1.0 ? r : std::nextafter(1.0, 0.0);
}

double gaussian_coordinate(const GaussianSchedule& schedule, std::size_t k, std::uint64_t seed) {
  const CounterStream stream(seed, kGaussianStream);
  return normal_quantile(stream.open_uniform(k), schedule.sigma(k));
}

SequencePrefix sample_gaussian_prefix(const GaussianSchedule& schedule, std::size_t n, std::uint64_t seed) {
  schedule.validate();
  require_length(n);
  std::vector<double> out(n);
  for (std::size_t k = 1; k <= n; ++k) out[k - 1] = gaussian_coordinate(schedule, k, seed);
  return SequencePrefix(std::move(out));
}

SequencePrefix generate(const GeneratorSpec& spec, std::size_t n) {
  spec.validate();
  require_length(n);
  std::vector<double> out(n);
  std::visit(
      [&](const auto& kind) {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, GeneratorSpec::Kronecker>) {
          for (std::size_t k = 1; k <= n; ++k) {
            const double t = static_cast<double>(k) * kind.alpha;
            const double frac = t - std::floor(t);
            out[k - 1] = frac < 1.0 ? frac : 0.0;
          }
        } else if constexpr (std::is_same_v<T, GeneratorSpec::VanDerCorput>) {
          for (std::size_t k = 1; k <= n; ++k) out[k - 1] = radical_inverse(k, kind.base);
        } else if constexpr (std::is_same_v<T, GeneratorSpec::IidUniform>) {
          const CounterStream stream(spec.seed, kUniformStream);
          const double width = kind.b - kind.a;
          for (std::size_t k = 1; k <= n; ++k) {
            const double v = kind.a + width * stream.uniform(k);
            out[k - 1] = v < kind.b ? v : std::nextafter(kind.b, kind.a);
          }
        } else {
          for (std::size_t k = 1; k <= n; ++k) out[k - 1] = gaussian_coordinate(kind.schedule, k, spec.seed);
        }
      },
      spec.kind);
  SequencePrefix prefix(std::move(out));
  return spec.shift ? apply_shift(prefix, *spec.shift) : prefix;
}

SequencePrefix apply_shift(const SequencePrefix& prefix, const ShiftVector& shift) {
  std::vector<double> out(prefix.begin(), prefix.end());
  for (std::size_t k = 1; k <= out.size(); ++k) out[k - 1] += shift.at(k);
  return SequencePrefix(std::move(out));
}

}  // namespace equilab
