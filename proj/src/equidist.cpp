#include "equilab/equidist.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "equilab/errors.hpp"

namespace equilab {
namespace {

constexpr int kSimpsonPanels = 1 << 12;

double below_one(double v) noexcept { return v < 1.0 ? v : std::nextafter(1.0, 0.0); }

double frac(double x) noexcept { return below_one(x - std::floor(x)); }

void require_nonempty(const SequencePrefix& prefix) {
  if (prefix.empty()) throw ValidationError("prefix", "must be nonempty");
}

// Neumaier-compensated sum.
double compensated_sum(const std::vector<double>& terms) noexcept {
  double sum = 0.0;
  double carry = 0.0;
  for (double t : terms) {
    const double next = sum + t;
    carry += std::fabs(sum) >= std::fabs(t) ? (sum - next) + t : (t - next) + sum;
    sum = next;
  }
  return sum + carry;
}

double piecewise_value(const std::vector<std::pair<double, double>>& knots, double x) noexcept {
  if (x <= knots.front().first) return knots.front().second;
  if (x >= knots.back().first) return knots.back().second;
  const auto hi = std::upper_bound(knots.begin(), knots.end(), x,
                                   [](double v, const auto& k) { return v < k.first; });
  const auto lo = std::prev(hi);
  const double span = hi->first - lo->first;
  if (span <= 0.0) return hi->second;
  const double t = (x - lo->first) / span;
  return lo->second + t * (hi->second - lo->second);
}

double simpson(const TestFunction& f) noexcept {
  const double h = 1.0 / kSimpsonPanels;
  double acc = f(0.0) + f(1.0);
  for (int i = 1; i < kSimpsonPanels; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * f(i * h);
  return acc * h / 3.0;
}

int parse_int(const std::string& text, const std::string& id) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ValidationError("function", "unknown test function id '" + id + "'");
  }
  return v;
}

double parse_real(const std::string& text, const std::string& id) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ValidationError("function", "bad number '" + text + "' in test function id '" + id + "'");
  }
  return v;
}

}  // namespace

const char* to_string(Verdict v) noexcept { return v == Verdict::consistent ? "consistent" : "inconsistent"; }

TestFunction::TestFunction(std::string id, Form form) : id_(std::move(id)), form_(std::move(form)) {
  std::visit(
      [this](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Monomial>) {
          if (f.power < 0) throw ValidationError("power", "monomial power must be >= 0");
          exact_integral_ = 1.0 / (f.power + 1);
        } else if constexpr (std::is_same_v<T, TrigCos> || std::is_same_v<T, TrigSin>) {
          if (f.harmonic < 1) throw ValidationError("harmonic", "trig harmonic must be >= 1");
          exact_integral_ = 0.0;
        } else {
          const auto& k = f.knots;
          if (k.size() < 2 || k.front().first != 0.0 || k.back().first != 1.0) {
            throw ValidationError("knots", "piecewise_linear knots must start at x=0 and end at x=1");
          }
          for (std::size_t i = 0; i < k.size(); ++i) {
            if (!std::isfinite(k[i].second)) throw ValidationError("knots", "knot values must be finite");
            if (i > 0 && !(k[i - 1].first <= k[i].first)) throw ValidationError("knots", "knots must be sorted by x");
          }
          exact_integral_ = simpson(*this);
        }
      },
      form_);
}

TestFunction TestFunction::parse(const std::string& id) {
  if (id.rfind("mono", 0) == 0) return TestFunction(id, Monomial{parse_int(id.substr(4), id)});
  if (id.rfind("cos", 0) == 0) return TestFunction(id, TrigCos{parse_int(id.substr(3), id)});
  if (id.rfind("sin", 0) == 0) return TestFunction(id, TrigSin{parse_int(id.substr(3), id)});
  if (id.rfind("pwl:", 0) == 0) {
    PiecewiseLinear pwl;
    std::stringstream ss(id.substr(4));
    std::string knot;
    while (std::getline(ss, knot, ',')) {
      const auto colon = knot.find(':');
      if (colon == std::string::npos) throw ValidationError("function", "pwl knot must be x:y in '" + id + "'");
      pwl.knots.emplace_back(parse_real(knot.substr(0, colon), id), parse_real(knot.substr(colon + 1), id));
    }
    return TestFunction(id, std::move(pwl));
  }
  throw ValidationError("function", "unknown test function id '" + id + "' (expected mono<p>, cos<h>, sin<h>, pwl:x:y,...)");
}

std::vector<TestFunction> TestFunction::default_bank() {
  std::vector<TestFunction> bank;
  for (int p = 0; p <= 4; ++p) bank.emplace_back("mono" + std::to_string(p), Monomial{p});
  for (int h = 1; h <= 3; ++h) bank.emplace_back("cos" + std::to_string(h), TrigCos{h});
  for (int h = 1; h <= 3; ++h) bank.emplace_back("sin" + std::to_string(h), TrigSin{h});
  return bank;
}

double TestFunction::operator()(double x) const noexcept {
  return std::visit(
      [x](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Monomial>) return std::pow(x, f.power);
        else if constexpr (std::is_same_v<T, TrigCos>) return std::cos(2.0 * std::numbers::pi * f.harmonic * x);
        else if constexpr (std::is_same_v<T, TrigSin>) return std::sin(2.0 * std::numbers::pi * f.harmonic * x);
        else return piecewise_value(f.knots, x);
      },
      form_);
}

SequencePrefix fractional_parts(const SequencePrefix& prefix) {
  std::vector<double> out(prefix.begin(), prefix.end());
  for (auto& v : out) v = frac(v);
  return SequencePrefix(std::move(out));
}

SequencePrefix center_shift(const SequencePrefix& prefix) {
  std::vector<double> out(prefix.begin(), prefix.end());
  for (auto& v : out) v = frac(v) - 0.5;
  return SequencePrefix(std::move(out));
}

IntervalRatio interval_ratio(const SequencePrefix& prefix, double c, double d, double a, double b) {
  require_nonempty(prefix);
  if (!(a <= c)) throw ValidationError("c", "requires a <= c");
  if (!(c < d)) throw ValidationError("d", "requires c < d");
  if (!(d <= b)) throw ValidationError("b", "requires d <= b");
  IntervalRatio r{c, d, a, b};
  r.n = prefix.size();
  r.count = static_cast<std::size_t>(std::count_if(prefix.begin(), prefix.end(), [&](double x) { return c <= x && x <= d; }));
  r.empirical = static_cast<double>(r.count) / static_cast<double>(r.n);
  r.target = (d - c) / (b - a);
  return r;
}

double star_discrepancy(const SequencePrefix& prefix) {
  require_nonempty(prefix);
  std::vector<double> sorted(prefix.begin(), prefix.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!(sorted[i] >= 0.0 && sorted[i] < 1.0)) {
      throw ValidationError("prefix", "value at index " + std::to_string(i + 1) +
                                          " lies outside [0, 1); apply fractional_parts first");
    }
  }
  std::sort(sorted.begin(), sorted.end());
  const double two_n = 2.0 * static_cast<double>(sorted.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double centre = static_cast<double>(2 * i + 1) / two_n;
    worst = std::max(worst, std::fabs(sorted[i] - centre));
  }
  return std::min(1.0, 1.0 / two_n + worst);
}

WeylAverage weyl_average(const SequencePrefix& prefix, const TestFunction& f) {
  require_nonempty(prefix);
  std::vector<double> terms;
  terms.reserve(prefix.size());
  for (double x : prefix) terms.push_back(f(frac(x)));
  std::sort(terms.begin(), terms.end());
  WeylAverage w;
  w.average = compensated_sum(terms) / static_cast<double>(terms.size());
  w.residual = std::fabs(w.average - f.exact_integral());
  return w;
}

IndexDensityEstimate index_set_density(const SequencePrefix& prefix, double lo, double hi) {
  require_nonempty(prefix);
  if (!(lo < hi)) throw ValidationError("interval", "requires lo < hi");
  IndexDensityEstimate est;
  std::ostringstream desc;
  desc << "x_k not in [" << lo << ", " << hi << "]";
  est.predicate = desc.str();
  est.counts.reserve(prefix.size());
  std::size_t running = 0;
  for (double x : prefix) {
    if (x < lo || x > hi) ++running;
    est.counts.push_back(running);
  }
  est.final_estimate = static_cast<double>(running) / static_cast<double>(prefix.size());
  return est;
}

double default_threshold(std::size_t n) noexcept {
  const double t = 2.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(n, 1))) + 0.01;
  return std::clamp(t, 0.01, 0.5);
}

UdEvidence ud_verdict(const SequencePrefix& prefix, double a, double b, std::size_t grid, double threshold,
                      const std::vector<TestFunction>& bank) {
  require_nonempty(prefix);
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) throw ValidationError("b", "requires finite a < b");
  if (grid < 2) throw ValidationError("grid", "must be >= 2");
  if (!(threshold > 0.0)) throw ValidationError("threshold", "must be > 0");

  UdEvidence ev;
  ev.outside = index_set_density(prefix, a, b);

  const double width = b - a;
  std::vector<double> scaled(prefix.begin(), prefix.end());
  for (auto& x : scaled) x = below_one(std::max(0.0, (x - a) / width));
  const SequencePrefix unit(std::move(scaled));

  EquidistReport& rep = ev.report;
  rep.n = prefix.size();
  rep.a = a;
  rep.b = b;
  rep.threshold = threshold;
  rep.star_discrepancy = star_discrepancy(unit);
  rep.outside_fraction = ev.outside.final_estimate;
  rep.ratio_table.reserve(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    const double c = a + width * static_cast<double>(i) / static_cast<double>(grid);
    const double d = i + 1 == grid ? b : a + width * static_cast<double>(i + 1) / static_cast<double>(grid);
    rep.ratio_table.push_back(interval_ratio(prefix, c, d, a, b));
  }
  for (const auto& f : bank) rep.weyl_residuals[f.id()] = weyl_average(unit, f).residual;
  rep.verdict = (rep.star_discrepancy < threshold && rep.outside_fraction <= threshold) ? Verdict::consistent
                                                                                       : Verdict::inconsistent;
  ev.verdict = rep.verdict;
  return ev;
}

}  // namespace equilab
