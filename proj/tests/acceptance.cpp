// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "equilab/equidist.hpp"
#include "equilab/experiments.hpp"
#include "equilab/generators.hpp"
#include "equilab/io.hpp"
#include "equilab/measures.hpp"
#include "equilab/normal.hpp"
#include "oracles.hpp"

using namespace equilab;

namespace {

int failures = 0;

struct Outcome {
  bool ok = true;
  std::string detail;
};

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = limit_s <= 0 || secs < limit_s;
  const bool pass = o.ok && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %d %s: %s; %.2fs", pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  if (limit_s > 0) std::printf(" (limit %.0fs%s)", limit_s, in_time ? "" : ", exceeded");
  std::printf("\n");
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

ExperimentConfig config(const std::string& name, std::initializer_list<std::pair<std::string, std::string>> kv) {
  ParamMap o;
  for (const auto& [k, v] : kv) o.set(k, v);
  return make_config(name, o);
}

// Configurations rerun by the determinism criterion.
std::vector<ExperimentConfig> checked;

ExperimentResult run_checked(const ExperimentConfig& c) {
  checked.push_back(c);
  return run(c);
}

}  // namespace

int main() {
  criterion(1, "star discrepancy matches brute-force oracle", 10, [] {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    const double below_one = std::nextafter(1.0, 0.0);
    for (int t = 0; t < 500; ++t) {
      const auto n = static_cast<std::size_t>(1 + rng() % 200);
      std::vector<double> xs(n);
      switch (t % 4) {
        case 0:
          for (auto& x : xs) x = u(rng);
          break;
        case 1: {
          const double alpha = u(rng);
          for (std::size_t k = 0; k < n; ++k) {
            const double v = static_cast<double>(k + 1) * alpha;
            xs[k] = std::min(v - std::floor(v), below_one);
          }
          break;
        }
        case 2:
          std::fill(xs.begin(), xs.end(), std::min(u(rng), below_one));
          break;
        default: {
          // A handful of tight clusters, duplicates and the interval ends.
          std::vector<double> centres(1 + rng() % 4);
          for (auto& c : centres) c = u(rng);
          for (auto& x : xs) {
            const double c = centres[rng() % centres.size()];
            const int kind = static_cast<int>(rng() % 8);
            x = kind == 0 ? 0.0 : kind == 1 ? below_one : std::clamp(c + (u(rng) - 0.5) * 1e-9, 0.0, below_one);
          }
        }
      }
      const SequencePrefix prefix(xs);
      worst = std::max(worst, std::fabs(star_discrepancy(prefix) - oracle::star_discrepancy_brute(xs)));
    }
    return Outcome{worst <= 1e-12, "500 prefixes, max |diff| = " + fmt("%.3g", worst) + " (tol 1e-12)"};
  });

  criterion(2, "uniform-ae-ud N=1e4 M=100", 30, [] {
    const auto r = run_checked(config("uniform-ae-ud", {{"N", "10000"}, {"M", "100"}, {"threshold", "0.05"}}));
    const double mean_d = r.summary.at("mean_star_discrepancy").get<double>();
    const double frac = r.summary.at("consistent_fraction").get<double>();
    return Outcome{r.pass && mean_d < 0.02 && frac >= 0.99,
                   "pass=" + std::string(r.pass ? "true" : "false") + ", mean D* = " + fmt("%.5f", mean_d) +
                       " (< 0.02), consistent = " + fmt("%.2f", frac) + " (>= 0.99)"};
  });

  criterion(3, "cylinder mass <= 2^-n and shift never increases it", 1, [] {
    const GaussianSchedule schedule{1.0, 200};
    double worst_bound = -1.0;
    double worst_shift = -1.0;
    for (std::size_t n = 1; n <= 60; ++n) {
      for (double h : {-1000.0, -5.0, 0.0, 5.0, 1000.0}) {
        const auto m = shift_monotonicity_check({n, -0.5, 0.5, h}, schedule);
        worst_bound = std::max(worst_bound, m.shifted - std::ldexp(1.0, -static_cast<int>(n)));
        worst_shift = std::max(worst_shift, m.shifted - m.centered);
      }
    }
    return Outcome{worst_bound <= 1e-15 && worst_shift <= 1e-14,
                   "max(mass - 2^-n) = " + fmt("%.3g", worst_bound) + " (<= 1e-15), max(shifted - centered) = " +
                       fmt("%.3g", worst_shift) + " (<= 1e-14)"};
  });

  criterion(4, "gaussian-not-ud c=1 N=50 M=1e3, shifts -5/0/5", 30, [] {
    bool ok = true;
    std::string detail;
    for (const char* shift : {"const:-5", "const:0", "const:5"}) {
      const auto r = run_checked(config("gaussian-not-ud", {{"N", "50"}, {"M", "1000"}, {"c", "1"}, {"shift", shift}}));
      const double density = r.summary.at("mean_outside_density").get<double>();
      const double inconsistent = r.summary.at("inconsistent_fraction").get<double>();
      ok = ok && density >= 0.9 && inconsistent == 1.0;
      detail += std::string(detail.empty() ? "" : "; ") + shift + ": outside " + fmt("%.4f", density) +
                ", inconsistent " + fmt("%.3f", inconsistent);
    }
    return Outcome{ok, detail};
  });

  criterion(5, "borel-cantelli sweep n_from 1/5/10/15, n_to=50, M=1e4", 60, [] {
    const auto r = run_checked(
        config("borel-cantelli", {{"M", "10000"}, {"n_from", "1,5,10,15"}, {"n_to", "50"}, {"slack", "auto"}}));
    bool ok = true;
    std::string detail;
    std::vector<double> fractions;
    for (const auto& e : r.summary.at("sweep")) {
      const double f = e.at("fraction").get<double>();
      const double bound = e.at("union_bound").get<double>();
      const double limit = bound + 3 * std::sqrt(bound / 10000.0);
      ok = ok && f <= limit;
      fractions.push_back(f);
      detail += std::string(detail.empty() ? "" : "; ") + "from " + std::to_string(e.at("n_from").get<int>()) +
                ": " + fmt("%.4f", f) + " <= " + fmt("%.4g", limit);
    }
    const bool decays = std::is_sorted(fractions.rbegin(), fractions.rend()) && fractions.front() > fractions.back();
    return Outcome{ok && decays && r.pass, detail + (decays ? "; decaying" : "; NOT decaying")};
  });

  criterion(6, "gaussian-mod1-ud c=1 N=1e4 M=50, centred variant agrees", 60, [] {
    const auto a = run_checked(config("gaussian-mod1-ud", {{"N", "10000"}, {"M", "50"}, {"c", "1"}, {"threshold", "0.05"}}));
    const auto b = run_checked(config("gaussian-mod1-ud",
                                      {{"N", "10000"}, {"M", "50"}, {"c", "1"}, {"threshold", "0.05"}, {"center_shift", "true"}}));
    const double mean_d = a.summary.at("mean_star_discrepancy").get<double>();
    return Outcome{a.pass && mean_d < 0.05 && a.pass == b.pass,
                   "mean mod-1 D* = " + fmt("%.5f", mean_d) + " (< 0.05), pass " + (a.pass ? "true" : "false") +
                       " / centred pass " + (b.pass ? "true" : "false")};
  });

  criterion(7, "weyl-slln default bank: uniform N=1e5 M=20, Kronecker sqrt(2)", 60, [] {
    const auto u = run_checked(config("weyl-slln", {{"N", "100000"}, {"M", "20"}, {"generator", "uniform"}, {"bank", "default"}, {"threshold", "0.02"}}));
    const auto k = run_checked(config("weyl-slln", {{"N", "100000"}, {"M", "1"}, {"generator", "kronecker"},
                                                    {"alpha", "1.4142135623730951"}, {"bank", "default"}, {"threshold", "0.01"}}));
    const double worst_u = u.summary.at("max_residual").get<double>();
    double worst_k = 0.0;
    std::size_t functions = 0;
    for (const auto& [stat, value] : k.per_replica.front().stats) {
      if (stat.rfind("residual_", 0) == 0) {
        worst_k = std::max(worst_k, value);
        ++functions;
      }
    }
    return Outcome{worst_u < 0.02 && functions == 11 && worst_k < 0.01,
                   "uniform max residual = " + fmt("%.5f", worst_u) + " (< 0.02), Kronecker max over " +
                       std::to_string(functions) + " functions = " + fmt("%.3g", worst_k) + " (< 0.01)"};
  });

  criterion(8, "byte-identical JSON under 1, 2 and 8 workers", 0, [] {
    std::size_t mismatches = 0;
    for (const auto& c : checked) {
      const auto ref = dump_canonical(to_json(run(c, 1)));
      for (unsigned w : {2U, 8U}) mismatches += dump_canonical(to_json(run(c, w))) != ref ? 1 : 0;
    }
    return Outcome{mismatches == 0 && !checked.empty(),
                   std::to_string(checked.size()) + " configurations, " + std::to_string(mismatches) + " mismatches"};
  });

  criterion(9, "normal kernel: CDF vs series oracle, quantile round trip over [-6s, 6s]", 5, [] {
    double cdf_err = 0.0;
    const int points = 10000;
    for (const double sigma : {1.0, 2.0, 0.25, 2.0 * 1024}) {
      for (int i = 0; i < points / 4; ++i) {
        const double x = sigma * (-8.0 + 16.0 * i / (points / 4 - 1));
        cdf_err = std::max(cdf_err, std::fabs(normal_cdf(x, sigma) - oracle::normal_cdf(x, sigma)));
      }
    }
    double rt_err = 0.0;
    double rt_err_at = 0.0;
    double rt_lower = 0.0;
    for (const double sigma : {1.0, 2.0, 0.25, 8.0}) {
      for (int i = 0; i <= 12000; ++i) {
        const double x = sigma * (-6.0 + 12.0 * i / 12000);
        const double e = std::fabs(normal_quantile(normal_cdf(x, sigma), sigma) - x);
        if (x <= 0) rt_lower = std::max(rt_lower, e);
        if (e > rt_err) {
          rt_err = e;
          rt_err_at = x / sigma;
        }
      }
    }
    return Outcome{cdf_err <= 1e-12 && rt_err <= 1e-9,
                   "CDF max |err| = " + fmt("%.3g", cdf_err) + " (<= 1e-12) over 10^4 points; round trip max |err| = " +
                       fmt("%.3g", rt_err) + " at x = " + fmt("%.3f", rt_err_at) + " sigma (<= 1e-9), x <= 0 max " +
                       fmt("%.3g", rt_lower)};
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
