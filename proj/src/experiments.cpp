#include "equilab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "equilab/equidist.hpp"
#include "equilab/errors.hpp"
#include "equilab/generators.hpp"
#include "equilab/measures.hpp"
#include "equilab/rng.hpp"

namespace equilab {
namespace detail {
const std::map<std::string, std::string>& embedded_default_configs();
}  // namespace detail

namespace {

constexpr const char* kMeta[] = {"N", "M", "seed"};

std::string names_list() {
  std::string s;
  for (const auto& n : experiment_names()) s += (s.empty() ? "" : ", ") + n;
  return s;
}

std::size_t size_param(const ParamMap& p, const std::string& key, std::int64_t min_value) {
  const auto v = p.integer(key);
  if (v < min_value) throw ValidationError(key, "must be >= " + std::to_string(min_value));
  return static_cast<std::size_t>(v);
}

double threshold_param(const ExperimentConfig& config, std::size_t n) {
  const std::string& text = config.params.str("threshold");
  if (text == "auto") return default_threshold(n);
  const double t = parse_real(text, "threshold");
  if (t < 0.0) throw ValidationError("threshold", "must be >= 0");
  return t;
}

GaussianSchedule schedule_param(const ParamMap& p) {
  GaussianSchedule s{p.real("c"), static_cast<int>(p.integer("n_max"))};
  s.validate();
  return s;
}

// Sampling schedule for mod-1 statistics: beyond the cap, c * 2^n leaves
// too few fractional bits in a double for {x} to carry information.
GaussianSchedule capped_schedule(const ParamMap& p) {
  GaussianSchedule s = schedule_param(p);
  const auto cap = size_param(p, "sigma_index_cap", 1);
  s.n_max = static_cast<int>(std::min<std::size_t>(cap, static_cast<std::size_t>(s.n_max)));
  return s;
}

std::vector<TestFunction> bank_param(const ParamMap& p) {
  const auto ids = p.list("bank");
  if (ids.size() == 1 && ids.front() == "default") return TestFunction::default_bank();
  if (ids.empty()) throw ValidationError("bank", "must name at least one test function");
  std::vector<TestFunction> bank;
  for (const auto& id : ids) bank.push_back(TestFunction::parse(id));
  return bank;
}

std::vector<std::size_t> sweep_param(const ParamMap& p, std::size_t n_to) {
  std::vector<std::size_t> sweep;
  for (const auto& item : p.list("n_from")) {
    const auto v = parse_u64(item, "n_from");
    if (v < 1 || v > n_to) throw ValidationError("n_from", "each entry must lie in [1, n_to]");
    sweep.push_back(static_cast<std::size_t>(v));
  }
  if (sweep.empty()) throw ValidationError("n_from", "sweep must not be empty");
  std::sort(sweep.begin(), sweep.end());
  sweep.erase(std::unique(sweep.begin(), sweep.end()), sweep.end());
  return sweep;
}

// Checks every name-specific parameter parses, so bad configs fail before
// any replica runs.
void check_params(const ExperimentConfig& c) {
  const ParamMap& p = c.params;
  p.boolean("keep_raw");
  if (c.name == "uniform-ae-ud") {
    threshold_param(c, c.N);
    const double allowed = p.real("allowed_failures");
    if (allowed < 0.0 || allowed > 1.0) throw ValidationError("allowed_failures", "must lie in [0, 1]");
    size_param(p, "grid", 2);
  } else if (c.name == "gaussian-not-ud") {
    schedule_param(p);
    parse_shift(p.str("shift"));
    threshold_param(c, c.N);
    p.real("density_floor");
    size_param(p, "grid", 2);
  } else if (c.name == "gaussian-mod1-ud") {
    capped_schedule(p);
    threshold_param(c, c.N);
    p.boolean("center_shift");
    size_param(p, "grid", 2);
  } else if (c.name == "borel-cantelli") {
    const auto s = schedule_param(p);
    const auto n_to = size_param(p, "n_to", 1);
    if (n_to > static_cast<std::size_t>(s.n_max)) throw ValidationError("n_to", "exceeds n_max");
    sweep_param(p, n_to);
    const double lo = p.real("lo");
    const double hi = p.real("hi");
    if (!(lo < hi)) throw ValidationError("hi", "requires lo < hi");
    parse_shift(p.str("shift"));
    if (p.str("slack") != "auto" && p.real("slack") < 0.0) throw ValidationError("slack", "must be >= 0");
  } else if (c.name == "weyl-slln") {
    const auto& g = p.str("generator");
    if (g != "uniform" && g != "gaussian_schedule" && g != "kronecker") {
      throw ValidationError("generator", "must be uniform, gaussian_schedule or kronecker");
    }
    p.real("alpha");
    capped_schedule(p);
    bank_param(p);
    threshold_param(c, c.N);
  }
}

template <class Body>
std::vector<ReplicaRecord> run_replicas(const ExperimentConfig& config, unsigned workers, Body&& body) {
  std::vector<ReplicaRecord> rows(config.M);
  parallel_for(config.M, workers, [&](std::size_t r) {
    ReplicaRecord& row = rows[r];
    row.replica = r;
    row.seed = replica_seed(config.seed, r);
    body(row);
  });
  return rows;
}

const AggregateStat& find_stat(const std::vector<AggregateStat>& agg, const std::string& name) {
  for (const auto& a : agg) {
    if (a.stat == name) return a;
  }
  throw std::logic_error("missing aggregate " + name);
}

ExperimentResult finish(const ExperimentConfig& config, std::vector<ReplicaRecord> rows) {
  ExperimentResult result;
  result.config = config;
  result.aggregate = aggregate_rows(rows);
  result.per_replica = std::move(rows);
  return result;
}

const char* kShadowNote =
    "empirical finite-N shadow of an asymptotic measure-theoretic statement; it does not verify the "
    "statement itself";

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"uniform-ae-ud", "gaussian-not-ud", "gaussian-mod1-ud",
                                                 "borel-cantelli", "weyl-slln"};
  return names;
}

const std::string& default_config_text(const std::string& name) {
  const auto& all = detail::embedded_default_configs();
  const auto it = all.find(name);
  if (it == all.end()) {
    throw ValidationError("name", "unknown experiment '" + name + "'; valid names: " + names_list());
  }
  return it->second;
}

ExperimentConfig make_config(const std::string& name, const ParamMap& overrides) {
  ParamMap merged = ParamMap::parse(default_config_text(name));
  merged.merge(overrides);
  ExperimentConfig config;
  config.name = name;
  config.N = size_param(merged, "N", 0);
  config.M = size_param(merged, "M", 0);
  config.seed = merged.u64("seed");
  for (const char* key : kMeta) merged.erase(key);
  config.params = std::move(merged);
  config.validate();
  return config;
}

void ExperimentConfig::validate() const {
  const auto defaults = ParamMap::parse(default_config_text(name));
  if (N < 10) throw ValidationError("N", "prefix length must be >= 10");
  if (M < 1) throw ValidationError("M", "replica count must be >= 1");
  for (const auto& [key, value] : defaults.entries()) {
    if (std::find(std::begin(kMeta), std::end(kMeta), key) != std::end(kMeta)) continue;
    if (!params.contains(key)) throw ValidationError(key, "required parameter for " + name + " is missing");
  }
  for (const auto& [key, value] : params.entries()) {
    if (!defaults.contains(key)) {
      std::string valid;
      for (const auto& [k, v] : defaults.entries()) valid += (valid.empty() ? "" : ", ") + k;
      throw ValidationError(key, "unknown parameter for " + name + " (valid: " + valid + ")");
    }
  }
  check_params(*this);
}

std::vector<AggregateStat> aggregate_rows(const std::vector<ReplicaRecord>& rows) {
  std::vector<AggregateStat> out;
  if (rows.empty()) return out;
  for (std::size_t s = 0; s < rows.front().stats.size(); ++s) {
    std::vector<double> col;
    col.reserve(rows.size());
    double sum = 0.0;
    for (const auto& row : rows) {
      const double v = row.stats.at(s).second;
      col.push_back(v);
      sum += v;
    }
    std::sort(col.begin(), col.end());
    const auto quantile = [&](double q) {
      const double h = q * static_cast<double>(col.size() - 1);
      const auto lo = static_cast<std::size_t>(std::floor(h));
      const auto hi = std::min(lo + 1, col.size() - 1);
      return col[lo] + (h - static_cast<double>(lo)) * (col[hi] - col[lo]);
    };
    AggregateStat a;
    a.stat = rows.front().stats[s].first;
    a.mean = sum / static_cast<double>(col.size());
    a.min = col.front();
    a.q05 = quantile(0.05);
    a.q50 = quantile(0.5);
    a.q95 = quantile(0.95);
    a.max = col.back();
    out.push_back(std::move(a));
  }
  return out;
}

ExperimentResult run_uniform_ae_ud(const ExperimentConfig& config, unsigned workers) {
  if (config.name != "uniform-ae-ud") throw ValidationError("name", "expected uniform-ae-ud");
  config.validate();
  const ParamMap& p = config.params;
  const double threshold = threshold_param(config, config.N);
  const auto grid = size_param(p, "grid", 2);
  const bool keep_raw = p.boolean("keep_raw");

  auto rows = run_replicas(config, workers, [&](ReplicaRecord& row) {
    GeneratorSpec spec{GeneratorSpec::IidUniform{0.0, 1.0}, std::nullopt, row.seed};
    const auto prefix = generate(spec, config.N);
    const auto ev = ud_verdict(prefix, 0.0, 1.0, grid, threshold);
    row.stats = {{"star_discrepancy", ev.report.star_discrepancy},
                 {"consistent", ev.verdict == Verdict::consistent ? 1.0 : 0.0}};
    if (keep_raw) row.raw.assign(prefix.begin(), prefix.end());
  });

  std::size_t failures = 0;
  for (const auto& row : rows) failures += row.stats[1].second == 0.0 ? 1 : 0;
  auto result = finish(config, std::move(rows));
  const auto allowed = static_cast<std::size_t>(std::floor(p.real("allowed_failures") * static_cast<double>(config.M) + 1e-9));
  result.pass = failures <= allowed;
  result.summary["threshold"] = threshold;
  result.summary["consistent_fraction"] = find_stat(result.aggregate, "consistent").mean;
  result.summary["mean_star_discrepancy"] = find_stat(result.aggregate, "star_discrepancy").mean;
  result.summary["failures"] = failures;
  result.summary["allowed_failures"] = allowed;
  result.notes.push_back(kShadowNote);
  return result;
}

ExperimentResult run_gaussian_not_ud(const ExperimentConfig& config, unsigned workers) {
  if (config.name != "gaussian-not-ud") throw ValidationError("name", "expected gaussian-not-ud");
  config.validate();
  const ParamMap& p = config.params;
  const auto schedule = schedule_param(p);
  const auto shift = parse_shift(p.str("shift"));
  const double threshold = threshold_param(config, config.N);
  const double floor = p.real("density_floor");
  const auto grid = size_param(p, "grid", 2);
  const bool keep_raw = p.boolean("keep_raw");

  auto rows = run_replicas(config, workers, [&](ReplicaRecord& row) {
    const auto prefix = apply_shift(sample_gaussian_prefix(schedule, config.N, row.seed), shift);
    const auto ev = ud_verdict(prefix, -0.5, 0.5, grid, threshold);
    row.stats = {{"outside_density", ev.outside.final_estimate},
                 {"inside_count", static_cast<double>(config.N - ev.outside.counts.back())},
                 {"star_discrepancy", ev.report.star_discrepancy},
                 {"consistent", ev.verdict == Verdict::consistent ? 1.0 : 0.0}};
    if (keep_raw) row.raw.assign(prefix.begin(), prefix.end());
  });

  auto result = finish(config, std::move(rows));
  const double mean_outside = find_stat(result.aggregate, "outside_density").mean;
  const double any_consistent = find_stat(result.aggregate, "consistent").max;
  result.pass = any_consistent == 0.0 && mean_outside >= floor;
  result.summary["threshold"] = threshold;
  result.summary["mean_outside_density"] = mean_outside;
  result.summary["inconsistent_fraction"] = 1.0 - find_stat(result.aggregate, "consistent").mean;
  result.summary["mean_inside_count"] = find_stat(result.aggregate, "inside_count").mean;
  const std::size_t n_sum = std::min<std::size_t>(config.N, static_cast<std::size_t>(schedule.n_max));
  // Coordinate k lands inside iff x_k is in [-1/2 - h_k, 1/2 - h_k].
  result.summary["expected_inside_count"] = borel_cantelli_sum(schedule, -shift, {-0.5, 0.5}, 1, n_sum);
  result.summary["inside_count_envelope"] = geometric_envelope(1, n_sum);
  if (config.N > static_cast<std::size_t>(schedule.n_max)) {
    result.notes.push_back("coordinates past n_max reuse sigma_{n_max}; expected_inside_count covers 1..n_max only");
  }
  result.notes.push_back(kShadowNote);
  return result;
}

ExperimentResult run_gaussian_mod1_ud(const ExperimentConfig& config, unsigned workers) {
  if (config.name != "gaussian-mod1-ud") throw ValidationError("name", "expected gaussian-mod1-ud");
  config.validate();
  const ParamMap& p = config.params;
  const auto schedule = capped_schedule(p);
  const double threshold = threshold_param(config, config.N);
  const bool centered = p.boolean("center_shift");
  const auto grid = size_param(p, "grid", 2);
  const bool keep_raw = p.boolean("keep_raw");

  auto rows = run_replicas(config, workers, [&](ReplicaRecord& row) {
    const auto prefix = sample_gaussian_prefix(schedule, config.N, row.seed);
    const auto ev = centered ? ud_verdict(center_shift(prefix), -0.5, 0.5, grid, threshold)
                             : ud_verdict(fractional_parts(prefix), 0.0, 1.0, grid, threshold);
    row.stats = {{"star_discrepancy", ev.report.star_discrepancy},
                 {"consistent", ev.verdict == Verdict::consistent ? 1.0 : 0.0}};
    if (keep_raw) row.raw.assign(prefix.begin(), prefix.end());
  });

  auto result = finish(config, std::move(rows));
  const double mean_d = find_stat(result.aggregate, "star_discrepancy").mean;
  result.pass = mean_d < threshold;
  result.summary["threshold"] = threshold;
  result.summary["mean_star_discrepancy"] = mean_d;
  result.summary["consistent_fraction"] = find_stat(result.aggregate, "consistent").mean;
  result.summary["variant"] = centered ? "center_shift" : "fractional_parts";
  result.summary["effective_n_max"] = schedule.n_max;
  result.notes.push_back("coordinates past index " + std::to_string(schedule.n_max) + " reuse sigma_" +
                         std::to_string(schedule.n_max) + " = " + format_shortest(schedule.sigma(schedule.n_max)));
  result.notes.push_back(kShadowNote);
  return result;
}

ExperimentResult run_borel_cantelli(const ExperimentConfig& config, unsigned workers) {
  if (config.name != "borel-cantelli") throw ValidationError("name", "expected borel-cantelli");
  config.validate();
  const ParamMap& p = config.params;
  const auto schedule = schedule_param(p);
  const auto n_to = size_param(p, "n_to", 1);
  const auto sweep = sweep_param(p, n_to);
  const Interval interval{p.real("lo"), p.real("hi")};
  const auto shift = parse_shift(p.str("shift"));
  const bool auto_slack = p.str("slack") == "auto";
  const double fixed_slack = auto_slack ? 0.0 : p.real("slack");
  const bool keep_raw = p.boolean("keep_raw");

  auto rows = run_replicas(config, workers, [&](ReplicaRecord& row) {
    const auto last = last_hit_index(schedule, shift, interval, sweep.front(), n_to, row.seed);
    row.stats.emplace_back("last_hit_index", static_cast<double>(last));
    for (const auto from : sweep) {
      row.stats.emplace_back("hit_from_" + std::to_string(from), last >= from ? 1.0 : 0.0);
    }
    if (keep_raw) {
      const auto prefix = sample_gaussian_prefix(schedule, n_to, row.seed);
      row.raw.assign(prefix.begin(), prefix.end());
    }
  });

  auto result = finish(config, std::move(rows));
  Json table = Json::array();
  bool all_within = true;
  bool monotone = true;
  double previous = 1.0;
  for (const auto from : sweep) {
    const auto est = limsup_hit_estimate(schedule, shift, interval, from, n_to, config.M, config.seed, workers);
    if (est.fraction != find_stat(result.aggregate, "hit_from_" + std::to_string(from)).mean) {
      throw std::logic_error("limsup estimate disagrees with per-replica rows");
    }
    const double slack = auto_slack ? est.slack : fixed_slack;
    const bool within = est.fraction <= est.union_bound + slack;
    all_within = all_within && within;
    monotone = monotone && est.fraction <= previous;
    previous = est.fraction;
    Json entry;
    entry["n_from"] = from;
    entry["n_to"] = n_to;
    entry["fraction"] = est.fraction;
    entry["hits"] = est.hits;
    entry["union_bound"] = est.union_bound;
    entry["envelope"] = est.envelope;
    entry["slack"] = slack;
    entry["within_bound"] = within;
    table.push_back(std::move(entry));
  }
  result.pass = all_within && monotone;
  result.summary["sweep"] = std::move(table);
  result.summary["monotone"] = monotone;
  result.notes.push_back("'infinitely often' is approximated by 'at least once in [n_from, n_to]'");
  result.notes.push_back(kShadowNote);
  return result;
}

ExperimentResult run_weyl_slln(const ExperimentConfig& config, unsigned workers) {
  if (config.name != "weyl-slln") throw ValidationError("name", "expected weyl-slln");
  config.validate();
  const ParamMap& p = config.params;
  const auto& generator = p.str("generator");
  const double alpha = p.real("alpha");
  const auto schedule = capped_schedule(p);
  const auto bank = bank_param(p);
  const double threshold = threshold_param(config, config.N);
  const bool keep_raw = p.boolean("keep_raw");

  auto rows = run_replicas(config, workers, [&](ReplicaRecord& row) {
    SequencePrefix prefix;
    if (generator == "uniform") {
      prefix = generate({GeneratorSpec::IidUniform{0.0, 1.0}, std::nullopt, row.seed}, config.N);
    } else if (generator == "kronecker") {
      prefix = generate({GeneratorSpec::Kronecker{alpha}, std::nullopt, row.seed}, config.N);
    } else {
      prefix = sample_gaussian_prefix(schedule, config.N, row.seed);
    }
    double worst = 0.0;
    for (const auto& f : bank) {
      const double r = weyl_average(prefix, f).residual;
      row.stats.emplace_back("residual_" + f.id(), r);
      worst = std::max(worst, r);
    }
    row.stats.emplace_back("max_residual", worst);
    if (keep_raw) row.raw.assign(prefix.begin(), prefix.end());
  });

  auto result = finish(config, std::move(rows));
  const double worst = find_stat(result.aggregate, "max_residual").max;
  result.pass = worst < threshold;
  result.summary["threshold"] = threshold;
  result.summary["max_residual"] = worst;
  Json ids = Json::array();
  for (const auto& f : bank) ids.push_back(f.id());
  result.summary["bank"] = std::move(ids);
  if (generator == "gaussian_schedule") {
    result.notes.push_back("coordinates past index " + std::to_string(schedule.n_max) + " reuse sigma_" +
                           std::to_string(schedule.n_max));
  }
  result.notes.push_back(kShadowNote);
  return result;
}

ExperimentResult run(const ExperimentConfig& config, unsigned workers) {
  if (config.name == "uniform-ae-ud") return run_uniform_ae_ud(config, workers);
  if (config.name == "gaussian-not-ud") return run_gaussian_not_ud(config, workers);
  if (config.name == "gaussian-mod1-ud") return run_gaussian_mod1_ud(config, workers);
  if (config.name == "borel-cantelli") return run_borel_cantelli(config, workers);
  if (config.name == "weyl-slln") return run_weyl_slln(config, workers);
  throw ValidationError("name", "unknown experiment '" + config.name + "'; valid names: " + names_list());
}

Json to_json(const ExperimentResult& result) {
  const auto& c = result.config;
  Json j;
  j["name"] = c.name;
  Json config;
  config["name"] = c.name;
  config["N"] = c.N;
  config["M"] = c.M;
  config["seed"] = c.seed;
  Json params = Json::object();
  for (const auto& [k, v] : c.params.entries()) params[k] = v;
  config["params"] = std::move(params);
  j["config"] = std::move(config);
  j["pass"] = result.pass;
  j["summary"] = result.summary;
  Json agg = Json::array();
  for (const auto& a : result.aggregate) {
    Json row;
    row["stat"] = a.stat;
    row["mean"] = a.mean;
    row["min"] = a.min;
    row["q05"] = a.q05;
    row["q50"] = a.q50;
    row["q95"] = a.q95;
    row["max"] = a.max;
    agg.push_back(std::move(row));
  }
  j["aggregate"] = std::move(agg);
  Json reps = Json::array();
  for (const auto& r : result.per_replica) {
    Json row;
    row["replica"] = r.replica;
    row["seed"] = r.seed;
    Json stats = Json::object();
    for (const auto& [k, v] : r.stats) stats[k] = v;
    row["stats"] = std::move(stats);
    if (!r.raw.empty()) row["raw"] = r.raw;
    reps.push_back(std::move(row));
  }
  j["per_replica"] = std::move(reps);
  Json prov;
  prov["root_seed"] = c.seed;
  prov["code_version"] = result.code_version;
  prov["notes"] = result.notes;
  j["provenance"] = std::move(prov);
  return j;
}

std::vector<ReplicaRecord> replica_rows_from_json(const Json& j) {
  std::vector<ReplicaRecord> rows;
  for (const auto& r : j.at("per_replica")) {
    ReplicaRecord row;
    row.replica = r.at("replica").get<std::size_t>();
    row.seed = r.at("seed").get<std::uint64_t>();
    for (const auto& [k, v] : r.at("stats").items()) row.stats.emplace_back(k, v.get<double>());
    if (r.contains("raw")) row.raw = r.at("raw").get<std::vector<double>>();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<AggregateStat> aggregate_from_json(const Json& j) {
  std::vector<AggregateStat> out;
  for (const auto& a : j.at("aggregate")) {
    out.push_back({a.at("stat").get<std::string>(), a.at("mean").get<double>(), a.at("min").get<double>(),
                   a.at("q05").get<double>(), a.at("q50").get<double>(), a.at("q95").get<double>(),
                   a.at("max").get<double>()});
  }
  return out;
}

std::string to_csv(const ExperimentResult& result) {
  std::ostringstream os;
  os << "replica,seed";
  if (!result.per_replica.empty()) {
    for (const auto& [k, v] : result.per_replica.front().stats) os << ',' << k;
  }
  os << '\n';
  for (const auto& r : result.per_replica) {
    os << r.replica << ',' << r.seed;
    for (const auto& [k, v] : r.stats) os << ',' << format_shortest(v);
    os << '\n';
  }
  os << "\nstat,mean,min,q05,q50,q95,max\n";
  for (const auto& a : result.aggregate) {
    os << a.stat << ',' << format_shortest(a.mean) << ',' << format_shortest(a.min) << ',' << format_shortest(a.q05)
       << ',' << format_shortest(a.q50) << ',' << format_shortest(a.q95) << ',' << format_shortest(a.max) << '\n';
  }
  os << "pass," << (result.pass ? "true" : "false") << '\n';
  return os.str();
}

std::string result_basename(const ExperimentConfig& config) {
  return config.name + "-seed" + std::to_string(config.seed) + "-N" + std::to_string(config.N) + "-M" +
         std::to_string(config.M);
}

}  // namespace equilab
