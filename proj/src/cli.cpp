#include "equilab/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "equilab/config.hpp"
#include "equilab/equidist.hpp"
#include "equilab/errors.hpp"
#include "equilab/experiments.hpp"
#include "equilab/generators.hpp"
#include "equilab/io.hpp"
#include "equilab/measures.hpp"

namespace equilab::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShiftFlags {
  std::optional<double> constant;
  std::optional<double> slope;
  std::vector<double> list;

  void add_to(CLI::App& app) {
    auto* c = app.add_option("--shift-const", constant, "Constant shift h_k = c");
    auto* s = app.add_option("--shift-slope", slope, "Linear shift h_k = slope * k");
    auto* l = app.add_option("--shift-list", list, "Explicit shift h_1,h_2,... (zero beyond)")->delimiter(',');
    c->excludes(s)->excludes(l);
    s->excludes(l);
  }

  std::optional<ShiftVector> get() const {
    if (constant) return ShiftVector::constant(*constant);
    if (slope) return ShiftVector::linear(*slope);
    if (!list.empty()) return ShiftVector::explicit_values(list);
    return std::nullopt;
  }
};

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file '" + path + "'");
  f << text;
}

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
  } else {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open input file '" + path + "'");
    ss << f.rdbuf();
  }
  return ss.str();
}

SequencePrefix parse_prefix(const std::string& text) {
  std::vector<double> values;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    values.push_back(parse_real(line.substr(first, last - first + 1), "line " + std::to_string(line_no)));
  }
  if (values.empty()) throw ValidationError("input", "no values (expected one finite real per line)");
  return SequencePrefix(std::move(values));
}

// Remaining `--key value` / `--key=value` pairs become experiment params.
ParamMap parse_extras(const std::vector<std::string>& extras) {
  ParamMap params;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& tok = extras[i];
    if (tok.rfind("--", 0) != 0 || tok.size() < 3) throw UsageError("unexpected argument '" + tok + "'");
    const auto eq = tok.find('=');
    if (eq != std::string::npos) {
      params.set(tok.substr(2, eq - 2), tok.substr(eq + 1));
    } else {
      if (i + 1 >= extras.size()) throw UsageError("flag '" + tok + "' needs a value");
      params.set(tok.substr(2), extras[++i]);
    }
  }
  return params;
}

struct GenOptions {
  std::string kind;
  std::string spec_file;
  double alpha = std::numeric_limits<double>::quiet_NaN();
  long long base = 2;
  double a = 0.0;
  double b = 1.0;
  double c = 1.0;
  int n_max = GaussianSchedule::kDefaultMaxIndex;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  ShiftFlags shift;
  std::string format = "text";
  std::string output = "-";
};

int cmd_gen(const GenOptions& o, std::istream& in, std::ostream& out) {
  GeneratorSpec spec;
  if (!o.spec_file.empty()) {
    spec = generator_spec_from_json(Json::parse(read_input(o.spec_file, in)));
  } else {
    const std::string& k = o.kind;
    if (k == "kronecker") {
      if (std::isnan(o.alpha)) throw ValidationError("alpha", "required for kind kronecker");
      spec.kind = GeneratorSpec::Kronecker{o.alpha};
    } else if (k == "vdc" || k == "van_der_corput") {
      if (o.base < 2) throw ValidationError("base", "must be >= 2");
      spec.kind = GeneratorSpec::VanDerCorput{static_cast<std::uint64_t>(o.base)};
    } else if (k == "iid-uniform" || k == "iid_uniform") {
      spec.kind = GeneratorSpec::IidUniform{o.a, o.b};
    } else if (k == "gaussian" || k == "gaussian_schedule") {
      spec.kind = GeneratorSpec::Gaussian{GaussianSchedule{o.c, o.n_max}};
    } else {
      throw ValidationError("kind", "unknown kind '" + k + "' (kronecker, vdc, iid-uniform, gaussian)");
    }
    spec.seed = o.seed;
    spec.shift = o.shift.get();
  }
  const auto prefix = generate(spec, o.n);
  std::string text;
  if (o.format == "json") {
    Json arr = Json::array();
    for (double v : prefix) arr.push_back(v);
    text = dump_canonical(arr);
  } else {
    for (double v : prefix) text += format_shortest(v) + "\n";
  }
  write_output(o.output, text, out);
  return kOk;
}

struct StatsOptions {
  std::string input = "-";
  double a = 0.0;
  double b = 1.0;
  std::size_t grid = 10;
  std::string threshold = "auto";
  std::string bank = "default";
  bool strict = false;
  std::string format = "json";
  std::string output = "-";
};

int cmd_stats(const StatsOptions& o, std::istream& in, std::ostream& out) {
  const auto prefix = parse_prefix(read_input(o.input, in));
  const double threshold = o.threshold == "auto" ? default_threshold(prefix.size()) : parse_real(o.threshold, "threshold");
  std::vector<TestFunction> bank;
  if (o.bank == "default") {
    bank = TestFunction::default_bank();
  } else if (o.bank != "none") {
    for (const auto& id : ParamMap({{"bank", o.bank}}).list("bank")) bank.push_back(TestFunction::parse(id));
  }
  const auto ev = ud_verdict(prefix, o.a, o.b, o.grid, threshold, bank);
  write_output(o.output, o.format == "csv" ? to_csv(ev.report) : dump_canonical(to_json(ev.report)), out);
  return (o.strict && ev.verdict == Verdict::inconsistent) ? kFail : kOk;
}

struct MassOptions {
  double c = 1.0;
  int n_max = GaussianSchedule::kDefaultMaxIndex;
  std::size_t from = 1;
  std::size_t to = 10;
  double lo = -0.5;
  double hi = 0.5;
  ShiftFlags shift;
  std::string format = "json";
  std::string output = "-";
};

int cmd_mass(const MassOptions& o, std::ostream& out) {
  const GaussianSchedule schedule{o.c, o.n_max};
  schedule.validate();
  if (o.from < 1) throw ValidationError("from", "must be >= 1");
  if (o.from > o.to) throw ValidationError("from", "requires from <= to");
  if (o.to > static_cast<std::size_t>(schedule.n_max)) throw ValidationError("to", "exceeds n_max");
  if (!(o.lo <= o.hi)) throw ValidationError("lo", "requires lo <= hi");
  const ShiftVector shift = o.shift.get().value_or(ShiftVector::constant(0.0));

  Json rows = Json::array();
  std::string csv = "n,sigma,shift,mass,centered_mass,cumulative,envelope\n";
  double cumulative = 0.0;
  for (std::size_t n = o.from; n <= o.to; ++n) {
    const auto pair = shift_monotonicity_check({n, o.lo, o.hi, shift.at(n)}, schedule);
    cumulative += pair.shifted;
    const double envelope = geometric_envelope(o.from, n);
    Json row;
    row["n"] = n;
    row["sigma"] = schedule.sigma(n);
    row["shift"] = shift.at(n);
    row["mass"] = pair.shifted;
    row["centered_mass"] = pair.centered;
    row["cumulative"] = cumulative;
    row["envelope"] = envelope;
    rows.push_back(std::move(row));
    csv += std::to_string(n) + "," + format_shortest(schedule.sigma(n)) + "," + format_shortest(shift.at(n)) + "," +
           format_shortest(pair.shifted) + "," + format_shortest(pair.centered) + "," + format_shortest(cumulative) +
           "," + format_shortest(envelope) + "\n";
  }
  if (o.format == "csv") {
    write_output(o.output, csv, out);
    return kOk;
  }
  Json j;
  j["n_from"] = o.from;
  j["n_to"] = o.to;
  j["value"] = borel_cantelli_sum(schedule, shift, {o.lo, o.hi}, o.from, o.to);
  j["envelope"] = geometric_envelope(o.from, o.to);
  j["schedule"] = to_json(schedule);
  j["interval"] = Json::array({o.lo, o.hi});
  j["shift"] = to_json(shift);
  j["rows"] = std::move(rows);
  write_output(o.output, dump_canonical(j), out);
  return kOk;
}

struct ExperimentOptions {
  std::string name;
  std::string config_file;
  std::optional<std::string> N;
  std::optional<std::string> M;
  std::optional<std::string> seed;
  std::string out_dir = ".";
};

int cmd_experiment(const ExperimentOptions& o, const std::vector<std::string>& extras, std::istream& in,
                   std::ostream& out) {
  default_config_text(o.name);  // unknown name -> ValidationError listing valid names
  ParamMap overrides;
  if (!o.config_file.empty()) overrides = ParamMap::parse(read_input(o.config_file, in));
  overrides.merge(parse_extras(extras));
  if (o.N) overrides.set("N", *o.N);
  if (o.M) overrides.set("M", *o.M);
  if (o.seed) overrides.set("seed", *o.seed);
  const auto config = make_config(o.name, overrides);
  const auto result = run(config);
  const std::string json = dump_canonical(to_json(result));
  if (o.out_dir == "-") {
    out << json;
  } else {
    std::filesystem::create_directories(o.out_dir);
    const auto base = std::filesystem::path(o.out_dir) / result_basename(config);
    write_output(base.string() + ".json", json, out);
    write_output(base.string() + ".csv", to_csv(result), out);
    out << config.name << ": " << (result.pass ? "PASS" : "FAIL") << " -> " << base.string() << ".{json,csv}\n";
  }
  return result.pass ? kOk : kFail;
}

int cmd_list(std::ostream& out) {
  out << "experiments:\n";
  for (const auto& n : experiment_names()) out << "  " << n << "\n";
  out << "generator kinds:\n  kronecker (--alpha)\n  vdc (--base)\n  iid-uniform (--a --b --seed)\n"
         "  gaussian (--c --n-max --seed)\n";
  out << "test functions (default bank):\n";
  for (const auto& f : TestFunction::default_bank()) out << "  " << f.id() << "\n";
  out << "  pwl:x0:y0,...,xk:yk (custom piecewise linear)\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"equilab: equidistribution numerics and Monte Carlo experiments"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "Generate a sequence prefix");
  auto* kind = g->add_option("--kind", gen.kind, "kronecker | vdc | iid-uniform | gaussian");
  auto* spec_file = g->add_option("--spec", gen.spec_file, "GeneratorSpec JSON file ('-' for stdin)");
  kind->excludes(spec_file);
  g->add_option("--alpha", gen.alpha, "Kronecker rotation");
  g->add_option("--base", gen.base, "van der Corput base (>= 2)");
  g->add_option("--a", gen.a, "iid-uniform lower bound");
  g->add_option("--b", gen.b, "iid-uniform upper bound");
  g->add_option("--c", gen.c, "Gaussian schedule scale");
  g->add_option("--n-max", gen.n_max, "Gaussian schedule largest index");
  g->add_option("--seed", gen.seed, "Root seed");
  g->add_option("-n", gen.n, "Prefix length")->required();
  gen.shift.add_to(*g);
  g->add_option("--format", gen.format, "text | json")->check(CLI::IsMember({"text", "json"}));
  g->add_option("-o,--output", gen.output, "Output path ('-' for stdout)");

  StatsOptions stats;
  auto* s = app.add_subcommand("stats", "Equidistribution report for one value per line");
  s->add_option("input", stats.input, "Input path ('-' for stdin)");
  s->add_option("--a", stats.a, "Reference interval lower end");
  s->add_option("--b", stats.b, "Reference interval upper end");
  s->add_option("--grid", stats.grid, "Number of diagnostic subintervals");
  s->add_option("--threshold", stats.threshold, "Verdict threshold or 'auto' (2/sqrt(N)+0.01 in [0.01,0.5])");
  s->add_option("--bank", stats.bank, "'default', 'none' or comma-separated function ids");
  s->add_flag("--strict", stats.strict, "Exit 1 when the verdict is inconsistent");
  s->add_option("--format", stats.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  s->add_option("-o,--output", stats.output, "Output path ('-' for stdout)");

  MassOptions mass;
  auto* m = app.add_subcommand("mass", "Cylinder-event masses, cumulative sum and 2^-n envelope");
  m->add_option("--c", mass.c, "Schedule scale (sigma_n = c*2^n)");
  m->add_option("--n-max", mass.n_max, "Schedule largest index");
  m->add_option("--from", mass.from, "First index");
  m->add_option("--to", mass.to, "Last index");
  m->add_option("--lo", mass.lo, "Interval lower end");
  m->add_option("--hi", mass.hi, "Interval upper end");
  mass.shift.add_to(*m);
  m->add_option("--format", mass.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  m->add_option("-o,--output", mass.output, "Output path ('-' for stdout)");

  ExperimentOptions exp;
  auto* e = app.add_subcommand("experiment", "Run a named experiment; extra --key value pairs set params");
  e->add_option("name", exp.name, "Experiment name")->required();
  e->add_option("--config", exp.config_file, "Flat key = value config file");
  e->add_option("--N", exp.N, "Prefix length");
  e->add_option("--M", exp.M, "Replica count");
  e->add_option("--seed", exp.seed, "Root seed");
  e->add_option("--out-dir", exp.out_dir, "Directory for result files ('-' prints JSON)");
  e->allow_extras();

  auto* l = app.add_subcommand("list", "List experiments, generator kinds and test functions");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& ex) {
    err << "equilab: error: " << ex.what() << "\n";
    return kUsage;
  }

  try {
    if (g->parsed()) {
      if (gen.kind.empty() && gen.spec_file.empty()) throw ValidationError("kind", "one of --kind or --spec is required");
      return cmd_gen(gen, in, out);
    }
    if (s->parsed()) return cmd_stats(stats, in, out);
    if (m->parsed()) return cmd_mass(mass, out);
    if (e->parsed()) return cmd_experiment(exp, e->remaining(), in, out);
    if (l->parsed()) return cmd_list(out);
  } catch (const ValidationError& ex) {
    err << "equilab: error: " << ex.what() << "\n";
    return kUsage;
  } catch (const UsageError& ex) {
    err << "equilab: error: " << ex.what() << "\n";
    return kUsage;
  } catch (const Json::exception& ex) {
    err << "equilab: error: json: " << ex.what() << "\n";
    return kUsage;
  } catch (const std::exception& ex) {
    err << "equilab: error: " << ex.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace equilab::cli
