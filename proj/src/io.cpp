#include "equilab/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "equilab/config.hpp"
#include "equilab/errors.hpp"

namespace equilab {
namespace {

void dump_value(const Json& j, std::string& out, int depth) {
  const auto pad = [&](int d) { out.append(static_cast<std::size_t>(2 * d), ' '); };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        pad(depth + 1);
        out += Json(key).dump();
        out += ": ";
        dump_value(value, out, depth + 1);
      }
      out += "\n";
      pad(depth);
      out += "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ",\n";
        first = false;
        pad(depth + 1);
        dump_value(value, out, depth + 1);
      }
      out += "\n";
      pad(depth);
      out += "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_canonical(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

double real_field(const Json& params, const char* key) {
  if (!params.contains(key) || !params.at(key).is_number()) {
    throw ValidationError(key, "missing or non-numeric field");
  }
  return params.at(key).get<double>();
}

}  // namespace

std::string format_shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_canonical(double v) {
  char buf[64];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

std::string dump_canonical(const Json& j) {
  std::string out;
  dump_value(j, out, 0);
  out += "\n";
  return out;
}

Json to_json(const ShiftVector& shift) {
  return std::visit(
      [](const auto& r) -> Json {
        using T = std::decay_t<decltype(r)>;
        Json j;
        if constexpr (std::is_same_v<T, ShiftVector::Constant>) {
          j["rule"] = "constant";
          j["c"] = r.value;
        } else if constexpr (std::is_same_v<T, ShiftVector::Linear>) {
          j["rule"] = "linear";
          j["slope"] = r.slope;
        } else {
          j["rule"] = "explicit";
          j["values"] = r.values;
        }
        return j;
      },
      shift.rule());
}

ShiftVector shift_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rule")) throw ValidationError("shift", "expected an object with a 'rule'");
  const auto rule = j.at("rule").get<std::string>();
  if (rule == "constant") return ShiftVector::constant(real_field(j, "c"));
  if (rule == "linear") return ShiftVector::linear(real_field(j, "slope"));
  if (rule == "explicit") {
    if (!j.contains("values") || !j.at("values").is_array()) throw ValidationError("values", "expected an array");
    return ShiftVector::explicit_values(j.at("values").get<std::vector<double>>());
  }
  throw ValidationError("rule", "unknown shift rule '" + rule + "' (constant, explicit, linear)");
}

Json to_json(const GaussianSchedule& schedule) {
  Json j;
  j["c"] = schedule.c;
  j["n_max"] = schedule.n_max;
  return j;
}

GaussianSchedule schedule_from_json(const Json& j) {
  GaussianSchedule s;
  s.c = real_field(j, "c");
  if (j.contains("n_max")) {
    if (!j.at("n_max").is_number_integer()) throw ValidationError("n_max", "must be an integer");
    s.n_max = j.at("n_max").get<int>();
  }
  s.validate();
  return s;
}

Json to_json(const GeneratorSpec& spec) {
  Json j;
  j["kind"] = spec.kind_name();
  j["params"] = std::visit(
      [](const auto& k) -> Json {
        using T = std::decay_t<decltype(k)>;
        Json p = Json::object();
        if constexpr (std::is_same_v<T, GeneratorSpec::Kronecker>) p["alpha"] = k.alpha;
        else if constexpr (std::is_same_v<T, GeneratorSpec::VanDerCorput>) p["base"] = k.base;
        else if constexpr (std::is_same_v<T, GeneratorSpec::IidUniform>) {
          p["a"] = k.a;
          p["b"] = k.b;
        } else {
          p = to_json(k.schedule);
        }
        return p;
      },
      spec.kind);
  j["shift"] = spec.shift ? to_json(*spec.shift) : Json(nullptr);
  j["seed"] = spec.seed;
  return j;
}

GeneratorSpec generator_spec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ValidationError("kind", "missing generator kind");
  const Json params = j.value("params", Json::object());
  const auto kind = j.at("kind").get<std::string>();
  GeneratorSpec spec;
  if (kind == "kronecker") {
    spec.kind = GeneratorSpec::Kronecker{real_field(params, "alpha")};
  } else if (kind == "van_der_corput") {
    if (!params.contains("base") || !params.at("base").is_number_integer()) {
      throw ValidationError("base", "missing or non-integer field");
    }
    const auto base = params.at("base").get<long long>();
    if (base < 2) throw ValidationError("base", "must be >= 2");
    spec.kind = GeneratorSpec::VanDerCorput{static_cast<std::uint64_t>(base)};
  } else if (kind == "iid_uniform") {
    spec.kind = GeneratorSpec::IidUniform{real_field(params, "a"), real_field(params, "b")};
  } else if (kind == "gaussian_schedule") {
    spec.kind = GeneratorSpec::Gaussian{schedule_from_json(params)};
  } else {
    throw ValidationError("kind", "unknown generator kind '" + kind +
                                      "' (kronecker, van_der_corput, iid_uniform, gaussian_schedule)");
  }
  if (j.contains("shift") && !j.at("shift").is_null()) spec.shift = shift_from_json(j.at("shift"));
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ValidationError("seed", "must be an unsigned 64-bit integer");
    spec.seed = j.at("seed").get<std::uint64_t>();
  }
  spec.validate();
  return spec;
}

Json to_json(const EquidistReport& report) {
  Json j;
  j["n"] = report.n;
  j["star_discrepancy"] = report.star_discrepancy;
  Json table = Json::array();
  for (const auto& r : report.ratio_table) {
    Json row;
    row["c"] = r.c;
    row["d"] = r.d;
    row["a"] = r.a;
    row["b"] = r.b;
    row["count"] = r.count;
    row["n"] = r.n;
    row["empirical"] = r.empirical;
    row["target"] = r.target;
    table.push_back(std::move(row));
  }
  j["ratio_table"] = std::move(table);
  Json weyl = Json::object();
  for (const auto& [id, residual] : report.weyl_residuals) weyl[id] = residual;
  j["weyl_residuals"] = std::move(weyl);
  j["verdict"] = to_string(report.verdict);
  j["threshold"] = report.threshold;
  j["interval"] = Json::array({report.a, report.b});
  j["outside_fraction"] = report.outside_fraction;
  j["note"] = "verdict is a thresholded diagnostic (consistent iff star_discrepancy < threshold), not a hypothesis test";
  return j;
}

std::string to_csv(const EquidistReport& report) {
  std::ostringstream os;
  os << "row,c,d,a,b,count,n,empirical,target,star_discrepancy,threshold,verdict\n";
  for (const auto& r : report.ratio_table) {
    os << "ratio," << format_shortest(r.c) << ',' << format_shortest(r.d) << ',' << format_shortest(r.a) << ','
       << format_shortest(r.b) << ',' << r.count << ',' << r.n << ',' << format_shortest(r.empirical) << ','
       << format_shortest(r.target) << ",,,\n";
  }
  os << "summary,,," << format_shortest(report.a) << ',' << format_shortest(report.b) << ",," << report.n << ",,,"
     << format_shortest(report.star_discrepancy) << ',' << format_shortest(report.threshold) << ','
     << to_string(report.verdict) << '\n';
  return os.str();
}

ShiftVector parse_shift(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ValidationError("shift", "expected const:<c>, linear:<slope> or list:<h1>,...");
  const std::string rule = text.substr(0, colon);
  const std::string body = text.substr(colon + 1);
  if (rule == "const") return ShiftVector::constant(parse_real(body, "shift"));
  if (rule == "linear") return ShiftVector::linear(parse_real(body, "shift"));
  if (rule == "list") {
    std::vector<double> values;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(parse_real(item, "shift"));
    return ShiftVector::explicit_values(std::move(values));
  }
  throw ValidationError("shift", "unknown shift rule '" + rule + "' (const, linear, list)");
}

std::string shift_to_string(const ShiftVector& shift) {
  return std::visit(
      [](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ShiftVector::Constant>) return "const:" + format_shortest(r.value);
        else if constexpr (std::is_same_v<T, ShiftVector::Linear>) return "linear:" + format_shortest(r.slope);
        else {
          std::string s = "list:";
          for (std::size_t i = 0; i < r.values.size(); ++i) s += (i ? "," : "") + format_shortest(r.values[i]);
          return s;
        }
      },
      shift.rule());
}

}  // namespace equilab
