#include <doctest.h>

#include <random>

#include "equilab/config.hpp"
#include "equilab/errors.hpp"
#include "equilab/io.hpp"

using namespace equilab;

TEST_CASE("GeneratorSpec JSON uses the documented field names") {
  GeneratorSpec spec{GeneratorSpec::IidUniform{-1.0, 2.0}, ShiftVector::linear(0.5), 42};
  const Json j = to_json(spec);
  CHECK(j.at("kind") == "iid_uniform");
  CHECK(j.at("params").at("a") == -1.0);
  CHECK(j.at("shift").at("rule") == "linear");
  CHECK(j.at("seed") == 42);
  CHECK(generator_spec_from_json(j) == spec);

  const auto vdc = generator_spec_from_json(Json::parse(R"({"kind":"van_der_corput","params":{"base":3},"shift":null,"seed":0})"));
  CHECK(std::get<GeneratorSpec::VanDerCorput>(vdc.kind).base == 3);
  CHECK_FALSE(vdc.shift.has_value());

  const auto gauss = generator_spec_from_json(
      Json::parse(R"({"kind":"gaussian_schedule","params":{"c":1.5,"n_max":40},"shift":{"rule":"explicit","values":[1,2]},"seed":7})"));
  CHECK(std::get<GeneratorSpec::Gaussian>(gauss.kind).schedule == GaussianSchedule{1.5, 40});
  CHECK(gauss.shift->at(3) == 0.0);

  CHECK_THROWS_AS(generator_spec_from_json(Json::parse(R"({"kind":"halton","params":{}})")), ValidationError);
  CHECK_THROWS_AS(generator_spec_from_json(Json::parse(R"({"kind":"van_der_corput","params":{"base":1}})")), ValidationError);
  CHECK_THROWS_AS(generator_spec_from_json(Json::parse(R"({"kind":"iid_uniform","params":{"a":1,"b":0}})")), ValidationError);
}

TEST_CASE("schedule JSON") {
  const Json j = to_json(GaussianSchedule{2.0, 30});
  CHECK(j.dump() == R"({"c":2.0,"n_max":30})");
  CHECK(schedule_from_json(j) == GaussianSchedule{2.0, 30});
  CHECK_THROWS_AS(schedule_from_json(Json::parse(R"({"c":0.1})")), ValidationError);
}

TEST_CASE("canonical JSON round-trips byte for byte") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int trial = 0; trial < 50; ++trial) {
    Json j;
    j["z"] = u(rng);
    j["a"] = Json::array({u(rng) * 1e-300, u(rng) * 1e300, 1.0, 0.1, 3, -7});
    j["nested"]["s"] = "text \"quoted\"";
    j["nested"]["flag"] = true;
    j["nested"]["nothing"] = nullptr;
    j["nested"]["empty"] = Json::object();
    const std::string first = dump_canonical(j);
    CHECK(dump_canonical(Json::parse(first)) == first);
  }
  CHECK(format_canonical(0.1) == "0.10000000000000001");
  CHECK(format_shortest(0.1) == "0.1");
}

TEST_CASE("shift text form") {
  CHECK(parse_shift("const:5") == ShiftVector::constant(5.0));
  CHECK(parse_shift("linear:-0.5") == ShiftVector::linear(-0.5));
  CHECK(parse_shift("list:1,2.5") == ShiftVector::explicit_values({1.0, 2.5}));
  CHECK(parse_shift(shift_to_string(ShiftVector::explicit_values({0.1, -3}))) ==
        ShiftVector::explicit_values({0.1, -3}));
  CHECK_THROWS_AS(parse_shift("5"), ValidationError);
  CHECK_THROWS_AS(parse_shift("cycle:1"), ValidationError);
  CHECK_THROWS_AS(parse_shift("const:abc"), ValidationError);
}

TEST_CASE("flat config files") {
  const auto p = ParamMap::parse("# comment\nN = 100\n\n  threshold=0.05 # trailing\nbank = mono0, cos1\n");
  CHECK(p.integer("N") == 100);
  CHECK(p.real("threshold") == 0.05);
  CHECK(p.list("bank") == std::vector<std::string>{"mono0", "cos1"});
  CHECK_THROWS_AS(ParamMap::parse("just words\n"), ValidationError);
  CHECK_THROWS_AS(p.real("missing"), ValidationError);
  CHECK_THROWS_AS(ParamMap::parse("x = 1.5").integer("x"), ValidationError);
  CHECK_THROWS_AS(ParamMap::parse("x = maybe").boolean("x"), ValidationError);
}

TEST_CASE("EquidistReport serialization") {
  EquidistReport r;
  r.n = 2;
  r.star_discrepancy = 0.25;
  r.ratio_table.push_back({0.0, 0.5, 0.0, 1.0, 1, 2, 0.5, 0.5});
  r.weyl_residuals["mono1"] = 0.0;
  r.verdict = Verdict::consistent;
  r.threshold = 0.5;
  const Json j = to_json(r);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  REQUIRE(keys.size() >= 6);
  CHECK(std::vector<std::string>(keys.begin(), keys.begin() + 6) ==
        std::vector<std::string>{"n", "star_discrepancy", "ratio_table", "weyl_residuals", "verdict", "threshold"});
  const auto csv = to_csv(r);
  CHECK(csv.find("ratio,0,0.5,0,1,1,2,0.5,0.5") != std::string::npos);
  CHECK(csv.find("summary,") != std::string::npos);
}
