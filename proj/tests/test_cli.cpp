#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "equilab/cli.hpp"
#include "equilab/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "equilab");
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = equilab::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("equilab-cli-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("gen") {
  auto r = invoke({"gen", "--kind", "vdc", "--base", "2", "-n", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "0.5\n0.25\n0.75\n");

  r = invoke({"gen", "--kind", "kronecker", "--alpha", "1.4142135623730951", "-n", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0.24264068711928566") != std::string::npos);

  r = invoke({"gen", "--kind", "vdc", "--base", "1", "-n", "3"});
  CHECK(r.code == 2);
  CHECK(r.err.find("base") != std::string::npos);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

  r = invoke({"gen", "--kind", "gaussian", "--c", "0.3", "-n", "3"});
  CHECK(r.code == 2);
  CHECK(r.err.find("c:") != std::string::npos);

  r = invoke({"gen", "--kind", "vdc", "--base", "2", "-n", "3", "--shift-const", "1", "--shift-slope", "2"});
  CHECK(r.code == 2);

  const auto a = invoke({"gen", "--kind", "gaussian", "--seed", "9", "-n", "40", "--format", "json"});
  const auto b = invoke({"gen", "--kind", "gaussian", "--seed", "9", "-n", "40", "--format", "json"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(equilab::Json::parse(a.out).size() == 40);
}

TEST_CASE("gen --spec reads a generator description") {
  const auto dir = scratch("spec");
  {
    std::ofstream f(dir / "spec.json");
    f << R"({"kind":"van_der_corput","params":{"base":3},"shift":{"rule":"constant","c":1},"seed":0})";
  }
  const auto r = invoke({"gen", "--spec", (dir / "spec.json").string(), "-n", "2"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  double x1 = 0, x2 = 0;
  lines >> x1 >> x2;
  CHECK(x1 == doctest::Approx(1.0 + 1.0 / 3).epsilon(1e-15));
  CHECK(x2 == doctest::Approx(1.0 + 2.0 / 3).epsilon(1e-15));
  fs::remove_all(dir);
}

TEST_CASE("stats") {
  auto r = invoke({"stats", "--format", "json"}, "0.5\n0.25\n0.75\n");
  REQUIRE(r.code == 0);
  const auto j = equilab::Json::parse(r.out);
  CHECK(j.at("star_discrepancy").get<double>() == 0.25);
  CHECK(j.at("verdict") == "consistent");
  CHECK(j.at("ratio_table").size() == 10);

  r = invoke({"stats"}, "");
  CHECK(r.code == 2);
  r = invoke({"stats"}, "\n\n");
  CHECK(r.code == 2);

  r = invoke({"stats", "--strict"}, "0.5\n0.5\n0.5\n0.5\n");
  CHECK(r.code == 1);
  r = invoke({"stats"}, "0.5\n0.5\n0.5\n0.5\n");
  CHECK(r.code == 0);

  r = invoke({"stats"}, "0.5\nabc\n");
  CHECK(r.code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);

  r = invoke({"stats", "--format", "csv", "--grid", "4"}, "0.1\n0.6\n");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("row,c,d,a,b,count,n,empirical,target,star_discrepancy,threshold,verdict\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 6);

  r = invoke({"stats", "--a", "1", "--b", "0"}, "0.5\n");
  CHECK(r.code == 2);
}

TEST_CASE("gen output feeds stats") {
  const auto g = invoke({"gen", "--kind", "vdc", "--base", "2", "-n", "4096"});
  const auto s = invoke({"stats", "--format", "json", "--threshold", "0.01", "--strict"}, g.out);
  CHECK(s.code == 0);
  CHECK(equilab::Json::parse(s.out).at("star_discrepancy").get<double>() < 0.001);
}

TEST_CASE("mass") {
  auto r = invoke({"mass", "--from", "5", "--to", "3"});
  CHECK(r.code == 2);

  r = invoke({"mass", "--to", "40", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = equilab::Json::parse(r.out);
  CHECK(j.at("value").get<double>() <= j.at("envelope").get<double>());
  for (const auto& row : j.at("rows")) {
    CHECK(row.at("cumulative").get<double>() <= row.at("envelope").get<double>() + 1e-15);
  }

  r = invoke({"mass", "--to", "20", "--shift-const", "100", "--format", "json"});
  REQUIRE(r.code == 0);
  j = equilab::Json::parse(r.out);
  for (const auto& row : j.at("rows")) {
    CHECK(row.at("mass").get<double>() <= row.at("centered_mass").get<double>() + 1e-14);
  }

  r = invoke({"mass", "--to", "3", "--format", "csv"});
  CHECK(r.out.rfind("n,sigma,shift,mass,centered_mass,cumulative,envelope\n1,2,0,0.1974126513658474", 0) == 0);

  CHECK(invoke({"mass", "--c", "0.39"}).code == 2);
  CHECK(invoke({"mass", "--lo", "1", "--hi", "0"}).code == 2);
}

TEST_CASE("experiment writes named, reproducible artifacts") {
  const auto dir = scratch("experiment");
  auto r = invoke({"experiment", "borel-cantelli", "--M", "1000", "--seed", "1", "--out-dir", dir.string()});
  CHECK(r.code == 0);
  const auto json = dir / "borel-cantelli-seed1-N50-M1000.json";
  const auto csv = dir / "borel-cantelli-seed1-N50-M1000.csv";
  REQUIRE(fs::exists(json));
  REQUIRE(fs::exists(csv));
  const auto first = slurp(json);
  const auto doc = equilab::Json::parse(first);
  CHECK(doc.at("config").at("M") == 1000);
  CHECK(equilab::dump_canonical(doc) == first);

  r = invoke({"experiment", "borel-cantelli", "--M", "1000", "--seed", "1", "--out-dir", dir.string()});
  CHECK(slurp(json) == first);

  r = invoke({"experiment", "borel-cantelli", "--M", "1000", "--seed", "1", "--out-dir", "-"});
  CHECK(r.code == 0);
  CHECK(r.out == first);
  fs::remove_all(dir);
}

TEST_CASE("experiment parameters: defaults < file < flags") {
  const auto dir = scratch("params");
  {
    std::ofstream f(dir / "run.conf");
    f << "# smaller run\nN = 12\nM = 3\nthreshold = 1.0\n";
  }
  auto r = invoke({"experiment", "uniform-ae-ud", "--config", (dir / "run.conf").string(), "--M", "2", "--grid=4",
                   "--out-dir", "-"});
  REQUIRE(r.code == 0);
  const auto j = equilab::Json::parse(r.out);
  CHECK(j.at("config").at("N") == 12);
  CHECK(j.at("config").at("M") == 2);
  CHECK(j.at("config").at("params").at("grid") == "4");
  CHECK(j.at("config").at("params").at("threshold") == "1.0");
  fs::remove_all(dir);

  CHECK(invoke({"experiment", "nope"}).code == 2);
  CHECK(invoke({"experiment", "uniform-ae-ud", "--M", "0", "--out-dir", "-"}).code == 2);
  CHECK(invoke({"experiment", "uniform-ae-ud", "--bogus", "1", "--out-dir", "-"}).code == 2);
  CHECK(invoke({"experiment", "uniform-ae-ud", "--N", "10", "--M", "3", "--threshold", "0.001", "--out-dir", "-"}).code == 1);
}

TEST_CASE("exit codes stay within 0, 1, 2") {
  const std::vector<std::vector<std::string>> cases = {
      {},
      {"--help"},
      {"list"},
      {"frobnicate"},
      {"gen"},
      {"gen", "-n", "-1", "--kind", "vdc"},
      {"gen", "-n", "x"},
      {"stats", "/nonexistent/file"},
      {"mass", "--to", "1001"},
      {"experiment"},
  };
  for (const auto& args : cases) {
    const auto r = invoke(args);
    CHECK((r.code == 0 || r.code == 1 || r.code == 2));
  }
  CHECK(invoke({"list"}).out.find("weyl-slln") != std::string::npos);
}

#ifdef EQUILAB_CLI_PATH
TEST_CASE("installed binary matches the in-process entry point") {
  const auto dir = scratch("binary");
  const auto out = dir / "out.txt";
  const std::string cmd = std::string("\"") + EQUILAB_CLI_PATH + "\" gen --kind vdc --base 3 -n 5 > \"" +
                          out.string() + "\"";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(slurp(out) == invoke({"gen", "--kind", "vdc", "--base", "3", "-n", "5"}).out);
  const std::string bad = std::string("\"") + EQUILAB_CLI_PATH + "\" gen --kind vdc --base 1 -n 5 2> \"" +
                          out.string() + "\"";
  const int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == 2);
  fs::remove_all(dir);
}
#endif
