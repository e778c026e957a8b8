#include "polyint/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace fs = std::filesystem;
using json = nlohmann::json;
using std::numbers::pi;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "polyint");
  std::ostringstream out, err;
  const int code = polyint::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("polyint_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string body_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

const std::string ball3 = body_file("ball3.json", R"({"kind":"ball","dim":3,"radius":1})");
const std::string ell_rot = body_file("ell123_rot.json", R"({
  "kind": "ellipsoid",
  "semi_axes": [1, 2, 3],
  "center": [0.3, -0.1, 0.2],
  "rotation": [[0.36, 0.48, -0.8], [-0.8, 0.6, 0.0], [0.48, 0.64, 0.6]]
})");
const std::string super4 = body_file("super4.json", R"({"kind":"superellipsoid","exponent":4,"semi_axes":[1,1,1]})");
const std::string quartic = body_file("quartic.json", R"({"kind":"revolution","coeffs":[1,0,-1]})");
const std::string sphere_rev = body_file("sphere_rev.json", R"({"kind":"revolution","coeffs":[1,-1]})");

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("vsec writes the ball curve") {
  const Result r = run({"vsec", "--body", ball3, "--omega", "0,0,1", "--nodes", "64"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# polyint ", 0) == 0);
  CHECK(r.out.find("config=sha256:") != std::string::npos);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 65);
  CHECK(rows[0] == std::vector<std::string>{"omega_1", "omega_2", "omega_3", "t", "V", "est_error"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double t = std::stod(rows[i][3]);
    CHECK(std::stod(rows[i][4]) == doctest::Approx(pi * (1.0 - t * t)).epsilon(1e-14));
  }
}

TEST_CASE("outputs are reproducible and carry the digest") {
  const Result a = run({"vsec", "--body", super4, "--omega", "1,2,2", "--nodes", "16"});
  const Result b = run({"vsec", "--body", super4, "--omega", "1,2,2", "--nodes", "16", "--workers", "3"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const std::string path = (scratch() / "curve.csv").string();
  REQUIRE(run({"vsec", "--body", super4, "--omega", "1,2,2", "--nodes", "16", "--out", path}).code == 0);
  std::ifstream f(path);
  const std::string written((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(written == a.out);
  const Result c = run({"vsec", "--body", super4, "--omega", "1,2,2", "--nodes", "16", "--seed", "7"});
  CHECK(c.out.substr(0, c.out.find('\n')) != a.out.substr(0, a.out.find('\n')));

  const json doc = json::parse(run({"fit", "--body", ball3}).out);
  CHECK(doc["tool"]["version"].get<std::string>().size() > 0);
  CHECK(doc["tool"]["config_digest"].get<std::string>().rfind("sha256:", 0) == 0);
  CHECK(doc["tool"]["seed"] == 1);
}

TEST_CASE("fit report and coefficient field") {
  const Result r = run({"fit", "--body", ball3, "--omega", "0,0,1"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["verdict"] == "polynomial");
  CHECK(doc["degree"] == 2);
  CHECK(doc["coefficients"][0].get<double>() == doctest::Approx(pi));
  CHECK(json::parse(run({"fit", "--body", super4}).out)["verdict"] == "non_polynomial");

  const Result field = run({"fit", "--body", ell_rot, "--grid", "16", "--k", "1", "--nodes", "32"});
  REQUIRE(field.code == 0);
  const auto rows = csv_rows(field.out);
  CHECK(rows[0] == std::vector<std::string>{"k", "omega_1", "omega_2", "omega_3", "a_k", "flag"});
  CHECK(rows.size() == 17);
  CHECK(rows[1][5] == "fitted");
  CHECK(run({"fit", "--body", ball3, "--grid", "16"}).code == 1);
}

TEST_CASE("exponent") {
  const json doc = json::parse(run({"exponent", "--body", ball3}).out);
  CHECK(doc["plus"].get<double>() == doctest::Approx(1.0).epsilon(0.02));
  CHECK(doc["minus"].get<double>() == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("recover") {
  const Result r = run({"recover", "--body", ell_rot, "--grid", "512"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["status"] == "recovered");
  const std::vector<double> c = doc["center"];
  CHECK(std::abs(c[0] - 0.3) + std::abs(c[1] + 0.1) + std::abs(c[2] - 0.2) <= 1e-6);
  std::vector<double> axes = doc["semi_axes"];
  std::sort(axes.begin(), axes.end());
  for (int j = 0; j < 3; ++j) CHECK(axes[j] == doctest::Approx(j + 1.0).epsilon(1e-4));
  CHECK(doc.contains("residual"));
  CHECK(doc.contains("m0_spread"));

  const Result s = run({"recover", "--body", super4, "--grid", "64"});
  CHECK(s.code == 2);
  CHECK(json::parse(s.out)["status"] == "rejected");
  CHECK(s.err.find("degree gate") != std::string::npos);
}

TEST_CASE("phase table") {
  const Result r = run({"phase", "--body", ball3, "--omega", "0,0,1", "--r", "3.14159265"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["round_trip"] == true);
  const json& row = doc["validation"][0];
  // the ball transform at r = pi is 4 / pi
  CHECK(row["expansion_re"].get<double>() == doctest::Approx(4.0 / pi).epsilon(1e-7));
  CHECK(std::abs(row["slice_re"].get<double>() - row["expansion_re"].get<double>()) <= 1e-9);
  CHECK(std::abs(row["boundary_re"].get<double>() - row["expansion_re"].get<double>()) <= 1e-9);
  CHECK(doc["expansion"]["q_plus"].size() == 3);
  CHECK(doc["expansion"]["q_plus"][0].contains("re_num"));
  CHECK(run({"phase", "--body", super4}).code == 2);
}

TEST_CASE("invert") {
  const json one = json::parse(run({"invert", "--body", ball3, "--x", "0,0,0"}).out);
  CHECK(one["value"].get<double>() == doctest::Approx(1.0).epsilon(0.02));
  CHECK(one["inside"] == true);
  const Result grid = run({"invert", "--body", ball3, "--points", "3", "--grid", "512", "--nodes", "12"});
  REQUIRE(grid.code == 0);
  const auto rows = csv_rows(grid.out);
  CHECK(rows.size() == 28);
  CHECK(rows[0].back() == "inside");
  CHECK(run({"invert", "--body", body_file("disk.json", R"({"kind":"ball","dim":2})")}).code == 1);
}

TEST_CASE("axial") {
  const Result bad = run({"axial", "--body", quartic});
  CHECK(bad.code == 2);
  const json doc = json::parse(bad.out);
  CHECK(doc["verdict"] == "inconsistent");
  CHECK(doc["N_fit"] == 2);
  CHECK(doc["exponent"].get<double>() == doctest::Approx(1.5).epsilon(0.02));
  CHECK(doc.contains("limit_constant"));
  const Result good = run({"axial", "--body", sphere_rev, "--alpha", "1:1000:16"});
  CHECK(good.code == 0);
  CHECK(json::parse(good.out)["verdict"] == "consistent");
  CHECK(run({"axial", "--body", sphere_rev, "--alpha", "5:1:10"}).code == 1);
  CHECK(run({"axial", "--body", sphere_rev, "--alpha", "1:10:10"}).code == 1);
}

TEST_CASE("checks") {
  const Result r = run({"checks", "--body", ell_rot, "--grid", "128"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["passed"] == true);
  std::vector<std::string> names;
  for (const json& c : doc["checks"]) names.push_back(c["name"]);
  for (const char* n : {"antipodal_support", "evenness", "cavalieri", "parity_a0", "parity_a2", "lemma_a3_p1",
                        "expansion_round_trip"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
}

TEST_CASE("input errors exit with 1 and a line number") {
  const std::string broken = body_file("broken.json", "{\n  \"kind\": \"ball\",\n  \"dim\": 3,\n}\n");
  Result r = run({"vsec", "--body", broken});
  CHECK(r.code == 1);
  CHECK(r.err.find("broken.json:4:") != std::string::npos);

  const std::string unknown = body_file("unknown.json", "{\n  \"dim\": 3,\n  \"kind\": \"cube\"\n}\n");
  r = run({"vsec", "--body", unknown});
  CHECK(r.code == 1);
  CHECK(r.err.find("unknown.json:3:") != std::string::npos);
  CHECK(r.err.find("cube") != std::string::npos);

  const std::string negative = body_file("negative.json", "{\"kind\": \"ellipsoid\",\n \"semi_axes\": [1, -2, 3]}\n");
  r = run({"vsec", "--body", negative});
  CHECK(r.code == 1);
  CHECK(r.err.find("negative.json:2:") != std::string::npos);

  CHECK(run({"vsec", "--body", (scratch() / "missing.json").string()}).code == 1);
  CHECK(run({"vsec"}).code == 1);
  CHECK(run({"vsec", "--body", ball3, "--nodes", "3"}).code == 1);
  CHECK(run({"vsec", "--body", ball3, "--omega", "0,0,0"}).code == 1);
  CHECK(run({"vsec", "--body", ball3, "--omega", "1,0"}).code == 1);
  CHECK(run({"vsec", "--body", ball3, "--bogus"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"fit", "--body", ball3, "--tol", "-1"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}
