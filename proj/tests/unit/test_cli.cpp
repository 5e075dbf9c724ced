#include <doctest.h>

#include <charconv>
#include <cmath>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "cli/output.hpp"
#include "northpole/ks.hpp"
#include "northpole/rng.hpp"

namespace cli = northpole::cli;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "northpole");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

double parse(const std::string& s) {
  double v = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

std::vector<double> column(const std::string& csv, std::size_t index) {
  const auto rows = csv_rows(csv);
  std::vector<double> v;
  for (std::size_t i = 1; i < rows.size(); ++i) v.push_back(parse(rows[i][index]));
  return v;
}

}  // namespace

TEST_CASE("format_double round-trips exactly") {
  northpole::RngStream rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double x = rng.normal() * std::pow(10.0, static_cast<int>(rng.next_u64() % 40) - 20);
    REQUIRE(parse(cli::format_double(x)) == x);
  }
  CHECK(cli::format_double(0.5) == "0.5");
  CHECK(cli::format_double(0.1) == "0.1");
}

TEST_CASE("sample: byte-identical output for identical configuration") {
  const auto a = run({"sample", "--k", "2", "--p", "3", "--n", "5", "--seed", "7", "--method", "exact"});
  const auto b = run({"sample", "--k", "2", "--p", "3", "--n", "5", "--seed", "7", "--method", "exact"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto rows = csv_rows(a.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"index", "value"});
  CHECK(rows[5][0] == "4");
  CHECK(run({"sample", "--k", "2", "--p", "3", "--n", "5", "--seed", "8"}).out != a.out);
}

TEST_CASE("sample: exact and direct methods agree in law") {
  const auto exact = run({"sample", "--k", "2", "--p", "3", "--n", "100000", "--seed", "1", "--method", "exact"});
  const auto direct = run({"sample", "--k", "2", "--p", "3", "--n", "100000", "--seed", "2", "--method", "direct"});
  REQUIRE(exact.code == 0);
  REQUIRE(direct.code == 0);
  const auto report = northpole::mc::two_sample_ks(column(exact.out, 1), column(direct.out, 1), 0.001);
  CHECK(report.pass);
}

TEST_CASE("sample: k >= 4 needs the direct method") {
  const auto r = run({"sample", "--k", "4", "--p", "3", "--method", "exact"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("no exact representation; use --method direct") != std::string::npos);
  CHECK(run({"sample", "--k", "4", "--p", "3", "--n", "3", "--method", "direct"}).code == 0);
  CHECK(run({"sample", "--k", "2", "--p", "5", "--n", "3", "--method", "decomposition"}).code == 0);
}

TEST_CASE("sample: JSON layout") {
  const auto r = run({"sample", "--k", "3", "--p", "4", "--n", "3", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["config"]["command"] == "sample");
  CHECK(j["config"]["seed"] == northpole::kDefaultSeed);
  CHECK(j["rows"].size() == 3);
  CHECK(j["rows"][2]["index"] == 2);
}

TEST_CASE("density: uniform at p = 3, normalized grid, CDF endpoints") {
  const auto r3 = run({"density", "--p", "3", "--n", "50"});
  REQUIRE(r3.code == 0);
  for (double f : column(r3.out, 1)) CHECK(f == 0.5);

  for (const char* p : {"3", "5", "10"}) {
    const auto r = run({"density", "--p", p, "--n", "10000"});
    REQUIRE(r.code == 0);
    const auto xs = column(r.out, 0);
    const auto fs = column(r.out, 1);
    const auto cs = column(r.out, 2);
    REQUIRE(xs.size() == 10000);
    // Each grid point is the midpoint of a cell of width 2/n.
    double integral = 0.0;
    for (double f : fs) integral += f * (2.0 / 10000);
    CAPTURE(p);
    CHECK(std::fabs(integral - 1.0) <= 1e-4);
    CHECK(xs.front() > -1.0);
    CHECK(xs.back() < 1.0);
    CHECK(cs.front() < 1e-3);
    CHECK(cs.back() > 1 - 1e-3);
  }
}

TEST_CASE("density: p = 1 is rejected") {
  const auto r = run({"density", "--p", "1"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("degenerate density") != std::string::npos);
}

TEST_CASE("table: columns, determinism and standard error") {
  const auto a = run({"table", "--dims", "3,4", "--n", "1000", "--seed", "3"});
  REQUIRE(a.code == 0);
  const auto rows = csv_rows(a.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == std::vector<std::string>{"p", "prob_positive", "std_error", "n"});
  CHECK(rows[1][0] == "3");
  CHECK(rows[1][3] == "1000");
  CHECK(std::fabs(parse(rows[1][2]) - std::sqrt(0.71 * 0.29 / 1000)) <= 0.001);
  CHECK(run({"table", "--dims", "3,4", "--n", "1000", "--seed", "3"}).out == a.out);
  CHECK(run({"table", "--dims", "2", "--n", "1000"}).code == cli::kExitUsage);
  CHECK(run({"table", "--n", "10"}).code == cli::kExitUsage);
}

TEST_CASE("haar: orthogonality certificates, determinism, errors") {
  const auto a = run({"haar", "--p", "3", "--method", "decomposition", "--n", "1", "--seed", "1"});
  const auto b = run({"haar", "--p", "3", "--method", "decomposition", "--n", "1", "--seed", "1"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);

  const auto many = run({"haar", "--p", "6", "--method", "qr", "--n", "200"});
  REQUIRE(many.code == 0);
  const auto j = json::parse(many.out);
  REQUIRE(j["rows"].size() == 200);
  for (const auto& row : j["rows"]) {
    REQUIRE(row["defect"].get<double>() <= 1e-10);
    REQUIRE(row["matrix"].size() == 6);
    REQUIRE(row["matrix"][0].size() == 6);
  }

  const auto csv = run({"haar", "--p", "2", "--n", "2", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv_rows(csv.out)[0].size() == 2 + 4);

  const auto bad = run({"haar", "--p", "2", "--method", "decomposition"});
  CHECK(bad.code == cli::kExitUsage);
  CHECK(bad.err.find("requires p >= 3") != std::string::npos);
  CHECK(run({"haar", "--p", "3", "--method", "exact"}).code == cli::kExitUsage);
}

TEST_CASE("usage errors and help") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"sample", "--bogus"}).code == cli::kExitUsage);
  CHECK(run({"sample", "--method", "nope"}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitSuccess);
}

TEST_CASE("verify: default battery passes") {
  const auto r = run({"verify"});
  CHECK(r.code == cli::kExitSuccess);
  const auto j = json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["failures"].empty());
  CHECK(j["rows"].size() > 50);
  for (const auto& row : j["rows"]) {
    if (row.contains("ks")) CHECK(row["ks"]["alpha"] == 0.001);
  }
}

TEST_CASE("verify: mutation fixtures make the battery fail") {
  const auto qr = run({"verify", "--n", "20000", "--identity-draws", "200", "--fixture", "qr-no-sign-fix"});
  CHECK(qr.code == cli::kExitVerificationFailure);
  CHECK(qr.err.find("FAILED: marginal/qr/gamma11/p=3") != std::string::npos);

  const auto kernel = run({"verify", "--n", "20000", "--identity-draws", "200", "--fixture", "u2-drop-xi1-squared"});
  CHECK(kernel.code == cli::kExitVerificationFailure);
  CHECK(kernel.err.find("FAILED: representation/k=2/p=3") != std::string::npos);

  CHECK(run({"verify", "--fixture", "other"}).code == cli::kExitUsage);
}
