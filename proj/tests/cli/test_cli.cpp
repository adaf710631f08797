// Black-box tests of the rmtedge executable.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

struct Run {
  int exit_code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(RMTEDGE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("constants: csv layout and values") {
  const Run r = run("constants");
  REQUIRE(r.exit_code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() > 3);
  CHECK(rows[0] == std::vector<std::string>{"quantity", "q", "value"});
  bool gue = false, wishart = false;
  for (const auto& row : rows) {
    if (row[0] == "gue_c0") gue = row[2] == "0.0306294";
    if (row[0] == "wishart_c0") wishart = row[2] == "0.169518";
  }
  CHECK(gue);
  CHECK(wishart);
}

TEST_CASE("same flags give byte-identical output") {
  for (const char* args : {"constants --format json", "table1 --N 10 --N 50", "montecarlo gue --N 20 --samples 2000 --seed 7",
                           "montecarlo wishart --N 20 --n 60 --samples 500 --both-edges",
                           "spiked --p 20 --samples 100 --seed 3"}) {
    CAPTURE(args);
    const Run a = run(args), b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("Monte Carlo output does not depend on the worker count") {
  const Run a = run("montecarlo gue --N 30 --samples 3000 --seed 4 --workers 1");
  const Run b = run("montecarlo gue --N 30 --samples 3000 --seed 4 --workers 3");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  const Run c = run("spiked --p 20 --samples 200 --workers 1");
  const Run d = run("spiked --p 20 --samples 200 --workers 4");
  CHECK(c.out == d.out);
}

TEST_CASE("JSON mirrors CSV") {
  for (const char* args : {"constants", "table1 --N 10 --N 25 --compare", "tailsum --N 10 --q 0 --q 1",
                           "wishart-limit --s 0 --s 1", "montecarlo gue --N 10 --samples 500",
                           "spiked --p 20 --samples 100"}) {
    CAPTURE(args);
    const Run csv = run(args);
    const Run js = run(std::string(args) + " --format json");
    REQUIRE(csv.exit_code == 0);
    REQUIRE(js.exit_code == 0);
    const auto rows = parse_csv(csv.out);
    const auto doc = nlohmann::json::parse(js.out);
    REQUIRE(doc.contains("command"));
    REQUIRE(doc.contains("parameters"));
    REQUIRE(doc["columns"].is_array());
    REQUIRE(doc["rows"].size() + 1 == rows.size());
    std::vector<std::string> columns = doc["columns"].get<std::vector<std::string>>();
    CHECK(columns == rows[0]);
    for (std::size_t i = 0; i < doc["rows"].size(); ++i) {
      const auto& obj = doc["rows"][i];
      REQUIRE(obj.size() == columns.size());
      for (std::size_t j = 0; j < columns.size(); ++j) {
        const auto& v = obj[columns[j]];
        const std::string& cell = rows[i + 1][j];
        if (v.is_string()) {
          CHECK(v.get<std::string>() == cell);
        } else if (v.is_null()) {
          CHECK((cell == "nan" || cell == "inf" || cell == "-inf"));
        } else {
          CHECK(v.get<double>() == std::stod(cell));
        }
      }
    }
  }
}

TEST_CASE("--digits controls significant digits") {
  const Run six = run("tailsum --N 10");
  const Run twelve = run("tailsum --N 10 --digits 12");
  REQUIRE(six.exit_code == 0);
  REQUIRE(twelve.exit_code == 0);
  const auto a = parse_csv(six.out), b = parse_csv(twelve.out);
  CHECK(a[1][2] == "0.0286809");
  CHECK(b[1][2].size() > a[1][2].size());
  CHECK(std::abs(std::stod(b[1][2]) - std::stod(a[1][2])) < 1e-7);
}

TEST_CASE("--out writes the report to a file") {
  const std::string path = "cli_out_test.csv";
  std::remove(path.c_str());
  const Run r = run("constants --out " + path);
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == run("constants").out);
  std::remove(path.c_str());
}

TEST_CASE("table1 compare mode adds relative deviations") {
  const Run r = run("table1 --N 10 --compare");
  REQUIRE(r.exit_code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][0] == "N");
  CHECK(rows[0].back() == "rel_dev_E_T");
  CHECK(std::stod(rows[1].back()) < 1e-4);
}

TEST_CASE("montecarlo reports the analytic comparator") {
  const Run r = run("montecarlo gue --N 50 --samples 1000 --seed 7 --format json");
  REQUIRE(r.exit_code == 0);
  const auto row = nlohmann::json::parse(r.out)["rows"][0];
  CHECK(row["seed"] == 7);
  CHECK(row["samples"] == 1000);
  CHECK(row["analytic"].get<double>() == doctest::Approx(0.0299437).epsilon(1e-6));
  CHECK(row["analytic_source"] == "gue_expected_tailsum");
  CHECK(row["std_error"].get<double>() > 0.0);
}

TEST_CASE("exit codes") {
  CHECK(run("").exit_code == 2);
  CHECK(run("bogus").exit_code == 2);
  CHECK(run("constants --tol 1").exit_code == 2);
  CHECK(run("constants --tol 1e-13").exit_code == 2);
  CHECK(run("constants --digits 13").exit_code == 2);
  CHECK(run("constants --format xml").exit_code == 2);
  CHECK(run("montecarlo gue --samples 99").exit_code == 2);
  CHECK(run("montecarlo cauchy").exit_code == 2);
  CHECK(run("montecarlo wishart --N 300 --n 100 --samples 100").exit_code == 2);
  CHECK(run("spiked --p 20 --spikes 0.5 --samples 100").exit_code == 2);
  CHECK(run("table1 --N 2000").exit_code == 2);
  CHECK(run("constants --q 20").exit_code == 3);
  CHECK(run("constants --check").exit_code == 0);
  CHECK(run("table1 --check").exit_code == 0);
  CHECK(run("wishart-limit --check").exit_code == 0);
  // A reversed s list fails the monotonicity check.
  CHECK(run("wishart-limit --s 1 --s 0 --check").exit_code == 4);
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("spiked reports zero interlacing violations and the exit reference") {
  const Run r = run("spiked --p 30 --samples 200 --format json");
  REQUIRE(r.exit_code == 0);
  const auto row = nlohmann::json::parse(r.out)["rows"][0];
  CHECK(row["interlacing_checked"] == 200);
  CHECK(row["interlacing_violations"] == 0);
  CHECK(row["exit_reference"].get<double>() == doctest::Approx(0.1695));
}

TEST_CASE("loss demo histogram") {
  const Run r = run("spiked --loss-demo --p 30 --samples 100 --bins 5");
  REQUIRE(r.exit_code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 6);
  long total = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) total += std::stol(rows[i][2]);
  CHECK(total == 100);
}

}  // TEST_SUITE
