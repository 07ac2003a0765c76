#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "pok");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = pok::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(CliPmf, AllMethodsOrderTwo) {
  const auto r = run({"pmf", "--k", "2", "--lambda", "1", "--n-max", "4", "--method", "all"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "recurrence", "km", "brute", "max_rel_err"}));
  const double expected[] = {1.0, 1.0, 1.5, 7.0 / 6.0, 25.0 / 24.0};
  for (int n = 0; n <= 4; ++n) {
    for (int col = 1; col <= 3; ++col) {
      EXPECT_NEAR(std::stod(rows[n + 1][col]), expected[n], 1e-15) << n << ' ' << col;
    }
    EXPECT_LT(std::stod(rows[n + 1][4]), 1e-14);
  }
}

TEST(CliPmf, PoissonColumn) {
  const auto r = run({"pmf", "--k", "1", "--lambda", "1", "--n-max", "5"});
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0][1], "recurrence");
  const double expected[] = {1.0, 1.0, 0.5, 1.0 / 6, 1.0 / 24, 1.0 / 120};
  for (int n = 0; n <= 5; ++n) EXPECT_NEAR(std::stod(rows[n + 1][1]), expected[n], 1e-16);
}

TEST(CliPmf, FigureOneDefaultRange) {
  const auto r = run({"pmf", "--k", "10", "--lambda", "0.3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(parse_csv(r.out).size(), 32u);  // header + n = 0..30
}

TEST(CliPmf, Errors) {
  EXPECT_EQ(run({"pmf", "--k", "0", "--lambda", "1"}).code, 2);
  EXPECT_EQ(run({"pmf", "--k", "2", "--lambda", "-1"}).code, 2);
  EXPECT_EQ(run({"pmf", "--k", "2"}).code, 2);
  EXPECT_EQ(run({"pmf", "--k", "2", "--lambda", "1", "--method", "magic"}).code, 2);
  const auto budget =
      run({"pmf", "--k", "8", "--lambda", "1", "--n-max", "40", "--method", "brute", "--budget", "100"});
  EXPECT_EQ(budget.code, 3);
  EXPECT_NE(budget.err.find("exceeded"), std::string::npos);
}

TEST(CliDiff, Cases) {
  const auto five = run({"diff", "--k", "5", "--lambda", "1"});
  EXPECT_EQ(five.code, 0);
  EXPECT_EQ(parse_csv(five.out).size(), 1u + 10u);

  const auto two = run({"diff", "--k", "2", "--lambda", "0.5"});
  ASSERT_EQ(two.code, 0);
  const auto rows = parse_csv(two.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"m", "n", "delta_recursive", "delta_closed", "rel_err"}));
  EXPECT_EQ(rows[1][0], "1");
  EXPECT_EQ(rows[1][1], "2");
  EXPECT_NEAR(std::stod(rows[1][3]), 0.125, 1e-16);

  const auto one = run({"diff", "--k", "1", "--lambda", "1"});
  EXPECT_EQ(one.code, 2);
  EXPECT_NE(one.err.find("k must be >= 2"), std::string::npos);
}

TEST(CliVerify, Cases) {
  const auto below = run({"verify", "--k", "3", "--lambda", "0.8", "--cap", "60"});
  EXPECT_EQ(below.code, 0);
  EXPECT_NE(below.out.find("status=decreasing"), std::string::npos);

  const auto above = run({"verify", "--k", "10", "--lambda", "0.3"});
  EXPECT_EQ(above.code, 1);
  EXPECT_NE(above.out.find("first_violation=11"), std::string::npos);

  const auto tie = run({"verify", "--k", "2", "--lambda", "1.2915026", "--tie-tol", "1e-7"});
  EXPECT_EQ(tie.code, 0);
  EXPECT_NE(tie.out.find("marginal=3"), std::string::npos);
  EXPECT_NE(tie.out.find("closest_pair=3"), std::string::npos);

  const auto csv = run({"verify", "--k", "10", "--lambda", "0.2", "--cap", "60", "--format", "csv"});
  EXPECT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out,
            "k,lambda,decreasing_block,concave_block,decreasing_tail_to,first_violation\n"
            "10,0.2,1,1,60,none\n");

  EXPECT_EQ(run({"verify", "--k", "10", "--lambda", "0.2", "--cap", "5"}).code, 2);
}

TEST(CliThresholds, Cases) {
  const auto table = run({"thresholds", "--k-min", "2", "--k-max", "10"});
  ASSERT_EQ(table.code, 0);
  const auto rows = parse_csv(table.out);
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(rows[1], (std::vector<std::string>{"2", "1.291502622", "1.285714286", "0.005788336"}));
  EXPECT_EQ(rows[6][1], "0.334663355");

  const auto three = run({"thresholds", "--k-min", "3", "--k-max", "3"});
  EXPECT_NE(three.out.find("3,0.821876885,"), std::string::npos);

  EXPECT_EQ(run({"thresholds", "--k-min", "1", "--k-max", "1"}).code, 2);
  EXPECT_EQ(run({"thresholds", "--k-min", "2", "--k-max", "2001"}).code, 2);

  const auto full = run({"thresholds", "--k-min", "2", "--k-max", "2", "--format", "full"});
  EXPECT_EQ(parse_csv(full.out)[0].size(), 7u);
}

TEST(CliFit, Cases) {
  const auto dir = std::filesystem::temp_directory_path() / "pok_cli_fit_test";
  std::filesystem::remove_all(dir);
  const auto small = run({"fit", "--k-min", "2", "--k-max", "4", "--out-dir", dir.string()});
  ASSERT_EQ(small.code, 0) << small.err;
  EXPECT_NE(small.out.find("\"alpha\""), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(dir / "fig4.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "fig5.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "fit.json"));
  std::filesystem::remove_all(dir);

  const auto single = run({"fit", "--k-min", "5", "--k-max", "5"});
  EXPECT_EQ(single.code, 2);
  EXPECT_NE(single.err.find("degenerate"), std::string::npos);
}

TEST(CliConjectureScan, Passes) {
  const auto r = run({"conjecture-scan", "--k-min", "2", "--k-max", "8"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(parse_csv(r.out).size(), 8u);
}

TEST(Cli, DeterministicFileOutput) {
  const auto dir = std::filesystem::temp_directory_path() / "pok_cli_det_test";
  std::filesystem::create_directories(dir);
  const auto a = (dir / "a.csv").string();
  const auto b = (dir / "b.csv").string();
  EXPECT_EQ(run({"thresholds", "--k-min", "2", "--k-max", "40", "--jobs", "1", "--out", a}).code, 0);
  EXPECT_EQ(run({"thresholds", "--k-min", "2", "--k-max", "40", "--jobs", "3", "--out", b}).code, 0);
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));
  std::filesystem::remove_all(dir);
}

TEST(Cli, NoSubcommandIsUsageError) { EXPECT_EQ(run({}).code, 2); }
