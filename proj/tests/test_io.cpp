#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "sporgen/bundle.hpp"
#include "sporgen/error.hpp"
#include "sporgen/report.hpp"
#include "test_support.hpp"

using namespace sporgen;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// CSV without quoted commas, as produced for numeric reports.
std::vector<std::vector<std::string>> split_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(Bundle, ResolvesByNameAndPath) {
  const auto by_name = resolve_bundle("M11");
  EXPECT_EQ(by_name, resolve_bundle("m11"));
  EXPECT_EQ(by_name, resolve_bundle(data_path("groups/m11").string()));
  EXPECT_EQ(by_name, resolve_bundle(data_path("groups/m11/bundle.json").string()));
  EXPECT_THROW(resolve_bundle("no_such_group"), Error);
}

TEST(Bundle, LoadsEveryShippedGroup) {
  for (const auto& entry : std::filesystem::directory_iterator(data_path("groups"))) {
    const auto bundle = load_bundle(entry.path().string());
    ASSERT_TRUE(bundle.declared_order) << entry.path();
    EXPECT_EQ(bundle_chain(bundle, 1).order(), *bundle.declared_order) << entry.path();
  }
}

TEST(Bundle, WrongDeclaredOrderIsIntegrityError) {
  auto bundle = load_bundle("a5");
  bundle.declared_order = 120;
  EXPECT_THROW(bundle_chain(bundle, 1), IntegrityError);
}

TEST(Report, CsvAndJsonCarryTheSameCells) {
  TextTable t{{"group", "note"}, {{"M11", "a, \"quoted\" cell"}, {"J1", ""}}};
  std::ostringstream csv, json;
  write_table(csv, t, ReportFormat::Csv);
  write_table(json, t, ReportFormat::Json);
  EXPECT_EQ(csv.str(), "group,note\nM11,\"a, \"\"quoted\"\" cell\"\nJ1,\n");
  const auto doc = nlohmann::json::parse(json.str());
  ASSERT_EQ(doc.size(), 2u);
  EXPECT_EQ(doc[0]["note"], "a, \"quoted\" cell");
  EXPECT_EQ(doc[1]["group"], "J1");
}

TEST(Report, RowKinds) {
  const auto t = report_table({{"M11", 11, ReportRow::Kind::Exact, Rational(2, 3)},
                               {"M11", 13, ReportRow::Kind::NotApplicable, std::nullopt}});
  EXPECT_EQ(t.columns, (std::vector<std::string>{"group", "p", "kind", "value", "decimal5"}));
  EXPECT_EQ(t.rows[0][3], "2/3");
  EXPECT_EQ(t.rows[0][4], "0.66667");
  EXPECT_EQ(t.rows[1][3], "");
  EXPECT_EQ(t.rows[1][4], "-");
}

TEST(Cli, GenprobCsvAndJsonAgree) {
  const auto csv = run({"genprob", "m11", "--s", "11"});
  ASSERT_EQ(csv.code, 0) << csv.err;
  const auto json = run({"--format", "json", "genprob", "m11", "--s", "11"});
  ASSERT_EQ(json.code, 0) << json.err;
  const auto rows = split_csv(csv.out);
  const auto doc = nlohmann::json::parse(json.out);
  ASSERT_EQ(rows.size(), doc.size() + 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[0].size(); ++c) EXPECT_EQ(doc[r - 1][rows[0][c]], rows[r][c]);
  }
  EXPECT_EQ(doc[0]["value"], "2/3");
  EXPECT_EQ(doc[0]["decimal5"], "0.66667");
}

TEST(Cli, OutFileMatchesStdout) {
  const auto path = std::filesystem::temp_directory_path() / "sporgen_cli_out.csv";
  const auto direct = run({"census", "a5"});
  ASSERT_EQ(run({"--out", path.string(), "census", "a5"}).code, 0);
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  EXPECT_EQ(s.str(), direct.out);
  std::filesystem::remove(path);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"census", "a5", "--bogus"}).code, 2);
  EXPECT_EQ(run({"--format", "xml", "census", "a5"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  const auto missing = run({"orthocheck", "/nonexistent/table.json"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_FALSE(missing.err.empty());
  EXPECT_EQ(run({"--limit", "100", "genprob", "m11", "--s", "11"}).code, 1);
}

TEST(Cli, PhiFilter) {
  const auto none = run({"phi-filter", "-p", "47", "-q", "2", "-N", "22"});
  EXPECT_EQ(none.code, 0);
  const auto one = run({"phi-filter", "-p", "47", "-q", "2", "-N", "23"});
  EXPECT_EQ(one.code, 0);
  EXPECT_NE(one.out.find("23"), std::string::npos);
  EXPECT_EQ(split_csv(none.out).size() + 1, split_csv(one.out).size());
}

TEST(Cli, TableCommands) {
  const auto table = data_path("tables/a5.json").string();
  EXPECT_EQ(run({"orthocheck", table}).code, 0);
  const auto c = run({"cmc", table, "-i", "2A", "-j", "3A", "-k", "5A"});
  EXPECT_EQ(c.code, 0) << c.err;
  EXPECT_NE(c.out.find("5"), std::string::npos);
  EXPECT_EQ(run({"cmc-scan", table, "-i", "2", "-k", "4"}).code, 0);
}

TEST(Cli, SlpRun) {
  const auto ok = run({"slp", "run", data_path("groups/m11/maximals.slp").string(), "m11"});
  EXPECT_EQ(ok.code, 0) << ok.err;
  const auto strict = run({"slp", "run", test_file("co1_full.txt").string(), "m11"});
  EXPECT_EQ(strict.code, 1);
  EXPECT_NE(strict.err.find("line"), std::string::npos);
}

TEST(Cli, BoundAndReports) {
  const auto b = run({"bound", "j1", "--p", "7"});
  EXPECT_EQ(b.code, 0) << b.err;
  EXPECT_NE(b.out.find("206/209"), std::string::npos);
  const auto c = run({"bound", "j1", "--p", "7", "--contributions"});
  EXPECT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(split_csv(c.out).size(), 8u);
  EXPECT_NE(c.out.find("7:6,4180,42,175560"), std::string::npos);
  const auto t2 = run({"--format", "json", "report", "table2", "m11"});
  ASSERT_EQ(t2.code, 0) << t2.err;
  EXPECT_EQ(nlohmann::json::parse(t2.out).size(), 10u);
}

TEST(Cli, RerunsAreByteIdentical) {
  const auto a = run({"--seed", "5", "genprob", "j1", "--s", "7"});
  const auto b = run({"--seed", "5", "--threads", "3", "genprob", "j1", "--s", "7"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run({"--seed", "5", "genprob", "j1", "--s", "7"}).out, a.out);
}
