#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "symchar/cli.hpp"
#include "symchar/serialize.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = symchar::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / ("symchar_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

}  // namespace

TEST(Cli, Eval) {
  const auto r = run({"eval", "3", "0", "1", "--", "1", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "counts [0,1,1]\nvalue -1.00000000000+0.00000000000i\n");
  EXPECT_TRUE(r.err.empty());
}

TEST(Cli, EvalReorderNotice) {
  const auto r = run({"eval", "3", "1", "0", "--", "1", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("canonicalized"), std::string::npos);
  EXPECT_EQ(lines(r.out)[0], "counts [0,1,1]");
}

TEST(Cli, Orbits) {
  const auto r = run({"orbits", "3", "2"});
  EXPECT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 6u);
  const auto first = nlohmann::json::parse(ls[1]);
  EXPECT_EQ(first["orbit"], nlohmann::json({0, 1}));
  EXPECT_EQ(first["size"], 2);
}

TEST(Cli, VerifyConjugate) {
  const auto r = run({"verify", "conjugate", "--n", "4", "--d", "3"});
  EXPECT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  EXPECT_EQ(ls.size(), 20u * 20u + 1u);
  const auto summary = nlohmann::json::parse(ls.back());
  EXPECT_EQ(summary["failures"], 0);
}

TEST(Cli, VerifyOthers) {
  for (std::vector<std::string> args : {
           std::vector<std::string>{"verify", "translation", "--n", "3", "--d", "2", "--failures-only"},
           {"verify", "constancy", "--n", "4", "--d", "3"},
           {"verify", "permanent", "--n", "5", "--d", "3", "--samples", "5"},
           {"verify", "stabilizer", "--n", "3", "--d", "3"},
           {"verify", "real", "--n", "7", "--x", "0", "1", "1", "6", "6"},
           {"verify", "dihedral", "--n", "12", "--x", "0", "0", "0", "1", "5"},
           {"verify", "full-union", "--n", "9", "--d", "3"},
           {"verify", "spikes", "--n", "16", "--x", "1", "1", "10", "10"},
           {"verify", "parity", "--n", "11", "--d", "4"},
           {"verify", "walk", "--n", "24", "--d", "3", "--a", "8"},
           {"verify", "hypocycloid", "--n", "11", "--d", "4"},
           {"verify", "torus", "--n", "7", "--d", "3"},
       }) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << args[1] << "\n" << r.out << r.err;
  }
}

TEST(Cli, FailuresOnlyPrintsSummaryOnly) {
  const auto r = run({"verify", "translation", "--n", "3", "--d", "2", "--failures-only"});
  EXPECT_EQ(lines(r.out).size(), 1u);
}

TEST(Cli, Solve) {
  const auto r = run({"solve", "7", "0", "5", "12"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["j"], 7);
  EXPECT_EQ(j["k"], 0);
  EXPECT_EQ(j["path"], "crt");
}

TEST(Cli, WalkAndTable) {
  EXPECT_EQ(run({"walk", "24", "3", "8"}).code, 0);
  const auto t = run({"table", "3", "2", "--check-unitary"});
  EXPECT_EQ(t.code, 0);
  EXPECT_EQ(nlohmann::json::parse(t.out)["pass"], true);
  const auto full = run({"table", "2", "1"});
  EXPECT_EQ(full.code, 0);
  const auto j = nlohmann::json::parse(full.out);
  EXPECT_EQ(j["S"][1][1][0], -1.0);
}

TEST(Cli, UsageErrors) {
  for (std::vector<std::string> args : {std::vector<std::string>{}, {"bogus"}, {"eval", "3", "0", "1"},
                                         {"orbits", "0", "2"}, {"verify", "nope", "--n", "3"},
                                         {"orbits", "x", "2"}, {"eval", "3", "0", "1", "--", "1"}}) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 2) << (args.empty() ? "" : args[0]);
    const auto e = nlohmann::json::parse(lines(r.err).back());
    EXPECT_TRUE(e.contains("error"));
    EXPECT_TRUE(e.contains("message"));
  }
}

TEST(Cli, Budget) {
  const auto r = run({"--budget", "10", "image", "11", "0", "1", "1", "2"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(nlohmann::json::parse(r.err)["error"], "BudgetExceeded");
  EXPECT_EQ(run({"table", "9", "4", "--budget", "1000"}).code, 3);
}

TEST_F(CliFiles, ImageAndRender) {
  const auto csv = dir_ / "pent.csv";
  EXPECT_EQ(run({"image", "5", "1", "-o", csv.string()}).code, 0);
  const auto text = slurp(csv);
  EXPECT_EQ(text.substr(0, 6), "re,im\n");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 6);

  const auto json = run({"image", "5", "1", "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(json.out).size(), 5u);

  const auto a = dir_ / "a.png";
  const auto b = dir_ / "b.png";
  EXPECT_EQ(run({"render", "11", "1", "1", "9", "--range", "3", "--unit-res", "20", "-o", a.string()}).code, 0);
  EXPECT_EQ(run({"-j", "4", "render", "11", "1", "1", "9", "--range", "3", "--unit-res", "20", "-o", b.string()}).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(a).substr(1, 3), "PNG");
}

TEST_F(CliFiles, OutputDirEnv) {
  ::setenv(symchar::cli::kOutputDirEnv, dir_.c_str(), 1);
  EXPECT_EQ(run({"image", "5", "1", "-o", "rel.csv"}).code, 0);
  ::unsetenv(symchar::cli::kOutputDirEnv);
  EXPECT_TRUE(std::filesystem::exists(dir_ / "rel.csv"));
}

TEST_F(CliFiles, ReduceWithFiles) {
  const auto r_path = dir_ / "r.json";
  const auto b_path = dir_ / "b.json";
  std::ofstream(r_path) << R"({"R": [[3,1,0],[2,-1,0],[1,1,1]]})";
  std::ofstream(b_path) << R"({"B": [[5,0,7,3,-8,-7],[0,5,3,7,-7,-8],[0,0,0,0,0,0]]})";
  const auto r = run({"reduce", "47", "1", "2", "44", "--r", r_path.string(), "--expect-b", b_path.string()});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["valid"], true);
  EXPECT_EQ(j["expected_b_match"], true);
  EXPECT_EQ(j["certificate"]["zero_rows"], 1);

  std::ofstream(b_path) << R"([[1,0,0,0,0,0],[0,1,0,0,0,0],[0,0,0,0,0,0]])";
  EXPECT_EQ(run({"reduce", "47", "1", "2", "44", "--r", r_path.string(), "--expect-b", b_path.string()}).code, 1);

  const auto plain = run({"reduce", "17", "0", "1", "1", "15"});
  EXPECT_EQ(plain.code, 0);
  EXPECT_EQ(nlohmann::json::parse(plain.out)["certificate"]["zero_rows"], 1);
  EXPECT_EQ(run({"reduce", "4", "0", "2"}).code, 1);
}
