#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "smti/io.hpp"

namespace smti {
namespace {

namespace fs = std::filesystem;

const std::string kData = SMTI_TEST_DATA;

struct Result {
  int code;
  std::string out;
  std::string err;
};

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("smti_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  fs::path dir_;
};

TEST_F(CliTest, SolveTightTwo) {
  const Result r = run({"solve", kData + "/tight2.smti", "--trace", path("t.jsonl"), "--gprime", path("g.txt")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "1 4\n2 2\n3 1\n");
  EXPECT_EQ(read_file(path("g.txt")), "1 1 1\n1 4 1\n2 2 1\n2 4 1\n3 1 1\n3 2 1\n");
  EXPECT_NE(read_file(path("t.jsonl")).find("\"summary\":true"), std::string::npos);
}

TEST_F(CliTest, SolveSingleton) {
  const Result r = run({"solve", kData + "/one.smti"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1 1\n");
}

TEST_F(CliTest, SolveSeedIsReproducible) {
  ASSERT_EQ(run({"gen", "random", "--men", "7", "--women", "6", "--density", "0.6", "--maxtie", "3", "--seed",
                 "4", "-o", path("r.smti")})
                .code,
            0);
  const Result a = run({"solve", path("r.smti"), "--seed", "7", "--trace", path("a.jsonl")});
  const Result b = run({"solve", path("r.smti"), "--seed", "7", "--trace", path("b.jsonl")});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(read_file(path("a.jsonl")), read_file(path("b.jsonl")));
}

TEST_F(CliTest, SolveInputErrors) {
  EXPECT_EQ(run({"solve", kData + "/nonmutual.smti"}).code, 1);
  EXPECT_EQ(run({"solve", path("missing.smti")}).code, 1);
  EXPECT_EQ(run({"solve", kData + "/tight2.smti", "--tiecap", "1"}).code, 1);
  EXPECT_EQ(run({"solve", kData + "/tight2.smti", "--policy", "bogus"}).code, 1);
  EXPECT_EQ(run({"solve"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  const Result e = run({"solve", write("bad.smti", "men 1\nwomen 1\nm 1: (1\nw 1: 1\n")});
  EXPECT_EQ(e.code, 1);
  EXPECT_NE(e.err.find("line 3"), std::string::npos);
}

TEST_F(CliTest, SolveWithRaisedTieCap) {
  const Result r = run({"solve", kData + "/one.smti", "--tiecap", "3", "--gprime", path("g.txt")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(read_file(path("g.txt")), "1 1 3\n");
}

TEST_F(CliTest, Help) {
  const Result r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("solve"), std::string::npos);
}

TEST_F(CliTest, Opt) {
  const Result r = run({"opt", kData + "/tight2.smti"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "# size 4 (optima: 1)\n1 1\n2 2\n3 3\n4 4\n");
  EXPECT_EQ(run({"opt", kData + "/tight2.smti", "--limit", "3"}).code, 1);
}

TEST_F(CliTest, VerifyExitCodes) {
  const Result ok = run({"verify", kData + "/tight2.smti", kData + "/tight2_opt.txt"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "stable\n");
  const Result blocking = run({"verify", kData + "/one.smti", kData + "/empty.txt"});
  EXPECT_EQ(blocking.code, 2);
  EXPECT_EQ(blocking.out, "# blocking pairs: 1\n1 1\n");
  EXPECT_EQ(run({"verify", kData + "/one.smti", write("m.txt", "1 2\n")}).code, 1);
}

TEST_F(CliTest, GenTight) {
  const Result r = run({"gen", "tight", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, read_file(kData + "/tight2.smti"));
  EXPECT_EQ(run({"gen", "tight", "1"}).code, 1);
  EXPECT_EQ(run({"gen"}).code, 1);
}

TEST_F(CliTest, GenRandomDeterministic) {
  const std::vector<std::string> args = {"gen", "random", "--men", "5", "--women", "5", "--density", "0.6",
                                         "--maxtie", "3", "--seed", "7"};
  const Result a = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, run(args).out);
  EXPECT_NO_THROW(parse_instance(a.out));
}

TEST_F(CliTest, Audit) {
  const Result r = run({"audit", kData + "/tight2.smti"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("\"alg\": 3"), std::string::npos);
  EXPECT_NE(r.out.find("\"opt\": 4"), std::string::npos);
  EXPECT_NE(r.out.find("\"ratio\": \"4/3\""), std::string::npos);
  const Result one = run({"audit", kData + "/one.smti"});
  EXPECT_EQ(one.code, 0);
  EXPECT_NE(one.out.find("\"ratio\": \"1/1\""), std::string::npos);
  EXPECT_EQ(run({"audit", kData + "/tight2.smti", "--limit", "2"}).code, 1);
}

TEST_F(CliTest, BenchRandom) {
  const Result r = run({"bench", "--count", "100", "--men", "6", "--women", "6", "--maxtie", "2", "--seed0", "1",
                        "--csv", path("b.csv")});
  EXPECT_EQ(r.code, 0) << r.err;
  const std::string csv = read_file(path("b.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "seed,n,L,edges,alg,opt,ratio,all_checks_pass");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 101);
  EXPECT_EQ(csv.find("false"), std::string::npos);
  // Rows come back in seed order.
  std::istringstream rows(csv);
  std::string line;
  std::getline(rows, line);
  for (int seed = 1; std::getline(rows, line); ++seed) EXPECT_EQ(line.substr(0, line.find(',')), std::to_string(seed));
  EXPECT_NE(r.out.find("floor at L=2 = 3/4"), std::string::npos);
}

TEST_F(CliTest, BenchStrictRatiosAreOne) {
  const Result r = run({"bench", "--count", "10", "--maxtie", "1", "--men", "5", "--women", "5", "--seed0", "3"});
  EXPECT_EQ(r.code, 0);
  std::istringstream rows(r.out);
  std::string line;
  std::getline(rows, line);
  for (int i = 0; i < 10 && std::getline(rows, line); ++i) {
    const auto f = split_csv(line);
    ASSERT_EQ(f.size(), 8u) << line;
    EXPECT_EQ(f[4], f[5]) << line;
  }
}

TEST_F(CliTest, BenchTight) {
  const Result r = run({"bench", "--family", "tight", "--maxtie", "6"});
  EXPECT_EQ(r.code, 0);
  std::istringstream rows(r.out);
  std::string line;
  std::getline(rows, line);
  for (int L = 2; L <= 6; ++L) {
    ASSERT_TRUE(std::getline(rows, line));
    const auto f = split_csv(line);
    ASSERT_EQ(f.size(), 8u) << line;
    EXPECT_EQ(f[0], "tight" + std::to_string(L));
    EXPECT_EQ(f[2], std::to_string(L));
    EXPECT_EQ(f[6], std::to_string(2 * L - 1) + "/" + std::to_string(3 * L - 2));
    EXPECT_EQ(f[7], "true");
  }
  EXPECT_EQ(run({"bench", "--family", "nope"}).code, 1);
}

}  // namespace
}  // namespace smti
