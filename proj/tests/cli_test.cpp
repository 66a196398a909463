#include "conlat/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "conlat/io.hpp"
#include "gtest/gtest.h"

namespace fs = std::filesystem;
using conlat::io::json;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("conlat_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) {
    auto p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "conlat");
    out_.str("");
    err_.str("");
    return conlat::cli::run(args, out_, err_);
  }

  std::string out() const { return out_.str(); }
  std::string err() const { return err_.str(); }

 private:
  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

const char* kLn = R"({"construction": "Ln", "trees": [{"bound": 2, "nodes": ["", "0", "1"]}]})";
const char* kLnLoop = R"({"construction": "Ln", "trees": [{"bound": 1, "root": "q", "edges": [["q", 0, "q"]]}]})";
const char* kSum =
    R"({"construction": "SumL", "trees": [{"bound": 2, "nodes": ["", "0"]},
        {"bound": 2, "root": "r", "edges": [["r", 1, "s"], ["s", 0, "r"]]}]})";
const char* kTna = R"({"construction": "TnA", "trees": [{"bound": 1, "nodes": [""]}]})";

}  // namespace

TEST_F(CliTest, BuildDoubleTree) {
  auto in = file("ln.json", kLn);
  ASSERT_EQ(0, run({"build", "--input", in}));
  auto j = json::parse(out());
  EXPECT_EQ(6, j["size"]);
  EXPECT_EQ("Ln", j["construction"]);
}

TEST_F(CliTest, BuildTreePlusA) {
  auto in = file("tna.json", kTna);
  ASSERT_EQ(0, run({"build", "--input", in, "--json", path("out.json"), "--dot", path("out.dot")}));
  std::ifstream j(path("out.json"));
  EXPECT_EQ(4, json::parse(j)["size"]);
  EXPECT_TRUE(fs::exists(path("out.dot")));
}

TEST_F(CliTest, BuildCyclicNeedsSymbolicOrDepth) {
  auto in = file("loop.json", kLnLoop);
  EXPECT_EQ(2, run({"build", "--input", in}));
  EXPECT_NE(std::string::npos, err().find("infinite path"));
  ASSERT_EQ(0, run({"build", "--input", in, "--symbolic"}));
  EXPECT_FALSE(json::parse(out())["well_founded"][0].get<bool>());
  ASSERT_EQ(0, run({"build", "--input", in, "--depth", "3"}));
  EXPECT_EQ(8, json::parse(out())["size"]);
}

TEST_F(CliTest, ConstructionFlagOverrides) {
  auto in = file("ln.json", kLn);
  ASSERT_EQ(0, run({"build", "--input", in, "--construction", "TnA"}));
  EXPECT_EQ(6, json::parse(out())["size"]);
  EXPECT_EQ(3, run({"build", "--input", in, "--construction", "Nope"}));
}

TEST_F(CliTest, DecideVerdicts) {
  EXPECT_EQ(0, run({"decide", "--input", file("ln.json", kLn), "--property", "complete"}));
  EXPECT_EQ(1, run({"decide", "--input", file("loop.json", kLnLoop), "--property", "complete"}));
  EXPECT_NE(std::string::npos, out().find("infinite path"));
  EXPECT_EQ(0, run({"decide", "--input", file("tna.json", kTna), "--property", "algebraic"}));
  EXPECT_EQ(0, run({"decide", "--input", file("tna2.json", kTna), "--property", "complete"}));
}

TEST_F(CliTest, DecideSumWithCycle) {
  auto in = file("sum.json", kSum);
  ASSERT_EQ(1, run({"decide", "--input", in, "--property", "compact-a", "--json", path("v.json")}));
  std::ifstream f(path("v.json"));
  auto j = json::parse(f);
  EXPECT_TRUE(j["rows"][0]["verdict"].get<bool>());
  EXPECT_FALSE(j["rows"][1]["verdict"].get<bool>());
  EXPECT_EQ(2, j["rows"][1]["element_id"]);
  EXPECT_EQ("", j["rows"][1]["witness"]["stem"]);
  EXPECT_EQ("10", j["rows"][1]["witness"]["loop"]);
}

TEST_F(CliTest, DecideChain) {
  auto in = file("chain.json", R"({"construction": "ChainA"})");
  EXPECT_EQ(1, run({"decide", "--input", in, "--property", "compact-a"}));
  EXPECT_EQ(1, run({"decide", "--input", in, "--property", "algebraic"}));
  EXPECT_EQ(3, run({"decide", "--input", in, "--property", "complete"}));
}

TEST_F(CliTest, DecideMismatchIsUsageError) {
  EXPECT_EQ(3, run({"decide", "--input", file("ln.json", kLn), "--property", "compact-a"}));
  EXPECT_EQ(3, run({"decide", "--input", file("sum.json", kSum), "--property", "algebraic"}));
  EXPECT_EQ(3, run({"decide", "--input", file("ln2.json", kLn), "--property", "pretty"}));
}

TEST_F(CliTest, Congruences) {
  auto bare = file("bare.json", R"({"n": 3, "ops": []})");
  ASSERT_EQ(0, run({"con", "--input", bare, "--dot", path("con.dot"), "--json", path("con.json")}));
  EXPECT_NE(std::string::npos, out().find("congruences: 5"));
  std::ifstream f(path("con.json"));
  EXPECT_EQ(5, json::parse(f)["size"]);
  auto swap = file("swap.json", R"({"n": 2, "ops": [{"arity": 1, "table": [1, 0]}]})");
  ASSERT_EQ(0, run({"con", "--input", swap}));
  EXPECT_NE(std::string::npos, out().find("congruences: 2"));
}

TEST_F(CliTest, CompactReport) {
  auto bare = file("bare.json", R"({"n": 3, "ops": []})");
  ASSERT_EQ(0, run({"compact", "--input", bare, "--json", path("c.json")}));
  std::ifstream f(path("c.json"));
  auto j = json::parse(f);
  EXPECT_EQ(5, j["compact_count"]);
  EXPECT_EQ(5, j["brute_force_compact_count"]);
  for (const auto& row : j["congruences"]) EXPECT_TRUE(row["compact"].get<bool>());
}

TEST_F(CliTest, CheckPoset) {
  EXPECT_EQ(0, run({"check-poset", "--input", file("p.json", R"({"size": 3, "leq": [[0,1],[1,2],[0,2]]})")}));
  EXPECT_NE(std::string::npos, out().find("lattice: yes"));
  EXPECT_EQ(0, run({"check-poset", "--input", file("v.json", R"({"size": 3, "leq": [[0,1],[0,2]]})")}));
  EXPECT_NE(std::string::npos, out().find("lattice: no"));
  EXPECT_EQ(2, run({"check-poset", "--input", file("bad.json", R"({"size": 3, "leq": [[0,1],[1,2]]})")}));
  EXPECT_NE(std::string::npos, err().find("transitiv"));
}

TEST_F(CliTest, InputErrors) {
  EXPECT_EQ(2, run({"build", "--input", path("missing.json")}));
  EXPECT_EQ(2, run({"build", "--input", file("broken.json", "{ not json")}));
  EXPECT_EQ(2, run({"con", "--input", file("alg.json", R"({"n": 2, "ops": [{"arity": 1, "table": [3, 0]}]})")}));
  EXPECT_EQ(2, run({"con", "--input", file("ln.json", kLn)}));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(3, run({}));
  EXPECT_EQ(3, run({"frobnicate"}));
  EXPECT_EQ(3, run({"build"}));
  EXPECT_EQ(3, run({"decide", "--input", file("ln.json", kLn)}));
  EXPECT_EQ(3, run({"verify", "--mutate", "nonsense"}));
  EXPECT_EQ(0, run({"--help"}));
}

TEST_F(CliTest, Verify) {
  EXPECT_EQ(0, run({"verify", "--seed", "2", "--sizes", "4"}));
  EXPECT_EQ(4, run({"verify", "--sizes", "4", "--mutate", "dt_join"}));
  EXPECT_NE(std::string::npos, out().find("counterexample"));
  EXPECT_EQ(0, run({"verify", "--sizes", "0"}));
  EXPECT_NE(std::string::npos, err().find("vacuous"));
}

TEST_F(CliTest, VerifyIsDeterministic) {
  ASSERT_EQ(0, run({"verify", "--seed", "9", "--sizes", "3"}));
  auto first = out();
  ASSERT_EQ(0, run({"verify", "--seed", "9", "--sizes", "3"}));
  EXPECT_EQ(first, out());
}

TEST_F(CliTest, Export) {
  ASSERT_EQ(0, run({"export", "--input", file("sum.json", kSum), "--depth", "2", "--dot", path("s.dot")}));
  std::ifstream f(path("s.dot"));
  std::stringstream dot;
  dot << f.rdbuf();
  EXPECT_NE(std::string::npos, dot.str().find("0 [label=\"0: a0\"]"));
  EXPECT_NE(std::string::npos, dot.str().find("2 [label=\"2: a1\"]"));
  EXPECT_EQ(3, run({"export", "--input", file("ln.json", kLn)}));
}
