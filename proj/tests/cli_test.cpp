#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"
#include "test_support.hpp"

namespace goldman::cli {
namespace {

using testing::data_path;

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = run(std::move(args), out, err);
  return {status, out.str(), err.str()};
}

const std::string kTorus = data_path("torus1.srf");
const std::string kPants = data_path("pants.srf");

TEST(Cli, Bracket) {
  EXPECT_EQ(run_cli({"bracket", kTorus, "a", "b"}).out, "+1*ab\n");
  EXPECT_EQ(run_cli({"bracket", kPants, "a", "b"}).out, "0\n");
  EXPECT_EQ(run_cli({"bracket", kTorus, "a", "2*b + a"}).out, "+2*ab\n");
}

TEST(Cli, Intersect) {
  const Result r = run_cli({"intersect", kPants, "a", "b"});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "0\n");
  EXPECT_EQ(run_cli({"intersect", kTorus, "a", "b", "--pairs"}).out,
            "1\n(0, 0, +1)\n");
  const Result bad = run_cli({"intersect", kTorus, "aa", "b"});
  EXPECT_EQ(bad.status, 4);
  EXPECT_NE(bad.err.find("primitive"), std::string::npos);
}

TEST(Cli, SelfintBoundaryClassify) {
  EXPECT_EQ(run_cli({"selfint", kPants, "aB"}).out, "1\n");
  EXPECT_EQ(run_cli({"boundary", kPants}).out, "A\nB\nab\n");
  EXPECT_EQ(run_cli({"classify", kTorus}).out, "genus 1, boundary 1\n");
  EXPECT_EQ(run_cli({"classify", data_path("torus2.srf")}).out,
            "genus 1, boundary 2\n");
}

TEST(Cli, Enumerate) {
  EXPECT_EQ(run_cli({"enumerate", kTorus, "--max-len", "1"}).out, "a\nA\nb\nB\n");
  EXPECT_EQ(run_cli({"enumerate", kPants, "--max-len", "2", "--filter",
                     "nonperipheral"})
                .out,
            "aB\nAb\n");
  EXPECT_EQ(run_cli({"enumerate", kTorus, "--max-len", "2", "--count"}).out, "12\n");
  EXPECT_EQ(run_cli({"enumerate", kTorus, "--max-len", "2", "--filter", "bogus"})
                .status,
            1);
}

TEST(Cli, AuditFlagship) {
  const std::string map = data_path("torus_to_pants.map");
  const Result b = run_cli({"audit", "bracket", map, "--max-len", "2"});
  EXPECT_EQ(b.status, 3);
  EXPECT_NE(b.out.find("verdict: violating\n"), std::string::npos);
  EXPECT_NE(b.out.find("cert a b source=+1*ab target=0\n"), std::string::npos);
  const Result i = run_cli(
      {"audit", "intersection", map, "--max-len", "2", "--mode", "zero"});
  EXPECT_EQ(i.status, 3);
  EXPECT_NE(i.out.find("cert a b source=1 target=0\n"), std::string::npos);
}

TEST(Cli, AuditVerdictStatuses) {
  EXPECT_EQ(run_cli({"audit", "bracket", data_path("twist_a.map"), "--max-len", "3"})
                .status,
            0);
  EXPECT_EQ(run_cli({"audit", "bracket", data_path("swap.map"), "--max-len", "3"})
                .status,
            2);
  const Result excluded = run_cli(
      {"audit", "bracket", data_path("pants_to_annulus.map"), "--max-len", "2"});
  EXPECT_EQ(excluded.status, 4);
  EXPECT_NE(excluded.err.find("plane or the cylinder"), std::string::npos);
}

TEST(Cli, AuditOutputIndependentOfThreads) {
  const std::string map = data_path("torus_to_pants.map");
  const Result one = run_cli({"audit", "bracket", map, "--max-len", "4", "--sample",
                              "300", "--seed", "5", "--threads", "1"});
  const Result four = run_cli({"audit", "bracket", map, "--max-len", "4", "--sample",
                               "300", "--seed", "5", "--threads", "4"});
  EXPECT_EQ(one.out, four.out);
  EXPECT_EQ(one.status, four.status);
  EXPECT_NE(one.out.find("sample: random 300 pairs, seed 5"), std::string::npos);
}

TEST(Cli, FillCheck) {
  EXPECT_EQ(run_cli({"fill-check", kTorus, "--system", "a,b", "--max-len", "4"})
                .status,
            0);
  const Result fail =
      run_cli({"fill-check", kTorus, "--system", "a", "--max-len", "4"});
  EXPECT_EQ(fail.status, 3);
  EXPECT_EQ(fail.out, "fail: a crosses no system curve\n");
}

TEST(Cli, AmalgamCheckLemma) {
  const Result r = run_cli({"amalgam", "check-lemma", "--rankA", "2", "--rankB", "2",
                            "--cA", "x", "--cB", "u", "--max-letter", "1",
                            "--max-syllables", "2"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("statement 2  h = a1: instances"), std::string::npos);
  EXPECT_NE(r.out.find("result: pass\n"), std::string::npos);
  EXPECT_EQ(run_cli({"amalgam", "check-lemma", "--cA", "u", "--cB", "u"}).status, 1);
  EXPECT_EQ(run_cli({"amalgam", "check-lemma", "--cA", "xyX", "--cB", "u"}).status, 4);
}

TEST(Cli, UsageAndParseErrors) {
  EXPECT_EQ(run_cli({}).status, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).status, 1);
  EXPECT_EQ(run_cli({"classify", kTorus, "--bogus"}).status, 1);
  const Result word = run_cli({"intersect", kTorus, "a", "b?"});
  EXPECT_EQ(word.status, 1);
  EXPECT_NE(word.err.find("column 2"), std::string::npos);
  const Result missing = run_cli({"classify", "/nonexistent.srf"});
  EXPECT_EQ(missing.status, 1);
  const Result help = run_cli({"bracket", "--help"});
  EXPECT_EQ(help.status, 0);
  EXPECT_NE(help.out.find("canonical word"), std::string::npos);
}

// Every word the tool prints parses back to the same class.
TEST(Cli, PrintedWordsRoundTrip) {
  const Result r = run_cli({"enumerate", kTorus, "--max-len", "4"});
  std::istringstream lines(r.out);
  std::string line;
  while (std::getline(lines, line)) {
    EXPECT_EQ(CyclicClass::parse(line).str(), line);
  }
  const Result b = run_cli({"bracket", kTorus, "ab", "aB"});
  const std::string text = b.out.substr(0, b.out.size() - 1);
  EXPECT_EQ(BracketElement::parse(text).str(), text);
}

}  // namespace
}  // namespace goldman::cli
