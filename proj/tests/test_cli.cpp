#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fret2mtl/cli.hpp"

using namespace fret2mtl;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string squeeze(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string data(const std::string& name) { return std::string(TEST_DATA_DIR) + "/" + name; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("fret2mtl_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& body) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << body;
    return p.string();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, TranslateGoldSentence) {
  const Result r = run({"translate", "--req",
                     "in Scope upon Condition Component shall before StopCondition satisfy Response",
                     "--semantics", "inf"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(squeeze(r.out), squeeze(slurp(data("gold_fv.ltl"))));
}

TEST_F(CliTest, TranslateNuXmvDialect) {
  const Result r = run({"translate", "--req", "C shall within 1 tick satisfy r", "--semantics", "fin",
                     "--dialect", "nuxmv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.find('['), std::string::npos);
}

TEST_F(CliTest, TranslateErrors) {
  Result r = run({"translate", "--req", "C shall quickly satisfy r", "--semantics", "inf"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
  r = run({"translate", "--req", "C shall satisfy r", "--semantics", "later"});
  EXPECT_EQ(r.code, 2);
  r = run({"translate"});
  EXPECT_EQ(r.code, 2);
  r = run({});
  EXPECT_EQ(r.code, 2);
  r = run({"frobnicate"});
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, HelpExitsZero) {
  const Result r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("enumerate"), std::string::npos);
}

TEST_F(CliTest, EnumerateWritesAllTemplatesDeterministically) {
  const fs::path a = dir_ / "a";
  const fs::path b = dir_ / "b";
  ASSERT_EQ(run({"enumerate", "--k", "3", "--out", a.string(), "--semantics", "fin"}).code, 0);
  ASSERT_EQ(run({"enumerate", "--k", "3", "--out", b.string(), "--semantics", "fin"}).code, 0);
  std::size_t formulas = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    if (entry.path().extension() != ".mtl") continue;
    ++formulas;
    EXPECT_EQ(slurp(entry.path()), slurp(b / entry.path().filename()));
  }
  EXPECT_EQ(formulas, 240u);
  EXPECT_EQ(slurp(a / "index.json"), slurp(b / "index.json"));

  const std::string first = slurp(a / "000_global_none_immediately.mtl");
  EXPECT_EQ(first.rfind("# MyComponent shall immediately satisfy Response\n", 0), 0u) << first;
  const auto index = nlohmann::json::parse(slurp(a / "index.json"));
  EXPECT_EQ(index["count"], 240);
  EXPECT_EQ(index["templates"].size(), 240u);
  EXPECT_EQ(index["templates"][239]["file"], "239_only_after_continual_before.mtl");
}

TEST_F(CliTest, ReportAveragesPerTiming) {
  const fs::path out = dir_ / "inf";
  ASSERT_EQ(run({"enumerate", "--out", out.string(), "--semantics", "inf"}).code, 0);
  const Result r = run({"report", "--dir", out.string(), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["semantics"], "inf");
  ASSERT_EQ(j["rows"].size(), 10u);
  EXPECT_EQ(j["rows"][0]["timing"], "immediately");
  EXPECT_EQ(j["rows"][0]["count"], 24);
  EXPECT_EQ(j["rows"][9]["timing"], "before");
  for (const auto& row : j["rows"]) {
    EXPECT_GT(row["size"].get<double>(), 0.0);
    EXPECT_LE(row["temp_ops"].get<double>(), row["size"].get<double>());
  }
  const Result text = run({"report", "--dir", out.string()});
  EXPECT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("within"), std::string::npos);
  EXPECT_EQ(run({"report", "--dir", (dir_ / "missing").string()}).code, 2);
}

TEST_F(CliTest, Metrics) {
  const Result r = run({"metrics", "--formula", data("gold_fv.ltl"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["size"], 24);
  EXPECT_EQ(j["temp_ops"], 5);
  EXPECT_EQ(j["props"], 9);
  EXPECT_EQ(j["temporal_depth"], 3);
  const Result text = run({"metrics", "--formula", data("gold_fv.ltl")});
  EXPECT_NE(text.out.find("size: 24"), std::string::npos);
  EXPECT_EQ(run({"metrics", "--formula", write("bad.ltl", "p &")}).code, 2);
  EXPECT_EQ(run({"metrics", "--formula", (dir_ / "none.ltl").string()}).code, 2);
}

TEST_F(CliTest, EquivGoldPair) {
  const Result r = run({"equiv", "--a", data("gold_fv.ltl"), "--b", data("gold_fret.ltl"),
                     "--semantics", "inf", "--max-prefix", "2", "--max-loop", "2", "--initial"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Equivalent up to bounds"), std::string::npos);
}

TEST_F(CliTest, EquivCounterexampleFile) {
  const std::string a = write("a.ltl", "X p\n");
  const std::string b = write("b.ltl", "p\n");
  const fs::path cex = dir_ / "cex.trace";
  const Result r = run({"equiv", "--a", a, "--b", b, "--semantics", "fin", "--max-len", "2", "--cex",
                     cex.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(slurp(cex), "p\nt=0\n");
  const Result replay = run({"eval", "--formula", a, "--trace", cex.string()});
  EXPECT_EQ(replay.out, "false\n");
  EXPECT_EQ(run({"eval", "--formula", b, "--trace", cex.string()}).out, "true\n");
}

TEST_F(CliTest, EquivImplication) {
  const std::string a = write("a.ltl", "FALSE\n");
  const std::string b = write("b.ltl", "G p\n");
  const Result r = run({"equiv", "--a", a, "--b", b, "--semantics", "past", "--implication"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Valid up to bounds"), std::string::npos);
}

TEST_F(CliTest, EquivErrors) {
  const std::string a = write("a.ltl", "p & q\n");
  EXPECT_EQ(run({"equiv", "--a", a, "--b", a, "--semantics", "fin", "--props", "p"}).code, 2);
  EXPECT_EQ(run({"equiv", "--a", a, "--b", a, "--semantics", "fin", "--max-len", "0"}).code, 2);
  EXPECT_EQ(run({"equiv", "--a", a, "--b", a, "--semantics", "fin", "--max-len", "13"}).code, 2);
}

TEST_F(CliTest, TraceBitsOverride) {
  const std::string a = write("a.ltl", "p\n");
  ::setenv("FRET2MTL_MAX_TRACE_BITS", "2", 1);
  const Result blocked = run({"equiv", "--a", a, "--b", a, "--semantics", "fin", "--max-len", "3"});
  ::setenv("FRET2MTL_MAX_TRACE_BITS", "3", 1);
  const Result allowed = run({"equiv", "--a", a, "--b", a, "--semantics", "fin", "--max-len", "3"});
  ::unsetenv("FRET2MTL_MAX_TRACE_BITS");
  EXPECT_EQ(blocked.code, 2);
  EXPECT_EQ(allowed.code, 0) << allowed.err;
}

TEST_F(CliTest, EvalLassoWithFlagOverridingTrailer) {
  const std::string f = write("f.ltl", "G F p\n");
  const std::string t = write("t.trace", "-\n---loop---\n-\np\nt=1\n");
  EXPECT_EQ(run({"eval", "--formula", f, "--trace", t}).out, "true\n");
  const std::string g = write("g.ltl", "p\n");
  EXPECT_EQ(run({"eval", "--formula", g, "--trace", t}).out, "false\n");
  EXPECT_EQ(run({"eval", "--formula", g, "--trace", t, "--t", "2"}).out, "true\n");
  EXPECT_EQ(run({"eval", "--formula", g, "--trace", write("fin.trace", "p\n"), "--t", "3"}).code, 2);
}

TEST_F(CliTest, ExportLast) {
  const std::string f = write("f.ltl", "X p\n");
  const Result r = run({"export-last", "--formula", f});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(squeeze(r.out), squeeze("((G (LAST -> X LAST) & F LAST) -> (! LAST & X p))"));
}
