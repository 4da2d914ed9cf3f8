#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tptpnc/cli.hpp"
#include "tptpnc/logic_spec.hpp"
#include "tptpnc/parser.hpp"

namespace fs = std::filesystem;
using namespace tptpnc;

namespace {

const fs::path kData = TPTPNC_TEST_DATA;

struct Result {
  int rc;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "tptpnc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int rc = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {rc, out.str(), err.str()};
}

std::string data(const char* name) { return (kData / name).string(); }

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           (std::string("tptpnc_cli_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
    return (dir_ / name).string();
  }
  fs::path dir_;
};

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(cli::exit_code(ErrorKind::ParseError), 1);
  EXPECT_EQ(cli::exit_code(ErrorKind::IncludeError), 1);
  EXPECT_EQ(cli::exit_code(ErrorKind::MissingLogicSpec), 2);
  EXPECT_EQ(cli::exit_code(ErrorKind::UnknownValue), 2);
  EXPECT_EQ(cli::exit_code(ErrorKind::UnsupportedConstruct), 3);
  EXPECT_EQ(cli::exit_code(ErrorKind::ResourceLimit), 4);
  EXPECT_EQ(cli::exit_code(ErrorKind::InternalError), 5);
}

TEST(Cli, CheckSuccess) {
  Result r = run({"check", data("puzzle_tim.p")});
  EXPECT_EQ(r.rc, 0);
  EXPECT_TRUE(contains(r.out, "% SZS status Success for")) << r.out;
}

TEST(Cli, MissingSpec) {
  Result r = run({"check", data("birds_fly.p")});
  EXPECT_EQ(r.rc, 2);
  EXPECT_TRUE(contains(r.err, "MissingLogicSpec")) << r.err;
  EXPECT_TRUE(contains(r.err, "birds_fly.p:")) << r.err;
}

TEST_F(TempDir, ParseErrorExit) {
  std::string f = write("bad.p", "tff(a, axiom, p & ).\n");
  Result r = run({"parse", f});
  EXPECT_EQ(r.rc, 1);
  EXPECT_TRUE(contains(r.err, "bad.p:1:")) << r.err;
}

TEST_F(TempDir, UnsupportedExit) {
  std::string f = write("common.p",
                        "tff(s, logic, $epistemic_modal == [$modalities == $modal_system_S5]).\n"
                        "tff(p_decl, type, p: $o).\n"
                        "tff(a, axiom, {$common($agents := [a, b])}(p)).\n");
  Result r = run({"embed", f});
  EXPECT_EQ(r.rc, 3);
  EXPECT_TRUE(contains(r.err, "UnsupportedConstruct")) << r.err;
}

TEST(Cli, ParseFormats) {
  Result tptp = run({"parse", data("union.p")});
  EXPECT_EQ(tptp.rc, 0);
  EXPECT_TRUE(contains(tptp.out, "fof(union, axiom")) << tptp.out;
  Result ast = run({"parse", "--format", "ast", data("union.p")});
  EXPECT_EQ(ast.rc, 0);
  EXPECT_NE(ast.out, tptp.out);
  EXPECT_NE(run({"parse", "--format", "xml", data("union.p")}).rc, 0);
}

TEST(Cli, EmbedTim) {
  Result r = run({"embed", data("puzzle_tim.p")});
  EXPECT_EQ(r.rc, 0);
  EXPECT_TRUE(contains(r.out, "mrel_reflexive"));
  EXPECT_TRUE(contains(r.out, "thf("));
  EXPECT_EQ(run({"embed", data("puzzle_tim.p")}).out, r.out);
}

TEST(Cli, Translate) {
  Result r = run({"translate", data("puzzle_tim.p")});
  // the puzzle quantifies over integers, which the relational translation does not cover
  EXPECT_EQ(r.rc, 3);
}

TEST(Cli, OracleTim) {
  Result r = run({"oracle", "--max-worlds", "2", "--max-domain", "6", data("puzzle_tim.p")});
  EXPECT_EQ(r.rc, 0);
  EXPECT_TRUE(contains(r.out, "% SZS status Unsatisfiable for")) << r.out;
  EXPECT_TRUE(contains(r.out, "% Bound: worlds=2 domain=6")) << r.out;
  EXPECT_FALSE(contains(r.out, "SZS output start"));
}

TEST(Cli, OracleBetty) {
  Result r = run({"oracle", "--max-worlds", "2", "--max-domain", "6", data("puzzle_betty.p")});
  EXPECT_EQ(r.rc, 0);
  EXPECT_TRUE(contains(r.out, "% SZS status Satisfiable for")) << r.out;
  EXPECT_TRUE(contains(r.out, "% SZS output start Model for")) << r.out;
  EXPECT_TRUE(contains(r.out, "% SZS output end Model for")) << r.out;
  Result again = run({"oracle", "--max-worlds", "2", "--max-domain", "6", data("puzzle_betty.p")});
  EXPECT_EQ(again.out, r.out);
}

TEST(Cli, OracleRanges) {
  EXPECT_NE(run({"oracle", "--max-worlds", "9", data("puzzle_tim.p")}).rc, 0);
  EXPECT_NE(run({"oracle", "--max-domain", "0", data("puzzle_tim.p")}).rc, 0);
}

TEST(Cli, OracleResourceLimit) {
  Result r = run({"oracle", "--cap", "10", data("puzzle_tim.p")});
  EXPECT_EQ(r.rc, 4);
  EXPECT_TRUE(contains(r.err, "ResourceLimit")) << r.err;
}

TEST_F(TempDir, ExpandGenerator) {
  Result r = run({"expand", "--out-dir", dir_.string(), data("puzzle_generator.p")});
  ASSERT_EQ(r.rc, 0) << r.err;
  for (const char* spec : {"tim", "fred", "betty"}) {
    fs::path f = dir_ / (std::string("puzzle_generator.") + spec + ".p");
    ASSERT_TRUE(fs::exists(f)) << f;
    auto checked = check_problem(load_problem(f));
    ASSERT_TRUE(checked.semantics);
    EXPECT_EQ(checked.semantics->spec_name, spec);
    EXPECT_EQ(run({"check", f.string()}).rc, 0);
  }
}

TEST_F(TempDir, ExpandSingleSpecKeepsText) {
  std::string text = read_text_file(kData / "puzzle_tim.p");
  std::string f = write("one.p", text);
  auto files = cli::expand_generator(f);
  ASSERT_EQ(files.size(), 1u);
  std::string body = files[0].text.substr(files[0].text.find('\n') + 1);
  EXPECT_EQ(body, text);
}

TEST_F(TempDir, ExpandErrors) {
  EXPECT_EQ(run({"expand", "--out-dir", dir_.string(), data("birds_fly.p")}).rc, 2);
  std::string dup = write("dup.p",
                          "tff(a, logic, $modal == [$modalities == $modal_system_K]).\n"
                          "tff(a, logic, $modal == [$modalities == $modal_system_T]).\n");
  Result r = run({"expand", "--out-dir", dir_.string(), dup});
  EXPECT_EQ(r.rc, 2);
  EXPECT_TRUE(contains(r.err, "DuplicateLogicSpec")) << r.err;
}

TEST_F(TempDir, IncludeRoot) {
  fs::create_directories(dir_ / "Axioms");
  write("Axioms/decl.ax", "tff(p_decl, type, p: $o).\n");
  fs::create_directories(dir_ / "Problems");
  std::string f = write("Problems/prob.p",
                        "tff(s, logic, $modal == [$modalities == $modal_system_K]).\n"
                        "include('Axioms/decl.ax').\ntff(a, axiom, {$box}(p)).\n");
  EXPECT_EQ(run({"check", f}).rc, 1);
  EXPECT_EQ(run({"check", "--include-root", dir_.string(), f}).rc, 0);
}

TEST_F(TempDir, OutFile) {
  fs::path out = dir_ / "tim.thf";
  Result r = run({"embed", "--out", out.string(), data("puzzle_tim.p")});
  ASSERT_EQ(r.rc, 0);
  EXPECT_TRUE(contains(read_text_file(out), "mrel_reflexive"));
}
