#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tanbound/cli.hpp"
#include "tanbound/core/error.hpp"
#include "tanbound/prover.hpp"

using namespace tanbound;
using namespace tanbound::cli;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("tanbound_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST(Grid, ParsesAndRejects) {
  const Grid g = parse_grid("0.1:0.3:3");
  const auto pts = g.points();
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_EQ(pts[1], Rational::parse("0.2"));
  EXPECT_EQ(pts.back(), Rational::parse("0.3"));
  for (const char* bad : {"0.1:0.3", "0.3:0.1:5", "0.1:0.3:1", "a:b:c", "0.1:0.3:x"}) {
    EXPECT_THROW(parse_grid(bad), Error) << bad;
  }
  EXPECT_EQ(parse_kinds("all").size(), 5u);
  EXPECT_EQ(parse_kinds("THM1_LOWER,BS_UPPER").size(), 2u);
  EXPECT_THROW(parse_kinds(""), Error);
  EXPECT_THROW(parse_kinds("THM9"), Error);
}

TEST(Eval, Examples) {
  const CliResult ok = run_cli({"eval", "--x", "1.5"});
  EXPECT_EQ(ok.code, kOk) << ok.err;
  EXPECT_NE(ok.out.find("9.40094"), std::string::npos) << ok.out;
  EXPECT_NE(ok.out.find("THM1_LOWER"), std::string::npos);

  const CliResult zero = run_cli({"eval", "--x", "0.0"});
  EXPECT_EQ(zero.code, kUsage);
  EXPECT_NE(zero.err.find("π/2"), std::string::npos) << zero.err;

  EXPECT_EQ(run_cli({"eval", "--x", "1.5707963"}).code, kPole);
  EXPECT_EQ(run_cli({"eval", "--x", "2"}).code, kUsage);
  EXPECT_EQ(run_cli({"eval", "--x", "banana"}).code, kUsage);
  EXPECT_EQ(run_cli({"eval"}).code, kUsage);
  EXPECT_EQ(run_cli({"eval", "--x", "1/3"}).code, kOk);
}

TEST(Eval, JsonIsTheEnclosureRecord) {
  const CliResult r = run_cli({"eval", "--x", "0.2", "--format", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto e = bounds::enclosure_from_json(nlohmann::json::parse(r.out));
  EXPECT_LT(e.lo, e.hi);
  EXPECT_FALSE(e.witnesses.empty());
}

TEST(Verify, Examples) {
  const CliResult all = run_cli({"verify", "--grid", "0.38:1.57:1000"});
  EXPECT_EQ(all.code, kOk) << all.out << all.err;

  EXPECT_EQ(run_cli({"verify", "--grid", "0.1:0.3:100", "--kinds", "THM1_LOWER"}).code, kUsage);

  const CliResult thm2 = run_cli({"verify", "--grid", "0.01:1.37:500", "--kinds", "THM2_UPPER", "--format", "json"});
  ASSERT_EQ(thm2.code, kOk) << thm2.err;
  const auto j = nlohmann::json::parse(thm2.out);
  EXPECT_EQ(j["summary"]["violations"], 0);
  EXPECT_EQ(j["summary"]["points"], 500);

  EXPECT_EQ(run_cli({"verify", "--grid", "0.5:0.4:10"}).code, kUsage);
  EXPECT_EQ(run_cli({"verify", "--grid", "0.1:1.6:10"}).code, kUsage);
}

TEST(Verify, DeterministicAndRoundTrips) {
  const std::vector<std::string> args{"verify", "--grid", "0.4:1.5:40", "--random", "20", "--seed", "7", "--format", "json"};
  const CliResult a = run_cli(args);
  const CliResult b = run_cli(args);
  ASSERT_EQ(a.code, kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["summary"]["seed"], 7);
  EXPECT_EQ(j["summary"]["points"], 60);
  const VerifyReport back = verify_report_from_json(j);
  EXPECT_EQ(to_json(back).dump(), j.dump());
  EXPECT_EQ(run_cli({"verify", "--grid", "0.4:1.5:40", "--format", "csv"}).out,
            run_cli({"verify", "--grid", "0.4:1.5:40", "--format", "csv"}).out);
}

TEST(Verify, SeedIsPrinted) {
  const CliResult r = run_cli({"verify", "--grid", "0.4:1.5:10", "--random", "5", "--seed", "42"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("42"), std::string::npos);
}

TEST(Tightness, Examples) {
  const CliResult bs = run_cli({"tightness", "--grid", "1.0:1.57:50", "--kinds", "BS_UPPER"});
  ASSERT_EQ(bs.code, kOk) << bs.err;
  std::istringstream lines(bs.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, bounds::kCsvHeader);
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 50);

  EXPECT_EQ(run_cli({"tightness", "--grid", "1.0:1.57:50", "--kinds", ""}).code, kUsage);

  // Every row outside validity -> exit 1; some rows fine -> 0 with an error column.
  EXPECT_EQ(run_cli({"tightness", "--grid", "0.1:0.2:5", "--kinds", "THM1_LOWER"}).code, kFailure);
  const CliResult mixed = run_cli({"tightness", "--grid", "0.2:1.0:5", "--kinds", "THM1_LOWER"});
  EXPECT_EQ(mixed.code, kOk);
  EXPECT_NE(mixed.out.find(",error"), std::string::npos);

  const CliResult json = run_cli({"tightness", "--grid", "1.0:1.57:5", "--kinds", "THM1_LOWER,THM1_UPPER", "--format", "json"});
  ASSERT_EQ(json.code, kOk);
  EXPECT_EQ(nlohmann::json::parse(json.out).size(), 10u);
}

TEST(Taylor, Examples) {
  const CliResult r = run_cli({"taylor", "--order", "3", "--at", "pi-half"});
  ASSERT_EQ(r.code, kOk) << r.err;
  for (const char* s : {"8/π", "16/π² − 8/3", "32/π³ − 8/(3π)", "all matched"})
    EXPECT_NE(r.out.find(s), std::string::npos) << s;
  EXPECT_EQ(r.out.find("MISMATCH"), std::string::npos);

  const CliResult z = run_cli({"taylor", "--order", "4", "--at", "zero"});
  ASSERT_EQ(z.code, kOk);
  for (const char* s : {"π²", "π²/3 − 4", "2π²/15 − 4/3"}) EXPECT_NE(z.out.find(s), std::string::npos) << s;

  const CliResult c = run_cli({"taylor", "--order", "0", "--format", "json"});
  ASSERT_EQ(c.code, kOk);
  const auto j = nlohmann::json::parse(c.out);
  EXPECT_EQ(j["sections"][0]["coefficients"].size(), 1u);
  EXPECT_TRUE(j["all_matched"]);

  EXPECT_EQ(run_cli({"taylor", "--order", "13"}).code, kUsage);
  EXPECT_EQ(run_cli({"taylor", "--at", "infinity"}).code, kUsage);
}

TEST(Taylor, PrecisionFromEnvironment) {
  ::setenv("TANBOUND_PI_DIGITS", "80", 1);
  const CliResult r = run_cli({"taylor", "--order", "2"});
  ::setenv("TANBOUND_PI_DIGITS", "10", 1);
  const CliResult bad = run_cli({"taylor", "--order", "2"});
  ::unsetenv("TANBOUND_PI_DIGITS");
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("80 digits"), std::string::npos);
  EXPECT_EQ(bad.code, kUsage);
}

TEST(Prove, WritesCheckableCertificates) {
  const auto dir = temp_dir("prove");
  const CliResult r = run_cli({"prove", "--dir", dir.string()});
  ASSERT_EQ(r.code, kOk) << r.out << r.err;
  for (const char* name : {"cert_f.json", "cert_g.json", "cert_h.json"}) {
    const auto path = dir / name;
    ASSERT_TRUE(std::filesystem::exists(path)) << name;
    const CliResult check = run_cli({"check-cert", path.string()});
    EXPECT_EQ(check.code, kOk) << check.out;
    EXPECT_NE(check.out.find("valid ("), std::string::npos);
  }
  // A tampered certificate is rejected with exit 1.
  auto j = nlohmann::json::parse(slurp(dir / "cert_f.json"));
  j["interval"][0] = "0.3";
  std::ofstream(dir / "bad.json") << j.dump();
  const CliResult bad = run_cli({"check-cert", (dir / "bad.json").string()});
  EXPECT_EQ(bad.code, kFailure);
  EXPECT_NE(bad.out.find("INVALID"), std::string::npos);

  std::ofstream(dir / "junk.json") << "{not json";
  EXPECT_EQ(run_cli({"check-cert", (dir / "junk.json").string()}).code, kUsage);
  EXPECT_EQ(run_cli({"check-cert", (dir / "missing.json").string()}).code, kUsage);
  std::filesystem::remove_all(dir);
}

TEST(Prove, ExploratoryOverrideIsRecorded) {
  const auto dir = temp_dir("override");
  const CliResult r = run_cli({"prove", "--dir", dir.string(), "--interval-override", "u", "0.2", "--format", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["exploratory"].size(), 1u);
  EXPECT_NE(j["exploratory"][0]["subdivision"], "POSITIVE");
  EXPECT_EQ(run_cli({"prove", "--dir", dir.string(), "--interval-override", "z", "0.2"}).code, kUsage);
  std::filesystem::remove_all(dir);
}

TEST(Prove, UserPolynomialFile) {
  const auto dir = temp_dir("poly");
  // 1 + x^2
  std::ofstream(dir / "p.json") << R"({"0": {"0": "1"}, "2": {"0": "1"}})";
  const CliResult r = run_cli({"prove", "--dir", dir.string(), "--poly", (dir / "p.json").string(), "--interval", "0:2",
                         "--direction", "positive"});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("POSITIVE"), std::string::npos) << r.out;
  std::filesystem::remove_all(dir);
}

TEST(Usage, UnknownSubcommandAndHelp) {
  EXPECT_EQ(run_cli({"frobnicate"}).code, kUsage);
  EXPECT_EQ(run_cli({}).code, kUsage);
  EXPECT_EQ(run_cli({"--help"}).code, kOk);
  EXPECT_EQ(run_cli({"eval", "--x", "1", "--format", "yaml"}).code, kUsage);
}

TEST(Output, OutFlagWritesFile) {
  const auto dir = temp_dir("out");
  const auto path = dir / "e.json";
  const CliResult r = run_cli({"eval", "--x", "1", "--format", "json", "--out", path.string()});
  EXPECT_EQ(r.code, kOk);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NO_THROW(nlohmann::json::parse(slurp(path)));
  std::filesystem::remove_all(dir);
}

TEST(Executable, ExitCodesThroughTheBinary) {
  const std::string exe = TANBOUND_EXE;
  auto status = [&](const std::string& args) {
    const int s = std::system((exe + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  EXPECT_EQ(status("eval --x 1.5"), 0);
  EXPECT_EQ(status("eval --x 0.0"), 2);
  EXPECT_EQ(status("eval --x 1.5707963"), 3);
  EXPECT_EQ(status("taylor --order 3"), 0);
}
