#include <gtest/gtest.h>

#include <sys/wait.h>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "flrwkit/cli.hpp"

using namespace flrwkit;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string config(const std::string& name) { return std::string(FLRWKIT_SOURCE_DIR) + "/configs/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

// True when `text` is exactly the shortest round-trip spelling of its value.
bool shortest_round_trip(const std::string& text) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size()) return false;
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr) == text;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("flrwkit_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::string write_file(const TempDir& dir, const std::string& name, const std::string& text) {
  const fs::path p = dir / name;
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

}  // namespace

TEST(Cli, CatalogListIsTabSeparated) {
  const CliRun r = cli({"catalog", "list"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const std::vector<std::string> lines = split(r.out, '\n');
  ASSERT_EQ(lines.size(), 9u);
  EXPECT_EQ(lines.front().substr(0, 6), "milne\t");
  for (const auto& line : lines) EXPECT_EQ(split(line, '\t').size(), 2u) << line;
}

TEST(Cli, UsageErrorsExitWithConfigCode) {
  EXPECT_EQ(cli({}).code, exit_config);
  EXPECT_EQ(cli({"frobnicate"}).code, exit_config);
  EXPECT_EQ(cli({"chart"}).code, exit_config);
  EXPECT_EQ(cli({"chart", "cylindrical"}).code, exit_config);
  EXPECT_EQ(cli({"classify", "--seed", "abc"}).code, exit_config);
  EXPECT_EQ(cli({"classify", "--bogus"}).code, exit_config);
}

TEST(Cli, HelpAndVersionSucceed) {
  const CliRun help = cli({"--help"});
  EXPECT_EQ(help.code, exit_ok);
  EXPECT_NE(help.out.find("classify"), std::string::npos);
  const CliRun version = cli({"--version"});
  EXPECT_EQ(version.code, exit_ok);
  EXPECT_EQ(version.out, "0.1.0\n");
}

TEST(Cli, ConfigProblemsExitWithConfigCode) {
  TempDir dir;
  EXPECT_EQ(cli({"classify"}).code, exit_config);
  EXPECT_EQ(cli({"classify", "--config", (dir / "missing.ini").string()}).code, exit_config);

  const CliRun bad = cli({"classify", "--config", write_file(dir, "bad.ini", "[spacetime]\nK = 0\nK = 1\n")});
  EXPECT_EQ(bad.code, exit_config);
  EXPECT_NE(bad.err.find("line 3"), std::string::npos) << bad.err;
  EXPECT_NE(bad.err.find("spacetime.K"), std::string::npos) << bad.err;

  const CliRun syntax = cli({"classify", "--config", write_file(dir, "syn.ini", "[spacetime]\nK = 0\na = \"t^^2\"\nt_inf = 0\n")});
  EXPECT_EQ(syntax.code, exit_config);
  EXPECT_NE(syntax.err.find("line 3"), std::string::npos) << syntax.err;

  // The command needs a section the file does not have.
  EXPECT_EQ(cli({"chart", "spherical", "--config", config("radiation_flat.ini")}).code, exit_config);
  EXPECT_EQ(cli({"chart", "axi", "--config", config("radiation_flat.ini")}).code, exit_config);
  EXPECT_EQ(cli({"verify", "--config", config("radiation_flat.ini")}).code, exit_config);
  EXPECT_EQ(cli({"verify", "--config", config("desitter_flat.ini"), "--tol", "-1"}).code, exit_config);
}

TEST(Cli, ClassifyWritesTheJsonReport) {
  const CliRun r = cli({"classify", "--config", config("radiation_flat.ini")});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["kind"], "classify");
  EXPECT_EQ(j["spec"]["K"], 0);
  bool saw = false;
  for (const auto& v : j["verdicts"])
    if (v["id"] == "past_c01") {
      EXPECT_EQ(v["conclusion"], "Applies");
      saw = true;
    }
  EXPECT_TRUE(saw);
}

TEST(Cli, OutFlagWritesTheSameBytes) {
  TempDir dir;
  const CliRun stdout_run = cli({"classify", "--config", config("example.ini")});
  ASSERT_EQ(stdout_run.code, exit_ok) << stdout_run.err;
  const fs::path out = dir / "report.json";
  const CliRun file_run = cli({"classify", "--config", config("example.ini"), "--out", out.string()});
  ASSERT_EQ(file_run.code, exit_ok) << file_run.err;
  EXPECT_TRUE(file_run.out.empty());
  EXPECT_EQ(slurp(out), stdout_run.out);
}

TEST(Cli, UnwritableOutputIsAnInternalError) {
  const CliRun r = cli({"catalog", "list", "--out", "/nonexistent-dir/x.txt"});
  EXPECT_EQ(r.code, exit_internal);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, SphericalCsvUsesShortestRoundTripNumbers) {
  const CliRun r = cli({"chart", "spherical", "--config", config("example.ini")});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const std::vector<std::string> lines = split(r.out, '\n');
  ASSERT_EQ(lines.front(), "t,r,T,R,F,G,excluded");
  ASSERT_EQ(lines.size(), 1u + 11u * 11u);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> cells = split(lines[i], ',');
    ASSERT_EQ(cells.size(), 7u) << lines[i];
    for (std::size_t c = 0; c < 6; ++c) EXPECT_TRUE(shortest_round_trip(cells[c])) << cells[c];
    EXPECT_TRUE(cells[6] == "0" || cells[6] == "1");
  }
}

TEST(Cli, AxiCsvHasOneRowPerGridPoint) {
  const CliRun r = cli({"chart", "axi", "--config", config("synthetic_axi.ini")});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const std::vector<std::string> lines = split(r.out, '\n');
  ASSERT_EQ(lines.front(), "T,R,theta,z,rho,A,B,C,J,sign_case,degeneracy");
  EXPECT_EQ(lines.size(), 1u + 2u * 5u * 5u);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> cells = split(lines[i], ',');
    ASSERT_EQ(cells.size(), 11u);
    for (std::size_t c = 0; c < 9; ++c) EXPECT_TRUE(shortest_round_trip(cells[c])) << cells[c];
  }
}

TEST(Cli, VerifyPassesAndFailsWithTheRightCode) {
  const CliRun ok = cli({"verify", "--config", config("desitter_flat.ini")});
  ASSERT_EQ(ok.code, exit_ok) << ok.err;
  const auto j = nlohmann::json::parse(ok.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["reports"].size(), 3u);

  const CliRun strict = cli({"verify", "--config", config("desitter_flat.ini"), "--tol", "1e-15"});
  EXPECT_EQ(strict.code, exit_verification);
  EXPECT_NE(strict.err.find("verification failed"), std::string::npos);
  const auto js = nlohmann::json::parse(strict.out);
  EXPECT_FALSE(js["pass"].get<bool>());
  EXPECT_EQ(js["reports"][0]["tol"].get<double>(), 1e-15);
}

TEST(Cli, SeedFlagOverridesTheConfig) {
  const std::string a = cli({"verify", "--config", config("synthetic_axi.ini"), "--seed", "1"}).out;
  const std::string b = cli({"verify", "--config", config("synthetic_axi.ini"), "--seed", "2"}).out;
  const auto ja = nlohmann::json::parse(a), jb = nlohmann::json::parse(b);
  EXPECT_EQ(ja["reports"][0]["seed"], 1);
  EXPECT_EQ(jb["reports"][0]["seed"], 2);
  EXPECT_NE(ja["reports"][0]["worst"], jb["reports"][0]["worst"]);
}

TEST(Cli, ProbeWritesTraceAndSummary) {
  TempDir dir;
  const fs::path trace = dir / "trace.csv";
  const CliRun r = cli({"probe", "--config", config("radiation_flat.ini"), "--out", trace.string()});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const std::vector<std::string> lines = split(slurp(trace), '\n');
  ASSERT_GT(lines.size(), 10u);
  EXPECT_EQ(lines.front(), "t,r,R,G,C,tangent_norm");
  const auto j = nlohmann::json::parse(slurp(dir / "trace.json"));
  EXPECT_EQ(j["kind"], "probe");
  EXPECT_TRUE(j["witness"]["found"].get<bool>());

  const CliRun no_out = cli({"probe", "--config", config("radiation_flat.ini")});
  EXPECT_EQ(no_out.code, exit_ok);
  EXPECT_EQ(nlohmann::json::parse(no_out.out), j);
  EXPECT_NE(no_out.err.find("trace CSV was not written"), std::string::npos);
}

TEST(Cli, OutputsAreByteDeterministic) {
  const std::vector<std::vector<std::string>> commands{
      {"classify", "--config", config("example.ini")},
      {"chart", "spherical", "--config", config("desitter_flat.ini")},
      {"chart", "axi", "--config", config("synthetic_axi.ini")},
      {"verify", "--config", config("synthetic_axi.ini")},
      {"probe", "--config", config("radiation_flat.ini")},
      {"catalog", "list"},
  };
  for (const auto& args : commands) {
    const CliRun a = cli(args), b = cli(args);
    EXPECT_EQ(a.code, exit_ok) << args.front() << a.err;
    EXPECT_EQ(a.out, b.out) << args.front();
  }
}

TEST(Cli, ExecutableReportsExitCodes) {
  const std::string tool = FLRWKIT_TOOL;
  auto status = [&](const std::string& args) {
    const int s = std::system((tool + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  EXPECT_EQ(status("catalog list"), 0);
  EXPECT_EQ(status("classify"), 2);
  EXPECT_EQ(status("verify --config " + config("desitter_flat.ini") + " --tol 1e-15"), 3);
}
