#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "normaloid/matrix_io.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(NORMALOID_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fixture_file(const std::string& name) {
  return fs::path(NORMALOID_FIXTURE_DIR) / (name + ".json");
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "normaloid_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

bool member(const normaloid::Json& report, const std::string& id) {
  bool all = true, seen = false;
  for (const auto& v : report["verdicts"]) {
    if (v["class_id"] != id) continue;
    seen = true;
    all = all && v["member"].get<bool>();
  }
  return seen && all;
}

}  // namespace

TEST(Cli, ClassifyGolden) {
  const CliRun r = run("classify " + fixture_file("normaloid_self_adjoint_polar").string());
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, slurp(fs::path(NORMALOID_GOLDEN_DIR) / "classify_normaloid_self_adjoint_polar.json"));
  const auto report = normaloid::Json::parse(r.out);
  EXPECT_TRUE(member(report, "normaloid"));
  EXPECT_FALSE(member(report, "normal"));
}

TEST(Cli, PencilScanGolden) {
  const CliRun r = run("pencil-scan " + fixture_file("normaloid_self_adjoint_polar").string() +
                    " --p 1 --r 1 --points 50");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, slurp(fs::path(NORMALOID_GOLDEN_DIR) / "pencil_scan_50.csv"));
}

TEST(Cli, ClassifyIdentityAllTrue) {
  const fs::path p = scratch("identity.json");
  std::ofstream(p) << R"({"n": 2, "data": [[1, 0], [0, 0], [0, 0], [1, 0]]})";
  const CliRun r = run("classify " + p.string());
  ASSERT_EQ(r.code, 0);
  for (const auto& v : normaloid::Json::parse(r.out)["verdicts"]) {
    EXPECT_TRUE(v["member"].get<bool>()) << v["class_id"];
  }
}

TEST(Cli, TruncatedFileIsUsageError) {
  const std::string text = slurp(fixture_file("nilpotent_2x2"));
  const fs::path p = scratch("truncated.json");
  std::ofstream(p) << text.substr(0, text.size() / 2);
  EXPECT_EQ(run("classify " + p.string()).code, 2);
  EXPECT_EQ(run("classify /nonexistent.json").code, 2);
}

TEST(Cli, GenerateQuasinormalPartialIsometry) {
  const fs::path p = scratch("qpi.json");
  ASSERT_EQ(run("generate --class quasinormal-partial-isometry --n 4 --rank 2 --seed 3 --out " +
                p.string())
                .code,
            0);
  const CliRun r = run("classify " + p.string());
  ASSERT_EQ(r.code, 0);
  const auto report = normaloid::Json::parse(r.out);
  EXPECT_TRUE(member(report, "quasinormal"));
  EXPECT_TRUE(member(report, "partial_isometry"));
}

TEST(Cli, GenerateEdgeCases) {
  const CliRun one = run("generate --class normal --n 1");
  ASSERT_EQ(one.code, 0);
  EXPECT_EQ(normaloid::Json::parse(one.out)["n"], 1);
  EXPECT_EQ(run("generate --class normal --n 4 --rank 5").code, 2);
  EXPECT_EQ(run("generate --class bogus").code, 2);
}

TEST(Cli, PencilScanRows) {
  const fs::path zero = scratch("zero.json");
  std::ofstream(zero) << R"({"n": 2, "data": [[0, 0], [0, 0], [0, 0], [0, 0]]})";
  const CliRun r = run("pencil-scan " + zero.string() + " --p 2 --r 1 --points 10");
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "lambda,min_eig");
  int rows = 0;
  while (std::getline(lines, line)) {
    const auto comma = line.find(',');
    const double lambda = std::stod(line.substr(0, comma));
    const double min_eig = std::stod(line.substr(comma + 1));
    EXPECT_NEAR(min_eig, 2.0 * std::pow(lambda, 3.0), 1e-15);
    ++rows;
  }
  EXPECT_EQ(rows, 10);
}

TEST(Cli, VerifyExitCodes) {
  EXPECT_EQ(run("verify --suite BOGUS --trials 2").code, 2);
  EXPECT_EQ(run("verify --suite ASCENT_ONE --trials 0").code, 2);
  const CliRun ok = run("verify --suite ASCENT_ONE --trials 5 --seed 1");
  EXPECT_EQ(ok.code, 0);
  EXPECT_TRUE(normaloid::Json::parse(ok.out).is_array());
}

TEST(Cli, VerifyTamperedFixtureFails) {
  const fs::path dir = scratch("tampered");
  fs::create_directories(dir);
  for (const auto& entry : fs::directory_iterator(NORMALOID_FIXTURE_DIR)) {
    fs::copy_file(entry.path(), dir / entry.path().filename(), fs::copy_options::overwrite_existing);
  }
  auto j = normaloid::Json::parse(slurp(dir / "partial_isometry_not_quasinormal.json"));
  j["expected"]["quasinormal"] = true;
  std::ofstream(dir / "partial_isometry_not_quasinormal.json", std::ios::trunc)
      << normaloid::dump_json(j);
  EXPECT_EQ(run("verify --suite ASCENT_ONE --trials 2 --fixtures " + dir.string()).code, 1);
  EXPECT_EQ(run("verify --suite ASCENT_ONE --trials 2 --fixtures " +
                std::string(NORMALOID_FIXTURE_DIR)).code, 0);
}

TEST(Cli, ToleranceProfilesAndEnvironment) {
  const std::string file = fixture_file("nilpotent_2x2").string();
  EXPECT_EQ(run("classify " + file + " --tolerance strict").code, 0);
  EXPECT_EQ(run("classify " + file + " --tolerance sloppy").code, 2);
  EXPECT_EQ(run("classify " + file, "NORMALOID_PSD_TOL=abc").code, 2);
  EXPECT_EQ(run("classify " + file, "NORMALOID_GRID_POINTS=0").code, 2);
  EXPECT_EQ(run("classify " + file, "NORMALOID_PSD_TOL=1e-7").code, 0);
}

TEST(Cli, FixturesListing) {
  const CliRun r = run("fixtures");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("partial_isometry_not_quasinormal\t3\t"), std::string::npos);
  EXPECT_EQ(run("").code, 2);
}
