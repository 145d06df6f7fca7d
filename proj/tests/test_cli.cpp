#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"

namespace fs = std::filesystem;
using namespace swapcorr;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("swapcorr_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    write("ket0.json", R"({"dims":[2],"re":[[1,0],[0,0]],"im":[[0,0],[0,0]]})");
    write("mixed.json", R"({"dims":[2],"re":[[0.5,0],[0,0.5]]})");
    write("qutrit.json", R"({"dims":[3],"re":[[1,0,0],[0,0,0],[0,0,0]]})");
    write("bad_trace.json", R"({"dims":[2],"re":[[0.7,0],[0,0.7]]})");
    write("garbage.json", "{ not json");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& body) const {
    std::ofstream(dir_ / name) << body;
  }

  static std::string slurp(const std::string& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
  }

  // Runs the installed binary and returns its exit status.
  int run(const std::string& args) const {
    const std::string cmd = std::string(SWAPCORR_BIN) + " " + args + " >" + path("stdout.txt") + " 2>" +
                            path("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, OverlapReportsExactValues) {
  std::ostringstream out;
  ASSERT_EQ(cli::cmd_overlap({path("ket0.json"), path("mixed.json"), 10000, 3}, out), cli::ok);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_NEAR(j.at("overlap").get<double>(), 0.5, 1e-14);
  EXPECT_NEAR(j.at("p_plus").get<double>(), 0.75, 1e-14);
  EXPECT_EQ(j.at("sampled").at("shots"), 10000);
  EXPECT_EQ(j.at("manifest").at("seed"), 3);
  EXPECT_EQ(j.at("manifest").at("command"), "overlap");
}

TEST_F(CliTest, AnalyzeIncludesWitnessWhenEntangled) {
  std::ostringstream out;
  ASSERT_EQ(cli::cmd_analyze({path("ket0.json"), path("mixed.json"), 0}, out), cli::ok);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j.at("report").at("classification"), "entangled");
  EXPECT_NEAR(j.at("report").at("discord_bits").get<double>(), 0.5, 1e-9);
  EXPECT_TRUE(j.contains("witness"));
  EXPECT_LT(j.at("witness").at("value").get<double>(), 0.0);
}

TEST_F(CliTest, AnalyzeEqualInputsIsClassicalOnly) {
  std::ostringstream out;
  ASSERT_EQ(cli::cmd_analyze({path("mixed.json"), path("mixed.json"), 0}, out), cli::ok);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j.at("report").at("classification"), "classical-only");
  EXPECT_FALSE(j.contains("witness"));
  EXPECT_TRUE(j.at("classical_quantum").at("classical_quantum").get<bool>());
}

TEST_F(CliTest, SweepWritesCsvAndManifest) {
  std::ostringstream log;
  ASSERT_EQ(cli::cmd_sweep({3, path("s.csv"), 0}, log), cli::ok);
  const std::string csv = slurp(path("s.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 10);
  EXPECT_EQ(csv.rfind("a1,a2,total_bits,negativity_sum,discord_bits,class\n", 0), 0u);
  const auto m = nlohmann::json::parse(slurp(path("s.csv.manifest.json")));
  EXPECT_EQ(m.at("command"), "sweep");
  EXPECT_EQ(m.at("parameters").at("resolution"), 3);
  EXPECT_EQ(m.at("seed"), 0);
  EXPECT_EQ(m.at("tool_version"), version);
  const std::string ts = m.at("timestamp");
  EXPECT_EQ(ts.size(), 20u);
  EXPECT_EQ(ts[10], 'T');
  EXPECT_EQ(ts.back(), 'Z');
}

TEST_F(CliTest, SweepIsDeterministicForFixedSeed) {
  std::ostringstream log;
  ASSERT_EQ(cli::cmd_sweep({5, path("a.csv"), 17}, log), cli::ok);
  ASSERT_EQ(cli::cmd_sweep({5, path("b.csv"), 17}, log), cli::ok);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST_F(CliTest, TrajectoryPrintsDeathTime) {
  cli::TrajectoryArgs args;
  args.out = path("t.csv");
  args.config.n_steps = 51;
  std::ostringstream out;
  ASSERT_EQ(cli::cmd_trajectory(args, out), cli::ok);
  EXPECT_NE(out.str().find("death_time=0.2\n"), std::string::npos) << out.str();
  const std::string csv = slurp(path("t.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 52);
  const auto m = nlohmann::json::parse(slurp(path("t.csv.manifest.json")));
  EXPECT_EQ(m.at("parameters").at("late_mode"), "carry");
  EXPECT_EQ(m.at("parameters").at("steps"), 51);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run("overlap " + path("ket0.json") + " " + path("mixed.json")), 0);
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("frobnicate"), 1);
  EXPECT_EQ(run("overlap " + path("ket0.json")), 1);
  EXPECT_EQ(run("sweep --resolution 3"), 1);
  EXPECT_EQ(run("trajectory --late-mode sideways --out " + path("t.csv")), 1);
  EXPECT_EQ(run("overlap " + path("missing.json") + " " + path("mixed.json")), 2);
  EXPECT_EQ(run("overlap " + path("garbage.json") + " " + path("mixed.json")), 2);
  EXPECT_EQ(run("analyze " + path("bad_trace.json") + " " + path("mixed.json")), 2);
  EXPECT_EQ(run("analyze " + path("ket0.json") + " " + path("qutrit.json")), 2);
  EXPECT_EQ(run("trajectory --t-switch 0.9 --out " + path("t.csv")), 2);
  EXPECT_EQ(run("sweep --resolution 2 --out " + path("nodir/x.csv")), 2);
}

TEST_F(CliTest, RejectsRegistersAboveLimit) {
  const std::size_t d = cli::max_register_dim + 1;
  nlohmann::json re = nlohmann::json::array();
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> row(d, 0.0);
    row[i] = 1.0 / static_cast<double>(d);
    re.push_back(row);
  }
  write("big.json", nlohmann::json{{"dims", {d}}, {"re", re}}.dump());
  EXPECT_EQ(run("overlap " + path("big.json") + " " + path("big.json")), 2);
  EXPECT_NE(slurp(path("stderr.txt")).find("exceeds"), std::string::npos);
}

TEST_F(CliTest, BinarySweepOutputMatchesLibrary) {
  ASSERT_EQ(run("sweep --resolution 3 --out " + path("bin.csv")), 0);
  std::ostringstream expected;
  write_sweep_csv(expected, sweep(3));
  EXPECT_EQ(slurp(path("bin.csv")), expected.str());
}
