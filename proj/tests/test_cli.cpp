#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / ("dlpp_cli_test_" + std::to_string(::getpid()));

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Runs the CLI in the work directory; stdout and stderr go to out.txt / err.txt.
int dlpp(const std::string& args, const std::string& env = "") {
  const std::string cmd = "cd '" + kWork.string() + "' && " + env + " '" + DLPP_CLI + "' " + args +
                          " > out.txt 2> err.txt";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string out() { return slurp(kWork / "out.txt"); }
std::string err() { return slurp(kWork / "err.txt"); }

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
    ASSERT_EQ(dlpp("fixture t1 --out t1.json"), 0);
  }
  static void TearDownTestSuite() { fs::remove_all(kWork); }
};

}  // namespace

TEST_F(Cli, SolveWritesPlanAndPrintsMetrics) {
  ASSERT_EQ(dlpp("solve --mode gdo --instance t1.json --time-limit 30 --out plan.json"), 0) << err();
  EXPECT_NE(out().find("cost 150"), std::string::npos) << out();
  EXPECT_NE(out().find("distance "), std::string::npos);
  EXPECT_NE(out().find("time "), std::string::npos);
  const auto plan = nlohmann::json::parse(slurp(kWork / "plan.json"));
  EXPECT_EQ(plan.at("objective").get<double>(), 150.0);
}

TEST_F(Cli, SolveIsByteIdentical) {
  for (const char* mode : {"mip", "gdo", "greedy"}) {
    ASSERT_EQ(dlpp(std::string("solve --mode ") + mode + " --instance t1.json --node-limit 500 --out a.json"), 0);
    ASSERT_EQ(dlpp(std::string("solve --mode ") + mode + " --instance t1.json --node-limit 500 --out b.json"), 0);
    EXPECT_EQ(slurp(kWork / "a.json"), slurp(kWork / "b.json")) << mode;
  }
}

TEST_F(Cli, SweepHasOneRowPerStep) {
  ASSERT_EQ(dlpp("sweep --ref t1.json --steps 50 --out sweep.csv"), 0) << err();
  std::istringstream in(slurp(kWork / "sweep.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("step,scale,total_volume,", 0), 0u);
  int rows = 0;
  double last = -1.0;
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::string step, scale, volume;
    std::getline(cells, step, ',');
    std::getline(cells, scale, ',');
    std::getline(cells, volume, ',');
    EXPECT_GE(std::stod(volume), last);
    last = std::stod(volume);
    ++rows;
  }
  EXPECT_EQ(rows, 50);
}

TEST_F(Cli, DatagenTrainEvalAreReproducible) {
  ASSERT_EQ(dlpp("datagen --ref t1.json --n 20 --seed 5 --out-dir d1"), 0) << err();
  ASSERT_EQ(dlpp("datagen --ref t1.json --n 20 --seed 5 --out-dir d2 --jobs 3"), 0) << err();
  for (const char* f : {"manifest.json", "labels.json", "reference.json"}) {
    EXPECT_EQ(slurp(kWork / "d1" / f), slurp(kWork / "d2" / f)) << f;
  }
  std::ofstream(kWork / "grid.json") << R"({"learning_rates": [0.01], "num_layers": [2, 3], "hidden": [16]})";
  ASSERT_EQ(dlpp("train --data d1 --grid grid.json --seed 3 --epochs 10 --out-model m1.json --loss-csv loss.csv"), 0)
      << err();
  ASSERT_EQ(dlpp("train --data d1 --grid grid.json --seed 3 --epochs 10 --out-model m2.json"), 0) << err();
  EXPECT_EQ(slurp(kWork / "m1.json"), slurp(kWork / "m2.json"));
  EXPECT_EQ(slurp(kWork / "loss.csv").rfind("run,learning_rate", 0), 0u);

  ASSERT_EQ(dlpp("eval --data d1 --methods gdo,proxy,greedy --model m1.json --report r.csv --summary s.json"), 0)
      << err();
  const auto summary = nlohmann::json::parse(slurp(kWork / "s.json"));
  EXPECT_TRUE(summary.contains("gdo"));
  EXPECT_TRUE(summary.at("proxy").contains("predicted_capacity_share"));
  EXPECT_EQ(summary.at("gdo").at("gap_geomean").get<double>(), 0.0);

  ASSERT_EQ(dlpp("solve --mode proxy --model m1.json --instance t1.json --out p.json"), 0) << err();
  EXPECT_EQ(dlpp("solve --mode proxy --instance t1.json"), 1);
}

TEST_F(Cli, Restrict) {
  ASSERT_EQ(dlpp("restrict --instance t1.json --scenario primary-only --out r.json"), 0) << err();
  const auto doc = nlohmann::json::parse(slurp(kWork / "r.json"));
  for (const auto& k : doc.at("commodities")) EXPECT_TRUE(k.at("alternates").empty());
  EXPECT_EQ(dlpp("restrict --instance t1.json --scenario sideways"), 1);
}

TEST_F(Cli, UserErrorsExitWithOne) {
  EXPECT_EQ(dlpp(""), 1);
  EXPECT_EQ(dlpp("frobnicate"), 1);
  EXPECT_EQ(dlpp("solve --instance missing.json"), 1);
  EXPECT_EQ(dlpp("datagen --ref t1.json --n 3 --out-dir x"), 1);  // no --seed
  std::ofstream(kWork / "bad.json") << R"({"sort_pairs": [], "trailer_types": []})";
  EXPECT_EQ(dlpp("solve --instance bad.json"), 1);
  EXPECT_NE(err().find("instance schema"), std::string::npos) << err();
  EXPECT_EQ(dlpp("--help"), 0);
}

TEST_F(Cli, LogLevelFromEnvironment) {
  ASSERT_EQ(dlpp("sweep --ref t1.json --steps 3", "DLPP_LOG=info"), 0);
  EXPECT_NE(err().find("[info]"), std::string::npos);
  ASSERT_EQ(dlpp("sweep --ref t1.json --steps 3", "DLPP_LOG=error"), 0);
  EXPECT_EQ(err().find("[info]"), std::string::npos);
}
