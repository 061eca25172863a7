/* Copyright 2026 The ptdp Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "ptdp/cli.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ptdp/json_io.h"

namespace ptdp {
namespace {

namespace fs = std::filesystem;

const std::string kConfigs = PTDP_CONFIG_DIR;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args, bool color = false) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err, color);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ptdp_cli_" +
            std::string(::testing::UnitTest::GetInstance()
                            ->current_test_info()
                            ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const json& j) {
    const fs::path path = dir_ / name;
    std::ofstream(path) << j.dump();
    return path.string();
  }

  fs::path dir_;
};

std::size_t Count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

TEST_F(CliTest, EstimateGpt3) {
  const CliRun r = Cli({"estimate", "--model", kConfigs + "/gpt3_175b.json",
                     "--batch", "1536", "--tokens", "300e9", "--gpus", "1024",
                     "--throughput", "140e12"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("(~34 days)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("174615822336"), std::string::npos);
}

TEST_F(CliTest, EstimateJsonMatchesTable) {
  const std::vector<std::string> base = {
      "estimate", "--model", kConfigs + "/gpt_1t.json", "--batch", "8",
      "--tokens", "450e9",   "--gpus",  "3072",         "--throughput",
      "163e12",   "--params", "1e12"};
  auto args = base;
  args.insert(args.end(), {"--format", "json"});
  const CliRun r = Cli(args);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["training_time"]["days"].get<double>(), 84.0, 1.0);
  const CliRun table = Cli(base);
  EXPECT_NE(table.out.find(std::to_string(j["parameters"].get<std::int64_t>())),
            std::string::npos);
}

TEST_F(CliTest, MissingModelFile) {
  const CliRun r = Cli({"estimate", "--model", "/no/such/model.json"});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("/no/such/model.json"), std::string::npos);
}

TEST_F(CliTest, SimulateBubbles) {
  const std::vector<std::string> base = {
      "simulate", "--model", kConfigs + "/gpt_5p9b.json", "--p", "4",
      "--batch",  "8",       "--zero-comm", "--out", dir_.string()};
  auto f = base;
  f.insert(f.end(), {"--schedule", "1f1b"});
  CliRun r = Cli(f);
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("bubble_fraction: 0.375\n"), std::string::npos) << r.out;
  auto i = base;
  i.insert(i.end(), {"--schedule", "interleaved", "--v", "2"});
  r = Cli(i);
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("bubble_fraction: 0.1875\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, SimulateWritesSvgAndTimeline) {
  const CliRun r = Cli({"simulate", "--model", kConfigs + "/gpt_5p9b.json", "--p",
                     "4", "--t", "2", "--v", "2", "--schedule", "interleaved",
                     "--batch", "8", "--svg", "--scatter-gather", "--out",
                     dir_.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream svg(dir_ / "timeline.svg");
  const std::string text((std::istreambuf_iterator<char>(svg)),
                         std::istreambuf_iterator<char>());
  EXPECT_EQ(Count(text, "<rect class=\"task "), 2u * 8 * 2 * 4);
  EXPECT_EQ(Count(text, "<rect class=\"task forward"), 8u * 2 * 4);
  EXPECT_EQ(Count(text, "<rect class=\"task backward"), 8u * 2 * 4);

  const CliRun render = Cli({"render", "--timeline",
                          (dir_ / "timeline.json").string(), "--out",
                          (dir_ / "again").string()});
  EXPECT_EQ(render.code, kExitOk) << render.err;
  EXPECT_NE(render.out.find("violations: 0"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "again" / "timeline.svg"));
}

TEST_F(CliTest, SimulateJsonAndValidationErrors) {
  CliRun r = Cli({"simulate", "--model", kConfigs + "/gpt_5p9b.json", "--p", "4",
               "--v", "2", "--schedule", "interleaved", "--batch", "6",
               "--out", dir_.string()});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("m=6 is not a multiple of p=4"), std::string::npos)
      << r.err;
  r = Cli({"simulate", "--model", kConfigs + "/gpt_5p9b.json", "--p", "2",
           "--batch", "4", "--format", "json", "--out", dir_.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["violations"], 0);
  EXPECT_EQ(j["peak_inflight"], json::array({2, 1}));
}

TEST_F(CliTest, SimulateFromParallelFile) {
  const std::string parallel =
      Write("parallel.json", {{"pipeline_size", 2},
                              {"tensor_size", 2},
                              {"schedule", "gpipe"},
                              {"activation_recompute", false}});
  const CliRun r = Cli({"simulate", "--model", kConfigs + "/gpt_5p9b.json",
                     "--parallel", parallel, "--batch", "4", "--out",
                     dir_.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("p=2 t=2 d=1 b=1 v=1 gpipe -recompute"),
            std::string::npos)
      << r.out;
}

TEST_F(CliTest, PlanLargeModelTopRowUsesFullNode) {
  const CliRun r = Cli({"plan", "--query", kConfigs + "/plan_161b_64gpu.json",
                     "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["ranked"][0]["config"]["tensor_size"], 8);
}

TEST_F(CliTest, PlanSingleDevice) {
  const std::string q =
      Write("q.json", {{"devices", 1},
                       {"global_batch", 8},
                       {"model", kConfigs + "/gpt_5p9b.json"},
                       {"hardware", {{"memory_capacity", 1e12}}},
                       {"schedules", {"1f1b"}},
                       {"microbatch_sizes", {1}},
                       {"recompute_modes", {true}}});
  const CliRun r = Cli({"plan", "--query", q, "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(Count(r.out, "\n"), 2u) << r.out;
  EXPECT_NE(r.out.find("\n1,1,1,1,1,1,1f1b,"), std::string::npos) << r.out;
}

TEST_F(CliTest, PlanIsByteIdenticalAcrossRuns) {
  const std::vector<std::string> args = {
      "plan", "--query", kConfigs + "/plan_161b_64gpu.json", "--explain",
      "--top", "50"};
  const CliRun a = Cli(args);
  const CliRun b = Cli(args);
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("infeasible:"), std::string::npos);
}

TEST_F(CliTest, PlanWithoutFeasibleConfig) {
  const std::string q = Write("q.json", {{"devices", 1},
                                         {"global_batch", 8},
                                         {"model", kConfigs + "/gpt_161b.json"}});
  const CliRun r = Cli({"plan", "--query", q});
  EXPECT_EQ(r.code, kExitNoPlan);
  EXPECT_NE(r.err.find("OutOfMemory"), std::string::npos) << r.err;
}

TEST_F(CliTest, SweepMicrobatches) {
  const CliRun r = Cli({"sweep", "--model", kConfigs + "/gpt_5p9b.json", "--p",
                     "2", "--t", "8", "--batch", "64", "--microbatches",
                     "1,2,3,4,8"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("microbatch_size,status,", 0), 0u);
  EXPECT_EQ(Count(r.out, "\n"), 6u);
  EXPECT_NE(r.out.find("\n3,skipped,"), std::string::npos);
  EXPECT_EQ(Count(r.out, ",*,"), 1u);
}

TEST_F(CliTest, SweepBatches) {
  const CliRun r = Cli({"sweep", "--model", kConfigs + "/gpt_5p9b.json", "--p",
                     "4", "--d", "2", "--batches", "8,16,32", "--format",
                     "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["points"].size(), 3u);
  EXPECT_TRUE(j["points"][2]["best"].get<bool>());
}

TEST_F(CliTest, SweepNeedsCandidates) {
  const CliRun r = Cli({"sweep", "--model", kConfigs + "/gpt_5p9b.json", "--p",
                     "2", "--batch", "8"});
  EXPECT_EQ(r.code, kExitValidation);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Cli({}).code, kExitValidation);
  EXPECT_EQ(Cli({"frobnicate"}).code, kExitValidation);
  EXPECT_EQ(Cli({"simulate", "--model", kConfigs + "/gpt_5p9b.json",
                 "--schedule", "zigzag", "--batch", "4"})
                .code,
            kExitValidation);
  EXPECT_EQ(Cli({"--help"}).code, kExitOk);
}

TEST_F(CliTest, ColorRespectsEnvironment) {
  const std::vector<std::string> args = {
      "plan", "--query", kConfigs + "/plan_161b_64gpu.json", "--top", "1"};
  unsetenv("PTDP_NO_COLOR");
  EXPECT_NE(Cli(args, true).out.find("\x1b["), std::string::npos);
  EXPECT_EQ(Cli(args, false).out.find("\x1b["), std::string::npos);
  setenv("PTDP_NO_COLOR", "1", 1);
  EXPECT_EQ(Cli(args, true).out.find("\x1b["), std::string::npos);
  unsetenv("PTDP_NO_COLOR");
}

}  // namespace
}  // namespace ptdp
