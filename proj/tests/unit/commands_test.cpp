// Copyright 2026 The gausscount Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <unistd.h>

#include <cmath>
#include <filesystem>

#include <fmt/format.h>
#include <gtest/gtest.h>

#include "gausscount/channel.hpp"
#include "gausscount/commands.hpp"
#include "random_models.hpp"

using namespace gausscount;

namespace {

class commands : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               fmt::format("gausscount_cmd_{}_{}", ::getpid(),
                           ::testing::UnitTest::GetInstance()->current_test_info()->name());
        std::filesystem::create_directories(dir_);
        options_.base_dir = dir_;
    }
    void TearDown() override {
        std::filesystem::remove_all(dir_);
    }

    std::filesystem::path dir_;
    CommandOptions options_;
};

Json two_mode_state() {
    models::Rng rng(42);
    return state_to_json(models::random_state(rng, 2));
}

}  // namespace

TEST_F(commands, pgf_of_vacuum) {
    CommandOutcome out = cmd_pgf(Json{{"state", state_to_json(GaussianState::vacuum(2))}, {"kmax", 5}}, options_);
    ASSERT_EQ(out.exit_code, 0) << out.report.dump();
    for (const auto &g : out.report["G"]) {
        EXPECT_NEAR(g.get<double>(), 1.0, 1e-14);
    }
    std::vector<double> p = out.report["pmf"];
    ASSERT_EQ(p.size(), 6u);
    EXPECT_NEAR(p[0], 1.0, 1e-12);
    for (std::size_t k = 1; k < p.size(); ++k) {
        EXPECT_NEAR(p[k], 0.0, 1e-12);
    }
    EXPECT_EQ(out.report["mean"], 0.0);
    EXPECT_EQ(out.report["schema"], "v1");
    EXPECT_EQ(out.report["rng"], "mt19937_64");
}

TEST_F(commands, pgf_of_thermal_is_geometric) {
    Json script{{"modes", 1}, {"input", {{"kind", "thermal"}, {"t", {std::log(2.0)}}}}, {"gates", Json::array()}};
    CommandOutcome out = cmd_pgf(Json{{"script", script}, {"kmax", 12}}, options_);
    ASSERT_EQ(out.exit_code, 0) << out.report.dump();
    std::vector<double> p = out.report["pmf"];
    EXPECT_NEAR(p[0], 0.5, 1e-12);
    for (std::size_t k = 1; k < p.size(); ++k) {
        EXPECT_NEAR(p[k] / p[k - 1], 0.5, 1e-9);
    }
    EXPECT_NEAR(out.report["mean"].get<double>(), 1.0, 1e-12);
    EXPECT_TRUE(out.report["divisibility"]["divisible_up_to_order"].get<bool>());
}

TEST_F(commands, reports_are_deterministic) {
    Json config{{"state", two_mode_state()}, {"backend", {{"kind", "noisy"}, {"M", 1000000}, {"seed", 9}}}};
    std::string a = report_text(cmd_tomography_state(config, options_).report);
    std::string b = report_text(cmd_tomography_state(config, options_).report);
    EXPECT_EQ(a, b);
    options_.seed = 10;
    CommandOutcome c = cmd_tomography_state(config, options_);
    EXPECT_NE(report_text(c.report), a);
    EXPECT_EQ(c.report["seed"], 10u);
    EXPECT_EQ(c.report["config_hash"], fnv1a_hex(config.dump()));
}

TEST_F(commands, schema_errors_exit_2_with_field_path) {
    Json state = two_mode_state();
    state["S"][3][1] = "oops";
    CommandOutcome out = cmd_pgf(Json{{"state", state}}, options_);
    EXPECT_EQ(out.exit_code, kExitValidation);
    EXPECT_EQ(out.report["status"], "error");
    EXPECT_NE(out.report["error"]["message"].get<std::string>().find("state.S[3][1]"), std::string::npos);

    out = cmd_pgf(Json{{"state", two_mode_state()}, {"x_grid", {0.5, 2.0}}}, options_);
    EXPECT_EQ(out.exit_code, kExitValidation);
    EXPECT_NE(out.report["error"]["message"].get<std::string>().find("config.x_grid[1]"), std::string::npos);

    EXPECT_EQ(run_command("bogus", Json::object(), options_).exit_code, kExitValidation);
    EXPECT_EQ(cmd_pgf(Json::array(), options_).exit_code, kExitValidation);
}

TEST_F(commands, missing_file_exits_4) {
    CommandOutcome out = cmd_pgf(Json{{"state_file", "nope.json"}}, options_);
    EXPECT_EQ(out.exit_code, kExitIo);
    EXPECT_EQ(out.report["error"]["code"], "io");
}

TEST_F(commands, tomography_state_exact) {
    CommandOutcome out = cmd_tomography_state(Json{{"state", two_mode_state()}}, options_);
    ASSERT_EQ(out.exit_code, 0) << out.report.dump();
    EXPECT_EQ(out.report["measurement_count"], 14u);
    EXPECT_EQ(out.report["records"].size(), 14u);
    EXPECT_LE(out.report["errors"]["max"].get<double>(), 1e-8);
    EXPECT_TRUE(out.report["valid"].get<bool>());
}

TEST_F(commands, tomography_state_noisy_reports_sigma) {
    Json config{{"state", two_mode_state()}, {"backend", {{"kind", "noisy"}, {"M", 1000000}, {"seed", 1}}}};
    CommandOutcome out = cmd_tomography_state(config, options_);
    ASSERT_EQ(out.exit_code, 0) << out.report.dump();
    const Json &errors = out.report["errors"];
    ASSERT_TRUE(errors.contains("sigma"));
    EXPECT_EQ(errors["sigma"]["records"].size(), 14u);
    EXPECT_GT(errors["sigma"]["record_max"].get<double>(), 0.0);
    EXPECT_LT(errors["z_max"].get<double>(), 6.0);
    for (const auto &rec : out.report["records"]) {
        EXPECT_EQ(rec["ensemble_size"], 1000000u);
    }
}

TEST_F(commands, tomography_state_replay_is_identical) {
    Json config{{"state", two_mode_state()},
                {"backend", {{"kind", "noisy"}, {"M", 10000}, {"seed", 3}}},
                {"records_out", "records.jsonl"}};
    CommandOutcome sim = cmd_tomography_state(config, options_);
    ASSERT_EQ(sim.exit_code, 0) << sim.report.dump();
    CommandOutcome replay = cmd_tomography_state(Json{{"n", 2}, {"records_file", "records.jsonl"}}, options_);
    ASSERT_EQ(replay.exit_code, 0) << replay.report.dump();
    EXPECT_EQ(replay.report["estimate"], sim.report["estimate"]);
    EXPECT_EQ(replay.report["residuals"], sim.report["residuals"]);
}

TEST_F(commands, tomography_state_missing_records) {
    Json config{{"state", two_mode_state()}, {"records_out", "records.jsonl"}};
    ASSERT_EQ(cmd_tomography_state(config, options_).exit_code, 0);
    std::vector<Json> lines = read_jsonl_file(dir_ / "records.jsonl");
    std::string text;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i != 3 && i != 9) {
            text += lines[i].dump() + "\n";
        }
    }
    write_text_file(dir_ / "partial.jsonl", text);
    CommandOutcome out = cmd_tomography_state(Json{{"n", 2}, {"records_file", "partial.jsonl"}}, options_);
    EXPECT_EQ(out.exit_code, kExitValidation);
    EXPECT_EQ(out.report["error"]["code"], "missing_records");
    std::string msg = out.report["error"]["message"];
    EXPECT_NE(msg.find(record_from_json(lines[3]).descriptor.key()), std::string::npos) << msg;
    EXPECT_NE(msg.find(record_from_json(lines[9]).descriptor.key()), std::string::npos) << msg;
}

TEST_F(commands, tomography_state_project_flag) {
    CommandOutcome out = cmd_tomography_state(Json{{"state", two_mode_state()}, {"project", true}}, options_);
    ASSERT_EQ(out.exit_code, 0);
    EXPECT_TRUE(out.report.contains("projected"));
    EXPECT_FALSE(cmd_tomography_state(Json{{"state", two_mode_state()}}, options_).report.contains("projected"));
}

TEST_F(commands, tomography_channel_identity) {
    CommandOutcome out = cmd_tomography_channel(Json{{"channel", channel_to_json(GaussianChannel::identity(1))}}, options_);
    ASSERT_EQ(out.exit_code, 0) << out.report.dump();
    EXPECT_EQ(out.report["measurement_count"], 8u);
    Matrix a = matrix_from_json(out.report["A_hat"], 2, 2, "A_hat");
    Matrix b = matrix_from_json(out.report["B_hat"], 2, 2, "B_hat");
    EXPECT_LE(max_abs(a - Matrix::Identity(2, 2)), 1e-10);
    EXPECT_LE(max_abs(b), 1e-10);
}

TEST_F(commands, tomography_channel_random_and_replay) {
    models::Rng rng(8);
    Json config{{"channel", channel_to_json(models::random_channel(rng, 2))}, {"records_out", "ch.jsonl"}};
    CommandOutcome out = cmd_tomography_channel(config, options_);
    ASSERT_EQ(out.exit_code, 0) << out.report.dump();
    EXPECT_EQ(out.report["measurement_count"], 29u);
    EXPECT_LE(out.report["errors"]["max"].get<double>(), 1e-8);
    CommandOutcome replay = cmd_tomography_channel(Json{{"n", 2}, {"records_file", "ch.jsonl"}}, options_);
    ASSERT_EQ(replay.exit_code, 0) << replay.report.dump();
    EXPECT_EQ(replay.report["A_hat"], out.report["A_hat"]);
    EXPECT_EQ(replay.report["B_hat"], out.report["B_hat"]);
}

TEST_F(commands, invalid_channel_reports_eigenvalue) {
    Json ch{{"n", 1}, {"A", matrix_to_json(2.0 * Matrix::Identity(2, 2))}, {"B", matrix_to_json(Matrix::Zero(2, 2))}};
    CommandOutcome out = cmd_tomography_channel(Json{{"channel", ch}}, options_);
    EXPECT_EQ(out.exit_code, kExitValidation);
    EXPECT_EQ(out.report["error"]["code"], "invalid_channel");
    EXPECT_NE(out.report["error"]["message"].get<std::string>().find("eigenvalue"), std::string::npos);
}

TEST_F(commands, oracle_compare_passes_and_flags_truncation) {
    Json squeezed = Json::parse(R"({"modes": 1, "dim": 64, "gates": [
        {"op": "squeeze", "mode": 0, "r": 0.5, "phi": 0.3},
        {"op": "displace", "mode": 0, "re": 0.6, "im": -0.4}]})");
    Json bs = Json::parse(R"({"modes": 2, "dim": 24, "input": {"kind": "thermal", "t": [2.0, 2.5]}, "gates": [
        {"op": "displace", "mode": 0, "re": 0.3, "im": 0.2},
        {"op": "beamsplitter", "modes": [0, 1], "theta": 0.6, "phi": 0.2}]})");
    CommandOutcome out = cmd_oracle_compare(Json{{"scripts", {squeezed, bs}}}, options_);
    ASSERT_EQ(out.exit_code, 0) << out.report.dump();
    EXPECT_EQ(out.report["passed"], 2u);

    Json big = Json::parse(R"({"modes": 1, "dim": 20, "gates": [{"op": "displace", "mode": 0, "re": 2.0, "im": 0.0}]})");
    out = cmd_oracle_compare(Json{{"script", big}}, options_);
    EXPECT_EQ(out.exit_code, kExitNumerical);
    EXPECT_EQ(out.report["status"], "fail");
    EXPECT_EQ(out.report["comparisons"][0]["failure_cause"], "truncation");
    EXPECT_FALSE(out.report["comparisons"][0]["pass"].get<bool>());
}
