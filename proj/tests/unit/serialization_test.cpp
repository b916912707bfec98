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

#include <filesystem>
#include <functional>

#include <fmt/format.h>
#include <gtest/gtest.h>

#include "gausscount/error.hpp"
#include "gausscount/serialization.hpp"
#include "random_models.hpp"

using namespace gausscount;

namespace {

ErrorCode code_of(const std::function<void()> &fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::InvalidArgument;
}

std::string message_of(const std::function<void()> &fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.what();
    }
    return "";
}

std::filesystem::path temp_file(const char *name) {
    return std::filesystem::temp_directory_path() / fmt::format("gausscount_{}_{}", ::getpid(), name);
}

}  // namespace

TEST(serialization, state_round_trip_is_bit_exact) {
    models::Rng rng(3);
    for (std::size_t n = 1; n <= 3; ++n) {
        GaussianState rho = models::random_state(rng, n);
        Json j = Json::parse(state_to_json(rho).dump());
        GaussianState back = state_from_json(j);
        EXPECT_EQ(back.l(), rho.l());
        EXPECT_EQ(back.m(), rho.m());
        EXPECT_EQ(back.covariance(), rho.covariance());
        EXPECT_EQ(j["ordering"], "pq-blocks");
    }
}

TEST(serialization, state_schema_errors_name_the_field) {
    Json j = state_to_json(GaussianState::vacuum(2));
    Json bad = j;
    bad["S"][1][0] = "x";
    EXPECT_EQ(code_of([&] { state_from_json(bad); }), ErrorCode::Schema);
    EXPECT_NE(message_of([&] { state_from_json(bad); }).find("state.S[1][0]"), std::string::npos);

    bad = j;
    bad.erase("l");
    EXPECT_NE(message_of([&] { state_from_json(bad); }).find("state.l: missing"), std::string::npos);

    bad = j;
    bad["m"] = {0.0};
    EXPECT_NE(message_of([&] { state_from_json(bad); }).find("state.m: expected 2 entries"), std::string::npos);

    bad = j;
    bad["ordering"] = "interleaved";
    EXPECT_EQ(code_of([&] { state_from_json(bad); }), ErrorCode::Schema);

    bad = j;
    bad["n"] = -1;
    EXPECT_EQ(code_of([&] { state_from_json(bad); }), ErrorCode::Schema);

    bad = j;
    bad["S"][0][0] = 0.1;
    EXPECT_EQ(code_of([&] { state_from_json(bad); }), ErrorCode::InvalidCovariance);
}

TEST(serialization, channel_round_trip_and_validation) {
    models::Rng rng(5);
    GaussianChannel k = models::random_channel(rng, 2);
    GaussianChannel back = channel_from_json(Json::parse(channel_to_json(k).dump()));
    EXPECT_EQ(back.a(), k.a());
    EXPECT_EQ(back.b(), k.b());

    Json bad = channel_to_json(k);
    bad["B"] = matrix_to_json(Matrix::Zero(4, 4));
    bad["A"] = matrix_to_json(2.0 * Matrix::Identity(4, 4));
    EXPECT_EQ(code_of([&] { channel_from_json(bad); }), ErrorCode::InvalidChannel);
}

TEST(serialization, descriptors_and_records_round_trip) {
    for (std::size_t n = 1; n <= 3; ++n) {
        for (const auto &d : plan_state_tomography(n).items) {
            MeasurementRecord r{d, 1.0 / 3.0, std::nullopt};
            Json j = Json::parse(record_to_json(r).dump());
            EXPECT_TRUE(j["ensemble_size"].is_null());
            MeasurementRecord back = record_from_json(j);
            EXPECT_EQ(back.descriptor.key(), d.key());
            EXPECT_EQ(back.value, r.value);
            EXPECT_FALSE(back.ensemble_size.has_value());
        }
    }
    MeasurementRecord noisy{GateDescriptor::gp(0), 2.5, 1000000};
    Json j = record_to_json(noisy, 3);
    EXPECT_EQ(j["probe"], 3);
    EXPECT_EQ(record_from_json(j).ensemble_size.value(), 1000000u);
}

TEST(serialization, record_schema_errors) {
    Json j = record_to_json({GateDescriptor::gsp2(0, 1, UnitaryLabel::K, 1, 3), 1.0, std::nullopt});
    Json bad = j;
    bad["schema"] = "v2";
    EXPECT_EQ(code_of([&] { record_from_json(bad); }), ErrorCode::Schema);
    bad = j;
    bad["descriptor"]["U"] = "Z";
    EXPECT_NE(message_of([&] { record_from_json(bad); }).find("record.descriptor.U"), std::string::npos);
    bad = j;
    bad["descriptor"]["kind"] = "Gx";
    EXPECT_EQ(code_of([&] { record_from_json(bad); }), ErrorCode::Schema);
    bad = j;
    bad["descriptor"]["modes"] = {0};
    EXPECT_EQ(code_of([&] { record_from_json(bad); }), ErrorCode::Schema);
    bad = j;
    bad["ensemble_size"] = 0;
    EXPECT_EQ(code_of([&] { record_from_json(bad); }), ErrorCode::Schema);
}

TEST(serialization, script_round_trip) {
    Json j = Json::parse(R"({
        "modes": 2, "dim": 24,
        "input": {"kind": "thermal", "t": [1.5, 2.0]},
        "gates": [
            {"op": "displace", "mode": 0, "re": 0.3, "im": -0.2},
            {"op": "squeeze", "mode": 1, "r": 0.2, "phi": 0.4},
            {"op": "rotate", "mode": 0, "theta": 0.7},
            {"op": "beamsplitter", "modes": [1, 0], "theta": 0.5, "phi": 0.1}
        ]})");
    fock::GateScript s = script_from_json(j);
    EXPECT_EQ(s.modes, 2u);
    EXPECT_EQ(s.dim, 24u);
    EXPECT_EQ(s.gates.size(), 4u);
    EXPECT_EQ(script_to_json(script_from_json(script_to_json(s))), script_to_json(s));

    Json bad = j;
    bad["gates"][2]["op"] = "twist";
    EXPECT_NE(message_of([&] { script_from_json(bad); }).find("script.gates[2].op"), std::string::npos);
    bad = j;
    bad["input"]["t"] = {1.0};
    EXPECT_EQ(code_of([&] { script_from_json(bad); }), ErrorCode::Schema);
    bad = j;
    bad["gates"][0]["mode"] = 5;
    EXPECT_NE(code_of([&] { script_from_json(bad); }), ErrorCode::Schema);
}

TEST(serialization, files_and_hash) {
    auto path = temp_file("lines.jsonl");
    write_text_file(path, "{\"a\":1}\n\n{\"a\":2}\n");
    auto lines = read_jsonl_file(path);
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_EQ(lines[1]["a"], 2);
    write_text_file(path, "{\"a\":1}\n{oops\n");
    EXPECT_NE(message_of([&] { read_jsonl_file(path); }).find(":2:"), std::string::npos);
    std::filesystem::remove(path);
    EXPECT_EQ(code_of([&] { read_json_file(temp_file("missing.json")); }), ErrorCode::Io);
    EXPECT_EQ(code_of([&] { read_jsonl_file(temp_file("missing.jsonl")); }), ErrorCode::Io);

    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}
