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

#ifndef GAUSSCOUNT_SERIALIZATION_HPP
#define GAUSSCOUNT_SERIALIZATION_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "gausscount/channel.hpp"
#include "gausscount/fock_oracle.hpp"
#include "gausscount/gaussian_state.hpp"
#include "gausscount/tomography.hpp"

namespace gausscount {

using Json = nlohmann::json;

inline constexpr const char *kSchemaVersion = "v1";

/// Schema errors name the offending field, e.g. "state.S[1][0]: expected a number".
double number_at(const Json &j, const std::string &path);
std::size_t index_at(const Json &j, const std::string &path);
const Json &field(const Json &obj, const char *key, const std::string &path);

Json vector_to_json(const Vector &v);
Vector vector_from_json(const Json &j, std::size_t size, const std::string &path);
/// Row-major array of arrays.
Json matrix_to_json(const Matrix &m);
Matrix matrix_from_json(const Json &j, std::size_t rows, std::size_t cols, const std::string &path);

/// {"n", "l", "m", "S", "ordering": "pq-blocks"}
Json state_to_json(const GaussianState &rho);
GaussianState state_from_json(const Json &j, const std::string &path = "state");

/// {"n", "A", "B"}
Json channel_to_json(const GaussianChannel &k);
GaussianChannel channel_from_json(const Json &j, const std::string &path = "channel");

Json descriptor_to_json(const GateDescriptor &d);
GateDescriptor descriptor_from_json(const Json &j, const std::string &path = "descriptor");

/// {"schema": "v1", "descriptor", "value", "ensemble_size" (null when exact), "probe"?}
Json record_to_json(const MeasurementRecord &r, std::optional<std::size_t> probe = std::nullopt);
MeasurementRecord record_from_json(const Json &j, const std::string &path = "record");

/// {"modes", "dim", "input": {"kind": "vacuum" | "thermal", "t": [...]}, "gates": [...]}
fock::GateScript script_from_json(const Json &j, const std::string &path = "script");
Json script_to_json(const fock::GateScript &s);

/// Io errors for unreadable files, Schema errors for malformed JSON.
Json read_json_file(const std::filesystem::path &path);
std::vector<Json> read_jsonl_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &text);

/// FNV-1a 64 of the text, as 16 hex digits.
std::string fnv1a_hex(const std::string &text);

}  // namespace gausscount

#endif
