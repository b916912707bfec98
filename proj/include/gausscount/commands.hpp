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

#ifndef GAUSSCOUNT_COMMANDS_HPP
#define GAUSSCOUNT_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "gausscount/error.hpp"
#include "gausscount/serialization.hpp"

namespace gausscount {

inline constexpr const char *kToolVersion = GAUSSCOUNT_VERSION;

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

int exit_code_for(ErrorCode code);

struct CommandOptions {
    /// Relative paths in the config resolve against this directory.
    std::filesystem::path base_dir = ".";
    /// Replaces the backend seed of the config when set.
    std::optional<std::uint64_t> seed;
};

struct CommandOutcome {
    Json report;
    int exit_code = kExitOk;
};

CommandOutcome cmd_pgf(const Json &config, const CommandOptions &options);
CommandOutcome cmd_tomography_state(const Json &config, const CommandOptions &options);
CommandOutcome cmd_tomography_channel(const Json &config, const CommandOptions &options);
CommandOutcome cmd_oracle_compare(const Json &config, const CommandOptions &options);

/// Dispatches on "pgf", "tomo-state", "tomo-channel" or "oracle-compare".
/// Failures never throw; they come back as an error report with its exit code.
CommandOutcome run_command(const std::string &command, const Json &config, const CommandOptions &options);

/// Parses config_text first; malformed JSON yields a schema error report.
CommandOutcome run_command_text(const std::string &command, const std::string &config_text,
                                const CommandOptions &options);

/// Stable text form of a report: two-space indent, sorted keys, trailing newline.
std::string report_text(const Json &report);

}  // namespace gausscount

#endif
