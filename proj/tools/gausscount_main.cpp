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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "gausscount/gausscount.h"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 4;

bool read_file(const std::filesystem::path &path, std::string &out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return false;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    out = buf.str();
    return static_cast<bool>(in) || in.eof();
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Photon-counting statistics and tomography of Gaussian states"};
    app.set_version_flag("--version", std::string(gc_version()));
    app.require_subcommand(1, 1);

    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;

    const char *commands[][2] = {
        {"pgf", "Generating function, moments, pmf and divisibility of a state"},
        {"tomo-state", "Simulate or replay state tomography"},
        {"tomo-channel", "Simulate or replay channel tomography"},
        {"oracle-compare", "Check the analytic pmf against a truncated Fock simulation"},
    };
    CLI::Option *seed_opts[4];
    for (int i = 0; i < 4; ++i) {
        CLI::App *sub = app.add_subcommand(commands[i][0], commands[i][1]);
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--out", out_path, "Write the report here instead of stdout");
        seed_opts[i] = sub->add_option("--seed", seed, "Override the backend seed");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    CLI::App *sub = app.get_subcommands().front();
    bool has_seed = false;
    for (auto *opt : seed_opts) {
        has_seed = has_seed || opt->count() > 0;
    }

    std::string config_text;
    if (!read_file(config_path, config_text)) {
        std::cerr << "gausscount: cannot read config " << config_path << "\n";
        return kExitIo;
    }
    std::string base_dir = std::filesystem::absolute(config_path).parent_path().string();

    char *report = nullptr;
    int exit_code = 0;
    gc_status status = gc_run_command(sub->get_name().c_str(), config_text.c_str(), base_dir.c_str(), seed,
                                      has_seed ? 1 : 0, &report, &exit_code);
    if (status != GC_OK) {
        std::cerr << "gausscount: " << gc_last_error() << "\n";
        return kExitValidation;
    }
    if (exit_code != 0 && *gc_last_error() != '\0') {
        std::cerr << "gausscount: " << gc_last_error() << "\n";
    }

    if (out_path.empty()) {
        std::cout << report;
        std::cout.flush();
    } else {
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        out << report;
        out.close();
        if (!out) {
            gc_string_free(report);
            std::cerr << "gausscount: cannot write " << out_path << "\n";
            return kExitIo;
        }
    }
    gc_string_free(report);
    return exit_code;
}
