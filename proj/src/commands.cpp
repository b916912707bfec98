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

#include "gausscount/commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <fmt/format.h>

#include "gausscount/channel.hpp"
#include "gausscount/counting.hpp"
#include "gausscount/error.hpp"
#include "gausscount/fock_oracle.hpp"
#include "gausscount/tomography.hpp"

namespace gausscount {

namespace {

struct Run {
    const Json &config;
    const CommandOptions &options;
    Json report;
    bool pass = true;
};

[[noreturn]] void schema_error(const std::string &path, const std::string &what) {
    throw Error(ErrorCode::Schema, fmt::format("{}: {}", path, what));
}

std::filesystem::path resolve(const CommandOptions &options, const Json &j, const std::string &path) {
    if (!j.is_string()) {
        schema_error(path, "expected a file path");
    }
    std::filesystem::path p(j.get<std::string>());
    return p.is_absolute() ? p : options.base_dir / p;
}

bool optional_bool(const Json &config, const char *key, bool fallback) {
    if (!config.contains(key)) {
        return fallback;
    }
    if (!config[key].is_boolean()) {
        schema_error(fmt::format("config.{}", key), "expected true or false");
    }
    return config[key].get<bool>();
}

double optional_positive(const Json &config, const char *key, double fallback) {
    if (!config.contains(key)) {
        return fallback;
    }
    double v = number_at(config[key], fmt::format("config.{}", key));
    if (v <= 0) {
        schema_error(fmt::format("config.{}", key), "expected a positive number");
    }
    return v;
}

std::size_t optional_index_in(const Json &config, const char *key, std::size_t fallback, std::size_t lo,
                              std::size_t hi) {
    if (!config.contains(key)) {
        return fallback;
    }
    std::string path = fmt::format("config.{}", key);
    std::size_t v = index_at(config[key], path);
    if (v < lo || v > hi) {
        schema_error(path, fmt::format("expected an integer in [{}, {}]", lo, hi));
    }
    return v;
}

std::vector<double> x_grid(const Json &config, std::vector<double> fallback) {
    if (!config.contains("x_grid")) {
        return fallback;
    }
    const Json &grid = config["x_grid"];
    if (!grid.is_array() || grid.empty()) {
        schema_error("config.x_grid", "expected a non-empty array");
    }
    std::vector<double> xs;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::string path = fmt::format("config.x_grid[{}]", i);
        double x = number_at(grid[i], path);
        if (x < 0.0 || x > 1.0) {
            schema_error(path, "expected a value in [0, 1]");
        }
        xs.push_back(x);
    }
    return xs;
}

std::size_t count_present(const Json &config, std::initializer_list<const char *> keys) {
    std::size_t k = 0;
    for (const char *key : keys) {
        k += config.contains(key) ? 1 : 0;
    }
    return k;
}

/// The state given by exactly one of "state", "state_file" or "script", or
/// nullopt when none is present and optional is true.
std::optional<GaussianState> state_input(const Json &config, const CommandOptions &options, bool optional) {
    std::size_t given = count_present(config, {"state", "state_file", "script"});
    if (given > 1) {
        schema_error("config", "give only one of state, state_file, script");
    }
    if (given == 0) {
        if (optional) {
            return std::nullopt;
        }
        schema_error("config.state", "missing required field (or state_file, script)");
    }
    if (config.contains("state")) {
        return state_from_json(config["state"], "state");
    }
    if (config.contains("state_file")) {
        auto path = resolve(options, config["state_file"], "config.state_file");
        return state_from_json(read_json_file(path), path.filename().string());
    }
    return fock::run_analytic(script_from_json(config["script"], "script"));
}

std::optional<GaussianChannel> channel_input(const Json &config, const CommandOptions &options) {
    std::size_t given = count_present(config, {"channel", "channel_file"});
    if (given > 1) {
        schema_error("config", "give only one of channel, channel_file");
    }
    if (config.contains("channel")) {
        return channel_from_json(config["channel"], "channel");
    }
    if (config.contains("channel_file")) {
        auto path = resolve(options, config["channel_file"], "config.channel_file");
        return channel_from_json(read_json_file(path), path.filename().string());
    }
    return std::nullopt;
}

Backend backend_input(const Json &config, const CommandOptions &options) {
    if (!config.contains("backend")) {
        Backend b = Backend::exact();
        b.seed = options.seed.value_or(0);
        return b;
    }
    const Json &j = config["backend"];
    std::string kind_path = "config.backend.kind";
    const Json &kind = field(j, "kind", "config.backend");
    if (!kind.is_string()) {
        schema_error(kind_path, "expected a string");
    }
    if (kind == "exact") {
        Backend b = Backend::exact();
        b.seed = options.seed.value_or(0);
        return b;
    }
    if (kind != "noisy") {
        schema_error(kind_path, "expected \"exact\" or \"noisy\"");
    }
    std::size_t m = index_at(field(j, "M", "config.backend"), "config.backend.M");
    if (m == 0) {
        schema_error("config.backend.M", "expected a positive ensemble size");
    }
    std::uint64_t seed = 0;
    if (options.seed) {
        seed = *options.seed;
    } else {
        seed = index_at(field(j, "seed", "config.backend"), "config.backend.seed");
    }
    return Backend::noisy(m, seed);
}

std::size_t modes_input(const Json &config, const std::optional<std::size_t> &known) {
    if (config.contains("n")) {
        std::size_t n = index_at(config["n"], "config.n");
        if (n == 0) {
            schema_error("config.n", "expected at least one mode");
        }
        if (known && *known != n) {
            schema_error("config.n", fmt::format("disagrees with the {}-mode input", *known));
        }
        return n;
    }
    if (!known) {
        schema_error("config.n", "missing required field (needed when replaying records without a truth input)");
    }
    return *known;
}

std::vector<MeasurementRecord> records_from_lines(const std::vector<Json> &lines, const std::string &name) {
    std::vector<MeasurementRecord> out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        out.push_back(record_from_json(lines[i], fmt::format("{}[{}]", name, i)));
    }
    return out;
}

std::string jsonl(const std::vector<Json> &lines) {
    std::string out;
    for (const auto &line : lines) {
        out += line.dump();
        out += '\n';
    }
    return out;
}

Json doubles(const std::vector<double> &v) {
    return Json(v);
}

double max_of(const std::vector<double> &v) {
    double out = 0.0;
    for (double x : v) {
        out = std::max(out, std::abs(x));
    }
    return out;
}

CommandOutcome guarded(const char *command, const Json &config, const CommandOptions &options,
                       const std::function<void(Run &)> &body, bool require_object = true) {
    Run run{config, options, Json::object()};
    run.report["schema"] = kSchemaVersion;
    run.report["command"] = command;
    run.report["tool_version"] = kToolVersion;
    run.report["rng"] = kRngName;
    run.report["seed"] = options.seed ? Json(*options.seed) : Json(nullptr);
    run.report["config_hash"] = fnv1a_hex(config.dump());
    run.report["config"] = config;
    try {
        if (require_object && !config.is_object()) {
            schema_error("config", "expected an object");
        }
        body(run);
    } catch (const Error &e) {
        run.report["status"] = "error";
        run.report["error"] = Json{{"code", error_code_name(e.code())}, {"message", e.what()}};
        return {run.report, exit_code_for(e.code())};
    } catch (const std::exception &e) {
        run.report["status"] = "error";
        run.report["error"] = Json{{"code", "internal"}, {"message", e.what()}};
        return {run.report, kExitNumerical};
    }
    run.report["status"] = run.pass ? "ok" : "fail";
    return {run.report, run.pass ? kExitOk : kExitNumerical};
}

}  // namespace

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::Io:
            return kExitIo;
        case ErrorCode::Numerical:
        case ErrorCode::TruncationRisk:
            return kExitNumerical;
        default:
            return kExitValidation;
    }
}

CommandOutcome cmd_pgf(const Json &config, const CommandOptions &options) {
    return guarded("pgf", config, options, [](Run &run) {
        const Json &config = run.config;
        GaussianState rho = *state_input(config, run.options, false);
        std::vector<double> xs = x_grid(config, {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0});
        int kmax = static_cast<int>(optional_index_in(config, "kmax", 20, 0, 100000));
        int order = static_cast<int>(optional_index_in(config, "divisibility_order", 20, 1, 1000));

        NumberPGF spectral = spectral_data(rho);
        std::vector<double> g;
        for (double x : xs) {
            g.push_back(total_pgf(spectral, x));
        }
        std::vector<double> p = pmf(rho, kmax);
        DivisibilityReport div = infinite_divisibility_check(spectral, order);

        Json &r = run.report;
        r["state"] = state_to_json(rho);
        r["x"] = doubles(xs);
        r["G"] = doubles(g);
        r["mean"] = mean_N(rho);
        r["var"] = var_N(rho);
        r["p0"] = prob_zero(rho);
        r["kmax"] = kmax;
        r["pmf"] = doubles(p);
        double total = 0.0;
        for (double v : p) {
            total += v;
        }
        r["pmf_sum"] = total;
        r["divisibility"] = Json{{"order", order},
                                 {"divisible_up_to_order", div.divisible_up_to_order},
                                 {"levy_coeffs", doubles(div.levy_coeffs)}};
    });
}

CommandOutcome cmd_tomography_state(const Json &config, const CommandOptions &options) {
    return guarded("tomo-state", config, options, [](Run &run) {
        const Json &config = run.config;
        std::optional<GaussianState> truth = state_input(config, run.options, true);
        std::optional<std::size_t> known;
        if (truth) {
            known = truth->modes();
        }
        std::size_t n = modes_input(config, known);
        MeasurementPlan plan = plan_state_tomography(n);
        double tol = optional_positive(config, "tolerance", 1e-8);
        bool project = optional_bool(config, "project", false);

        std::vector<MeasurementRecord> records;
        if (config.contains("records_file")) {
            if (config.contains("backend")) {
                schema_error("config.backend", "not used when replaying records_file");
            }
            auto path = resolve(run.options, config["records_file"], "config.records_file");
            records = records_from_lines(read_jsonl_file(path), path.filename().string());
            run.report["mode"] = "replay";
        } else {
            if (!truth) {
                schema_error("config.state", "missing required field (or state_file, script, records_file)");
            }
            Backend backend = backend_input(config, run.options);
            records = measure(*truth, plan, backend);
            run.report["mode"] = "simulate";
            run.report["backend"] = backend.ensemble_size
                                        ? Json{{"kind", "noisy"}, {"M", *backend.ensemble_size}, {"seed", backend.seed}}
                                        : Json{{"kind", "exact"}};
            if (backend.ensemble_size) {
                run.report["seed"] = backend.seed;
            }
        }
        RecordIndex(records).require(plan);
        if (records.size() != plan.items.size()) {
            throw Error(ErrorCode::InvalidArgument,
                        fmt::format("expected {} records for {} modes, found {}", plan.items.size(), n, records.size()));
        }
        if (config.contains("records_out")) {
            std::vector<Json> lines;
            for (const auto &rec : records) {
                lines.push_back(record_to_json(rec));
            }
            write_text_file(resolve(run.options, config["records_out"], "config.records_out"), jsonl(lines));
        }

        ReconstructionResult result = reconstruct_state(records, n);
        Json &r = run.report;
        r["n"] = n;
        Json keys = Json::array();
        for (const auto &d : plan.items) {
            keys.push_back(d.key());
        }
        r["plan"] = keys;
        r["measurement_count"] = records.size();
        r["expected_measurement_count"] = n * (2 * n + 3);
        Json recs = Json::array();
        for (const auto &rec : records) {
            recs.push_back(record_to_json(rec));
        }
        r["records"] = recs;
        r["estimate"] = state_to_json(result.state);
        r["valid"] = result.valid;
        r["uncertainty_margin"] = result.uncertainty_margin;
        r["residuals"] = doubles(result.residuals);
        r["residual_max"] = max_of(result.residuals);
        if (project) {
            r["projected"] = state_to_json(
                GaussianState::unvalidated(result.state.l(), result.state.m(), project_to_physical(result.state.covariance())));
        }

        if (truth) {
            Vector dl = (result.state.l() - truth->l()).cwiseAbs();
            Vector dm = (result.state.m() - truth->m()).cwiseAbs();
            Matrix ds = (result.state.covariance() - truth->covariance()).cwiseAbs();
            double max_err = std::max({dl.maxCoeff(), dm.maxCoeff(), ds.maxCoeff()});
            Json errors{{"l", vector_to_json(dl)}, {"m", vector_to_json(dm)}, {"S", matrix_to_json(ds)}, {"max", max_err}};

            bool exact = std::all_of(records.begin(), records.end(),
                                     [](const MeasurementRecord &rec) { return !rec.ensemble_size; });
            if (exact) {
                errors["tolerance"] = tol;
                errors["within_tolerance"] = max_err <= tol;
                run.pass = max_err <= tol;
            } else {
                // Per-record standard deviation sqrt(var_N(G rho G^dag) / M) under the truth.
                std::vector<double> sigma;
                for (const auto &rec : records) {
                    double m = rec.ensemble_size ? static_cast<double>(*rec.ensemble_size) : INFINITY;
                    sigma.push_back(std::sqrt(var_N(rec.descriptor.transformed(*truth)) / m));
                }
                auto sigma_of = [&](const GateDescriptor &d) {
                    for (std::size_t i = 0; i < records.size(); ++i) {
                        if (records[i].descriptor.key() == d.key()) {
                            return sigma[i];
                        }
                    }
                    return 0.0;
                };
                double s0 = sigma_of(GateDescriptor::identity());
                Vector sl(static_cast<Eigen::Index>(n));
                Vector sm(static_cast<Eigen::Index>(n));
                for (std::size_t j = 0; j < n; ++j) {
                    sl(static_cast<Eigen::Index>(j)) = std::hypot(sigma_of(GateDescriptor::gp(j)), s0);
                    sm(static_cast<Eigen::Index>(j)) = std::hypot(sigma_of(GateDescriptor::gq(j)), s0);
                }
                Vector zl = dl.cwiseQuotient(sl);
                Vector zm = dm.cwiseQuotient(sm);
                errors["sigma"] = Json{{"records", doubles(sigma)},
                                       {"l", vector_to_json(sl)},
                                       {"m", vector_to_json(sm)},
                                       {"record_max", max_of(sigma)}};
                errors["z_max"] = std::max(zl.maxCoeff(), zm.maxCoeff());
            }
            r["errors"] = errors;
        }
    });
}

CommandOutcome cmd_tomography_channel(const Json &config, const CommandOptions &options) {
    return guarded("tomo-channel", config, options, [](Run &run) {
        const Json &config = run.config;
        std::optional<GaussianChannel> truth = channel_input(config, run.options);
        std::optional<std::size_t> known;
        if (truth) {
            known = truth->modes();
        }
        std::size_t n = modes_input(config, known);
        double tol = optional_positive(config, "tolerance", 1e-8);

        std::vector<std::vector<MeasurementRecord>> probes;
        if (config.contains("records_file")) {
            if (config.contains("backend")) {
                schema_error("config.backend", "not used when replaying records_file");
            }
            auto path = resolve(run.options, config["records_file"], "config.records_file");
            std::vector<Json> lines = read_jsonl_file(path);
            probes.assign(2 * n, {});
            for (std::size_t i = 0; i < lines.size(); ++i) {
                std::string where = fmt::format("{}[{}]", path.filename().string(), i);
                std::size_t k = index_at(field(lines[i], "probe", where), where + ".probe");
                if (k >= 2 * n) {
                    schema_error(where + ".probe", fmt::format("expected a probe index below {}", 2 * n));
                }
                probes[k].push_back(record_from_json(lines[i], where));
            }
            run.report["mode"] = "replay";
        } else {
            if (!truth) {
                schema_error("config.channel", "missing required field (or channel_file, records_file)");
            }
            Backend backend = backend_input(config, run.options);
            probes = measure_channel(*truth, backend);
            run.report["mode"] = "simulate";
            run.report["backend"] = backend.ensemble_size
                                        ? Json{{"kind", "noisy"}, {"M", *backend.ensemble_size}, {"seed", backend.seed}}
                                        : Json{{"kind", "exact"}};
            if (backend.ensemble_size) {
                run.report["seed"] = backend.seed;
            }
        }
        std::vector<Json> lines;
        for (std::size_t k = 0; k < probes.size(); ++k) {
            for (const auto &rec : probes[k]) {
                lines.push_back(record_to_json(rec, k));
            }
        }
        if (config.contains("records_out")) {
            write_text_file(resolve(run.options, config["records_out"], "config.records_out"), jsonl(lines));
        }

        ChannelEstimate est = reconstruct_channel(probes, n);
        Json &r = run.report;
        r["n"] = n;
        r["measurement_count"] = est.measurement_count;
        r["expected_measurement_count"] = channel_measurement_count(n);
        r["records"] = lines;
        r["A_hat"] = matrix_to_json(est.a_hat);
        r["B_hat"] = matrix_to_json(est.b_hat);
        r["per_row_residuals"] = doubles(est.per_row_residuals);
        r["b_asymmetry"] = est.b_asymmetry;
        r["valid"] = est.valid;
        r["constraint_margin"] = est.constraint_margin;
        run.pass = est.measurement_count == channel_measurement_count(n);

        if (truth) {
            double ea = max_abs(est.a_hat - truth->a());
            double eb = max_abs(est.b_hat - truth->b());
            Json errors{{"A", ea}, {"B", eb}, {"max", std::max(ea, eb)}};
            bool exact = std::all_of(lines.begin(), lines.end(), [](const Json &l) { return l["ensemble_size"].is_null(); });
            if (exact) {
                errors["tolerance"] = tol;
                errors["within_tolerance"] = std::max(ea, eb) <= tol;
                run.pass = run.pass && std::max(ea, eb) <= tol;
            }
            r["errors"] = errors;
        }
    });
}

CommandOutcome cmd_oracle_compare(const Json &config, const CommandOptions &options) {
    return guarded("oracle-compare", config, options, [](Run &run) {
        const Json &config = run.config;
        std::size_t given = count_present(config, {"script", "scripts"});
        if (given != 1) {
            schema_error("config.scripts", "give exactly one of script, scripts");
        }
        std::vector<fock::GateScript> scripts;
        if (config.contains("script")) {
            scripts.push_back(script_from_json(config["script"], "script"));
        } else {
            const Json &list = config["scripts"];
            if (!list.is_array() || list.empty()) {
                schema_error("config.scripts", "expected a non-empty array");
            }
            for (std::size_t i = 0; i < list.size(); ++i) {
                scripts.push_back(script_from_json(list[i], fmt::format("scripts[{}]", i)));
            }
        }
        for (const auto &s : scripts) {
            if (s.modes > 2) {
                throw Error(ErrorCode::InvalidArgument, "oracle comparison supports one- and two-mode scripts");
            }
        }
        std::vector<double> xs = x_grid(config, {0.0, 0.25, 0.5, 0.75, 0.9, 1.0});
        double tol = optional_positive(config, "tolerance", 1e-6);

        Json results = Json::array();
        std::size_t passed = 0;
        for (std::size_t i = 0; i < scripts.size(); ++i) {
            Json item{{"index", i}, {"modes", scripts[i].modes}, {"dim", scripts[i].dim}};
            try {
                fock::OracleComparison c = fock::compare_script(scripts[i], xs, tol);
                item["pass"] = c.pass;
                item["kmax"] = c.kmax;
                item["pmf_max_diff"] = c.pmf_max_diff;
                item["pgf_max_diff"] = c.pgf_max_diff;
                item["mean_diff"] = c.mean_diff;
                item["var_diff"] = c.var_diff;
                item["edge_mass"] = c.edge_mass;
                if (!c.pass) {
                    item["failure_cause"] = "discrepancy";
                }
            } catch (const Error &e) {
                if (e.code() != ErrorCode::TruncationRisk) {
                    throw;
                }
                item["pass"] = false;
                item["failure_cause"] = "truncation";
                item["message"] = e.what();
            }
            passed += item["pass"].get<bool>() ? 1 : 0;
            results.push_back(item);
        }
        run.report["x_grid"] = doubles(xs);
        run.report["tolerance"] = tol;
        run.report["comparisons"] = results;
        run.report["passed"] = passed;
        run.report["total"] = scripts.size();
        run.pass = passed == scripts.size();
    });
}

CommandOutcome run_command(const std::string &command, const Json &config, const CommandOptions &options) {
    if (command == "pgf") {
        return cmd_pgf(config, options);
    }
    if (command == "tomo-state") {
        return cmd_tomography_state(config, options);
    }
    if (command == "tomo-channel") {
        return cmd_tomography_channel(config, options);
    }
    if (command == "oracle-compare") {
        return cmd_oracle_compare(config, options);
    }
    return guarded(command.c_str(), config, options, [&](Run &) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("unknown command \"{}\"", command));
    });
}

CommandOutcome run_command_text(const std::string &command, const std::string &config_text,
                                const CommandOptions &options) {
    Json config;
    try {
        config = Json::parse(config_text);
    } catch (const Json::parse_error &e) {
        std::string message = fmt::format("config: malformed JSON ({})", e.what());
        return guarded(command.c_str(), Json(nullptr), options,
                       [&](Run &) { throw Error(ErrorCode::Schema, message); }, false);
    }
    return run_command(command, config, options);
}

std::string report_text(const Json &report) {
    return report.dump(2) + "\n";
}

}  // namespace gausscount
