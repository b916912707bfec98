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

#include "gausscount/gausscount.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "gausscount/channel.hpp"
#include "gausscount/commands.hpp"
#include "gausscount/counting.hpp"
#include "gausscount/error.hpp"
#include "gausscount/serialization.hpp"
#include "gausscount/tomography.hpp"

struct gc_state {
    gausscount::GaussianState value;
};

struct gc_channel {
    gausscount::GaussianChannel value;
};

namespace {

using namespace gausscount;

thread_local std::string last_error;

gc_status status_of(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
            return GC_INVALID_ARGUMENT;
        case ErrorCode::InvalidDimension:
            return GC_DIMENSION;
        case ErrorCode::InvalidCovariance:
            return GC_INVALID_COVARIANCE;
        case ErrorCode::InvalidUnitary:
            return GC_INVALID_UNITARY;
        case ErrorCode::InvalidChannel:
            return GC_INVALID_CHANNEL;
        case ErrorCode::SpectralPairing:
            return GC_SPECTRAL_PAIRING;
        case ErrorCode::TruncationRisk:
            return GC_TRUNCATION;
        case ErrorCode::MissingRecords:
            return GC_MISSING_RECORDS;
        case ErrorCode::Schema:
            return GC_SCHEMA;
        case ErrorCode::Io:
            return GC_IO;
        case ErrorCode::Numerical:
            return GC_NUMERICAL;
    }
    return GC_INTERNAL;
}

template <class F>
gc_status guard(F &&fn) {
    try {
        fn();
        last_error.clear();
        return GC_OK;
    } catch (const Error &e) {
        last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc &) {
        last_error = "out of memory";
        return GC_INTERNAL;
    } catch (const std::exception &e) {
        last_error = e.what();
        return GC_INTERNAL;
    }
}

void require(bool ok, const char *what) {
    if (!ok) {
        throw Error(ErrorCode::InvalidArgument, what);
    }
}

Vector vec(const double *p, std::size_t n) {
    require(p != nullptr || n == 0, "null vector argument");
    return Eigen::Map<const Vector>(p, static_cast<Eigen::Index>(n));
}

Matrix mat(const double *p, std::size_t rows, std::size_t cols) {
    require(p != nullptr, "null matrix argument");
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    return Eigen::Map<const RowMajor>(p, static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
}

void put(double *out, const Matrix &m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out[r * m.cols() + c] = m(r, c);
        }
    }
}

char *dup(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void emit(gc_state **out, GaussianState value) {
    require(out != nullptr, "null output handle");
    *out = new gc_state{std::move(value)};
}

const GaussianState &get(const gc_state *s) {
    require(s != nullptr, "null state handle");
    return s->value;
}

template <class F>
gc_status scalar(const gc_state *state, double *out, F &&fn) {
    return guard([&] {
        require(out != nullptr, "null output");
        *out = fn(get(state));
    });
}

}  // namespace

extern "C" {

const char *gc_version(void) {
    return GAUSSCOUNT_VERSION;
}

const char *gc_last_error(void) {
    return last_error.c_str();
}

void gc_string_free(char *s) {
    std::free(s);
}

gc_status gc_state_create(size_t n, const double *l, const double *m, const double *s, gc_state **out) {
    return guard([&] {
        require(n > 0, "n must be positive");
        emit(out, GaussianState(vec(l, n), vec(m, n), mat(s, 2 * n, 2 * n)));
    });
}

gc_status gc_state_vacuum(size_t n, gc_state **out) {
    return guard([&] {
        require(n > 0, "n must be positive");
        emit(out, GaussianState::vacuum(n));
    });
}

gc_status gc_state_coherent(size_t n, const double *x, const double *y, gc_state **out) {
    return guard([&] {
        require(n > 0, "n must be positive");
        emit(out, GaussianState::coherent(Displacement(vec(x, n), vec(y, n))));
    });
}

gc_status gc_state_thermal(size_t n, const double *t, gc_state **out) {
    return guard([&] {
        require(n > 0, "n must be positive");
        emit(out, GaussianState::thermal(vec(t, n)));
    });
}

gc_status gc_state_from_json(const char *json, gc_state **out) {
    return guard([&] {
        require(json != nullptr, "null json");
        Json j;
        try {
            j = Json::parse(json);
        } catch (const Json::parse_error &e) {
            throw Error(ErrorCode::Schema, std::string("malformed JSON: ") + e.what());
        }
        emit(out, state_from_json(j));
    });
}

gc_status gc_state_to_json(const gc_state *state, char **out) {
    return guard([&] {
        require(out != nullptr, "null output");
        *out = dup(state_to_json(get(state)).dump());
    });
}

void gc_state_destroy(gc_state *state) {
    delete state;
}

size_t gc_state_modes(const gc_state *state) {
    return state == nullptr ? 0 : state->value.modes();
}

gc_status gc_state_get(const gc_state *state, double *l, double *m, double *s) {
    return guard([&] {
        const GaussianState &rho = get(state);
        if (l != nullptr) {
            put(l, rho.l());
        }
        if (m != nullptr) {
            put(m, rho.m());
        }
        if (s != nullptr) {
            put(s, rho.covariance());
        }
    });
}

gc_status gc_state_displace(const gc_state *state, const double *x, const double *y, gc_state **out) {
    return guard([&] {
        const GaussianState &rho = get(state);
        std::size_t n = rho.modes();
        emit(out, displace(rho, Displacement(vec(x, n), vec(y, n))));
    });
}

gc_status gc_state_conjugate(const gc_state *state, const double *l_matrix, gc_state **out) {
    return guard([&] {
        const GaussianState &rho = get(state);
        std::size_t n = rho.modes();
        emit(out, conjugate(rho, SymplecticMatrix(mat(l_matrix, 2 * n, 2 * n))));
    });
}

gc_status gc_state_overlap(const gc_state *a, const gc_state *b, double *out) {
    return guard([&] {
        require(out != nullptr, "null output");
        *out = overlap(get(a), get(b));
    });
}

gc_status gc_total_pgf(const gc_state *state, double x, double *out) {
    return scalar(state, out, [x](const GaussianState &rho) { return total_pgf(rho, x); });
}

gc_status gc_mean_number(const gc_state *state, double *out) {
    return scalar(state, out, [](const GaussianState &rho) { return mean_N(rho); });
}

gc_status gc_var_number(const gc_state *state, double *out) {
    return scalar(state, out, [](const GaussianState &rho) { return var_N(rho); });
}

gc_status gc_prob_zero(const gc_state *state, double *out) {
    return scalar(state, out, [](const GaussianState &rho) { return prob_zero(rho); });
}

gc_status gc_pmf(const gc_state *state, int kmax, double *out) {
    return guard([&] {
        require(out != nullptr, "null output");
        require(kmax >= 0, "kmax must be non-negative");
        std::vector<double> p = pmf(get(state), kmax);
        std::copy(p.begin(), p.end(), out);
    });
}

size_t gc_state_plan_size(size_t n) {
    return n * (2 * n + 3);
}

size_t gc_channel_measurement_count(size_t n) {
    return channel_measurement_count(n);
}

gc_status gc_reconstruct_state_exact(const gc_state *truth, gc_state **estimate) {
    return guard([&] {
        const GaussianState &rho = get(truth);
        auto records = measure(rho, plan_state_tomography(rho.modes()), Backend::exact());
        emit(estimate, reconstruct_state(records, rho.modes()).state);
    });
}

gc_status gc_reconstruct_state_records(const char *records_jsonl, size_t n, gc_state **estimate, int *valid) {
    return guard([&] {
        require(records_jsonl != nullptr, "null records");
        require(n > 0, "n must be positive");
        std::vector<MeasurementRecord> records;
        std::istringstream in(records_jsonl);
        std::string line;
        std::size_t k = 0;
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) {
                continue;
            }
            std::string path = "records[" + std::to_string(k++) + "]";
            Json j;
            try {
                j = Json::parse(line);
            } catch (const Json::parse_error &e) {
                throw Error(ErrorCode::Schema, path + ": malformed JSON (" + e.what() + ")");
            }
            records.push_back(record_from_json(j, path));
        }
        ReconstructionResult result = reconstruct_state(records, n);
        if (valid != nullptr) {
            *valid = result.valid ? 1 : 0;
        }
        emit(estimate, result.state);
    });
}

gc_status gc_channel_create(size_t n, const double *a, const double *b, gc_channel **out) {
    return guard([&] {
        require(n > 0, "n must be positive");
        require(out != nullptr, "null output handle");
        *out = new gc_channel{GaussianChannel(mat(a, 2 * n, 2 * n), mat(b, 2 * n, 2 * n))};
    });
}

void gc_channel_destroy(gc_channel *channel) {
    delete channel;
}

gc_status gc_channel_apply(const gc_channel *channel, const gc_state *state, gc_state **out) {
    return guard([&] {
        require(channel != nullptr, "null channel handle");
        emit(out, apply(channel->value, get(state)));
    });
}

gc_status gc_run_command(const char *command, const char *config_json, const char *base_dir, uint64_t seed,
                         int has_seed, char **report_json, int *exit_code) {
    std::string message;
    gc_status status = guard([&] {
        require(command != nullptr && config_json != nullptr, "null command or config");
        require(report_json != nullptr && exit_code != nullptr, "null output");
        CommandOptions options;
        if (base_dir != nullptr) {
            options.base_dir = base_dir;
        }
        if (has_seed) {
            options.seed = seed;
        }
        CommandOutcome outcome = run_command_text(command, config_json, options);
        *report_json = dup(report_text(outcome.report));
        *exit_code = outcome.exit_code;
        if (outcome.report.contains("error")) {
            message = outcome.report["error"]["message"].get<std::string>();
        }
    });
    if (status == GC_OK) {
        last_error = message;
    }
    return status;
}

}  // extern "C"
