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

#include "gausscount/error.hpp"

namespace gausscount {

const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
            return "invalid_argument";
        case ErrorCode::InvalidDimension:
            return "invalid_dimension";
        case ErrorCode::InvalidCovariance:
            return "invalid_covariance";
        case ErrorCode::InvalidUnitary:
            return "invalid_unitary";
        case ErrorCode::InvalidChannel:
            return "invalid_channel";
        case ErrorCode::SpectralPairing:
            return "spectral_pairing";
        case ErrorCode::TruncationRisk:
            return "truncation_risk";
        case ErrorCode::MissingRecords:
            return "missing_records";
        case ErrorCode::Schema:
            return "schema";
        case ErrorCode::Io:
            return "io";
        case ErrorCode::Numerical:
            return "numerical";
    }
    return "unknown";
}

}  // namespace gausscount
