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

#ifndef GAUSSCOUNT_ERROR_HPP
#define GAUSSCOUNT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gausscount {

enum class ErrorCode {
    InvalidArgument = 1,
    InvalidDimension,
    InvalidCovariance,
    InvalidUnitary,
    InvalidChannel,
    SpectralPairing,
    TruncationRisk,
    MissingRecords,
    Schema,
    Io,
    Numerical,
};

const char *error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above; the C API
/// maps them one-to-one onto gc_status values.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message) : std::runtime_error(message), code_(code) {
    }
    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

}  // namespace gausscount

#endif
