// Copyright 2026 The posterq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POSTERQ_ERROR_H_
#define POSTERQ_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace posterq {

enum class ErrorCode {
  kOutOfRange,
  kNotFinite,
  kInvalidArgument,
  kLengthMismatch,
  kDegenerateSeries,
  kEmptySeries,
  kUndefined,
  kNoPairableUnits,
  kEmptyOriginal,
  kMissingPrediction,
  kMissingGroundTruth,
  kEmptyPopulation,
  kQuotaExceedsPopulation,
  kZeroVector,
  kNoRecords,
  kGeneratorError,
  kDuplicateId,
  kUnknownTag,
  kSchemaError,
  kIoError,
  kConfigError,
};

std::string_view error_code_name(ErrorCode code);

// All library failures surface as this exception; `code()` identifies the
// failure class so callers can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace posterq

#endif  // POSTERQ_ERROR_H_
