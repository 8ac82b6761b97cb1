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

#include "posterq/error.h"

namespace posterq {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kNotFinite: return "NotFinite";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kDegenerateSeries: return "DegenerateSeries";
    case ErrorCode::kEmptySeries: return "EmptySeries";
    case ErrorCode::kUndefined: return "Undefined";
    case ErrorCode::kNoPairableUnits: return "NoPairableUnits";
    case ErrorCode::kEmptyOriginal: return "EmptyOriginal";
    case ErrorCode::kMissingPrediction: return "MissingPrediction";
    case ErrorCode::kMissingGroundTruth: return "MissingGroundTruth";
    case ErrorCode::kEmptyPopulation: return "EmptyPopulation";
    case ErrorCode::kQuotaExceedsPopulation: return "QuotaExceedsPopulation";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kNoRecords: return "NoRecords";
    case ErrorCode::kGeneratorError: return "GeneratorError";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kUnknownTag: return "UnknownTag";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace posterq
