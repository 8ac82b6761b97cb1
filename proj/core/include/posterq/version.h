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

#ifndef POSTERQ_VERSION_H_
#define POSTERQ_VERSION_H_

namespace posterq {

inline constexpr const char* kVersion = "0.1.0";

// Version of the merged report key schema.
inline constexpr int kReportSchemaVersion = 1;

}  // namespace posterq

#endif  // POSTERQ_VERSION_H_
