// Copyright 2026 The gridloc Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gridloc/error.h"

#include <string>

namespace gridloc {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig:
      return "config";
    case ErrorCode::kInvalidBox:
      return "invalid-box";
    case ErrorCode::kIo:
      return "io";
    case ErrorCode::kSchema:
      return "schema";
    case ErrorCode::kReference:
      return "reference";
    case ErrorCode::kDimensionMismatch:
      return "dimension-mismatch";
    case ErrorCode::kSampling:
      return "sampling";
    case ErrorCode::kCacheMiss:
      return "cache-miss";
    case ErrorCode::kAuth:
      return "auth";
    case ErrorCode::kTransient:
      return "transient";
    case ErrorCode::kPermanent:
      return "permanent";
    case ErrorCode::kRetriesExhausted:
      return "retries-exhausted";
    case ErrorCode::kUndefined:
      return "undefined";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

bool IsBackendFailure(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCacheMiss:
    case ErrorCode::kAuth:
    case ErrorCode::kTransient:
    case ErrorCode::kPermanent:
    case ErrorCode::kRetriesExhausted:
      return true;
    default:
      return false;
  }
}

}  // namespace gridloc
