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

#ifndef GRIDLOC_ERROR_H_
#define GRIDLOC_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace gridloc {

// Broad failure classes. The CLI maps these onto exit codes, and the sweep
// uses them to decide between "record and continue" and "abort".
enum class ErrorCode {
  kConfig,             // invalid grid/sweep/backend configuration
  kInvalidBox,         // degenerate or non-finite box coordinates
  kIo,                 // missing or unreadable/unwritable file
  kSchema,             // malformed annotation / record / manifest content
  kReference,          // dangling id reference
  kDimensionMismatch,  // decoded image disagrees with the index
  kSampling,           // subset request cannot be satisfied
  kCacheMiss,          // replay backend has no response for a digest
  kAuth,               // credentials rejected (never retried)
  kTransient,          // network / 429 / 5xx (retryable)
  kPermanent,          // other non-retryable backend failure
  kRetriesExhausted,   // transient failures outlived the retry budget
  kUndefined,          // arithmetic on an undefined quantity
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// True for failures a model query may raise without aborting a sweep.
bool IsBackendFailure(ErrorCode code);

}  // namespace gridloc

#endif  // GRIDLOC_ERROR_H_
