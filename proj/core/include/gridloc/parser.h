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

#ifndef GRIDLOC_PARSER_H_
#define GRIDLOC_PARSER_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "gridloc/box.h"

namespace gridloc {

enum class ParseFailure {
  kNoTupleFound,
  kMalformedNumbers,
  kDegenerateBox,
  kOutOfRange,
};

std::string_view ParseFailureName(ParseFailure failure);
std::optional<ParseFailure> ParseFailureFromName(std::string_view name);

// Whether the tuple was read as pixels or as fractions of the image size.
enum class CoordinateMode { kPixels, kFractions };

std::string_view CoordinateModeName(CoordinateMode mode);

struct RawTuple {
  std::array<double, 4> values{};
  // Byte range [begin, end) of the bracketed group in the source text.
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct ParserOptions {
  // Also accept keyed forms such as "x1=10, y1=20, x2=30, y2=40".
  bool extended_grammar = false;
};

// Finds the last bracketed ([...] or (...)) group holding exactly four
// numeric tokens separated by commas and/or whitespace. Groups with other
// content are skipped. Fails with kMalformedNumbers when the only
// four-token candidates contain numbers that overflow or are otherwise
// unreadable, kNoTupleFound otherwise.
std::variant<RawTuple, ParseFailure> ExtractTuple(std::string_view text,
                                                  const ParserOptions& options = {});

struct NormalizedBox {
  BBox box;
  CoordinateMode mode;
};

// If every value lies in [0, 1] the tuple is taken as fractions of
// (width, height); otherwise as pixels. Corners are reordered, then clamped
// into [0, width] x [0, height].
std::variant<NormalizedBox, ParseFailure> Normalize(const std::array<double, 4>& values,
                                                    int width, int height);

struct ParsedPrediction {
  BBox box;
  CoordinateMode mode;
  std::size_t span_begin;
  std::size_t span_end;
};

using ParseOutcome = std::variant<ParsedPrediction, ParseFailure>;

// ExtractTuple followed by Normalize.
ParseOutcome ParsePrediction(std::string_view text, int width, int height,
                             const ParserOptions& options = {});

}  // namespace gridloc

#endif  // GRIDLOC_PARSER_H_
