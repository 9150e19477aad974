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

#include "gridloc/parser.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <system_error>
#include <vector>

namespace gridloc {
namespace {

enum class TokenKind { kNumber, kOverflow, kOther };

bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
bool IsOpen(char c) { return c == '[' || c == '('; }
bool IsClose(char c) { return c == ']' || c == ')'; }
char Closer(char open) { return open == '[' ? ']' : ')'; }

// Length of the numeric literal at the start of `s` (sign, digits, optional
// fraction, optional exponent), or 0 if there is none.
std::size_t NumberLength(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t digits = 0;
  while (i < s.size() && IsDigit(s[i])) ++i, ++digits;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && IsDigit(s[i])) ++i, ++digits;
  }
  if (digits == 0) return 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    std::size_t j = i + 1;
    if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
    std::size_t exp_digits = 0;
    while (j < s.size() && IsDigit(s[j])) ++j, ++exp_digits;
    if (exp_digits > 0) i = j;
  }
  return i;
}

TokenKind ReadNumber(std::string_view token, double& value) {
  if (token.empty() || NumberLength(token) != token.size()) return TokenKind::kOther;
  if (token.front() == '+') token.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec == std::errc::result_out_of_range) return TokenKind::kOverflow;
  if (ec != std::errc() || ptr != token.data() + token.size()) return TokenKind::kOther;
  if (!std::isfinite(value)) return TokenKind::kOverflow;
  return TokenKind::kNumber;
}

enum class GroupKind { kTuple, kMalformed, kOther };

GroupKind ReadGroup(std::string_view body, std::array<double, 4>& values) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  bool expect_token = true;
  while (i < body.size()) {
    if (IsSpace(body[i])) {
      ++i;
      continue;
    }
    if (body[i] == ',') {
      if (expect_token) return GroupKind::kOther;  // leading or doubled comma
      expect_token = true;
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < body.size() && !IsSpace(body[j]) && body[j] != ',') ++j;
    tokens.push_back(body.substr(i, j - i));
    if (tokens.size() > 4) return GroupKind::kOther;
    expect_token = false;
    i = j;
  }
  if (tokens.size() != 4 || expect_token) return GroupKind::kOther;
  bool overflow = false;
  for (std::size_t k = 0; k < 4; ++k) {
    switch (ReadNumber(tokens[k], values[k])) {
      case TokenKind::kNumber:
        break;
      case TokenKind::kOverflow:
        overflow = true;
        break;
      case TokenKind::kOther:
        return GroupKind::kOther;
    }
  }
  return overflow ? GroupKind::kMalformed : GroupKind::kTuple;
}

bool StartsWithKey(std::string_view s, std::size_t at, char axis, char index) {
  if (at + 2 > s.size()) return false;
  const char a = s[at];
  if (a != axis && a != axis - ('a' - 'A')) return false;
  if (s[at + 1] != index) return false;
  // Reject keys glued to a preceding identifier ("ax1").
  if (at > 0) {
    const char p = s[at - 1];
    if (std::isalnum(static_cast<unsigned char>(p)) || p == '_') return false;
  }
  return true;
}

// Matches `key [=:] number` at `at`, returning the position after the
// number or npos.
std::size_t MatchKeyed(std::string_view s, std::size_t at, char axis, char index,
                       double& value, bool& overflow) {
  if (!StartsWithKey(s, at, axis, index)) return std::string_view::npos;
  std::size_t i = at + 2;
  while (i < s.size() && IsSpace(s[i])) ++i;
  if (i >= s.size() || (s[i] != '=' && s[i] != ':')) return std::string_view::npos;
  ++i;
  while (i < s.size() && IsSpace(s[i])) ++i;
  const std::size_t len = NumberLength(s.substr(i));
  if (len == 0) return std::string_view::npos;
  const TokenKind kind = ReadNumber(s.substr(i, len), value);
  if (kind == TokenKind::kOther) return std::string_view::npos;
  if (kind == TokenKind::kOverflow) overflow = true;
  return i + len;
}

std::size_t SkipSeparators(std::string_view s, std::size_t i) {
  while (i < s.size() && (IsSpace(s[i]) || s[i] == ',' || s[i] == ';')) ++i;
  return i;
}

struct Candidate {
  GroupKind kind = GroupKind::kOther;
  RawTuple tuple;
};

// Last "x1=.. y1=.. x2=.. y2=.." run in the text.
Candidate LastKeyedTuple(std::string_view s) {
  static constexpr char kKeys[4][2] = {{'x', '1'}, {'y', '1'}, {'x', '2'}, {'y', '2'}};
  Candidate best;
  for (std::size_t start = 0; start < s.size(); ++start) {
    std::size_t i = start;
    RawTuple tuple;
    bool overflow = false;
    bool matched = true;
    for (int k = 0; k < 4; ++k) {
      if (k > 0) i = SkipSeparators(s, i);
      const std::size_t next = MatchKeyed(s, i, kKeys[k][0], kKeys[k][1], tuple.values[k], overflow);
      if (next == std::string_view::npos) {
        matched = false;
        break;
      }
      i = next;
    }
    if (!matched) continue;
    tuple.begin = start;
    tuple.end = i;
    best.kind = overflow ? GroupKind::kMalformed : GroupKind::kTuple;
    best.tuple = tuple;
    start = i - 1;
  }
  return best;
}

}  // namespace

std::string_view ParseFailureName(ParseFailure failure) {
  switch (failure) {
    case ParseFailure::kNoTupleFound:
      return "no-tuple-found";
    case ParseFailure::kMalformedNumbers:
      return "malformed-numbers";
    case ParseFailure::kDegenerateBox:
      return "degenerate-box";
    case ParseFailure::kOutOfRange:
      return "out-of-range";
  }
  return "unknown";
}

std::optional<ParseFailure> ParseFailureFromName(std::string_view name) {
  for (auto f : {ParseFailure::kNoTupleFound, ParseFailure::kMalformedNumbers,
                 ParseFailure::kDegenerateBox, ParseFailure::kOutOfRange}) {
    if (ParseFailureName(f) == name) return f;
  }
  return std::nullopt;
}

std::string_view CoordinateModeName(CoordinateMode mode) {
  return mode == CoordinateMode::kFractions ? "fractions" : "pixels";
}

std::variant<RawTuple, ParseFailure> ExtractTuple(std::string_view text,
                                                  const ParserOptions& options) {
  std::optional<RawTuple> last;
  bool saw_malformed = false;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!IsOpen(text[i])) {
      ++i;
      continue;
    }
    const char closer = Closer(text[i]);
    std::size_t j = i + 1;
    while (j < text.size() && !IsOpen(text[j]) && !IsClose(text[j])) ++j;
    if (j >= text.size() || text[j] != closer) {
      // Unclosed, mismatched, or an inner group opens first; resume there.
      i = j;
      continue;
    }
    std::array<double, 4> values{};
    switch (ReadGroup(text.substr(i + 1, j - i - 1), values)) {
      case GroupKind::kTuple:
        last = RawTuple{values, i, j + 1};
        break;
      case GroupKind::kMalformed:
        saw_malformed = true;
        break;
      case GroupKind::kOther:
        break;
    }
    i = j + 1;
  }
  if (options.extended_grammar) {
    const Candidate keyed = LastKeyedTuple(text);
    if (keyed.kind == GroupKind::kTuple && (!last || keyed.tuple.end > last->end)) {
      last = keyed.tuple;
    } else if (keyed.kind == GroupKind::kMalformed) {
      saw_malformed = true;
    }
  }
  if (last) return *last;
  return saw_malformed ? ParseFailure::kMalformedNumbers : ParseFailure::kNoTupleFound;
}

std::variant<NormalizedBox, ParseFailure> Normalize(const std::array<double, 4>& values,
                                                    int width, int height) {
  for (double v : values) {
    if (!std::isfinite(v)) return ParseFailure::kMalformedNumbers;
  }
  const bool fractions =
      std::all_of(values.begin(), values.end(), [](double v) { return v >= 0.0 && v <= 1.0; });
  const double sx = fractions ? width : 1.0;
  const double sy = fractions ? height : 1.0;
  double x1 = values[0] * sx;
  double y1 = values[1] * sy;
  double x2 = values[2] * sx;
  double y2 = values[3] * sy;
  if (x1 > x2) std::swap(x1, x2);
  if (y1 > y2) std::swap(y1, y2);
  if (!(x1 < x2) || !(y1 < y2)) return ParseFailure::kDegenerateBox;
  x1 = std::clamp(x1, 0.0, static_cast<double>(width));
  x2 = std::clamp(x2, 0.0, static_cast<double>(width));
  y1 = std::clamp(y1, 0.0, static_cast<double>(height));
  y2 = std::clamp(y2, 0.0, static_cast<double>(height));
  if (!(x1 < x2) || !(y1 < y2)) return ParseFailure::kOutOfRange;
  return NormalizedBox{BBox(x1, y1, x2, y2),
                       fractions ? CoordinateMode::kFractions : CoordinateMode::kPixels};
}

ParseOutcome ParsePrediction(std::string_view text, int width, int height,
                             const ParserOptions& options) {
  const auto extracted = ExtractTuple(text, options);
  if (const auto* failure = std::get_if<ParseFailure>(&extracted)) return *failure;
  const auto& raw = std::get<RawTuple>(extracted);
  const auto normalized = Normalize(raw.values, width, height);
  if (const auto* failure = std::get_if<ParseFailure>(&normalized)) return *failure;
  const auto& nb = std::get<NormalizedBox>(normalized);
  return ParsedPrediction{nb.box, nb.mode, raw.begin, raw.end};
}

}  // namespace gridloc
