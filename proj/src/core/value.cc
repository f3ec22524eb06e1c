//
// Copyright 2026 The trendagg Authors
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
//

#include "core/value.h"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "core/error.h"

namespace trendagg {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax: return "SyntaxError";
    case ErrorCode::kUnknownType: return "UnknownType";
    case ErrorCode::kUnknownAttribute: return "UnknownAttribute";
    case ErrorCode::kDuplicateTypeInPattern: return "DuplicateTypeInPattern";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kOutOfOrder: return "OutOfOrder";
    case ErrorCode::kMissingAttribute: return "MissingAttribute";
    case ErrorCode::kMissingGroupAttribute: return "MissingGroupAttribute";
    case ErrorCode::kExplosionGuard: return "ExplosionGuard";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kTypeMismatch: return "TypeMismatch";
  }
  return "Error";
}

ValueKind KindOf(const Scalar& v) {
  switch (v.index()) {
    case 0: return ValueKind::kInt;
    case 1: return ValueKind::kFloat;
    default: return ValueKind::kString;
  }
}

const char* KindName(ValueKind kind) {
  switch (kind) {
    case ValueKind::kInt: return "int";
    case ValueKind::kFloat: return "float";
    case ValueKind::kString: return "string";
  }
  return "?";
}

std::optional<ValueKind> ParseKind(std::string_view text) {
  if (text == "int" || text == "integer") return ValueKind::kInt;
  if (text == "float" || text == "double" || text == "decimal") {
    return ValueKind::kFloat;
  }
  if (text == "string" || text == "str") return ValueKind::kString;
  return std::nullopt;
}

bool IsNumeric(const Scalar& v) { return v.index() != 2; }

double AsDouble(const Scalar& v) {
  if (const auto* i = std::get_if<int64_t>(&v)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&v)) return *d;
  throw Error(ErrorCode::kTypeMismatch, "string value used as a number");
}

int CompareScalars(const Scalar& a, const Scalar& b) {
  if (IsNumeric(a) != IsNumeric(b)) {
    throw Error(ErrorCode::kTypeMismatch,
                "cannot compare '" + FormatScalar(a) + "' with '" +
                    FormatScalar(b) + "'");
  }
  if (!IsNumeric(a)) {
    const int c = std::get<std::string>(a).compare(std::get<std::string>(b));
    return (c > 0) - (c < 0);
  }
  if (a.index() == 0 && b.index() == 0) {
    const int64_t x = std::get<int64_t>(a);
    const int64_t y = std::get<int64_t>(b);
    return (x > y) - (x < y);
  }
  const double x = AsDouble(a);
  const double y = AsDouble(b);
  return (x > y) - (x < y);
}

bool EvalCompare(const Scalar& lhs, CompareOp op, const Scalar& rhs) {
  const int c = CompareScalars(lhs, rhs);
  switch (op) {
    case CompareOp::kLt: return c < 0;
    case CompareOp::kLe: return c <= 0;
    case CompareOp::kGt: return c > 0;
    case CompareOp::kGe: return c >= 0;
    case CompareOp::kEq: return c == 0;
    case CompareOp::kNe: return c != 0;
  }
  return false;
}

const char* CompareOpText(CompareOp op) {
  switch (op) {
    case CompareOp::kLt: return "<";
    case CompareOp::kLe: return "<=";
    case CompareOp::kGt: return ">";
    case CompareOp::kGe: return ">=";
    case CompareOp::kEq: return "=";
    case CompareOp::kNe: return "!=";
  }
  return "?";
}

namespace {

std::optional<int64_t> ParseInt(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return v;
}

std::optional<double> ParseFloat(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() ||
      !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

bool IsQuoted(std::string_view text) {
  return text.size() >= 2 && ((text.front() == '"' && text.back() == '"') ||
                              (text.front() == '\'' && text.back() == '\''));
}

}  // namespace

Scalar InferScalar(std::string_view text) {
  if (IsQuoted(text)) return std::string(text.substr(1, text.size() - 2));
  if (auto i = ParseInt(text)) return *i;
  if (auto d = ParseFloat(text)) return *d;
  return std::string(text);
}

std::optional<Scalar> ParseScalarAs(std::string_view text, ValueKind kind) {
  switch (kind) {
    case ValueKind::kInt:
      if (auto i = ParseInt(text)) return Scalar(*i);
      return std::nullopt;
    case ValueKind::kFloat:
      if (auto d = ParseFloat(text)) return Scalar(*d);
      return std::nullopt;
    case ValueKind::kString:
      if (IsQuoted(text)) {
        return Scalar(std::string(text.substr(1, text.size() - 2)));
      }
      return Scalar(std::string(text));
  }
  return std::nullopt;
}

std::string FormatDouble(double d) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", d);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string FormatScalar(const Scalar& v) {
  switch (v.index()) {
    case 0: return std::to_string(std::get<int64_t>(v));
    case 1: return FormatDouble(std::get<double>(v));
    default: return std::get<std::string>(v);
  }
}

}  // namespace trendagg
