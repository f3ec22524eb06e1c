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

#ifndef TRENDAGG_CORE_VALUE_H_
#define TRENDAGG_CORE_VALUE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

namespace trendagg {

using BigInt = boost::multiprecision::cpp_int;

enum class ValueKind { kInt, kFloat, kString };

// Attribute value carried by an event.
using Scalar = std::variant<int64_t, double, std::string>;

enum class CompareOp { kLt, kLe, kGt, kGe, kEq, kNe };

ValueKind KindOf(const Scalar& v);
const char* KindName(ValueKind kind);
std::optional<ValueKind> ParseKind(std::string_view text);
bool IsNumeric(const Scalar& v);
double AsDouble(const Scalar& v);

// Three-way comparison. Numbers compare numerically across int/float,
// strings lexicographically. Mixing a string with a number is a
// kTypeMismatch error.
int CompareScalars(const Scalar& a, const Scalar& b);
bool EvalCompare(const Scalar& lhs, CompareOp op, const Scalar& rhs);
const char* CompareOpText(CompareOp op);

// Infers int, then float, then string. Quoted text is always a string.
Scalar InferScalar(std::string_view text);
// Parses `text` as `kind`; nullopt when it does not fit.
std::optional<Scalar> ParseScalarAs(std::string_view text, ValueKind kind);

// Canonical text. Floats always carry a '.' or exponent so they re-read as
// floats; strings are returned raw.
std::string FormatScalar(const Scalar& v);
std::string FormatDouble(double d);

}  // namespace trendagg

#endif  // TRENDAGG_CORE_VALUE_H_
