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

#ifndef TRENDAGG_CORE_ERROR_H_
#define TRENDAGG_CORE_ERROR_H_

#include <stdexcept>
#include <string>

namespace trendagg {

// Numeric values are mirrored by ta_status in trendagg/trendagg.h.
enum class ErrorCode {
  kSyntax = 1,
  kUnknownType = 2,
  kUnknownAttribute = 3,
  kDuplicateTypeInPattern = 4,
  kMalformedRow = 5,
  kOutOfOrder = 6,
  kMissingAttribute = 7,
  kMissingGroupAttribute = 8,
  kExplosionGuard = 9,
  kIo = 10,
  kInvalidArgument = 11,
  kTypeMismatch = 12,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Row-scoped ingestion failure; `row` is the 1-based data row number.
class RowError : public Error {
 public:
  RowError(ErrorCode code, long row, const std::string& message)
      : Error(code, "row " + std::to_string(row) + ": " + message), row_(row) {}

  long row() const { return row_; }

 private:
  long row_;
};

}  // namespace trendagg

#endif  // TRENDAGG_CORE_ERROR_H_
