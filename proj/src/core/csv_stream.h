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

#ifndef TRENDAGG_CORE_CSV_STREAM_H_
#define TRENDAGG_CORE_CSV_STREAM_H_

#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "core/event.h"

namespace trendagg {

struct CsvField {
  std::string text;
  bool quoted = false;
};

// Splits one CSV line. Double-quoted fields may contain commas and use ""
// for a literal quote. Throws kMalformedRow on an unterminated quote.
std::vector<CsvField> SplitCsvLine(const std::string& line);
std::string QuoteCsvField(const std::string& text);

// Parses non-negative decimal seconds with at most millisecond precision.
std::optional<int64_t> ParseSecondsToMillis(std::string_view text);
std::string FormatMillisAsSeconds(int64_t ms);

// Stream file layout:
//
//   time,type,<attr>[:kind],...
//   1,A,5,...          positional values for the named columns
//   2,B,,w=7           empty = absent; `name=value` adds any attribute
//
// `time` is in seconds. Rows are numbered from 1 after the header; both
// MalformedRow and OutOfOrder report that number.
class CsvStreamSource : public StreamSource {
 public:
  // Reads from `in`, which must outlive the source.
  CsvStreamSource(std::istream& in, Schema schema);
  // Opens `path`; throws kIo when it cannot be read.
  CsvStreamSource(const std::string& path, Schema schema);

  std::optional<Event> Next() override;

 private:
  void ReadHeader();
  Scalar ParseValue(const std::string& type, const std::string& name,
                    const CsvField& field) const;

  std::unique_ptr<std::ifstream> owned_;
  std::istream* in_;
  Schema schema_;
  struct Column {
    std::string name;
    std::optional<ValueKind> kind;
  };
  std::vector<Column> columns_;
  bool header_read_ = false;
  long row_ = 0;
  int64_t last_time_ = 0;
};

std::unique_ptr<StreamSource> OpenCsvStream(const std::string& path,
                                            const Schema& schema);

// Writes `events` in the layout above: a header with the sorted union of
// attribute names and positional values. Reading the output back yields
// equal events.
void WriteCsvStream(const std::vector<Event>& events, std::ostream& out);

}  // namespace trendagg

#endif  // TRENDAGG_CORE_CSV_STREAM_H_
