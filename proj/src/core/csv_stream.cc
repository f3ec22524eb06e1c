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

#include "core/csv_stream.h"

#include <charconv>
#include <set>

#include "core/error.h"

namespace trendagg {

std::vector<CsvField> SplitCsvLine(const std::string& line) {
  std::vector<CsvField> fields;
  size_t i = 0;
  const size_t n = line.size();
  while (true) {
    CsvField field;
    if (i < n && line[i] == '"') {
      field.quoted = true;
      ++i;
      bool closed = false;
      while (i < n) {
        if (line[i] == '"') {
          if (i + 1 < n && line[i + 1] == '"') {
            field.text += '"';
            i += 2;
            continue;
          }
          closed = true;
          ++i;
          break;
        }
        field.text += line[i++];
      }
      if (!closed) throw Error(ErrorCode::kMalformedRow, "unterminated quote");
      if (i < n && line[i] != ',') {
        throw Error(ErrorCode::kMalformedRow, "text after closing quote");
      }
    } else {
      const size_t comma = line.find(',', i);
      const size_t end = comma == std::string::npos ? n : comma;
      field.text = line.substr(i, end - i);
      while (!field.text.empty() &&
             (field.text.back() == ' ' || field.text.back() == '\t')) {
        field.text.pop_back();
      }
      size_t lead = 0;
      while (lead < field.text.size() &&
             (field.text[lead] == ' ' || field.text[lead] == '\t')) {
        ++lead;
      }
      field.text.erase(0, lead);
      i = end;
    }
    fields.push_back(std::move(field));
    if (i >= n) break;
    ++i;  // skip ','
    if (i == n) {
      fields.emplace_back();
      break;
    }
  }
  return fields;
}

std::string QuoteCsvField(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::optional<int64_t> ParseSecondsToMillis(std::string_view text) {
  if (text.empty()) return std::nullopt;
  const auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac =
      dot == std::string_view::npos ? std::string_view() : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) return std::nullopt;
  int64_t secs = 0;
  if (!whole.empty()) {
    auto [ptr, ec] =
        std::from_chars(whole.data(), whole.data() + whole.size(), secs);
    if (ec != std::errc() || ptr != whole.data() + whole.size() || secs < 0) {
      return std::nullopt;
    }
  }
  // Trailing zeros beyond millisecond precision are harmless.
  while (frac.size() > 3 && frac.back() == '0') frac.remove_suffix(1);
  if (frac.size() > 3) return std::nullopt;
  int64_t ms = 0;
  for (size_t k = 0; k < 3; ++k) {
    ms *= 10;
    if (k < frac.size()) {
      if (frac[k] < '0' || frac[k] > '9') return std::nullopt;
      ms += frac[k] - '0';
    }
  }
  if (secs > (INT64_MAX - ms) / 1000) return std::nullopt;
  return secs * 1000 + ms;
}

std::string FormatMillisAsSeconds(int64_t ms) {
  std::string out = std::to_string(ms / 1000);
  const int64_t rem = ms % 1000;
  if (rem != 0) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), ".%03lld", static_cast<long long>(rem));
    std::string frac(buf);
    while (frac.back() == '0') frac.pop_back();
    out += frac;
  }
  return out;
}

CsvStreamSource::CsvStreamSource(std::istream& in, Schema schema)
    : in_(&in), schema_(std::move(schema)) {}

CsvStreamSource::CsvStreamSource(const std::string& path, Schema schema)
    : owned_(std::make_unique<std::ifstream>(path)),
      in_(owned_.get()),
      schema_(std::move(schema)) {
  if (!*owned_) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
}

void CsvStreamSource::ReadHeader() {
  header_read_ = true;
  std::string line;
  while (std::getline(*in_, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<CsvField> fields;
    try {
      fields = SplitCsvLine(line);
    } catch (const Error& e) {
      throw RowError(ErrorCode::kMalformedRow, 0, std::string("header: ") + e.what());
    }
    if (fields.size() < 2 || fields[0].text != "time" ||
        fields[1].text != "type") {
      throw RowError(ErrorCode::kMalformedRow, 0,
                     "header must start with 'time,type'");
    }
    std::set<std::string> seen;
    for (size_t i = 2; i < fields.size(); ++i) {
      Column col;
      const std::string& t = fields[i].text;
      const auto colon = t.find(':');
      col.name = t.substr(0, colon);
      if (colon != std::string::npos) {
        col.kind = ParseKind(t.substr(colon + 1));
        if (!col.kind) {
          throw RowError(ErrorCode::kMalformedRow, 0,
                         "unknown kind in header column '" + t + "'");
        }
      }
      if (col.name.empty() || !seen.insert(col.name).second) {
        throw RowError(ErrorCode::kMalformedRow, 0,
                       "empty or duplicate header column '" + t + "'");
      }
      columns_.push_back(std::move(col));
    }
    return;
  }
}

Scalar CsvStreamSource::ParseValue(const std::string& type,
                                   const std::string& name,
                                   const CsvField& field) const {
  std::optional<ValueKind> kind = schema_.KindOf(type, name);
  if (!kind) {
    for (const Column& c : columns_) {
      if (c.name == name) kind = c.kind;
    }
  }
  if (field.quoted) {
    if (kind && *kind != ValueKind::kString) {
      throw RowError(ErrorCode::kMalformedRow, row_,
                     "quoted value for numeric attribute '" + name + "'");
    }
    return field.text;
  }
  if (!kind) return InferScalar(field.text);
  auto v = ParseScalarAs(field.text, *kind);
  if (!v) {
    throw RowError(ErrorCode::kMalformedRow, row_,
                   "value '" + field.text + "' is not " + KindName(*kind) +
                       " for attribute '" + name + "'");
  }
  return std::move(*v);
}

std::optional<Event> CsvStreamSource::Next() {
  if (!header_read_) ReadHeader();
  std::string line;
  while (std::getline(*in_, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    ++row_;
    std::vector<CsvField> fields;
    try {
      fields = SplitCsvLine(line);
    } catch (const Error& e) {
      throw RowError(ErrorCode::kMalformedRow, row_, e.what());
    }
    if (fields.size() < 2) {
      throw RowError(ErrorCode::kMalformedRow, row_,
                     "expected at least 'time,type'");
    }
    auto time = ParseSecondsToMillis(fields[0].text);
    if (!time) {
      throw RowError(ErrorCode::kMalformedRow, row_,
                     "bad time '" + fields[0].text + "'");
    }
    if (fields[1].text.empty()) {
      throw RowError(ErrorCode::kMalformedRow, row_, "empty event type");
    }
    Event e;
    e.time_ms = *time;
    e.type = fields[1].text;
    for (size_t i = 2; i < fields.size(); ++i) {
      const CsvField& f = fields[i];
      const auto eq = f.quoted ? std::string::npos : f.text.find('=');
      if (eq != std::string::npos) {
        CsvField value{f.text.substr(eq + 1), false};
        if (value.text.size() >= 2 && value.text.front() == '"' &&
            value.text.back() == '"') {
          value = {value.text.substr(1, value.text.size() - 2), true};
        }
        const std::string name = f.text.substr(0, eq);
        if (name.empty()) {
          throw RowError(ErrorCode::kMalformedRow, row_, "empty attribute name");
        }
        e.Set(name, ParseValue(e.type, name, value));
        continue;
      }
      if (i - 2 >= columns_.size()) {
        throw RowError(ErrorCode::kMalformedRow, row_,
                       "too many columns (" + std::to_string(fields.size()) +
                           ")");
      }
      if (f.text.empty() && !f.quoted) continue;
      const std::string& name = columns_[i - 2].name;
      e.Set(name, ParseValue(e.type, name, f));
    }
    try {
      ValidateEvent(e, schema_);
    } catch (const Error& err) {
      throw RowError(ErrorCode::kMalformedRow, row_, err.what());
    }
    if (e.time_ms < last_time_) {
      throw RowError(ErrorCode::kOutOfOrder, row_,
                     "time decreases from " + FormatMillisAsSeconds(last_time_) +
                         " to " + fields[0].text);
    }
    last_time_ = e.time_ms;
    return e;
  }
  return std::nullopt;
}

std::unique_ptr<StreamSource> OpenCsvStream(const std::string& path,
                                            const Schema& schema) {
  return std::make_unique<CsvStreamSource>(path, schema);
}

void WriteCsvStream(const std::vector<Event>& events, std::ostream& out) {
  std::set<std::string> names;
  for (const Event& e : events) {
    for (const auto& [k, v] : e.attrs) names.insert(k);
  }
  out << "time,type";
  for (const auto& n : names) out << "," << n;
  out << "\n";
  for (const Event& e : events) {
    out << FormatMillisAsSeconds(e.time_ms) << "," << QuoteCsvField(e.type);
    for (const auto& n : names) {
      out << ",";
      const Scalar* v = e.Find(n);
      if (v == nullptr) continue;
      if (v->index() == 2) {
        // Always quote strings so they never re-read as numbers or as
        // absent values.
        const std::string& s = std::get<std::string>(*v);
        std::string q = "\"";
        for (char c : s) {
          if (c == '"') q += '"';
          q += c;
        }
        out << q << "\"";
      } else {
        out << FormatScalar(*v);
      }
    }
    out << "\n";
  }
}

}  // namespace trendagg
