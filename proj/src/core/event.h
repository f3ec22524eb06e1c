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

#ifndef TRENDAGG_CORE_EVENT_H_
#define TRENDAGG_CORE_EVENT_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/value.h"

namespace trendagg {

// A timestamped, typed tuple. Attributes are kept sorted by name.
struct Event {
  int64_t time_ms = 0;
  std::string type;
  std::vector<std::pair<std::string, Scalar>> attrs;

  const Scalar* Find(std::string_view name) const;
  // Inserts or replaces, keeping the sorted order.
  void Set(std::string name, Scalar value);

  bool operator==(const Event& other) const = default;
};

Event MakeEvent(int64_t time_ms, std::string type,
                std::vector<std::pair<std::string, Scalar>> attrs = {});

// Per event type: attribute names and their value kinds. An open schema
// additionally accepts types it does not declare (kinds are then inferred
// from the data).
class Schema {
 public:
  Schema() = default;

  static Schema Open() {
    Schema s;
    s.open_ = true;
    return s;
  }

  // Throws kInvalidArgument on a duplicate attribute name for `type`.
  void AddAttribute(const std::string& type, const std::string& attr,
                    ValueKind kind);
  void DeclareType(const std::string& type) { types_[type]; }

  bool open() const { return open_; }
  void set_open(bool open) { open_ = open; }
  bool HasType(const std::string& type) const { return types_.count(type); }
  const std::map<std::string, ValueKind>* AttributesOf(
      const std::string& type) const;
  std::optional<ValueKind> KindOf(const std::string& type,
                                  const std::string& attr) const;
  const std::map<std::string, std::map<std::string, ValueKind>>& types()
      const {
    return types_;
  }

  // Schema text: one type per line, `Type: attr:kind, attr:kind`. Blank
  // lines and lines starting with '#' are ignored.
  static Schema Parse(std::string_view text);
  std::string ToString() const;

  // Collects every (type, attribute, kind) seen in `events`. The result
  // is open. Conflicting kinds for one attribute widen int to float and
  // anything else to string.
  static Schema Infer(const std::vector<Event>& events);

 private:
  bool open_ = false;
  std::map<std::string, std::map<std::string, ValueKind>> types_;
};

// Checks `e` against the declared attributes of its type, if any.
// Throws kMissingAttribute or kTypeMismatch.
void ValidateEvent(const Event& e, const Schema& schema);

// Pull-based, single-consumer event stream.
class StreamSource {
 public:
  virtual ~StreamSource() = default;
  virtual std::optional<Event> Next() = 0;
};

// Wraps a source and enforces non-decreasing timestamps.
class OrderedSource : public StreamSource {
 public:
  explicit OrderedSource(std::unique_ptr<StreamSource> inner)
      : inner_(std::move(inner)) {}

  std::optional<Event> Next() override;

 private:
  std::unique_ptr<StreamSource> inner_;
  int64_t last_time_ = 0;
  long position_ = 0;
};

class VectorSource : public StreamSource {
 public:
  explicit VectorSource(std::vector<Event> events)
      : events_(std::move(events)) {}

  std::optional<Event> Next() override {
    if (next_ >= events_.size()) return std::nullopt;
    return events_[next_++];
  }

 private:
  std::vector<Event> events_;
  size_t next_ = 0;
};

// Yields at most `limit` events from `inner`.
class LimitSource : public StreamSource {
 public:
  LimitSource(std::unique_ptr<StreamSource> inner, size_t limit)
      : inner_(std::move(inner)), remaining_(limit) {}

  std::optional<Event> Next() override {
    if (remaining_ == 0) return std::nullopt;
    --remaining_;
    return inner_->Next();
  }

 private:
  std::unique_ptr<StreamSource> inner_;
  size_t remaining_;
};

std::vector<Event> Drain(StreamSource& source);

}  // namespace trendagg

#endif  // TRENDAGG_CORE_EVENT_H_
