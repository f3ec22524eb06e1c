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

#include "core/event.h"

#include <algorithm>
#include <sstream>

#include "core/error.h"

namespace trendagg {

const Scalar* Event::Find(std::string_view name) const {
  auto it = std::lower_bound(
      attrs.begin(), attrs.end(), name,
      [](const auto& entry, std::string_view key) { return entry.first < key; });
  if (it == attrs.end() || it->first != name) return nullptr;
  return &it->second;
}

void Event::Set(std::string name, Scalar value) {
  auto it = std::lower_bound(
      attrs.begin(), attrs.end(), name,
      [](const auto& entry, const std::string& key) { return entry.first < key; });
  if (it != attrs.end() && it->first == name) {
    it->second = std::move(value);
  } else {
    attrs.emplace(it, std::move(name), std::move(value));
  }
}

Event MakeEvent(int64_t time_ms, std::string type,
                std::vector<std::pair<std::string, Scalar>> attrs) {
  Event e;
  e.time_ms = time_ms;
  e.type = std::move(type);
  for (auto& [k, v] : attrs) e.Set(std::move(k), std::move(v));
  return e;
}

void Schema::AddAttribute(const std::string& type, const std::string& attr,
                          ValueKind kind) {
  auto& attrs = types_[type];
  if (!attrs.emplace(attr, kind).second) {
    throw Error(ErrorCode::kInvalidArgument,
                "duplicate attribute '" + attr + "' for type '" + type + "'");
  }
}

const std::map<std::string, ValueKind>* Schema::AttributesOf(
    const std::string& type) const {
  auto it = types_.find(type);
  return it == types_.end() ? nullptr : &it->second;
}

std::optional<ValueKind> Schema::KindOf(const std::string& type,
                                        const std::string& attr) const {
  const auto* attrs = AttributesOf(type);
  if (attrs == nullptr) return std::nullopt;
  auto it = attrs->find(attr);
  if (it == attrs->end()) return std::nullopt;
  return it->second;
}

namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

Schema Schema::Parse(std::string_view text) {
  Schema schema;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view l = Trim(line);
    if (l.empty() || l.front() == '#') continue;
    const auto colon = l.find(':');
    if (colon == std::string_view::npos) {
      throw Error(ErrorCode::kSyntax, "schema line " + std::to_string(line_no) +
                                          ": expected 'Type: attr:kind, ...'");
    }
    const std::string type(Trim(l.substr(0, colon)));
    if (type.empty()) {
      throw Error(ErrorCode::kSyntax,
                  "schema line " + std::to_string(line_no) + ": empty type");
    }
    schema.DeclareType(type);
    std::string_view rest = Trim(l.substr(colon + 1));
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      std::string_view item = Trim(rest.substr(0, comma));
      rest = comma == std::string_view::npos ? std::string_view()
                                             : rest.substr(comma + 1);
      if (item.empty()) continue;
      const auto sep = item.find(':');
      if (sep == std::string_view::npos) {
        throw Error(ErrorCode::kSyntax, "schema line " +
                                            std::to_string(line_no) +
                                            ": attribute needs ':kind'");
      }
      auto kind = ParseKind(Trim(item.substr(sep + 1)));
      if (!kind) {
        throw Error(ErrorCode::kSyntax, "schema line " +
                                            std::to_string(line_no) +
                                            ": unknown kind");
      }
      schema.AddAttribute(type, std::string(Trim(item.substr(0, sep))), *kind);
    }
  }
  return schema;
}

std::string Schema::ToString() const {
  std::ostringstream out;
  for (const auto& [type, attrs] : types_) {
    out << type << ":";
    bool first = true;
    for (const auto& [name, kind] : attrs) {
      out << (first ? " " : ", ") << name << ":" << KindName(kind);
      first = false;
    }
    out << "\n";
  }
  return out.str();
}

Schema Schema::Infer(const std::vector<Event>& events) {
  Schema schema = Schema::Open();
  for (const Event& e : events) {
    auto& attrs = schema.types_[e.type];
    for (const auto& [name, value] : e.attrs) {
      const ValueKind kind = trendagg::KindOf(value);
      auto [it, inserted] = attrs.emplace(name, kind);
      if (inserted || it->second == kind) continue;
      const bool numeric_pair =
          it->second != ValueKind::kString && kind != ValueKind::kString;
      it->second = numeric_pair ? ValueKind::kFloat : ValueKind::kString;
    }
  }
  return schema;
}

void ValidateEvent(const Event& e, const Schema& schema) {
  const auto* attrs = schema.AttributesOf(e.type);
  if (attrs == nullptr) return;
  for (const auto& [name, kind] : *attrs) {
    const Scalar* v = e.Find(name);
    if (v == nullptr) {
      throw Error(ErrorCode::kMissingAttribute,
                  "event of type '" + e.type + "' lacks attribute '" + name +
                      "'");
    }
    const ValueKind actual = trendagg::KindOf(*v);
    const bool ok = actual == kind ||
                    (kind == ValueKind::kFloat && actual == ValueKind::kInt);
    if (!ok) {
      throw Error(ErrorCode::kTypeMismatch,
                  "attribute '" + e.type + "." + name + "' expects " +
                      KindName(kind) + ", got " + KindName(actual));
    }
  }
}

std::optional<Event> OrderedSource::Next() {
  std::optional<Event> e = inner_->Next();
  if (!e) return e;
  ++position_;
  if (e->time_ms < 0) {
    throw RowError(ErrorCode::kMalformedRow, position_, "negative timestamp");
  }
  if (e->time_ms < last_time_) {
    throw RowError(ErrorCode::kOutOfOrder, position_,
                   "time " + std::to_string(e->time_ms) + "ms precedes " +
                       std::to_string(last_time_) + "ms");
  }
  last_time_ = e->time_ms;
  return e;
}

std::vector<Event> Drain(StreamSource& source) {
  std::vector<Event> out;
  while (auto e = source.Next()) out.push_back(std::move(*e));
  return out;
}

}  // namespace trendagg
