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

#include "core/oracle.h"

#include <algorithm>
#include <map>
#include <optional>

#include "core/csv_stream.h"
#include "core/error.h"

namespace trendagg {

PatternMatcher::PatternMatcher(const Pattern& pattern) { root_ = Add(pattern); }

int PatternMatcher::Add(const Pattern& p) {
  Node node{p.kind, p.type, {}};
  for (const Pattern& c : p.children) node.children.push_back(Add(c));
  nodes_.push_back(std::move(node));
  return static_cast<int>(nodes_.size()) - 1;
}

PatternMatcher::State PatternMatcher::Start() const { return {{root_}}; }

// The top of a stack is its back. A negative entry -(n+1) stands for "zero
// or more further repetitions of node n".
void PatternMatcher::StepStack(Stack stack, const std::string& type,
                               State& out) const {
  if (stack.empty()) return;
  const int top = stack.back();
  stack.pop_back();
  if (top < 0) {
    StepStack(stack, type, out);
    stack.push_back(top);
    stack.push_back(-top - 1);
    StepStack(std::move(stack), type, out);
    return;
  }
  const Node& node = nodes_[top];
  switch (node.kind) {
    case Pattern::Kind::kType:
      if (node.type == type) out.push_back(std::move(stack));
      return;
    case Pattern::Kind::kSeq:
      for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) {
        stack.push_back(*it);
      }
      StepStack(std::move(stack), type, out);
      return;
    case Pattern::Kind::kPlus:
      stack.push_back(-node.children[0] - 1);
      stack.push_back(node.children[0]);
      StepStack(std::move(stack), type, out);
      return;
  }
}

PatternMatcher::State PatternMatcher::Step(const State& state,
                                           const std::string& type) const {
  State out;
  for (const Stack& s : state) StepStack(s, type, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool PatternMatcher::Accepts(const State& state) const {
  return std::any_of(state.begin(), state.end(), [](const Stack& s) {
    return std::all_of(s.begin(), s.end(), [](int v) { return v < 0; });
  });
}

bool PatternMatcher::Matches(std::span<const std::string> types) const {
  State state = Start();
  for (const std::string& t : types) {
    state = Step(state, t);
    if (state.empty()) return false;
  }
  return Accepts(state);
}

namespace {

bool Eligible(const Event& e, const std::set<std::string>& types,
              const std::vector<LocalPredicate>& local) {
  if (types.count(e.type) == 0) return false;
  for (const LocalPredicate& p : local) {
    if (p.type == e.type && !p.Holds(e)) return false;
  }
  return true;
}

class Enumerator {
 public:
  Enumerator(std::span<const Event> events, const Query& query,
             const OracleOptions& options)
      : events_(events),
        matcher_(query.pattern),
        adjacent_(query.AdjacentPredicates()),
        options_(options) {
    const std::vector<std::string> names = query.pattern.Types();
    const std::set<std::string> types(names.begin(), names.end());
    const std::vector<LocalPredicate> local = query.LocalPredicates();
    for (const Event& e : events_) eligible_.push_back(Eligible(e, types, local));
  }

  TrendSet Run() {
    const PatternMatcher::State start = matcher_.Start();
    for (size_t i = 0; i < events_.size(); ++i) {
      if (!eligible_[i]) continue;
      PatternMatcher::State s = matcher_.Step(start, events_[i].type);
      if (s.empty()) continue;
      path_.assign(1, i);
      Extend(s);
    }
    std::sort(trends_.begin(), trends_.end());
    return std::move(trends_);
  }

 private:
  bool AdjacentHolds(const Event& prev, const Event& next) const {
    for (const AdjacentPredicate& p : adjacent_) {
      if (p.Binds(prev.type, next.type) && !p.Holds(prev, next)) return false;
    }
    return true;
  }

  void Extend(const PatternMatcher::State& state) {
    if (matcher_.Accepts(state)) {
      trends_.push_back(path_);
      if (trends_.size() > options_.max_trends) {
        throw Error(ErrorCode::kExplosionGuard,
                    "more than " + std::to_string(options_.max_trends) +
                        " trends");
      }
    }
    const Event& last = events_[path_.back()];
    for (size_t j = path_.back() + 1; j < events_.size(); ++j) {
      const Event& e = events_[j];
      if (!eligible_[j] || e.time_ms <= last.time_ms) continue;
      if (!AdjacentHolds(last, e)) continue;
      PatternMatcher::State next = matcher_.Step(state, e.type);
      if (next.empty()) continue;
      path_.push_back(j);
      Extend(next);
      path_.pop_back();
    }
  }

  std::span<const Event> events_;
  PatternMatcher matcher_;
  std::vector<AdjacentPredicate> adjacent_;
  OracleOptions options_;
  std::vector<bool> eligible_;
  Trend path_;
  TrendSet trends_;
};

}  // namespace

TrendSet EnumerateAny(std::span<const Event> events, const Query& query,
                      const OracleOptions& options) {
  return Enumerator(events, query, options).Run();
}

TrendSet EnumerateNext(std::span<const Event> events, const Query& query,
                       const OracleOptions& options) {
  TrendSet any = EnumerateAny(events, query, options);
  std::map<std::pair<size_t, size_t>, std::vector<const Trend*>> by_ends;
  for (const Trend& t : any) by_ends[{t.front(), t.back()}].push_back(&t);
  TrendSet out;
  for (const Trend& t : any) {
    bool dominated = false;
    for (const Trend* other : by_ends[{t.front(), t.back()}]) {
      if (other == &t || other->size() <= t.size()) continue;
      // Both share their ends, so containing the whole of t is containing
      // its middle.
      if (std::includes(other->begin(), other->end(), t.begin(), t.end())) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(t);
  }
  return out;
}

TrendSet EnumerateCont(std::span<const Event> events, const Query& query,
                       const OracleOptions& options) {
  TrendSet out;
  for (Trend& t : EnumerateNext(events, query, options)) {
    bool gap_free = true;
    for (size_t k = 1; k < t.size(); ++k) gap_free &= t[k] == t[k - 1] + 1;
    if (gap_free) out.push_back(std::move(t));
  }
  return out;
}

TrendSet Enumerate(Semantics semantics, std::span<const Event> events,
                   const Query& query, const OracleOptions& options) {
  switch (semantics) {
    case Semantics::kAny:
      return EnumerateAny(events, query, options);
    case Semantics::kNext:
      return EnumerateNext(events, query, options);
    case Semantics::kCont:
      return EnumerateCont(events, query, options);
  }
  return {};
}

AggResult AggregateTrends(std::span<const Event> events, const TrendSet& trends,
                          std::span<const AggSpec> specs) {
  AggResult result;
  for (const AggSpec& spec : specs) {
    if (spec.kind == AggSpec::Kind::kCountStar) {
      result.values.push_back(BigInt(trends.size()));
      continue;
    }
    BigInt count_e = 0;
    BigInt int_sum = 0;
    double float_sum = 0.0;
    bool saw_float = false;
    std::optional<Scalar> best;
    for (const Trend& t : trends) {
      for (size_t i : t) {
        const Event& e = events[i];
        if (e.type != spec.type) continue;
        ++count_e;
        if (spec.kind == AggSpec::Kind::kCountType) continue;
        const Scalar* v = e.Find(spec.attr);
        if (v == nullptr) {
          throw Error(ErrorCode::kMissingAttribute,
                      e.type + " event lacks " + spec.attr);
        }
        if (const auto* iv = std::get_if<int64_t>(v)) {
          int_sum += *iv;
        } else if (const auto* dv = std::get_if<double>(v)) {
          float_sum += *dv;
          saw_float = true;
        } else if (spec.kind != AggSpec::Kind::kMin &&
                   spec.kind != AggSpec::Kind::kMax) {
          throw Error(ErrorCode::kTypeMismatch, spec.ToString() + " on string");
        }
        if (!best) {
          best = *v;
        } else {
          const int c = CompareScalars(*v, *best);
          if ((spec.kind == AggSpec::Kind::kMin && c < 0) ||
              (spec.kind == AggSpec::Kind::kMax && c > 0)) {
            best = *v;
          }
        }
      }
    }
    switch (spec.kind) {
      case AggSpec::Kind::kCountType:
        result.values.push_back(count_e);
        break;
      case AggSpec::Kind::kMin:
      case AggSpec::Kind::kMax:
        if (!best) {
          result.values.push_back(std::monostate{});
        } else if (const auto* iv = std::get_if<int64_t>(&*best)) {
          result.values.push_back(BigInt(*iv));
        } else {
          result.values.push_back(AsDouble(*best));
        }
        break;
      case AggSpec::Kind::kSum:
        if (saw_float) {
          result.values.push_back(int_sum.convert_to<double>() + float_sum);
        } else {
          result.values.push_back(int_sum);
        }
        break;
      case AggSpec::Kind::kAvg:
        if (count_e == 0) {
          result.values.push_back(std::monostate{});
        } else {
          result.values.push_back(
              (int_sum.convert_to<double>() + float_sum) /
              count_e.convert_to<double>());
        }
        break;
      case AggSpec::Kind::kCountStar:
        break;
    }
  }
  return result;
}

std::string FormatTrend(std::span<const Event> events, const Trend& trend) {
  std::string out = "(";
  for (size_t k = 0; k < trend.size(); ++k) {
    const Event& e = events[trend[k]];
    if (k > 0) out += ", ";
    out += e.type + "@" + FormatMillisAsSeconds(e.time_ms);
  }
  return out + ")";
}

std::vector<OracleRow> RunOracle(std::span<const Event> stream,
                                 const Query& query, bool emit_empty,
                                 const OracleOptions& options) {
  const std::vector<std::string> names = query.pattern.Types();
  const std::set<std::string> types(names.begin(), names.end());
  const std::vector<LocalPredicate> local = query.LocalPredicates();
  const std::vector<std::string> key_attrs = query.PartitionAttributes();
  const WindowSpec& w = query.window;

  std::map<std::pair<int64_t, PartitionKey>, std::vector<Event>> slices;
  int64_t last_time = 0;
  for (const Event& e : stream) {
    if (e.time_ms < last_time) throw Error(ErrorCode::kOutOfOrder, "unsorted");
    last_time = e.time_ms;
    if (query.semantics != Semantics::kCont && !Eligible(e, types, local)) {
      continue;
    }
    PartitionKey key;
    for (const std::string& attr : key_attrs) {
      const Scalar* v = e.Find(attr);
      if (v == nullptr) {
        throw Error(ErrorCode::kMissingGroupAttribute,
                    e.type + " event lacks " + attr);
      }
      key.push_back(*v);
    }
    for (int64_t wid = 0; wid * w.slide_ms <= e.time_ms; ++wid) {
      if (e.time_ms < wid * w.slide_ms + w.within_ms) {
        slices[{wid, key}].push_back(e);
      }
    }
  }

  std::vector<OracleRow> out;
  for (auto& [id, slice] : slices) {
    OracleRow r;
    r.slice = std::move(slice);
    r.trends = Enumerate(query.semantics, r.slice, query, options);
    if (r.trends.empty() && !emit_empty) continue;
    r.row.wid = id.first;
    r.row.window_start_ms = id.first * w.slide_ms;
    r.row.window_end_ms = r.row.window_start_ms + w.within_ms;
    r.row.key = id.second;
    r.row.result = AggregateTrends(r.slice, r.trends, query.aggregates);
    r.row.count = r.trends.size();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace trendagg
