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

#ifndef TRENDAGG_CORE_ORACLE_H_
#define TRENDAGG_CORE_ORACLE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "core/agg_cell.h"
#include "core/query.h"
#include "core/window_manager.h"

namespace trendagg {

// Brute-force reference: materializes every trend, then aggregates. Shares
// no code with the engines or the template compiler.

// A trend as ascending positions into the event slice it was found in.
using Trend = std::vector<size_t>;
using TrendSet = std::vector<Trend>;  // sorted, no duplicates

struct OracleOptions {
  size_t max_trends = 1'000'000;  // kExplosionGuard beyond this
};

// Incremental matcher over the pattern tree: tracks every way a type
// sequence can be continued, without building an automaton.
class PatternMatcher {
 public:
  explicit PatternMatcher(const Pattern& pattern);

  // Continuation stacks; a state is the set of them.
  using Stack = std::vector<int>;
  using State = std::vector<Stack>;  // sorted, no duplicates

  State Start() const;
  State Step(const State& state, const std::string& type) const;
  bool Accepts(const State& state) const;
  bool Matches(std::span<const std::string> types) const;

 private:
  struct Node {
    Pattern::Kind kind;
    std::string type;
    std::vector<int> children;
  };
  int Add(const Pattern& p);
  void StepStack(Stack stack, const std::string& type, State& out) const;

  std::vector<Node> nodes_;
  int root_ = 0;
};

// All trends over `events` (one partition, one window, time-ordered) under
// skip-till-any-match. Events of other types or failing local predicates
// are never part of a trend.
TrendSet EnumerateAny(std::span<const Event> events, const Query& query,
                      const OracleOptions& options = {});
// Any-match trends that are not strictly contained, between the same start
// and end events, in another trend.
TrendSet EnumerateNext(std::span<const Event> events, const Query& query,
                       const OracleOptions& options = {});
// Next-match trends occupying a gap-free slice of `events`, which must
// include the partition's foreign and filtered events.
TrendSet EnumerateCont(std::span<const Event> events, const Query& query,
                       const OracleOptions& options = {});
TrendSet Enumerate(Semantics semantics, std::span<const Event> events,
                   const Query& query, const OracleOptions& options = {});

AggResult AggregateTrends(std::span<const Event> events, const TrendSet& trends,
                          std::span<const AggSpec> specs);

std::string FormatTrend(std::span<const Event> events, const Trend& trend);

struct OracleRow {
  ResultRow row;
  std::vector<Event> slice;  // the (wid, key) event slice
  TrendSet trends;
};

// Whole-stream reference: slices the stream per (window, partition) by
// direct membership tests and enumerates each slice. Rows come in
// (wid, key) order; zero-count rows only with `emit_empty`.
std::vector<OracleRow> RunOracle(std::span<const Event> stream,
                                 const Query& query, bool emit_empty = false,
                                 const OracleOptions& options = {});

}  // namespace trendagg

#endif  // TRENDAGG_CORE_ORACLE_H_
