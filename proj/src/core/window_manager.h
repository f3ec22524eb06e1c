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

#ifndef TRENDAGG_CORE_WINDOW_MANAGER_H_
#define TRENDAGG_CORE_WINDOW_MANAGER_H_

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <ostream>
#include <utility>
#include <vector>

#include "core/agg_cell.h"
#include "core/compiled_query.h"
#include "core/engine.h"

namespace trendagg {

using Clock = std::chrono::steady_clock;

// Values of the partition attributes, in Query::PartitionAttributes order.
using PartitionKey = std::vector<Scalar>;

// Window `wid` covers [wid * slide, wid * slide + within).
std::vector<int64_t> WindowsOf(int64_t time_ms, const WindowSpec& spec);

struct Destination {
  int64_t wid = 0;
  PartitionKey key;
};

struct ResultRow {
  int64_t wid = 0;
  int64_t window_start_ms = 0;
  int64_t window_end_ms = 0;
  PartitionKey key;
  AggResult result;
  BigInt count;  // COUNT(*) regardless of the RETURN list

  bool operator==(const ResultRow&) const = default;
};

struct RuntimeStats {
  uint64_t events_in = 0;
  uint64_t events_routed = 0;  // events that reached at least one engine
  uint64_t rows_emitted = 0;
  size_t live_instances = 0;
  size_t peak_instances = 0;
  size_t live_state_entries = 0;
  size_t peak_state_entries = 0;
  // Largest state held by a single (wid, key) instance.
  size_t peak_instance_entries = 0;
  double latency_ms_sum = 0.0;
  uint64_t latency_samples = 0;

  double mean_latency_ms() const {
    return latency_samples == 0 ? 0.0 : latency_ms_sum / latency_samples;
  }
};

struct WindowOptions {
  bool emit_empty = false;
};

// Routes events to one engine per (window, partition) and emits a row
// per instance when its window closes.
class WindowManager {
 public:
  WindowManager(std::shared_ptr<const CompiledQuery> query,
                WindowOptions options = {});

  // Destinations of `e`; empty when the event cannot affect any trend.
  // Throws kMissingGroupAttribute.
  std::vector<Destination> Route(const Event& e) const;

  // Closes windows ending at or before e.time_ms, then feeds e. Rows are
  // appended to `out`. Throws kOutOfOrder on a decreasing timestamp.
  void Push(const Event& e, std::vector<ResultRow>& out,
            Clock::time_point ingested = Clock::now());
  void CloseExpired(int64_t now_ms, std::vector<ResultRow>& out);
  // Flushes every live instance.
  void Finish(std::vector<ResultRow>& out);

  const RuntimeStats& stats() const { return stats_; }
  const CompiledQuery& query() const { return *query_; }
  std::vector<std::pair<int64_t, PartitionKey>> LiveInstances() const;
  // nullptr when the instance is not live.
  const TrendEngine* Engine(int64_t wid, const PartitionKey& key) const;

 private:
  struct Instance {
    std::unique_ptr<TrendEngine> engine;
    size_t entries = 0;
    Clock::time_point last_ingest;
  };
  using InstanceMap = std::map<std::pair<int64_t, PartitionKey>, Instance>;

  void Emit(InstanceMap::iterator it, std::vector<ResultRow>& out);

  std::shared_ptr<const CompiledQuery> query_;
  WindowOptions options_;
  std::vector<std::string> partition_attrs_;
  InstanceMap instances_;
  RuntimeStats stats_;
  int64_t last_time_ = 0;
};

// `wid,window_start_ms,window_end_ms,<partition attrs>,<aggregates>`.
void WriteResultHeader(const Query& query, std::ostream& out);
void WriteResultRow(const ResultRow& row, std::ostream& out);

}  // namespace trendagg

#endif  // TRENDAGG_CORE_WINDOW_MANAGER_H_
