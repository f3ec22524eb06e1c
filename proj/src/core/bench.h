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

#ifndef TRENDAGG_CORE_BENCH_H_
#define TRENDAGG_CORE_BENCH_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "core/compiled_query.h"
#include "core/event.h"
#include "core/window_manager.h"

namespace trendagg {

using RowSink = std::function<void(const ResultRow&)>;

struct RunResult {
  std::vector<ResultRow> rows;  // empty when a sink consumed them
  RuntimeStats stats;
  double wall_seconds = 0.0;
};

// Pulls `source` dry through a WindowManager. Each event is stamped with
// its ingestion time as it is read.
RunResult RunStream(std::shared_ptr<const CompiledQuery> query,
                    StreamSource& source, WindowOptions options = {},
                    const RowSink& sink = nullptr);

struct BenchReport {
  int reps = 0;
  std::string granularity;
  double events = 0;
  double rows = 0;
  double wall_seconds = 0;
  double latency_ms = 0;
  double throughput_eps = 0;
  double peak_state = 0;            // live entries over all instances
  double peak_instance_state = 0;   // largest single instance
  double peak_instances = 0;
  long max_rss_kb = 0;              // informational
};

// Averages RunStream metrics over `reps` fresh sources.
BenchReport Bench(std::shared_ptr<const CompiledQuery> query,
                  const std::function<std::unique_ptr<StreamSource>()>& source,
                  int reps, WindowOptions options = {});

std::string FormatBenchReport(const BenchReport& report);

}  // namespace trendagg

#endif  // TRENDAGG_CORE_BENCH_H_
