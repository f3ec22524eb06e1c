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

#include "core/bench.h"

#include <sys/resource.h>

#include <cstdio>

#include "core/error.h"

namespace trendagg {

RunResult RunStream(std::shared_ptr<const CompiledQuery> query,
                    StreamSource& source, WindowOptions options,
                    const RowSink& sink) {
  RunResult result;
  WindowManager manager(std::move(query), options);
  std::vector<ResultRow> pending;
  auto drain = [&] {
    if (!sink) return;
    for (const ResultRow& r : pending) sink(r);
    pending.clear();
  };
  const Clock::time_point begin = Clock::now();
  while (std::optional<Event> e = source.Next()) {
    manager.Push(*e, pending, Clock::now());
    drain();
  }
  manager.Finish(pending);
  drain();
  result.wall_seconds =
      std::chrono::duration<double>(Clock::now() - begin).count();
  result.rows = std::move(pending);
  result.stats = manager.stats();
  return result;
}

BenchReport Bench(std::shared_ptr<const CompiledQuery> query,
                  const std::function<std::unique_ptr<StreamSource>()>& source,
                  int reps, WindowOptions options) {
  if (reps < 1) throw Error(ErrorCode::kInvalidArgument, "reps must be >= 1");
  BenchReport report;
  report.reps = reps;
  report.granularity = GranularityName(query->plan().mode);
  for (int i = 0; i < reps; ++i) {
    std::unique_ptr<StreamSource> src = source();
    uint64_t rows = 0;
    RunResult r =
        RunStream(query, *src, options, [&](const ResultRow&) { ++rows; });
    report.events += r.stats.events_in;
    report.rows += rows;
    report.wall_seconds += r.wall_seconds;
    report.latency_ms += r.stats.mean_latency_ms();
    report.throughput_eps +=
        r.wall_seconds > 0 ? r.stats.events_in / r.wall_seconds : 0.0;
    report.peak_state += r.stats.peak_state_entries;
    report.peak_instance_state += r.stats.peak_instance_entries;
    report.peak_instances += r.stats.peak_instances;
  }
  for (double* v :
       {&report.events, &report.rows, &report.wall_seconds, &report.latency_ms,
        &report.throughput_eps, &report.peak_state,
        &report.peak_instance_state, &report.peak_instances}) {
    *v /= reps;
  }
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) == 0) report.max_rss_kb = usage.ru_maxrss;
  return report;
}

std::string FormatBenchReport(const BenchReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "granularity=%s reps=%d events=%.0f rows=%.0f wall_s=%.6f "
                "latency_ms=%.6f throughput_eps=%.1f peak_state=%.1f "
                "peak_instance_state=%.1f peak_instances=%.1f max_rss_kb=%ld",
                r.granularity.c_str(), r.reps, r.events, r.rows,
                r.wall_seconds, r.latency_ms, r.throughput_eps, r.peak_state,
                r.peak_instance_state, r.peak_instances, r.max_rss_kb);
  return buf;
}

}  // namespace trendagg
