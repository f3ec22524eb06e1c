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

#include "core/window_manager.h"

#include <algorithm>

#include "core/csv_stream.h"
#include "core/error.h"

namespace trendagg {

std::vector<int64_t> WindowsOf(int64_t time_ms, const WindowSpec& spec) {
  // wid * slide <= t < wid * slide + within
  const int64_t hi = time_ms / spec.slide_ms;
  const int64_t span = time_ms - spec.within_ms;
  int64_t lo = span < 0 ? 0 : span / spec.slide_ms + 1;
  std::vector<int64_t> out;
  for (int64_t wid = lo; wid <= hi; ++wid) out.push_back(wid);
  return out;
}

WindowManager::WindowManager(std::shared_ptr<const CompiledQuery> query,
                             WindowOptions options)
    : query_(std::move(query)),
      options_(options),
      partition_attrs_(query_->query().PartitionAttributes()) {}

std::vector<Destination> WindowManager::Route(const Event& e) const {
  const int type = query_->TypeIndex(e.type);
  const bool relevant = type >= 0 && query_->PassesLocal(e, type);
  if (!relevant && query_->semantics() != Semantics::kCont) return {};
  PartitionKey key;
  key.reserve(partition_attrs_.size());
  for (const std::string& attr : partition_attrs_) {
    const Scalar* v = e.Find(attr);
    if (v == nullptr) {
      throw Error(ErrorCode::kMissingGroupAttribute,
                  "event of type " + e.type + " at " +
                      FormatMillisAsSeconds(e.time_ms) + " lacks " + attr);
    }
    key.push_back(*v);
  }
  std::vector<Destination> out;
  for (int64_t wid : WindowsOf(e.time_ms, query_->query().window)) {
    out.push_back(Destination{wid, key});
  }
  return out;
}

void WindowManager::Push(const Event& e, std::vector<ResultRow>& out,
                         Clock::time_point ingested) {
  if (e.time_ms < last_time_) {
    throw Error(ErrorCode::kOutOfOrder,
                "time " + FormatMillisAsSeconds(e.time_ms) + " after " +
                    FormatMillisAsSeconds(last_time_));
  }
  last_time_ = e.time_ms;
  ++stats_.events_in;
  CloseExpired(e.time_ms, out);

  const int type = query_->TypeIndex(e.type);
  const bool relevant = type >= 0 && query_->PassesLocal(e, type);
  std::vector<Destination> dests = Route(e);
  if (!dests.empty()) ++stats_.events_routed;
  for (Destination& d : dests) {
    auto [it, inserted] =
        instances_.try_emplace({d.wid, std::move(d.key)}, Instance{});
    Instance& inst = it->second;
    if (inserted) {
      inst.engine = MakeEngine(query_);
      inst.entries = inst.engine->StateEntries();
      stats_.live_state_entries += inst.entries;
      ++stats_.live_instances;
      stats_.peak_instances =
          std::max(stats_.peak_instances, stats_.live_instances);
    }
    inst.engine->Process(e, type, relevant);
    inst.last_ingest = ingested;
    const size_t entries = inst.engine->StateEntries();
    stats_.live_state_entries += entries;
    stats_.live_state_entries -= inst.entries;
    inst.entries = entries;
    stats_.peak_instance_entries =
        std::max(stats_.peak_instance_entries, entries);
  }
  stats_.peak_state_entries =
      std::max(stats_.peak_state_entries, stats_.live_state_entries);
}

void WindowManager::Emit(InstanceMap::iterator it,
                         std::vector<ResultRow>& out) {
  const WindowSpec& w = query_->query().window;
  Instance& inst = it->second;
  AggCell cell = inst.engine->FinalCell();
  if (!cell.IsIdentity() || options_.emit_empty) {
    ResultRow row;
    row.wid = it->first.first;
    row.window_start_ms = row.wid * w.slide_ms;
    row.window_end_ms = row.window_start_ms + w.within_ms;
    row.key = it->first.second;
    row.result = FinalizeCell(cell, query_->specs());
    row.count = cell.count();
    out.push_back(std::move(row));
    ++stats_.rows_emitted;
    const auto latency = Clock::now() - inst.last_ingest;
    stats_.latency_ms_sum +=
        std::chrono::duration<double, std::milli>(latency).count();
    ++stats_.latency_samples;
  }
  stats_.live_state_entries -= inst.entries;
  --stats_.live_instances;
}

void WindowManager::CloseExpired(int64_t now_ms, std::vector<ResultRow>& out) {
  const WindowSpec& w = query_->query().window;
  // Instances are ordered by wid first, and window ends grow with wid.
  while (!instances_.empty()) {
    auto it = instances_.begin();
    if (it->first.first * w.slide_ms + w.within_ms > now_ms) break;
    const int64_t wid = it->first.first;
    while (it != instances_.end() && it->first.first == wid) {
      Emit(it, out);
      it = instances_.erase(it);
    }
  }
}

void WindowManager::Finish(std::vector<ResultRow>& out) {
  for (auto it = instances_.begin(); it != instances_.end();) {
    Emit(it, out);
    it = instances_.erase(it);
  }
}

std::vector<std::pair<int64_t, PartitionKey>> WindowManager::LiveInstances()
    const {
  std::vector<std::pair<int64_t, PartitionKey>> out;
  for (const auto& [k, v] : instances_) out.push_back(k);
  return out;
}

const TrendEngine* WindowManager::Engine(int64_t wid,
                                         const PartitionKey& key) const {
  auto it = instances_.find({wid, key});
  return it == instances_.end() ? nullptr : it->second.engine.get();
}

void WriteResultHeader(const Query& query, std::ostream& out) {
  out << "wid,window_start_ms,window_end_ms";
  for (const std::string& attr : query.PartitionAttributes()) {
    out << ',' << QuoteCsvField(attr);
  }
  for (const AggSpec& spec : query.aggregates) {
    out << ',' << QuoteCsvField(spec.ToString());
  }
  out << '\n';
}

void WriteResultRow(const ResultRow& row, std::ostream& out) {
  out << row.wid << ',' << row.window_start_ms << ',' << row.window_end_ms;
  for (const Scalar& v : row.key) out << ',' << QuoteCsvField(FormatScalar(v));
  for (const AggValue& v : row.result.values) out << ',' << FormatAggValue(v);
  out << '\n';
}

}  // namespace trendagg
