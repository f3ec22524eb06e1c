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

#include "core/generator.h"

#include <algorithm>

#include "core/error.h"

namespace trendagg {

TransportGenerator::TransportGenerator(const TransportOptions& options)
    : options_(options), rng_(options.seed) {
  if (options.passengers < 1 || options.stations < 1 ||
      options.duration_s < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "passengers, stations and duration must be >= 1");
  }
  const int64_t first_window =
      std::min<int64_t>(options.duration_s * 1000, kMaxGapMs);
  for (int64_t p = 0; p < options.passengers; ++p) {
    riders_.push(Rider{static_cast<int64_t>(Uniform(0, first_window)), p, -1});
  }
}

uint64_t TransportGenerator::Uniform(uint64_t lo, uint64_t hi) {
  // mt19937_64 output is fully specified, unlike the std distributions.
  return lo + rng_() % (hi - lo + 1);
}

std::optional<Event> TransportGenerator::Next() {
  const int64_t horizon = options_.duration_s * 1000;
  while (!riders_.empty()) {
    Rider r = riders_.top();
    riders_.pop();
    if (r.next_time > horizon) continue;
    Event e;
    e.time_ms = r.next_time;
    if (r.transfers_left < 0) {
      e.type = "Entry";
      r.transfers_left = static_cast<int>(Uniform(1, 3));
    } else if (r.transfers_left > 0) {
      e.type = "Transfer";
      --r.transfers_left;
    } else {
      e.type = "Exit";
      r.transfers_left = -1;
    }
    e.Set("passenger", r.id);
    e.Set("station", static_cast<int64_t>(
                         Uniform(0, static_cast<uint64_t>(options_.stations) - 1)));
    e.Set("wait", static_cast<int64_t>(Uniform(0, kMaxWaitSeconds)));
    r.next_time += static_cast<int64_t>(Uniform(kMinGapMs, kMaxGapMs));
    riders_.push(r);
    return e;
  }
  return std::nullopt;
}

Schema TransportGenerator::TransportSchema() {
  Schema s;
  for (const char* type : {"Entry", "Transfer", "Exit"}) {
    s.AddAttribute(type, "passenger", ValueKind::kInt);
    s.AddAttribute(type, "station", ValueKind::kInt);
    s.AddAttribute(type, "wait", ValueKind::kInt);
  }
  return s;
}

std::unique_ptr<StreamSource> GenerateTransportStream(
    const TransportOptions& options) {
  return std::make_unique<TransportGenerator>(options);
}

}  // namespace trendagg
