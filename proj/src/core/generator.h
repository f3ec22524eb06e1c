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

#ifndef TRENDAGG_CORE_GENERATOR_H_
#define TRENDAGG_CORE_GENERATOR_H_

#include <cstdint>
#include <memory>
#include <queue>
#include <random>
#include <vector>

#include "core/event.h"

namespace trendagg {

struct TransportOptions {
  int64_t passengers = 30;
  int64_t stations = 100;
  int64_t duration_s = 4500;
  uint64_t seed = 0;
};

// Synthetic public-transport workload. Each passenger makes back-to-back
// trips `Entry, Transfer (1-3 times), Exit`; every event carries
// `passenger`, `station` and a uniformly random `wait` in seconds. Events
// of one passenger are 1-20 s apart; the first lands in the first 20 s (or
// the whole duration when shorter). Output is merged by time, ties broken
// by passenger id, and is a pure function of the options.
class TransportGenerator : public StreamSource {
 public:
  explicit TransportGenerator(const TransportOptions& options);

  std::optional<Event> Next() override;

  static constexpr int64_t kMaxWaitSeconds = 600;
  static constexpr int64_t kMinGapMs = 1000;
  static constexpr int64_t kMaxGapMs = 20000;

  static Schema TransportSchema();

 private:
  struct Rider {
    int64_t next_time;
    int64_t id;
    int transfers_left;  // -1: Entry next, 0: Exit next, k: k transfers left
    bool operator>(const Rider& o) const {
      return next_time != o.next_time ? next_time > o.next_time : id > o.id;
    }
  };

  uint64_t Uniform(uint64_t lo, uint64_t hi);  // inclusive

  TransportOptions options_;
  std::mt19937_64 rng_;
  std::priority_queue<Rider, std::vector<Rider>, std::greater<Rider>> riders_;
};

std::unique_ptr<StreamSource> GenerateTransportStream(
    const TransportOptions& options);

}  // namespace trendagg

#endif  // TRENDAGG_CORE_GENERATOR_H_
