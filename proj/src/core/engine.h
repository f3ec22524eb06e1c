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

#ifndef TRENDAGG_CORE_ENGINE_H_
#define TRENDAGG_CORE_ENGINE_H_

#include <memory>
#include <optional>
#include <vector>

#include "core/agg_cell.h"
#include "core/compiled_query.h"

namespace trendagg {

// Incremental trend aggregator for one (window, partition). Events arrive
// in timestamp order. `type` is the pattern type index (-1 outside the
// pattern) and `relevant` is false for events that fail their local
// predicates or lie outside the pattern; only contiguous semantics ever
// delivers those.
class TrendEngine {
 public:
  virtual ~TrendEngine() = default;

  virtual void Process(const Event& e, int type, bool relevant) = 0;
  virtual AggCell FinalCell() const = 0;
  // Aggregates plus retained events currently held.
  virtual size_t StateEntries() const = 0;
  virtual Granularity granularity() const = 0;

  // Cell computed for the last matched event.
  virtual const AggCell& last_event_cell() const { return last_event_cell_; }
  // Aggregate cells read while computing predecessor cells, cumulative.
  size_t predecessor_reads() const { return predecessor_reads_; }

 protected:
  AggCell last_event_cell_;
  // Reused for each event's predecessor cell.
  AggCell scratch_;
  size_t predecessor_reads_ = 0;
};

// Per-pattern state for skip-till-next-match and contiguous semantics: the
// last matched event with its cell, and the running final cell.
class PatternGrainedEngine : public TrendEngine {
 public:
  explicit PatternGrainedEngine(std::shared_ptr<const CompiledQuery> query);

  void Process(const Event& e, int type, bool relevant) override;
  AggCell FinalCell() const override { return final_cell_; }
  size_t StateEntries() const override { return 2 + (last_event_ ? 1 : 0); }
  Granularity granularity() const override { return Granularity::kPattern; }
  const AggCell& last_event_cell() const override { return last_cell_; }

  const std::optional<Event>& last_event() const { return last_event_; }
  const AggCell& last_cell() const { return last_cell_; }

 private:
  std::shared_ptr<const CompiledQuery> query_;
  std::optional<Event> last_event_;
  int last_type_ = -1;
  AggCell last_cell_;
  AggCell final_cell_;
};

// One aggregate per pattern type, split into the part settled by events at
// earlier timestamps and the part contributed at the current timestamp, so
// that equal-time events never extend each other.
struct TypeSlot {
  AggCell settled;
  AggCell current;
};

// Per-type state for skip-till-any-match without adjacent predicates.
class TypeGrainedEngine : public TrendEngine {
 public:
  explicit TypeGrainedEngine(std::shared_ptr<const CompiledQuery> query);

  void Process(const Event& e, int type, bool relevant) override;
  AggCell FinalCell() const override { return TypeCell(query_->end_index()); }
  size_t StateEntries() const override { return slots_.size(); }
  Granularity granularity() const override { return Granularity::kType; }

  AggCell TypeCell(int type) const;

 private:
  void Settle(int64_t time_ms);

  std::shared_ptr<const CompiledQuery> query_;
  std::vector<TypeSlot> slots_;
  std::vector<int> dirty_;
  int64_t current_time_ = -1;
};

// Skip-till-any-match with adjacent predicates: per-type aggregates for
// types no predicate constrains as a predecessor, per-event cells for the
// rest.
class MixedGrainedEngine : public TrendEngine {
 public:
  explicit MixedGrainedEngine(std::shared_ptr<const CompiledQuery> query);

  void Process(const Event& e, int type, bool relevant) override;
  AggCell FinalCell() const override;
  size_t StateEntries() const override;
  Granularity granularity() const override { return Granularity::kMixed; }

  struct StoredEvent {
    Event event;
    int type;
    AggCell cell;
  };
  const std::vector<StoredEvent>& stored_events() const { return stored_; }
  size_t num_type_slots() const { return num_type_slots_; }
  // Only meaningful for type-grained types.
  AggCell TypeCell(int type) const;

 private:
  void Settle(int64_t time_ms);

  std::shared_ptr<const CompiledQuery> query_;
  std::vector<TypeSlot> slots_;  // indexed by type; unused when event-grained
  size_t num_type_slots_ = 0;
  std::vector<int> dirty_;
  int64_t current_time_ = -1;
  std::vector<StoredEvent> stored_;
  AggCell final_cell_;
};

// Engine for the query's planned granularity.
std::unique_ptr<TrendEngine> MakeEngine(
    std::shared_ptr<const CompiledQuery> query);

}  // namespace trendagg

#endif  // TRENDAGG_CORE_ENGINE_H_
