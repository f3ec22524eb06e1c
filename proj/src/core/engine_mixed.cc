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

#include "core/engine.h"

namespace trendagg {

MixedGrainedEngine::MixedGrainedEngine(
    std::shared_ptr<const CompiledQuery> query)
    : query_(std::move(query)), final_cell_(IdentityCell(query_->specs())) {
  const AggCell identity = IdentityCell(query_->specs());
  slots_.assign(query_->num_types(), TypeSlot{identity, identity});
  last_event_cell_ = identity;
  scratch_ = identity;
  for (size_t t = 0; t < query_->num_types(); ++t) {
    if (!query_->IsEventGrained(static_cast<int>(t))) ++num_type_slots_;
  }
}

void MixedGrainedEngine::Settle(int64_t time_ms) {
  if (time_ms == current_time_) return;
  for (int t : dirty_) {
    slots_[t].settled.Combine(slots_[t].current, query_->specs());
    slots_[t].current.Reset();
  }
  dirty_.clear();
  current_time_ = time_ms;
}

void MixedGrainedEngine::Process(const Event& e, int type, bool relevant) {
  if (!relevant || type < 0) return;
  Settle(e.time_ms);
  const auto& specs = query_->specs();
  AggCell& pred = scratch_;
  pred.Reset();
  bool scan_events = false;
  for (int p : query_->PredecessorTypes(type)) {
    if (query_->IsEventGrained(p)) {
      scan_events = true;
      continue;
    }
    pred.Combine(slots_[p].settled, specs);
    ++predecessor_reads_;
  }
  if (scan_events) {
    for (const StoredEvent& s : stored_) {
      ++predecessor_reads_;
      if (query_->Adjacent(s.event, s.type, e, type)) pred.Combine(s.cell, specs);
    }
  }
  AbsorbEventInPlace(pred, e, type == query_->start_index(), specs);
  const AggCell& cell = pred;
  if (!query_->IsEventGrained(type)) {
    TypeSlot& slot = slots_[type];
    if (slot.current.count() == 0 && cell.count() != 0) dirty_.push_back(type);
    slot.current.Combine(cell, specs);
  } else {
    if (type == query_->end_index()) final_cell_.Combine(cell, specs);
    stored_.push_back(StoredEvent{e, type, cell});
  }
  std::swap(last_event_cell_, scratch_);
}

AggCell MixedGrainedEngine::TypeCell(int type) const {
  AggCell out = slots_[type].settled;
  out.Combine(slots_[type].current, query_->specs());
  return out;
}

AggCell MixedGrainedEngine::FinalCell() const {
  const int end = query_->end_index();
  return query_->IsEventGrained(end) ? final_cell_ : TypeCell(end);
}

size_t MixedGrainedEngine::StateEntries() const {
  const bool end_event_grained = query_->IsEventGrained(query_->end_index());
  return num_type_slots_ + stored_.size() + (end_event_grained ? 1 : 0);
}

std::unique_ptr<TrendEngine> MakeEngine(
    std::shared_ptr<const CompiledQuery> query) {
  switch (query->plan().mode) {
    case Granularity::kPattern:
      return std::make_unique<PatternGrainedEngine>(std::move(query));
    case Granularity::kType:
      return std::make_unique<TypeGrainedEngine>(std::move(query));
    case Granularity::kMixed:
      return std::make_unique<MixedGrainedEngine>(std::move(query));
  }
  return nullptr;
}

}  // namespace trendagg
