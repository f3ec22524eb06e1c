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

TypeGrainedEngine::TypeGrainedEngine(std::shared_ptr<const CompiledQuery> query)
    : query_(std::move(query)) {
  const AggCell identity = IdentityCell(query_->specs());
  slots_.assign(query_->num_types(), TypeSlot{identity, identity});
  last_event_cell_ = identity;
  scratch_ = identity;
}

void TypeGrainedEngine::Settle(int64_t time_ms) {
  if (time_ms == current_time_) return;
  for (int t : dirty_) {
    slots_[t].settled.Combine(slots_[t].current, query_->specs());
    slots_[t].current.Reset();
  }
  dirty_.clear();
  current_time_ = time_ms;
}

void TypeGrainedEngine::Process(const Event& e, int type, bool relevant) {
  if (!relevant || type < 0) return;
  Settle(e.time_ms);
  const auto& specs = query_->specs();
  AggCell& cell = scratch_;
  cell.Reset();
  for (int p : query_->PredecessorTypes(type)) {
    cell.Combine(slots_[p].settled, specs);
    ++predecessor_reads_;
  }
  AbsorbEventInPlace(cell, e, type == query_->start_index(), specs);
  TypeSlot& slot = slots_[type];
  if (slot.current.count() == 0 && cell.count() != 0) dirty_.push_back(type);
  slot.current.Combine(cell, specs);
  std::swap(last_event_cell_, scratch_);
}

AggCell TypeGrainedEngine::TypeCell(int type) const {
  AggCell out = slots_[type].settled;
  out.Combine(slots_[type].current, query_->specs());
  return out;
}

}  // namespace trendagg
