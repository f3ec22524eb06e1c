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

PatternGrainedEngine::PatternGrainedEngine(
    std::shared_ptr<const CompiledQuery> query)
    : query_(std::move(query)),
      last_cell_(IdentityCell(query_->specs())),
      final_cell_(IdentityCell(query_->specs())) {}

void PatternGrainedEngine::Process(const Event& e, int type, bool relevant) {
  const auto& specs = query_->specs();
  const bool is_start = relevant && type == query_->start_index();
  bool adjacent = false;
  if (relevant && last_event_) {
    ++predecessor_reads_;
    adjacent = query_->Adjacent(*last_event_, last_type_, e, type);
  }
  if (is_start || adjacent) {
    if (!adjacent) last_cell_.Reset();
    AbsorbEventInPlace(last_cell_, e, is_start, specs);
    if (type == query_->end_index()) final_cell_.Combine(last_cell_, specs);
    last_event_ = e;
    last_type_ = type;
    return;
  }
  // Skip-till-next-match skips the event; contiguous semantics loses every
  // partial trend ending at the last matched event. The final cell stays.
  if (query_->semantics() == Semantics::kCont) {
    last_event_.reset();
    last_type_ = -1;
    last_cell_.Reset();
  }
}

}  // namespace trendagg
