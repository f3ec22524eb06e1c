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

#include "core/compiled_query.h"

namespace trendagg {

CompiledQuery::CompiledQuery(Query query)
    : query_(std::move(query)), plan_(ClassifyAndPlan(query_)) {
  const PatternTemplate& t = query_.pattern_template;
  type_names_ = t.Types();
  for (size_t i = 0; i < type_names_.size(); ++i) {
    type_index_[type_names_[i]] = static_cast<int>(i);
  }
  const size_t n = type_names_.size();
  start_index_ = TypeIndex(t.start_type);
  end_index_ = TypeIndex(t.end_type);
  pred_types_.resize(n);
  pred_matrix_.assign(n * n, false);
  event_grained_.assign(n, false);
  local_.resize(n);
  adjacent_.resize(n * n);
  for (size_t next = 0; next < n; ++next) {
    for (const auto& prev : t.pred_types.at(type_names_[next])) {
      const int p = TypeIndex(prev);
      pred_types_[next].push_back(p);
      pred_matrix_[p * n + next] = true;
    }
  }
  for (const auto& type : plan_.event_grained) {
    if (plan_.mode == Granularity::kMixed) event_grained_[TypeIndex(type)] = true;
  }
  for (const Predicate& p : query_.predicates) {
    if (const auto* l = std::get_if<LocalPredicate>(&p)) {
      local_[TypeIndex(l->type)].push_back(*l);
    } else if (const auto* a = std::get_if<AdjacentPredicate>(&p)) {
      adjacent_[TypeIndex(a->prev_type) * n + TypeIndex(a->next_type)]
          .push_back(*a);
    }
  }
}

int CompiledQuery::TypeIndex(const std::string& type) const {
  auto it = type_index_.find(type);
  return it == type_index_.end() ? -1 : it->second;
}

bool CompiledQuery::PassesLocal(const Event& e, int type) const {
  for (const LocalPredicate& p : local_[type]) {
    if (!p.Holds(e)) return false;
  }
  return true;
}

bool CompiledQuery::Adjacent(const Event& prev, int prev_type,
                             const Event& next, int next_type) const {
  if (!IsPredecessor(prev_type, next_type)) return false;
  if (!(prev.time_ms < next.time_ms)) return false;
  for (const AdjacentPredicate& p :
       adjacent_[prev_type * num_types() + next_type]) {
    if (!p.Holds(prev, next)) return false;
  }
  return true;
}

}  // namespace trendagg
