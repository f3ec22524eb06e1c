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

#ifndef TRENDAGG_CORE_COMPILED_QUERY_H_
#define TRENDAGG_CORE_COMPILED_QUERY_H_

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/query.h"

namespace trendagg {

// Query plus the lookup tables the engines use on every event. Pattern
// types are numbered in sorted name order so iteration is canonical.
class CompiledQuery {
 public:
  explicit CompiledQuery(Query query);

  const Query& query() const { return query_; }
  const GranularityPlan& plan() const { return plan_; }
  const std::vector<AggSpec>& specs() const { return query_.aggregates; }
  Semantics semantics() const { return query_.semantics; }

  size_t num_types() const { return type_names_.size(); }
  const std::string& type_name(int index) const { return type_names_[index]; }
  // -1 for types outside the pattern.
  int TypeIndex(const std::string& type) const;
  int start_index() const { return start_index_; }
  int end_index() const { return end_index_; }
  const std::vector<int>& PredecessorTypes(int type) const {
    return pred_types_[type];
  }
  bool IsPredecessor(int prev, int next) const {
    return pred_matrix_[prev * num_types() + next];
  }
  bool IsEventGrained(int type) const { return event_grained_[type]; }

  // Local predicates of `type`; true when all hold. Throws
  // kMissingAttribute.
  bool PassesLocal(const Event& e, int type) const;
  // Template adjacency plus the adjacent predicates binding the pair.
  bool Adjacent(const Event& prev, int prev_type, const Event& next,
                int next_type) const;

 private:
  Query query_;
  GranularityPlan plan_;
  std::vector<std::string> type_names_;
  std::unordered_map<std::string, int> type_index_;
  int start_index_ = -1;
  int end_index_ = -1;
  std::vector<std::vector<int>> pred_types_;
  std::vector<bool> pred_matrix_;
  std::vector<bool> event_grained_;
  std::vector<std::vector<LocalPredicate>> local_;
  // Indexed by prev * num_types + next.
  std::vector<std::vector<AdjacentPredicate>> adjacent_;
};

}  // namespace trendagg

#endif  // TRENDAGG_CORE_COMPILED_QUERY_H_
