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

#ifndef TRENDAGG_TESTS_COMMON_RANDOM_CASES_H_
#define TRENDAGG_TESTS_COMMON_RANDOM_CASES_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "core/event.h"
#include "core/query.h"
#include "core/window_manager.h"

namespace trendagg::testing {

struct CaseOptions {
  int max_events = 12;
  int min_types = 2;
  int max_types = 4;
  // Window as (within, slide) in ms; 0 means one window over everything.
  int64_t within_ms = 0;
  int64_t slide_ms = 0;
  bool allow_equal_times = true;
  bool allow_partitions = true;
};

struct RandomCase {
  std::string query_text;
  std::vector<Event> events;
};

// Random stream over types A.. with int `v`, float `w` and group `g`
// attributes, plus a random query: a pattern over a subset of the types,
// random local, adjacent and equivalence predicates, random semantics and
// every aggregate kind.
RandomCase GenerateCase(std::mt19937_64& rng, const CaseOptions& options = {});
RandomCase GenerateCase(std::mt19937_64& rng, Semantics semantics,
                        const CaseOptions& options = {});

Pattern RandomPattern(std::mt19937_64& rng, std::vector<std::string> types);

// Empty when equal; otherwise a description of the first difference.
// Integers compare exactly, floats within `rel_tol`.
std::string DiffRows(const std::vector<ResultRow>& engine,
                     const std::vector<ResultRow>& oracle,
                     double rel_tol = 1e-9);

}  // namespace trendagg::testing

#endif  // TRENDAGG_TESTS_COMMON_RANDOM_CASES_H_
