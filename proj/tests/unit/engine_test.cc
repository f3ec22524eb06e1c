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

#include <map>
#include <random>
#include <set>

#include "core/bench.h"
#include "core/engine.h"
#include "core/oracle.h"
#include "doctest.h"
#include "random_cases.h"
#include "test_util.h"

namespace trendagg {
namespace {

using testing::CaseOptions;
using testing::Compile;
using testing::GenerateCase;
using testing::RandomCase;

void Feed(TrendEngine& engine, const CompiledQuery& q, const Event& e) {
  const int type = q.TypeIndex(e.type);
  const bool relevant = type >= 0 && q.PassesLocal(e, type);
  if (!relevant && q.semantics() != Semantics::kCont) return;
  engine.Process(e, type, relevant);
}

TEST_CASE("empty engines report no trends") {
  for (const char* s : {"any", "next", "cont"}) {
    auto q = Compile(testing::RunningExampleQuery(s));
    CHECK(MakeEngine(q)->FinalCell().count() == 0);
  }
}

TEST_CASE("type-grained state is one cell per type") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 200; ++i) {
    RandomCase c = GenerateCase(rng, Semantics::kAny);
    auto q = Compile(c.query_text);
    if (q->plan().mode != Granularity::kType) continue;
    TypeGrainedEngine engine(q);
    size_t fed = 0;
    for (const Event& e : c.events) {
      Feed(engine, *q, e);
      fed += q->TypeIndex(e.type) >= 0;
      CHECK(engine.StateEntries() == q->num_types());
    }
    // Each event reads at most one cell per pattern type.
    CHECK(engine.predecessor_reads() <= fed * q->num_types());
  }
}

TEST_CASE("mixed-grained state counts type cells plus stored events") {
  std::mt19937_64 rng(42);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    RandomCase c = GenerateCase(rng, Semantics::kAny);
    auto q = Compile(c.query_text);
    if (q->plan().mode != Granularity::kMixed) continue;
    ++checked;
    MixedGrainedEngine engine(q);
    size_t type_grained = 0;
    for (size_t t = 0; t < q->num_types(); ++t) {
      type_grained += !q->IsEventGrained(static_cast<int>(t));
    }
    const bool end_stored = q->IsEventGrained(q->end_index());
    size_t n_e = 0;
    for (const Event& e : c.events) {
      Feed(engine, *q, e);
      const int type = q->TypeIndex(e.type);
      if (type >= 0 && q->IsEventGrained(type) && q->PassesLocal(e, type)) ++n_e;
      CHECK(engine.StateEntries() == type_grained + n_e + end_stored);
    }
    for (const auto& s : engine.stored_events()) {
      CHECK(q->IsEventGrained(s.type));
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("pattern-grained state holds two cells and at most one event") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    RandomCase c = GenerateCase(rng, i % 2 ? Semantics::kNext : Semantics::kCont);
    auto q = Compile(c.query_text);
    PatternGrainedEngine engine(q);
    BigInt last_final = 0;
    for (const Event& e : c.events) {
      Feed(engine, *q, e);
      CHECK(engine.StateEntries() == 2 + (engine.last_event() ? 1 : 0));
      if (!engine.last_event()) CHECK(engine.last_cell().IsIdentity());
      CHECK(engine.FinalCell().count() >= last_final);
      last_final = engine.FinalCell().count();
    }
  }
}

TEST_CASE("mixed with tautological predicates equals type-grained") {
  std::mt19937_64 rng(44);
  CaseOptions options;
  options.allow_partitions = false;
  for (int i = 0; i < 200; ++i) {
    RandomCase c = GenerateCase(rng, Semantics::kAny, options);
    for (Event& e : c.events) e.Set("one", int64_t{1});
    auto plain = Compile(c.query_text);
    if (plain->plan().mode != Granularity::kType) continue;
    const std::string& start = plain->query().pattern_template.start_type;
    std::string text = c.query_text;
    const std::string taut = start + ".one = NEXT(" + start + ").one";
    const auto where = text.find("WHERE ");
    if (where == std::string::npos) {
      text.insert(text.find("WITHIN"), "WHERE " + taut + "\n");
    } else {
      text.insert(where + 6, taut + " AND ");
    }
    auto mixed = Compile(text);
    CHECK(mixed->plan().mode == Granularity::kMixed);
    VectorSource a(c.events);
    VectorSource b(c.events);
    CHECK(RunStream(plain, a).rows == RunStream(mixed, b).rows);
  }
}

TEST_CASE("mixed-grained running example variants") {
  std::vector<Event> events = testing::RunningExampleStream();
  for (Event& e : events) {
    if (e.type == "B") e.Set("v", int64_t{0});
  }
  auto count = [&](const std::string& where) {
    auto q = Compile(testing::RunningExampleQuery("any", where));
    CHECK(q->plan().mode == Granularity::kMixed);
    VectorSource src(events);
    const RunResult r = RunStream(q, src);
    const BigInt oracle = EnumerateAny(events, q->query()).size();
    CHECK(r.rows.size() == (oracle == 0 ? 0u : 1u));
    return r.rows.empty() ? BigInt(0) : r.rows[0].count;
  };
  // Always true: every b feeds the following a's.
  CHECK(count("B.v < NEXT(A).v") == 43);
  // Always false: a trend is a single SEQ(A+, B) block, so the count is
  // the nonempty subsets of a's before each b: 1 + 7 + 15.
  const BigInt never = count("B.v > NEXT(A).v");
  auto q = Compile(testing::RunningExampleQuery("any", "B.v > NEXT(A).v"));
  CHECK(never == EnumerateAny(events, q->query()).size());
  CHECK(never == 23);
}

TEST_CASE("contiguous trend events have a single predecessor") {
  std::mt19937_64 rng(45);
  CaseOptions options;
  options.allow_partitions = false;
  for (int i = 0; i < 300; ++i) {
    RandomCase c = GenerateCase(rng, Semantics::kCont, options);
    const Query q = ParseQuery(c.query_text, Schema::Open());
    std::map<size_t, std::set<size_t>> preds;
    for (const Trend& t : EnumerateCont(c.events, q)) {
      for (size_t k = 1; k < t.size(); ++k) preds[t[k]].insert(t[k - 1]);
    }
    for (const auto& [event, p] : preds) CHECK(p.size() == 1);
  }
}

TEST_CASE("next-match trends can give an event two predecessors") {
  const std::vector<Event> events = {MakeEvent(1000, "A"), MakeEvent(2000, "A"),
                                     MakeEvent(3000, "B")};
  const Query q = ParseQuery(
      "RETURN COUNT(*)\nPATTERN SEQ(A, B)\nSEMANTICS next\nWITHIN 1 h",
      Schema::Open());
  const TrendSet next = EnumerateNext(events, q);
  CHECK(next == TrendSet{{0, 2}, {1, 2}});
}

}  // namespace
}  // namespace trendagg
