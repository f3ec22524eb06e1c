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

#include <algorithm>
#include <random>
#include <sstream>

#include "core/bench.h"
#include "core/engine.h"
#include "core/error.h"
#include "core/csv_stream.h"
#include "core/oracle.h"
#include "doctest.h"
#include "random_cases.h"
#include "test_util.h"

namespace trendagg {
namespace {

using testing::CaseOptions;
using testing::Compile;
using testing::DiffRows;
using testing::GenerateCase;
using testing::RandomCase;

std::vector<ResultRow> EngineRows(const RandomCase& c) {
  VectorSource src(c.events);
  return RunStream(Compile(c.query_text), src).rows;
}

std::vector<ResultRow> OracleRows(const RandomCase& c) {
  std::vector<ResultRow> out;
  for (OracleRow& r : RunOracle(c.events, ParseQuery(c.query_text,
                                                     Schema::Open()))) {
    out.push_back(std::move(r.row));
  }
  return out;
}

void CheckAgreement(Semantics semantics, uint64_t seed, int cases,
                    const CaseOptions& options = {}) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    RandomCase c = GenerateCase(rng, semantics, options);
    const std::string diff = DiffRows(EngineRows(c), OracleRows(c));
    if (!diff.empty()) {
      std::ostringstream s;
      WriteCsvStream(c.events, s);
      FAIL_CHECK(diff << "\n" << c.query_text << s.str());
    }
  }
}

TEST_CASE("any-match engines agree with the oracle") {
  CheckAgreement(Semantics::kAny, 11, 400);
}

TEST_CASE("contiguous engine agrees with the oracle") {
  CheckAgreement(Semantics::kCont, 12, 400);
}

TEST_CASE("sliding windows agree with per-slice oracle runs") {
  CaseOptions options;
  options.max_events = 16;
  options.within_ms = 6000;
  options.slide_ms = 2000;
  CheckAgreement(Semantics::kAny, 13, 200, options);
  CheckAgreement(Semantics::kCont, 14, 200, options);
}

TEST_CASE("trend sets nest: contiguous within next within any") {
  std::mt19937_64 rng(15);
  CaseOptions options;
  options.allow_partitions = false;
  for (int i = 0; i < 300; ++i) {
    RandomCase c = GenerateCase(rng, Semantics::kAny, options);
    const Query q = ParseQuery(c.query_text, Schema::Open());
    const TrendSet any = EnumerateAny(c.events, q);
    const TrendSet next = EnumerateNext(c.events, q);
    const TrendSet cont = EnumerateCont(c.events, q);
    CHECK(std::includes(any.begin(), any.end(), next.begin(), next.end()));
    CHECK(std::includes(next.begin(), next.end(), cont.begin(), cont.end()));

    // Consecutive trend events follow the compiled template.
    const PatternMatcher matcher(q.pattern);
    for (const Trend& t : any) {
      std::vector<std::string> types;
      for (size_t k : t) types.push_back(c.events[k].type);
      CHECK(matcher.Matches(types));
      CHECK(types.front() == q.pattern_template.start_type);
      CHECK(types.back() == q.pattern_template.end_type);
      for (size_t k = 1; k < types.size(); ++k) {
        CHECK(q.pattern_template.IsPredecessor(types[k - 1], types[k]));
      }
    }
  }
}

TEST_CASE("matcher accepts exactly the pattern language") {
  const PatternMatcher m(ParseQuery("RETURN COUNT(*)\nPATTERN (SEQ(A+, B))+\n"
                                    "SEMANTICS any\nWITHIN 1 s",
                                    Schema::Open())
                             .pattern);
  using V = std::vector<std::string>;
  CHECK(m.Matches(V{"A", "B"}));
  CHECK(m.Matches(V{"A", "A", "B", "A", "B"}));
  CHECK_FALSE(m.Matches(V{"A"}));
  CHECK_FALSE(m.Matches(V{"B"}));
  CHECK_FALSE(m.Matches(V{"A", "B", "B"}));
  CHECK_FALSE(m.Matches(V{}));
}

TEST_CASE("explosion guard") {
  std::vector<Event> events;
  for (int i = 0; i < 20; ++i) events.push_back(MakeEvent(i * 1000, "A"));
  const Query q = ParseQuery("RETURN COUNT(*)\nPATTERN A+\nSEMANTICS any\nWITHIN 1 h",
                             Schema::Open());
  OracleOptions options;
  options.max_trends = 1000;
  try {
    EnumerateAny(events, q, options);
    FAIL("expected the guard to fire");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kExplosionGuard);
  }
  options.max_trends = 1u << 20;
  CHECK(EnumerateAny(events, q, options).size() == (1u << 20) - 1);
}

TEST_CASE("aggregating trends directly") {
  const std::vector<Event> events = testing::RunningExampleStream();
  const Query q = ParseQuery(
      "RETURN COUNT(*), COUNT(B), MIN(A.v), AVG(B.v)\nPATTERN (SEQ(A+, B))+\n"
      "SEMANTICS cont\nWITHIN 10 s",
      Schema::Open());
  const AggResult r =
      AggregateTrends(events, EnumerateCont(events, q), q.aggregates);
  CHECK(r.values[0] == AggValue(BigInt(2)));
  CHECK(r.values[1] == AggValue(BigInt(2)));
  CHECK(r.values[2] == AggValue(BigInt(5)));
  CHECK(r.values[3] == AggValue(3.5));
  const AggResult empty = AggregateTrends(events, {}, q.aggregates);
  CHECK(empty.values[0] == AggValue(BigInt(0)));
  CHECK(empty.values[2].index() == 0);
  CHECK(empty.values[3].index() == 0);
}

// Skip-till-next-match keeps one partial trend per partition and replaces
// it whenever a start event arrives. Maximal trends under the containment
// definition can start at several events, so the single-state engine
// undercounts. These pin both sides of the divergence.
TEST_CASE("next-match engine versus maximal-trend definition") {
  struct Case {
    const char* query;
    std::vector<std::pair<const char*, int64_t>> events;  // type, v
    size_t maximal;
    int engine;
  };
  const std::vector<Case> cases = {
      {"PATTERN SEQ(A, B)", {{"A", 0}, {"A", 0}, {"B", 0}}, 2, 1},
      {"PATTERN SEQ(A, SEQ(B, C)+)",
       {{"A", 0}, {"B", 0}, {"B", 0}, {"C", 0}},
       2,
       1},
      {"PATTERN A+\nWHERE A.v < NEXT(A).v", {{"A", 1}, {"A", 3}, {"A", 2}},
       5,
       4},
  };
  for (const Case& c : cases) {
    CAPTURE(c.query);
    const std::string text = std::string("RETURN COUNT(*)\n") + c.query +
                             "\nSEMANTICS next\nWITHIN 1 h\n";
    std::vector<Event> events;
    for (size_t i = 0; i < c.events.size(); ++i) {
      events.push_back(MakeEvent((i + 1) * 1000, c.events[i].first,
                                 {{"v", c.events[i].second}}));
    }
    CHECK(EnumerateNext(events, ParseQuery(text, Schema::Open())).size() ==
          c.maximal);
    VectorSource src(events);
    RunResult r = RunStream(Compile(text), src);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].count == c.engine);
  }
}

// Under contiguous semantics every trend event has exactly one possible
// predecessor, the event right before it, so the single stored partial
// trend is enough.
TEST_CASE("contiguous trends have a unique predecessor") {
  std::mt19937_64 rng(16);
  CaseOptions options;
  options.allow_partitions = false;
  for (int i = 0; i < 300; ++i) {
    RandomCase c = GenerateCase(rng, Semantics::kCont, options);
    const Query q = ParseQuery(c.query_text, Schema::Open());
    for (const Trend& t : EnumerateCont(c.events, q)) {
      for (size_t k = 1; k < t.size(); ++k) CHECK(t[k] == t[k - 1] + 1);
    }
  }
}

}  // namespace
}  // namespace trendagg
