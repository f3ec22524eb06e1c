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

#include <random>
#include <sstream>

#include "core/bench.h"
#include "core/error.h"
#include "core/oracle.h"
#include "core/window_manager.h"
#include "doctest.h"
#include "random_cases.h"
#include "test_util.h"

namespace trendagg {
namespace {

using testing::Compile;

TEST_CASE("window membership") {
  using W = std::vector<int64_t>;
  CHECK(WindowsOf(0, {600000, 30000}) == W{0});
  CHECK(WindowsOf(12, {10, 5}) == W{1, 2});
  CHECK(WindowsOf(10, {10, 5}) == W{1, 2});
  CHECK(WindowsOf(9, {10, 5}) == W{0, 1});
  for (int64_t t : {0, 1, 7, 99, 100, 12345}) {
    CHECK(WindowsOf(t, {100, 100}) == W{t / 100});
  }
  std::mt19937_64 rng(51);
  for (int i = 0; i < 2000; ++i) {
    const int64_t slide = 1 + rng() % 50;
    const int64_t within = slide * (1 + rng() % 5) + rng() % slide;
    const int64_t t = rng() % 1000;
    W want;
    for (int64_t wid = 0; wid * slide <= t; ++wid) {
      if (t < wid * slide + within) want.push_back(wid);
    }
    const W got = WindowsOf(t, {within, slide});
    CHECK(got == want);
    CHECK(!got.empty());
    CHECK(static_cast<int64_t>(got.size()) <= (within + slide - 1) / slide);
  }
}

const char kHeartQuery[] =
    "RETURN patient, COUNT(*)\n"
    "PATTERN Measurement M+\n"
    "SEMANTICS %s\n"
    "WHERE [patient] AND M.rate < NEXT(M).rate AND M.activity = passive\n"
    "WITHIN 10 minutes SLIDE 30 seconds\n";

std::string HeartQuery(const char* semantics) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), kHeartQuery, semantics);
  return buf;
}

Event Measurement(int64_t t, int64_t patient, int64_t rate,
                  const char* activity) {
  return MakeEvent(t, "Measurement",
                   {{"patient", patient},
                    {"rate", rate},
                    {"activity", std::string(activity)}});
}

TEST_CASE("routing") {
  WindowManager cont(Compile(HeartQuery("contiguous")));
  const Event active = Measurement(0, 1, 80, "active");
  const std::vector<Destination> d = cont.Route(active);
  REQUIRE(d.size() == 1);
  CHECK(d[0].wid == 0);
  CHECK(d[0].key == PartitionKey{int64_t{1}});
  CHECK(cont.Route(MakeEvent(0, "Other", {{"patient", int64_t{1}}})).size() ==
        1);

  WindowManager any(Compile(HeartQuery("any")));
  CHECK(any.Route(active).empty());
  CHECK(any.Route(MakeEvent(0, "Other")).empty());
  CHECK(any.Route(Measurement(0, 1, 80, "passive"))[0].key !=
        any.Route(Measurement(0, 2, 80, "passive"))[0].key);
  // Late in the stream an event falls into all 20 overlapping windows.
  CHECK(any.Route(Measurement(3600000, 1, 80, "passive")).size() == 20);

  try {
    any.Route(MakeEvent(0, "Measurement",
                        {{"rate", int64_t{1}},
                         {"activity", std::string("passive")}}));
    FAIL("expected MissingGroupAttribute");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMissingGroupAttribute);
  }
}

TEST_CASE("a filtered event breaks contiguous trends") {
  const std::vector<Event> events = {
      Measurement(1000, 1, 60, "passive"), Measurement(2000, 1, 70, "passive"),
      Measurement(3000, 1, 90, "active"), Measurement(4000, 1, 95, "passive")};
  auto run = [&](const char* semantics) {
    VectorSource src(events);
    const RunResult r = RunStream(Compile(HeartQuery(semantics)), src);
    REQUIRE(r.rows.size() == 1);
    return r.rows[0].count;
  };
  // (m1), (m2), (m1,m2), (m4)
  CHECK(run("contiguous") == 4);
  // Next-match skips m3, so m4 extends every trend ending at m2. (m1,m4) is
  // contained in (m1,m2,m4) and dropped.
  CHECK(run("next") == 6);
}

TEST_CASE("one row per key at end of stream") {
  std::vector<Event> events = testing::RunningExampleStream();
  std::vector<Event> both;
  for (const Event& e : events) {
    for (int64_t g : {0, 1}) {
      Event copy = e;
      copy.Set("g", g);
      both.push_back(copy);
    }
  }
  VectorSource src(both);
  const RunResult r = RunStream(
      Compile("RETURN g, COUNT(*)\nPATTERN (SEQ(A+, B))+\nSEMANTICS any\n"
              "GROUP-BY g\nWITHIN 10 s"),
      src);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].key == PartitionKey{int64_t{0}});
  CHECK(r.rows[1].key == PartitionKey{int64_t{1}});
  CHECK(r.rows[0].count == 43);
  CHECK(r.rows[1].count == 43);
  CHECK(r.rows[0].window_start_ms == 0);
  CHECK(r.rows[0].window_end_ms == 10000);
}

TEST_CASE("empty windows only with emit-empty") {
  // Only b's: no trend can start.
  const std::vector<Event> events = {MakeEvent(1000, "B"), MakeEvent(2000, "B")};
  const std::string text =
      "RETURN COUNT(*), MIN(A.v)\nPATTERN SEQ(A, B)\nSEMANTICS any\n"
      "WITHIN 10 s";
  VectorSource a(events);
  CHECK(RunStream(Compile(text), a).rows.empty());
  VectorSource b(events);
  const RunResult r = RunStream(Compile(text), b, {.emit_empty = true});
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].result.values[0] == AggValue(BigInt(0)));
  CHECK(r.rows[0].result.values[1].index() == 0);
}

TEST_CASE("overlapping windows are independent") {
  const std::vector<Event> events = {
      MakeEvent(1000, "A"), MakeEvent(3000, "A"), MakeEvent(6000, "B"),
      MakeEvent(8000, "A"), MakeEvent(9000, "B")};
  const std::string text =
      "RETURN COUNT(*)\nPATTERN SEQ(A+, B)\nSEMANTICS any\n"
      "WITHIN 6 s SLIDE 3 s";
  VectorSource src(events);
  const RunResult r = RunStream(Compile(text), src);
  const std::vector<OracleRow> want =
      RunOracle(events, ParseQuery(text, Schema::Open()));
  REQUIRE(r.rows.size() == want.size());
  for (size_t i = 0; i < want.size(); ++i) {
    CHECK(r.rows[i].wid == want[i].row.wid);
    CHECK(r.rows[i].count == want[i].row.count);
  }
  // [0,6) holds no b; [3,9) has (a3,b6); [6,12) has (a8,b9).
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].wid == 1);
  CHECK(r.rows[0].count == 1);
  CHECK(r.rows[1].wid == 2);
  CHECK(r.rows[1].count == 1);
}

TEST_CASE("closed windows leave no state") {
  std::mt19937_64 rng(52);
  testing::CaseOptions options;
  options.max_events = 30;
  options.within_ms = 6000;
  options.slide_ms = 2000;
  for (int i = 0; i < 100; ++i) {
    testing::RandomCase c = testing::GenerateCase(rng, options);
    auto q = Compile(c.query_text);
    WindowManager m(q);
    std::vector<ResultRow> rows;
    for (const Event& e : c.events) {
      m.Push(e, rows);
      for (const auto& [wid, key] : m.LiveInstances()) {
        CHECK(wid * 2000 + 6000 > e.time_ms);
        CHECK(wid * 2000 <= e.time_ms);
      }
    }
    m.Finish(rows);
    CHECK(m.LiveInstances().empty());
    CHECK(m.stats().live_state_entries == 0);
    for (size_t k = 1; k < rows.size(); ++k) {
      CHECK(rows[k - 1].wid <= rows[k].wid);
    }
  }
}

TEST_CASE("each window equals a fresh run on its slice") {
  std::mt19937_64 rng(53);
  testing::CaseOptions options;
  options.max_events = 20;
  options.within_ms = 6000;
  options.slide_ms = 2000;
  for (int i = 0; i < 150; ++i) {
    testing::RandomCase c = testing::GenerateCase(rng, options);
    auto q = Compile(c.query_text);
    VectorSource src(c.events);
    const RunResult r = RunStream(q, src);
    // Same query over one window spanning the whole slice.
    std::string single = c.query_text;
    single.replace(single.find("WITHIN"), std::string::npos, "WITHIN 1 h\n");
    auto whole = Compile(single);
    WindowManager router(q);
    for (const ResultRow& row : r.rows) {
      std::vector<Event> slice;
      for (const Event& e : c.events) {
        for (const Destination& d : router.Route(e)) {
          if (d.wid == row.wid && d.key == row.key) slice.push_back(e);
        }
      }
      VectorSource sub(slice);
      const RunResult alone = RunStream(whole, sub);
      REQUIRE(alone.rows.size() == 1);
      CHECK(alone.rows[0].result == row.result);
    }
  }
}

TEST_CASE("timestamps must not decrease") {
  WindowManager m(Compile(testing::RunningExampleQuery("any")));
  std::vector<ResultRow> rows;
  m.Push(MakeEvent(2000, "A", {{"v", int64_t{1}}}), rows);
  try {
    m.Push(MakeEvent(1000, "A", {{"v", int64_t{1}}}), rows);
    FAIL("expected OutOfOrder");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOutOfOrder);
  }
}

TEST_CASE("result csv") {
  auto q = Compile(
      "RETURN g, COUNT(*), AVG(A.v)\nPATTERN A+\nSEMANTICS any\n"
      "GROUP-BY g\nWITHIN 10 s SLIDE 5 s");
  std::ostringstream out;
  WriteResultHeader(q->query(), out);
  ResultRow row;
  row.wid = 1;
  row.window_start_ms = 5000;
  row.window_end_ms = 15000;
  row.key = {std::string("x,y")};
  row.result.values = {BigInt(3), std::monostate{}};
  WriteResultRow(row, out);
  CHECK(out.str() ==
        "wid,window_start_ms,window_end_ms,g,COUNT(*),AVG(A.v)\n"
        "1,5000,15000,\"x,y\",3,\n");
}

}  // namespace
}  // namespace trendagg
