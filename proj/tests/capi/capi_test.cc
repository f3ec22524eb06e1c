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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <tuple>

#include "doctest.h"
#include "trendagg/trendagg.h"

namespace {

const char kQuery[] =
    "RETURN COUNT(*), SUM(A.v)\n"
    "PATTERN (SEQ(A+, B))+\n"
    "SEMANTICS any\n"
    "WITHIN 10 s\n";

std::string Take(char* s) {
  std::string out = s == nullptr ? "" : s;
  ta_string_free(s);
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

ta_query* Parse(const char* text) {
  ta_query* q = nullptr;
  REQUIRE(ta_query_parse(text, nullptr, &q) == TA_OK);
  return q;
}

void PushExample(ta_runtime* rt) {
  const char* types = "ABAACBAB";
  const int64_t values[] = {5, 3, 5, 5, 0, 9, 5, 4};
  for (int i = 0; i < 8; ++i) {
    const char type[2] = {types[i], 0};
    ta_attr v{"v", TA_INT, values[i], 0.0, nullptr};
    REQUIRE(ta_runtime_push(rt, (i + 1) * 1000, type, &v, 1) == TA_OK);
  }
}

TEST_CASE("push runtime over the running example") {
  ta_query* q = Parse(kQuery);
  CHECK(std::string(ta_query_granularity(q)) == "type");
  ta_runtime* rt = nullptr;
  REQUIRE(ta_runtime_create(q, 0, &rt) == TA_OK);
  PushExample(rt);

  char* text = nullptr;
  size_t n = 99;
  REQUIRE(ta_runtime_take_rows(rt, &text, &n) == TA_OK);
  CHECK(n == 0);
  CHECK(Take(text).empty());

  REQUIRE(ta_runtime_finish(rt) == TA_OK);
  REQUIRE(ta_runtime_header(rt, &text) == TA_OK);
  CHECK(Take(text) == "wid,window_start_ms,window_end_ms,COUNT(*),SUM(A.v)\n");
  REQUIRE(ta_runtime_take_rows(rt, &text, &n) == TA_OK);
  CHECK(n == 1);
  const std::string row = Take(text);
  CHECK(row.rfind("0,0,10000,43,", 0) == 0);

  ta_stats stats{};
  REQUIRE(ta_runtime_stats(rt, &stats) == TA_OK);
  CHECK(stats.events_in == 8);
  CHECK(stats.rows_emitted == 1);
  CHECK(stats.peak_instance_entries == 2);

  ta_attr v{"v", TA_INT, 1, 0.0, nullptr};
  CHECK(ta_runtime_push(rt, 9000, "A", &v, 1) != TA_OK);
  ta_runtime_free(rt);
  ta_query_free(q);
}

TEST_CASE("semantics switch re-plans") {
  ta_query* q = Parse(kQuery);
  for (const auto& [name, plan, count] :
       {std::tuple{"next", "pattern", "8"}, std::tuple{"cont", "pattern", "2"},
        std::tuple{"skip-till-any-match", "type", "43"}}) {
    CAPTURE(name);
    REQUIRE(ta_query_set_semantics(q, name) == TA_OK);
    CHECK(std::string(ta_query_granularity(q)) == plan);
    ta_runtime* rt = nullptr;
    REQUIRE(ta_runtime_create(q, 0, &rt) == TA_OK);
    PushExample(rt);
    REQUIRE(ta_runtime_finish(rt) == TA_OK);
    char* text = nullptr;
    REQUIRE(ta_runtime_take_rows(rt, &text, nullptr) == TA_OK);
    CHECK(Take(text).rfind(std::string("0,0,10000,") + count + ",", 0) == 0);
    ta_runtime_free(rt);
  }
  CHECK(ta_query_set_semantics(q, "sometimes") == TA_ERR_INVALID_ARGUMENT);
  ta_query_free(q);
}

TEST_CASE("errors carry a status and a message") {
  ta_query* q = nullptr;
  CHECK(ta_query_parse("RETURN COUNT(*)\nPATTERN SEQ(A, A)\nSEMANTICS any\n"
                       "WITHIN 1 s",
                       nullptr, &q) == TA_ERR_DUPLICATE_TYPE);
  CHECK(q == nullptr);
  CHECK(std::string(ta_last_error()).size() > 0);
  CHECK(ta_query_parse("RETURN", nullptr, &q) == TA_ERR_SYNTAX);
  CHECK(ta_query_parse(nullptr, nullptr, &q) == TA_ERR_INVALID_ARGUMENT);
  CHECK(ta_query_parse_file("/nonexistent/q", nullptr, &q) == TA_ERR_IO);

  CHECK(std::string(ta_status_name(TA_OK)) == "OK");
  CHECK(std::string(ta_status_name(TA_ERR_OUT_OF_ORDER)) == "OutOfOrder");
  CHECK(std::string(ta_version()).size() > 0);

  q = Parse(kQuery);
  ta_runtime* rt = nullptr;
  REQUIRE(ta_runtime_create(q, 0, &rt) == TA_OK);
  ta_attr v{"v", TA_INT, 1, 0.0, nullptr};
  REQUIRE(ta_runtime_push(rt, 5000, "A", &v, 1) == TA_OK);
  CHECK(ta_runtime_push(rt, 4000, "A", &v, 1) == TA_ERR_OUT_OF_ORDER);
  CHECK(ta_runtime_push(rt, 6000, nullptr, &v, 1) == TA_ERR_INVALID_ARGUMENT);
  ta_runtime_free(rt);
  ta_query_free(q);
}

TEST_CASE("whole-stream calls") {
  const std::string dir = TRENDAGG_TEST_DATA;
  ta_query* q = nullptr;
  REQUIRE(ta_query_parse_file((dir + "/running_example.q").c_str(), nullptr,
                              &q) == TA_OK);
  ta_source src{};
  const std::string csv = dir + "/running_example.csv";
  src.csv_path = csv.c_str();

  const std::string out = "capi_run_out.csv";
  ta_stats stats{};
  REQUIRE(ta_run(q, &src, 0, out.c_str(), &stats) == TA_OK);
  CHECK(stats.events_in == 8);
  const std::string rows = ReadFile(out);
  CHECK(rows.find("\n0,0,10000,43,") != std::string::npos);

  const std::string trends = "capi_oracle_out.txt";
  REQUIRE(ta_oracle(q, &src, 1000, 0, trends.c_str()) == TA_OK);
  CHECK(ReadFile(trends).find("43 trends") != std::string::npos);
  CHECK(ta_oracle(q, &src, 10, 0, trends.c_str()) == TA_ERR_EXPLOSION_GUARD);

  ta_bench_report report{};
  REQUIRE(ta_bench(q, &src, 2, 0, &report) == TA_OK);
  CHECK(report.reps == 2);
  CHECK(report.events == 8);
  CHECK(report.rows == 1);

  ta_source bad{};
  bad.csv_path = "/nonexistent.csv";
  CHECK(ta_run(q, &bad, 0, out.c_str(), nullptr) == TA_ERR_IO);
  ta_query_free(q);
  std::remove(out.c_str());
  std::remove(trends.c_str());
}

TEST_CASE("generator output is deterministic") {
  ta_generator_options options;
  ta_generator_defaults(&options);
  options.duration_s = 300;
  options.seed = 3;
  REQUIRE(ta_generate(&options, "capi_gen_a.csv") == TA_OK);
  REQUIRE(ta_generate(&options, "capi_gen_b.csv") == TA_OK);
  const std::string a = ReadFile("capi_gen_a.csv");
  CHECK(a.size() > 100);
  CHECK(a == ReadFile("capi_gen_b.csv"));
  std::remove("capi_gen_a.csv");
  std::remove("capi_gen_b.csv");
}

}  // namespace
