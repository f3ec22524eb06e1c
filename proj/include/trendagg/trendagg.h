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

#ifndef TRENDAGG_TRENDAGG_H_
#define TRENDAGG_TRENDAGG_H_

#include <stddef.h>
#include <stdint.h>

#if defined(TRENDAGG_BUILDING)
#define TA_API __attribute__((visibility("default")))
#else
#define TA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ta_status {
  TA_OK = 0,
  TA_ERR_SYNTAX = 1,
  TA_ERR_UNKNOWN_TYPE = 2,
  TA_ERR_UNKNOWN_ATTRIBUTE = 3,
  TA_ERR_DUPLICATE_TYPE = 4,
  TA_ERR_MALFORMED_ROW = 5,
  TA_ERR_OUT_OF_ORDER = 6,
  TA_ERR_MISSING_ATTRIBUTE = 7,
  TA_ERR_MISSING_GROUP_ATTRIBUTE = 8,
  TA_ERR_EXPLOSION_GUARD = 9,
  TA_ERR_IO = 10,
  TA_ERR_INVALID_ARGUMENT = 11,
  TA_ERR_TYPE_MISMATCH = 12,
  TA_ERR_INTERNAL = 99
} ta_status;

typedef struct ta_query ta_query;
typedef struct ta_runtime ta_runtime;

/* Message of the last failed call on this thread; "" after success. */
TA_API const char* ta_last_error(void);
TA_API const char* ta_status_name(ta_status status);
TA_API const char* ta_version(void);
/* Frees strings returned through char** out-parameters. */
TA_API void ta_string_free(char* s);

/* Queries. `schema_text` may be NULL for an open schema inferred from the
   data; otherwise one `Type: attr:kind, ...` line per event type. */
TA_API ta_status ta_query_parse(const char* text, const char* schema_text,
                                ta_query** out);
TA_API ta_status ta_query_parse_file(const char* path, const char* schema_text,
                                     ta_query** out);
/* "any", "next", "cont" or their long names; re-plans the query. */
TA_API ta_status ta_query_set_semantics(ta_query* query, const char* semantics);
/* Normalized query text plus the granularity plan. */
TA_API ta_status ta_query_describe(const ta_query* query, char** out);
/* "pattern", "type" or "mixed". */
TA_API const char* ta_query_granularity(const ta_query* query);
TA_API void ta_query_free(ta_query* query);

typedef enum ta_value_kind {
  TA_INT = 0,
  TA_FLOAT = 1,
  TA_STRING = 2
} ta_value_kind;

typedef struct ta_attr {
  const char* name;
  ta_value_kind kind;
  int64_t int_value;
  double float_value;
  const char* string_value;
} ta_attr;

typedef struct ta_stats {
  uint64_t events_in;
  uint64_t events_routed;
  uint64_t rows_emitted;
  uint64_t peak_instances;
  uint64_t peak_state_entries;
  uint64_t peak_instance_entries;
  double mean_latency_ms;
} ta_stats;

/* Push-based runtime over one query. Closed windows produce result rows
   in the CSV layout `wid,window_start_ms,window_end_ms,<partition
   attributes>,<aggregates>`. */
TA_API ta_status ta_runtime_create(const ta_query* query, int emit_empty,
                                   ta_runtime** out);
TA_API ta_status ta_runtime_push(ta_runtime* rt, int64_t time_ms,
                                 const char* type, const ta_attr* attrs,
                                 size_t num_attrs);
/* Flushes all open windows; further pushes fail. */
TA_API ta_status ta_runtime_finish(ta_runtime* rt);
/* Header line of the result CSV, newline-terminated. */
TA_API ta_status ta_runtime_header(const ta_runtime* rt, char** out);
/* Rows emitted since the last call, as CSV lines. */
TA_API ta_status ta_runtime_take_rows(ta_runtime* rt, char** out,
                                      size_t* num_rows);
TA_API ta_status ta_runtime_stats(const ta_runtime* rt, ta_stats* out);
TA_API void ta_runtime_free(ta_runtime* rt);

typedef struct ta_generator_options {
  int64_t passengers;
  int64_t stations;
  int64_t duration_s;
  uint64_t seed;
} ta_generator_options;

TA_API void ta_generator_defaults(ta_generator_options* options);

/* Event source for whole-stream calls: a CSV file, or the transport
   generator when `csv_path` is NULL. */
typedef struct ta_source {
  const char* csv_path;
  ta_generator_options generator;
} ta_source;

/* `output_path` NULL or "-" writes to standard output. */
TA_API ta_status ta_run(const ta_query* query, const ta_source* source,
                        int emit_empty, const char* output_path,
                        ta_stats* stats);
TA_API ta_status ta_generate(const ta_generator_options* options,
                             const char* output_path);
/* Brute-force enumeration: lists every trend per window and partition,
   then the result rows. Fails with TA_ERR_EXPLOSION_GUARD beyond
   `max_trends` trends in one window. */
TA_API ta_status ta_oracle(const ta_query* query, const ta_source* source,
                           uint64_t max_trends, int emit_empty,
                           const char* output_path);

typedef struct ta_bench_report {
  int reps;
  double events;
  double rows;
  double wall_seconds;
  double latency_ms;
  double throughput_eps;
  double peak_state;
  double peak_instance_state;
  double peak_instances;
  long max_rss_kb;
} ta_bench_report;

TA_API ta_status ta_bench(const ta_query* query, const ta_source* source,
                          int reps, int emit_empty, ta_bench_report* out);

#ifdef __cplusplus
}
#endif

#endif  /* TRENDAGG_TRENDAGG_H_ */
