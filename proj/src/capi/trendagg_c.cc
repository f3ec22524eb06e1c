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

#include "trendagg/trendagg.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "core/bench.h"
#include "core/compiled_query.h"
#include "core/csv_stream.h"
#include "core/error.h"
#include "core/generator.h"
#include "core/oracle.h"
#include "core/window_manager.h"

struct ta_query {
  trendagg::Schema schema;
  std::shared_ptr<const trendagg::CompiledQuery> compiled;
};

struct ta_runtime {
  std::shared_ptr<const trendagg::CompiledQuery> query;
  std::unique_ptr<trendagg::WindowManager> manager;
  std::vector<trendagg::ResultRow> rows;
  bool finished = false;
};

namespace {

using namespace trendagg;

thread_local std::string last_error;

// Runs `f`, translating exceptions into status codes and the thread's last
// error message.
template <typename F>
ta_status Guard(F&& f) {
  try {
    f();
    last_error.clear();
    return TA_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<ta_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TA_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TA_ERR_INTERNAL;
  }
}

void Require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Standard output for NULL or "-", else a file.
class Output {
 public:
  explicit Output(const char* path) {
    if (path == nullptr || std::strcmp(path, "-") == 0) return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw Error(ErrorCode::kIo, std::string("cannot write ") + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void Close() {
    stream().flush();
    if (!stream()) throw Error(ErrorCode::kIo, "write failed");
  }

 private:
  std::ofstream file_;
};

TransportOptions ToOptions(const ta_generator_options& g) {
  return TransportOptions{g.passengers, g.stations, g.duration_s, g.seed};
}

std::unique_ptr<StreamSource> OpenSource(const ta_query& q,
                                         const ta_source& source) {
  if (source.csv_path != nullptr) {
    return std::make_unique<OrderedSource>(
        OpenCsvStream(source.csv_path, q.schema));
  }
  return std::make_unique<TransportGenerator>(ToOptions(source.generator));
}

void FillStats(const RuntimeStats& s, ta_stats* out) {
  out->events_in = s.events_in;
  out->events_routed = s.events_routed;
  out->rows_emitted = s.rows_emitted;
  out->peak_instances = s.peak_instances;
  out->peak_state_entries = s.peak_state_entries;
  out->peak_instance_entries = s.peak_instance_entries;
  out->mean_latency_ms = s.mean_latency_ms();
}

ta_query* Build(const char* text, const char* schema_text) {
  auto q = std::make_unique<ta_query>();
  q->schema = schema_text == nullptr ? Schema::Open() : Schema::Parse(schema_text);
  q->compiled = std::make_shared<const CompiledQuery>(ParseQuery(text, q->schema));
  return q.release();
}

}  // namespace

extern "C" {

const char* ta_last_error(void) { return last_error.c_str(); }

const char* ta_status_name(ta_status status) {
  if (status == TA_OK) return "OK";
  if (status == TA_ERR_INTERNAL) return "Internal";
  return ErrorCodeName(static_cast<ErrorCode>(status));
}

const char* ta_version(void) { return "1.0.0"; }

void ta_string_free(char* s) { std::free(s); }

ta_status ta_query_parse(const char* text, const char* schema_text,
                         ta_query** out) {
  return Guard([&] {
    Require(text != nullptr && out != nullptr, "null argument");
    *out = Build(text, schema_text);
  });
}

ta_status ta_query_parse_file(const char* path, const char* schema_text,
                              ta_query** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    *out = Build(ReadFile(path).c_str(), schema_text);
  });
}

ta_status ta_query_set_semantics(ta_query* query, const char* semantics) {
  return Guard([&] {
    Require(query != nullptr && semantics != nullptr, "null argument");
    std::optional<Semantics> s = ParseSemantics(semantics);
    if (!s) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("unknown semantics '") + semantics + "'");
    }
    Query q = query->compiled->query();
    q.semantics = *s;
    query->compiled = std::make_shared<const CompiledQuery>(std::move(q));
  });
}

ta_status ta_query_describe(const ta_query* query, char** out) {
  return Guard([&] {
    Require(query != nullptr && out != nullptr, "null argument");
    const GranularityPlan& plan = query->compiled->plan();
    std::string s = query->compiled->query().ToString();
    s += "# granularity " + std::string(GranularityName(plan.mode));
    for (const auto& [label, types] :
         {std::pair{"event-grained", &plan.event_grained},
          std::pair{"type-grained", &plan.type_grained}}) {
      s += std::string("\n# ") + label + ":";
      for (const std::string& t : *types) s += " " + t;
    }
    *out = CopyString(s + "\n");
  });
}

const char* ta_query_granularity(const ta_query* query) {
  return query == nullptr ? "" : GranularityName(query->compiled->plan().mode);
}

void ta_query_free(ta_query* query) { delete query; }

ta_status ta_runtime_create(const ta_query* query, int emit_empty,
                            ta_runtime** out) {
  return Guard([&] {
    Require(query != nullptr && out != nullptr, "null argument");
    auto rt = std::make_unique<ta_runtime>();
    rt->query = query->compiled;
    rt->manager = std::make_unique<WindowManager>(
        rt->query, WindowOptions{.emit_empty = emit_empty != 0});
    *out = rt.release();
  });
}

ta_status ta_runtime_push(ta_runtime* rt, int64_t time_ms, const char* type,
                          const ta_attr* attrs, size_t num_attrs) {
  return Guard([&] {
    Require(rt != nullptr && type != nullptr, "null argument");
    Require(num_attrs == 0 || attrs != nullptr, "null attributes");
    Require(!rt->finished, "runtime already finished");
    Require(time_ms >= 0, "negative time");
    Event e;
    e.time_ms = time_ms;
    e.type = type;
    for (size_t i = 0; i < num_attrs; ++i) {
      const ta_attr& a = attrs[i];
      Require(a.name != nullptr, "null attribute name");
      switch (a.kind) {
        case TA_INT:
          e.Set(a.name, a.int_value);
          break;
        case TA_FLOAT:
          e.Set(a.name, a.float_value);
          break;
        case TA_STRING:
          Require(a.string_value != nullptr, "null string value");
          e.Set(a.name, std::string(a.string_value));
          break;
        default:
          Require(false, "bad attribute kind");
      }
    }
    rt->manager->Push(e, rt->rows);
  });
}

ta_status ta_runtime_finish(ta_runtime* rt) {
  return Guard([&] {
    Require(rt != nullptr, "null argument");
    if (rt->finished) return;
    rt->manager->Finish(rt->rows);
    rt->finished = true;
  });
}

ta_status ta_runtime_header(const ta_runtime* rt, char** out) {
  return Guard([&] {
    Require(rt != nullptr && out != nullptr, "null argument");
    std::ostringstream s;
    WriteResultHeader(rt->query->query(), s);
    *out = CopyString(s.str());
  });
}

ta_status ta_runtime_take_rows(ta_runtime* rt, char** out, size_t* num_rows) {
  return Guard([&] {
    Require(rt != nullptr && out != nullptr, "null argument");
    std::ostringstream s;
    for (const ResultRow& r : rt->rows) WriteResultRow(r, s);
    *out = CopyString(s.str());
    if (num_rows != nullptr) *num_rows = rt->rows.size();
    rt->rows.clear();
  });
}

ta_status ta_runtime_stats(const ta_runtime* rt, ta_stats* out) {
  return Guard([&] {
    Require(rt != nullptr && out != nullptr, "null argument");
    FillStats(rt->manager->stats(), out);
  });
}

void ta_runtime_free(ta_runtime* rt) { delete rt; }

void ta_generator_defaults(ta_generator_options* options) {
  if (options == nullptr) return;
  const TransportOptions d;
  *options = ta_generator_options{d.passengers, d.stations, d.duration_s, d.seed};
}

ta_status ta_run(const ta_query* query, const ta_source* source,
                 int emit_empty, const char* output_path, ta_stats* stats) {
  return Guard([&] {
    Require(query != nullptr && source != nullptr, "null argument");
    std::unique_ptr<StreamSource> src = OpenSource(*query, *source);
    Output out(output_path);
    WriteResultHeader(query->compiled->query(), out.stream());
    RunResult r = RunStream(query->compiled, *src,
                            WindowOptions{.emit_empty = emit_empty != 0},
                            [&](const ResultRow& row) {
                              WriteResultRow(row, out.stream());
                            });
    out.Close();
    if (stats != nullptr) FillStats(r.stats, stats);
  });
}

ta_status ta_generate(const ta_generator_options* options,
                      const char* output_path) {
  return Guard([&] {
    Require(options != nullptr, "null argument");
    TransportGenerator gen(ToOptions(*options));
    Output out(output_path);
    WriteCsvStream(Drain(gen), out.stream());
    out.Close();
  });
}

ta_status ta_oracle(const ta_query* query, const ta_source* source,
                    uint64_t max_trends, int emit_empty,
                    const char* output_path) {
  return Guard([&] {
    Require(query != nullptr && source != nullptr, "null argument");
    std::unique_ptr<StreamSource> src = OpenSource(*query, *source);
    const std::vector<Event> events = Drain(*src);
    OracleOptions options;
    options.max_trends = max_trends;
    const Query& q = query->compiled->query();
    const std::vector<OracleRow> rows =
        RunOracle(events, q, emit_empty != 0, options);
    Output out(output_path);
    std::ostream& os = out.stream();
    for (const OracleRow& r : rows) {
      os << "# wid " << r.row.wid << " [" << r.row.window_start_ms << ","
         << r.row.window_end_ms << ")";
      const std::vector<std::string> attrs = q.PartitionAttributes();
      for (size_t i = 0; i < attrs.size(); ++i) {
        os << " " << attrs[i] << "=" << FormatScalar(r.row.key[i]);
      }
      os << ": " << r.trends.size() << " trends\n";
      for (const Trend& t : r.trends) os << FormatTrend(r.slice, t) << "\n";
    }
    WriteResultHeader(q, os);
    for (const OracleRow& r : rows) WriteResultRow(r.row, os);
    out.Close();
  });
}

ta_status ta_bench(const ta_query* query, const ta_source* source, int reps,
                   int emit_empty, ta_bench_report* out) {
  return Guard([&] {
    Require(query != nullptr && source != nullptr && out != nullptr,
            "null argument");
    const BenchReport r = Bench(
        query->compiled, [&] { return OpenSource(*query, *source); }, reps,
        WindowOptions{.emit_empty = emit_empty != 0});
    *out = ta_bench_report{r.reps,       r.events,         r.rows,
                           r.wall_seconds, r.latency_ms,   r.throughput_eps,
                           r.peak_state, r.peak_instance_state,
                           r.peak_instances, r.max_rss_kb};
  });
}

}  // extern "C"
