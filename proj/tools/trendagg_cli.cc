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

// Command-line driver over the C API: run, bench, gen, oracle.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "trendagg/trendagg.h"

namespace {

struct Args {
  std::string query_path;
  std::string input_path;
  std::string output_path = "-";
  std::string schema_path;
  std::string semantics;
  bool emit_empty = false;
  int reps = 3;
  uint64_t oracle_cap = 1000000;
  bool describe = false;
  ta_generator_options gen{};
};

int Fail(ta_status status) {
  std::fprintf(stderr, "error: %s: %s\n", ta_status_name(status),
               ta_last_error());
  return static_cast<int>(status);
}

int FailText(const std::string& message) {
  std::fprintf(stderr, "error: %s\n", message.c_str());
  return static_cast<int>(TA_ERR_INVALID_ARGUMENT);
}

bool ReadText(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream s;
  s << in.rdbuf();
  out = s.str();
  return true;
}

void AddQueryOptions(CLI::App* cmd, Args& a) {
  cmd->add_option("-q,--query", a.query_path, "Query file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--semantics", a.semantics,
                  "Override the query's SEMANTICS (any, next, cont)");
  cmd->add_option("--schema", a.schema_path,
                  "Schema file; by default the schema is inferred from the input")
      ->check(CLI::ExistingFile);
  cmd->add_flag("--emit-empty", a.emit_empty,
                "Also emit windows without any trend");
}

void AddGeneratorOptions(CLI::App* cmd, Args& a) {
  cmd->add_option("--passengers", a.gen.passengers, "Generated passengers")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--stations", a.gen.stations, "Generated stations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--duration", a.gen.duration_s, "Generated seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", a.gen.seed, "Generator seed")->capture_default_str();
}

void AddSourceOptions(CLI::App* cmd, Args& a) {
  CLI::Option* input =
      cmd->add_option("-i,--input", a.input_path,
                      "Event CSV; without it events come from the generator")
          ->check(CLI::ExistingFile);
  AddGeneratorOptions(cmd, a);
  for (const char* name : {"--passengers", "--stations", "--duration", "--seed"}) {
    input->excludes(cmd->get_option(name));
  }
}

// Loads the query and applies --semantics. Returns nonzero on failure.
int LoadQuery(const Args& a, ta_query** q) {
  std::string schema;
  if (!a.schema_path.empty() && !ReadText(a.schema_path, schema)) {
    return FailText("cannot read " + a.schema_path);
  }
  ta_status s = ta_query_parse_file(a.query_path.c_str(),
                                    a.schema_path.empty() ? nullptr
                                                          : schema.c_str(),
                                    q);
  if (s != TA_OK) return Fail(s);
  if (!a.semantics.empty()) {
    s = ta_query_set_semantics(*q, a.semantics.c_str());
    if (s != TA_OK) {
      ta_query_free(*q);
      return Fail(s);
    }
  }
  return 0;
}

ta_source Source(const Args& a) {
  ta_source src{};
  src.csv_path = a.input_path.empty() ? nullptr : a.input_path.c_str();
  src.generator = a.gen;
  return src;
}

int Run(const Args& a) {
  ta_query* q = nullptr;
  if (int rc = LoadQuery(a, &q)) return rc;
  if (a.describe) {
    char* text = nullptr;
    if (ta_query_describe(q, &text) == TA_OK) {
      std::fputs(text, stderr);
      ta_string_free(text);
    }
  }
  const ta_source src = Source(a);
  const ta_status s =
      ta_run(q, &src, a.emit_empty, a.output_path.c_str(), nullptr);
  ta_query_free(q);
  return s == TA_OK ? 0 : Fail(s);
}

int Bench(const Args& a) {
  ta_query* q = nullptr;
  if (int rc = LoadQuery(a, &q)) return rc;
  const ta_source src = Source(a);
  ta_bench_report r{};
  const ta_status s = ta_bench(q, &src, a.reps, a.emit_empty, &r);
  const std::string granularity = ta_query_granularity(q);
  ta_query_free(q);
  if (s != TA_OK) return Fail(s);
  std::printf(
      "granularity: %s\nreps: %d\nevents: %.0f\nrows: %.0f\n"
      "wall_seconds: %.6f\nlatency_ms: %.6f\nthroughput_eps: %.1f\n"
      "peak_state_entries: %.1f\npeak_instance_entries: %.1f\n"
      "peak_instances: %.1f\nmax_rss_kb: %ld\n",
      granularity.c_str(), r.reps, r.events, r.rows, r.wall_seconds,
      r.latency_ms, r.throughput_eps, r.peak_state, r.peak_instance_state,
      r.peak_instances, r.max_rss_kb);
  return 0;
}

int Gen(const Args& a) {
  const ta_status s = ta_generate(&a.gen, a.output_path.c_str());
  return s == TA_OK ? 0 : Fail(s);
}

int Oracle(const Args& a) {
  ta_query* q = nullptr;
  if (int rc = LoadQuery(a, &q)) return rc;
  const ta_source src = Source(a);
  const ta_status s = ta_oracle(q, &src, a.oracle_cap, a.emit_empty,
                                a.output_path.c_str());
  ta_query_free(q);
  return s == TA_OK ? 0 : Fail(s);
}

}  // namespace

int main(int argc, char** argv) {
  Args a;
  ta_generator_defaults(&a.gen);

  CLI::App app{"Kleene-pattern trend aggregation over event streams"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ta_version());

  CLI::App* run = app.add_subcommand("run", "Evaluate a query over a stream");
  AddQueryOptions(run, a);
  AddSourceOptions(run, a);
  run->add_option("-o,--output", a.output_path, "Result CSV (- for stdout)");
  run->add_flag("--describe", a.describe,
                "Print the parsed query and its plan to stderr");

  CLI::App* bench = app.add_subcommand(
      "bench", "Measure latency, throughput and peak state size");
  AddQueryOptions(bench, a);
  AddSourceOptions(bench, a);
  bench->add_option("--reps", a.reps, "Repetitions to average")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI::App* gen = app.add_subcommand("gen", "Write a synthetic transport stream");
  AddGeneratorOptions(gen, a);
  gen->add_option("-o,--output", a.output_path, "Event CSV (- for stdout)");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "List every trend by brute force, then aggregate");
  AddQueryOptions(oracle, a);
  AddSourceOptions(oracle, a);
  oracle->add_option("-o,--output", a.output_path, "Output (- for stdout)");
  oracle->add_option("--oracle-cap", a.oracle_cap,
                     "Abort when one window has more trends than this")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (*run) return Run(a);
  if (*bench) return Bench(a);
  if (*gen) return Gen(a);
  return Oracle(a);
}
