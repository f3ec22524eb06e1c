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

#ifndef TRENDAGG_CORE_QUERY_H_
#define TRENDAGG_CORE_QUERY_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "core/event.h"
#include "core/value.h"

namespace trendagg {

// Kleene pattern AST: an event type, P+, or SEQ(P1, P2).
struct Pattern {
  enum class Kind { kType, kPlus, kSeq };

  Kind kind = Kind::kType;
  std::string type;               // kType
  std::vector<Pattern> children;  // kPlus: 1, kSeq: 2

  static Pattern Type(std::string type);
  static Pattern Plus(Pattern inner);
  static Pattern Seq(Pattern first, Pattern second);
  // Right-nested SEQ over two or more parts.
  static Pattern SeqOf(std::vector<Pattern> parts);

  // Event types in order of first appearance.
  std::vector<std::string> Types() const;
  std::string ToString() const;

  bool operator==(const Pattern& other) const = default;
};

// Throws kDuplicateTypeInPattern when a type occurs more than once.
void ValidatePattern(const Pattern& pattern);

// Automaton view of a pattern whose types are all distinct. States are the
// types; `pred_types[E]` holds the types that may immediately precede E in
// a trend.
struct PatternTemplate {
  std::string start_type;
  std::string end_type;
  std::set<std::string> mid_types;
  std::map<std::string, std::set<std::string>> pred_types;

  std::vector<std::string> Types() const;
  bool IsPredecessor(const std::string& prev, const std::string& next) const;
};

PatternTemplate CompileTemplate(const Pattern& pattern);

// `type.attr op constant`; filters single events of `type`.
struct LocalPredicate {
  std::string type;
  std::string attr;
  CompareOp op = CompareOp::kEq;
  Scalar constant;

  bool Holds(const Event& e) const;
  bool operator==(const LocalPredicate&) const = default;
};

// `[attr]`: all events of a trend share the value of `attr`.
struct EquivalencePredicate {
  std::string attr;
  bool operator==(const EquivalencePredicate&) const = default;
};

// `prev_type.prev_attr op next_type.next_attr`, evaluated on two adjacent
// trend events where the first has `prev_type` and the second `next_type`.
// Written `E.a op NEXT(E).b` when both types coincide.
struct AdjacentPredicate {
  std::string prev_type;
  std::string prev_attr;
  CompareOp op = CompareOp::kEq;
  std::string next_type;
  std::string next_attr;

  bool Binds(const std::string& prev, const std::string& next) const {
    return prev == prev_type && next == next_type;
  }
  // Throws kMissingAttribute when either attribute is absent.
  bool Holds(const Event& prev, const Event& next) const;
  bool operator==(const AdjacentPredicate&) const = default;
};

using Predicate =
    std::variant<LocalPredicate, EquivalencePredicate, AdjacentPredicate>;

std::string PredicateToString(const Predicate& p);

enum class Semantics { kAny, kNext, kCont };

const char* SemanticsName(Semantics s);
std::optional<Semantics> ParseSemantics(std::string_view text);

struct AggSpec {
  enum class Kind { kCountStar, kCountType, kMin, kMax, kSum, kAvg };

  Kind kind = Kind::kCountStar;
  std::string type;  // all but kCountStar
  std::string attr;  // kMin, kMax, kSum, kAvg

  std::string ToString() const;
  bool operator==(const AggSpec&) const = default;
};

struct WindowSpec {
  int64_t within_ms = 0;
  int64_t slide_ms = 0;
};

struct Query {
  Pattern pattern;
  PatternTemplate pattern_template;
  Semantics semantics = Semantics::kAny;
  std::vector<Predicate> predicates;
  std::vector<std::string> group_by;
  WindowSpec window;
  std::vector<AggSpec> aggregates;
  // Bare attributes listed in RETURN, in order.
  std::vector<std::string> return_attrs;

  // Group-by attributes followed by equivalence attributes not already
  // grouped on.
  std::vector<std::string> PartitionAttributes() const;
  std::vector<LocalPredicate> LocalPredicates() const;
  std::vector<AdjacentPredicate> AdjacentPredicates() const;
  std::string ToString() const;
};

// Parses the clause-per-line query text:
//
//   RETURN <attr | COUNT(*) | COUNT(E) | MIN(E.a) | MAX | SUM | AVG>, ...
//   PATTERN <pattern>
//   SEMANTICS any | next | cont (or the long names)
//   WHERE <pred> AND <pred> ...          (optional)
//   GROUP-BY <attr>, ...                 (optional)
//   WITHIN <n> <unit> SLIDE <n> <unit>
//
// Keywords are case-insensitive. Pattern atoms are `Type` or `Type Alias`;
// predicates and aggregates may use either name. Throws kSyntax,
// kUnknownType, kUnknownAttribute, kDuplicateTypeInPattern or
// kTypeMismatch.
Query ParseQuery(std::string_view text, const Schema& schema);

// Validates and finishes a programmatically built query: compiles the
// template and checks identifiers against `schema`. Same errors as
// ParseQuery.
Query FinalizeQuery(Query query, const Schema& schema);

enum class Granularity { kPattern, kType, kMixed };

const char* GranularityName(Granularity g);

struct GranularityPlan {
  Granularity mode = Granularity::kType;
  std::set<std::string> event_grained;
  std::set<std::string> type_grained;

  bool operator==(const GranularityPlan&) const = default;
};

// Chooses the coarsest granularity: NEXT/CONT keep per-pattern state;
// ANY keeps per-type state unless adjacent predicates force the types
// they constrain (as predecessors) to be kept per event.
GranularityPlan ClassifyAndPlan(Semantics semantics,
                                const std::vector<Predicate>& predicates,
                                const PatternTemplate& pattern_template);
inline GranularityPlan ClassifyAndPlan(const Query& q) {
  return ClassifyAndPlan(q.semantics, q.predicates, q.pattern_template);
}

// Adjacency of two events under skip-till-any-match, given that both
// already share a partition and window: prev's type precedes next's type,
// prev happened strictly earlier, and every adjacent predicate binding the
// pair holds.
bool CheckAdjacent(const PatternTemplate& pattern_template,
                   const std::vector<Predicate>& predicates,
                   const Event& prev, const Event& next);

}  // namespace trendagg

#endif  // TRENDAGG_CORE_QUERY_H_
