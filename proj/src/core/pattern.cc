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
#include <sstream>

#include "core/error.h"
#include "core/query.h"

namespace trendagg {

Pattern Pattern::Type(std::string type) {
  Pattern p;
  p.kind = Kind::kType;
  p.type = std::move(type);
  return p;
}

Pattern Pattern::Plus(Pattern inner) {
  Pattern p;
  p.kind = Kind::kPlus;
  p.children.push_back(std::move(inner));
  return p;
}

Pattern Pattern::Seq(Pattern first, Pattern second) {
  Pattern p;
  p.kind = Kind::kSeq;
  p.children.push_back(std::move(first));
  p.children.push_back(std::move(second));
  return p;
}

Pattern Pattern::SeqOf(std::vector<Pattern> parts) {
  if (parts.empty()) {
    throw Error(ErrorCode::kSyntax, "SEQ needs at least one sub-pattern");
  }
  Pattern acc = std::move(parts.back());
  for (size_t i = parts.size() - 1; i-- > 0;) {
    acc = Seq(std::move(parts[i]), std::move(acc));
  }
  return acc;
}

namespace {

void CollectTypes(const Pattern& p, std::vector<std::string>& out) {
  if (p.kind == Pattern::Kind::kType) {
    out.push_back(p.type);
    return;
  }
  for (const Pattern& c : p.children) CollectTypes(c, out);
}

}  // namespace

std::vector<std::string> Pattern::Types() const {
  std::vector<std::string> all;
  CollectTypes(*this, all);
  std::vector<std::string> out;
  for (auto& t : all) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  return out;
}

std::string Pattern::ToString() const {
  switch (kind) {
    case Kind::kType:
      return type;
    case Kind::kPlus: {
      const Pattern& c = children[0];
      if (c.kind == Kind::kSeq) return "(" + c.ToString() + ")+";
      return c.ToString() + "+";
    }
    case Kind::kSeq:
      return "SEQ(" + children[0].ToString() + "," + children[1].ToString() +
             ")";
  }
  return "";
}

void ValidatePattern(const Pattern& pattern) {
  std::vector<std::string> all;
  CollectTypes(pattern, all);
  if (all.empty()) throw Error(ErrorCode::kSyntax, "empty pattern");
  std::set<std::string> seen;
  for (const auto& t : all) {
    if (!seen.insert(t).second) {
      throw Error(ErrorCode::kDuplicateTypeInPattern,
                  "event type '" + t + "' occurs more than once in pattern");
    }
  }
}

namespace {

// Every sub-pattern is non-nullable and starts/ends with exactly one type.
struct Positions {
  std::string first;
  std::string last;
};

Positions Analyze(const Pattern& p,
                  std::map<std::string, std::set<std::string>>& pred) {
  switch (p.kind) {
    case Pattern::Kind::kType:
      pred[p.type];
      return {p.type, p.type};
    case Pattern::Kind::kPlus: {
      Positions inner = Analyze(p.children[0], pred);
      pred[inner.first].insert(inner.last);
      return inner;
    }
    case Pattern::Kind::kSeq: {
      Positions a = Analyze(p.children[0], pred);
      Positions b = Analyze(p.children[1], pred);
      pred[b.first].insert(a.last);
      return {a.first, b.last};
    }
  }
  return {};
}

}  // namespace

PatternTemplate CompileTemplate(const Pattern& pattern) {
  ValidatePattern(pattern);
  PatternTemplate t;
  Positions pos = Analyze(pattern, t.pred_types);
  t.start_type = pos.first;
  t.end_type = pos.last;
  for (const auto& [type, preds] : t.pred_types) {
    if (type != t.start_type && type != t.end_type) t.mid_types.insert(type);
  }
  return t;
}

std::vector<std::string> PatternTemplate::Types() const {
  std::vector<std::string> out;
  for (const auto& [type, preds] : pred_types) out.push_back(type);
  return out;
}

bool PatternTemplate::IsPredecessor(const std::string& prev,
                                    const std::string& next) const {
  auto it = pred_types.find(next);
  return it != pred_types.end() && it->second.count(prev) > 0;
}

bool LocalPredicate::Holds(const Event& e) const {
  const Scalar* v = e.Find(attr);
  if (v == nullptr) {
    throw Error(ErrorCode::kMissingAttribute,
                "event of type '" + e.type + "' lacks attribute '" + attr + "'");
  }
  return EvalCompare(*v, op, constant);
}

bool AdjacentPredicate::Holds(const Event& prev, const Event& next) const {
  const Scalar* a = prev.Find(prev_attr);
  const Scalar* b = next.Find(next_attr);
  if (a == nullptr || b == nullptr) {
    throw Error(ErrorCode::kMissingAttribute,
                "adjacent predicate needs '" + prev_type + "." + prev_attr +
                    "' and '" + next_type + "." + next_attr + "'");
  }
  return EvalCompare(*a, op, *b);
}

std::string PredicateToString(const Predicate& p) {
  if (const auto* l = std::get_if<LocalPredicate>(&p)) {
    std::string c = FormatScalar(l->constant);
    if (l->constant.index() == 2) c = "'" + c + "'";
    return l->type + "." + l->attr + " " + CompareOpText(l->op) + " " + c;
  }
  if (const auto* e = std::get_if<EquivalencePredicate>(&p)) {
    return "[" + e->attr + "]";
  }
  const auto& a = std::get<AdjacentPredicate>(p);
  return a.prev_type + "." + a.prev_attr + " " + CompareOpText(a.op) +
         " NEXT(" + a.next_type + ")." + a.next_attr;
}

const char* SemanticsName(Semantics s) {
  switch (s) {
    case Semantics::kAny: return "any";
    case Semantics::kNext: return "next";
    case Semantics::kCont: return "cont";
  }
  return "?";
}

std::optional<Semantics> ParseSemantics(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (t == "any" || t == "skip-till-any-match") return Semantics::kAny;
  if (t == "next" || t == "skip-till-next-match") return Semantics::kNext;
  if (t == "cont" || t == "contiguous") return Semantics::kCont;
  return std::nullopt;
}

std::string AggSpec::ToString() const {
  switch (kind) {
    case Kind::kCountStar: return "COUNT(*)";
    case Kind::kCountType: return "COUNT(" + type + ")";
    case Kind::kMin: return "MIN(" + type + "." + attr + ")";
    case Kind::kMax: return "MAX(" + type + "." + attr + ")";
    case Kind::kSum: return "SUM(" + type + "." + attr + ")";
    case Kind::kAvg: return "AVG(" + type + "." + attr + ")";
  }
  return "";
}

std::vector<std::string> Query::PartitionAttributes() const {
  std::vector<std::string> out = group_by;
  for (const Predicate& p : predicates) {
    if (const auto* e = std::get_if<EquivalencePredicate>(&p)) {
      if (std::find(out.begin(), out.end(), e->attr) == out.end()) {
        out.push_back(e->attr);
      }
    }
  }
  return out;
}

std::vector<LocalPredicate> Query::LocalPredicates() const {
  std::vector<LocalPredicate> out;
  for (const Predicate& p : predicates) {
    if (const auto* l = std::get_if<LocalPredicate>(&p)) out.push_back(*l);
  }
  return out;
}

std::vector<AdjacentPredicate> Query::AdjacentPredicates() const {
  std::vector<AdjacentPredicate> out;
  for (const Predicate& p : predicates) {
    if (const auto* a = std::get_if<AdjacentPredicate>(&p)) out.push_back(*a);
  }
  return out;
}

std::string Query::ToString() const {
  std::ostringstream out;
  out << "RETURN ";
  bool first = true;
  for (const auto& a : return_attrs) {
    out << (first ? "" : ", ") << a;
    first = false;
  }
  for (const auto& a : aggregates) {
    out << (first ? "" : ", ") << a.ToString();
    first = false;
  }
  out << "\nPATTERN " << pattern.ToString() << "\nSEMANTICS "
      << SemanticsName(semantics) << "\n";
  if (!predicates.empty()) {
    out << "WHERE ";
    for (size_t i = 0; i < predicates.size(); ++i) {
      out << (i ? " AND " : "") << PredicateToString(predicates[i]);
    }
    out << "\n";
  }
  if (!group_by.empty()) {
    out << "GROUP-BY ";
    for (size_t i = 0; i < group_by.size(); ++i) {
      out << (i ? ", " : "") << group_by[i];
    }
    out << "\n";
  }
  out << "WITHIN " << window.within_ms << " ms SLIDE " << window.slide_ms
      << " ms\n";
  return out.str();
}

const char* GranularityName(Granularity g) {
  switch (g) {
    case Granularity::kPattern: return "pattern";
    case Granularity::kType: return "type";
    case Granularity::kMixed: return "mixed";
  }
  return "?";
}

GranularityPlan ClassifyAndPlan(Semantics semantics,
                                const std::vector<Predicate>& predicates,
                                const PatternTemplate& pattern_template) {
  GranularityPlan plan;
  bool has_adjacent = false;
  for (const Predicate& p : predicates) {
    const auto* a = std::get_if<AdjacentPredicate>(&p);
    if (a == nullptr) continue;
    has_adjacent = true;
    if (pattern_template.IsPredecessor(a->prev_type, a->next_type)) {
      plan.event_grained.insert(a->prev_type);
    }
  }
  if (semantics != Semantics::kAny) {
    plan.mode = Granularity::kPattern;
  } else {
    plan.mode = has_adjacent ? Granularity::kMixed : Granularity::kType;
  }
  for (const auto& type : pattern_template.Types()) {
    if (plan.mode == Granularity::kType) plan.event_grained.clear();
    if (!plan.event_grained.count(type)) plan.type_grained.insert(type);
  }
  return plan;
}

bool CheckAdjacent(const PatternTemplate& pattern_template,
                   const std::vector<Predicate>& predicates,
                   const Event& prev, const Event& next) {
  if (!pattern_template.IsPredecessor(prev.type, next.type)) return false;
  if (!(prev.time_ms < next.time_ms)) return false;
  for (const Predicate& p : predicates) {
    const auto* a = std::get_if<AdjacentPredicate>(&p);
    if (a != nullptr && a->Binds(prev.type, next.type) && !a->Holds(prev, next)) {
      return false;
    }
  }
  return true;
}

}  // namespace trendagg
