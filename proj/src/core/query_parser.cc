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
#include <cctype>
#include <cmath>
#include <sstream>

#include "core/error.h"
#include "core/query.h"

namespace trendagg {
namespace {

std::string Upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return out;
}

struct Token {
  enum class Kind { kIdent, kNumber, kString, kOp, kPunct, kEnd };
  Kind kind = Kind::kEnd;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) { Tokenize(text); }

  const Token& Peek(size_t ahead = 0) const {
    const size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  Token Take() {
    Token t = Peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  bool AtEnd() const { return Peek().kind == Token::Kind::kEnd; }
  bool IsPunct(std::string_view p) const {
    return Peek().kind == Token::Kind::kPunct && Peek().text == p;
  }
  bool IsKeyword(std::string_view kw) const {
    return Peek().kind == Token::Kind::kIdent && Upper(Peek().text) == kw;
  }
  void Expect(std::string_view p) {
    if (!IsPunct(p)) Fail("expected '" + std::string(p) + "'");
    Take();
  }
  std::string ExpectIdent(const char* what) {
    if (Peek().kind != Token::Kind::kIdent) Fail(std::string("expected ") + what);
    return Take().text;
  }
  [[noreturn]] void Fail(const std::string& msg) const {
    const std::string near = AtEnd() ? "end of clause" : "'" + Peek().text + "'";
    throw Error(ErrorCode::kSyntax, msg + " near " + near);
  }

 private:
  void Tokenize(std::string_view s) {
    size_t i = 0;
    while (i < s.size()) {
      const char c = s[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t j = i;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) ||
                                s[j] == '_' || s[j] == '-')) {
          ++j;
        }
        // Hyphens only inside keyword-like words such as GROUP-BY or
        // skip-till-any-match; never trailing.
        while (j > i && s[j - 1] == '-') --j;
        tokens_.push_back({Token::Kind::kIdent, std::string(s.substr(i, j - i))});
        i = j;
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '-' && i + 1 < s.size() &&
                  std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
        size_t j = i + 1;
        while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) ||
                                s[j] == '.' || s[j] == 'e' || s[j] == 'E')) {
          ++j;
        }
        tokens_.push_back({Token::Kind::kNumber, std::string(s.substr(i, j - i))});
        i = j;
      } else if (c == '\'' || c == '"') {
        const size_t close = s.find(c, i + 1);
        if (close == std::string_view::npos) {
          throw Error(ErrorCode::kSyntax, "unterminated string literal");
        }
        tokens_.push_back(
            {Token::Kind::kString, std::string(s.substr(i + 1, close - i - 1))});
        i = close + 1;
      } else if (c == '<' || c == '>' || c == '=' || c == '!') {
        std::string op(1, c);
        if (i + 1 < s.size() && (s[i + 1] == '=' || (c == '<' && s[i + 1] == '>'))) {
          op += s[i + 1];
        }
        if (op == "!") throw Error(ErrorCode::kSyntax, "unexpected '!'");
        tokens_.push_back({Token::Kind::kOp, op});
        i += op.size();
      } else if (std::string_view("()[],.+*").find(c) != std::string_view::npos) {
        tokens_.push_back({Token::Kind::kPunct, std::string(1, c)});
        ++i;
      } else {
        throw Error(ErrorCode::kSyntax,
                    std::string("unexpected character '") + c + "'");
      }
    }
    tokens_.push_back({Token::Kind::kEnd, ""});
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

CompareOp ParseOp(const std::string& text) {
  if (text == "<") return CompareOp::kLt;
  if (text == "<=") return CompareOp::kLe;
  if (text == ">") return CompareOp::kGt;
  if (text == ">=") return CompareOp::kGe;
  if (text == "=" || text == "==") return CompareOp::kEq;
  if (text == "!=" || text == "<>") return CompareOp::kNe;
  throw Error(ErrorCode::kSyntax, "unknown comparison '" + text + "'");
}

CompareOp Mirror(CompareOp op) {
  switch (op) {
    case CompareOp::kLt: return CompareOp::kGt;
    case CompareOp::kLe: return CompareOp::kGe;
    case CompareOp::kGt: return CompareOp::kLt;
    case CompareOp::kGe: return CompareOp::kLe;
    default: return op;
  }
}

class QueryParser {
 public:
  explicit QueryParser(const Schema& schema) : schema_(schema) {}

  Query Parse(std::string_view text) {
    std::map<std::string, std::string> clauses;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      std::string_view l = line;
      while (!l.empty() && std::isspace(static_cast<unsigned char>(l.front()))) {
        l.remove_prefix(1);
      }
      if (l.empty() || l.front() == '#') continue;
      size_t kw_end = 0;
      while (kw_end < l.size() &&
             !std::isspace(static_cast<unsigned char>(l[kw_end]))) {
        ++kw_end;
      }
      std::string kw = Upper(l.substr(0, kw_end));
      std::string_view rest = l.substr(kw_end);
      if (kw == "GROUP") {
        Lexer lx(rest);
        if (!lx.IsKeyword("BY")) throw Error(ErrorCode::kSyntax, "expected GROUP BY");
        const auto by = Upper(rest).find("BY");
        rest = rest.substr(by + 2);
        kw = "GROUP-BY";
      }
      static const std::set<std::string> kKnown = {
          "RETURN", "PATTERN", "SEMANTICS", "WHERE", "GROUP-BY", "WITHIN"};
      if (!kKnown.count(kw)) {
        throw Error(ErrorCode::kSyntax, "unknown clause '" + kw + "'");
      }
      if (!clauses.emplace(kw, std::string(rest)).second) {
        throw Error(ErrorCode::kSyntax, "duplicate " + kw + " clause");
      }
    }
    for (const char* required : {"RETURN", "PATTERN", "SEMANTICS", "WITHIN"}) {
      if (!clauses.count(required)) {
        throw Error(ErrorCode::kSyntax, std::string("missing ") + required +
                                            " clause");
      }
    }

    Query q;
    {
      Lexer lx(clauses["PATTERN"]);
      q.pattern = ParsePattern(lx);
      if (!lx.AtEnd()) lx.Fail("unexpected token after pattern");
    }
    {
      std::string s = clauses["SEMANTICS"];
      s.erase(std::remove_if(s.begin(), s.end(),
                             [](unsigned char c) { return std::isspace(c); }),
              s.end());
      auto sem = ParseSemantics(s);
      if (!sem) throw Error(ErrorCode::kSyntax, "unknown semantics '" + s + "'");
      q.semantics = *sem;
    }
    if (clauses.count("WHERE")) {
      Lexer lx(clauses["WHERE"]);
      while (true) {
        q.predicates.push_back(ParsePredicate(lx));
        if (lx.AtEnd()) break;
        if (!lx.IsKeyword("AND")) lx.Fail("expected AND");
        lx.Take();
      }
    }
    if (clauses.count("GROUP-BY")) {
      Lexer lx(clauses["GROUP-BY"]);
      while (true) {
        q.group_by.push_back(lx.ExpectIdent("grouping attribute"));
        if (lx.AtEnd()) break;
        lx.Expect(",");
      }
    }
    {
      Lexer lx(clauses["WITHIN"]);
      q.window.within_ms = ParseDuration(lx);
      if (lx.IsKeyword("SLIDE")) {
        lx.Take();
        q.window.slide_ms = ParseDuration(lx);
      } else {
        q.window.slide_ms = q.window.within_ms;
      }
      if (!lx.AtEnd()) lx.Fail("unexpected token in window clause");
    }
    {
      Lexer lx(clauses["RETURN"]);
      while (true) {
        ParseReturnItem(lx, q);
        if (lx.AtEnd()) break;
        lx.Expect(",");
      }
    }
    return q;
  }

 private:
  Pattern ParsePattern(Lexer& lx) {
    Pattern p = ParsePrimary(lx);
    while (lx.IsPunct("+")) {
      lx.Take();
      p = Pattern::Plus(std::move(p));
    }
    return p;
  }

  Pattern ParsePrimary(Lexer& lx) {
    if (lx.IsPunct("(")) {
      lx.Take();
      Pattern p = ParsePattern(lx);
      lx.Expect(")");
      return p;
    }
    if (lx.IsKeyword("SEQ") && lx.Peek(1).kind == Token::Kind::kPunct &&
        lx.Peek(1).text == "(") {
      lx.Take();
      lx.Take();
      std::vector<Pattern> parts;
      parts.push_back(ParsePattern(lx));
      while (lx.IsPunct(",")) {
        lx.Take();
        parts.push_back(ParsePattern(lx));
      }
      lx.Expect(")");
      if (parts.size() < 2) lx.Fail("SEQ needs at least two sub-patterns");
      return Pattern::SeqOf(std::move(parts));
    }
    const std::string type = lx.ExpectIdent("event type");
    if (lx.Peek().kind == Token::Kind::kIdent && !lx.IsKeyword("SEQ")) {
      const std::string alias = lx.Take().text;
      auto [it, inserted] = aliases_.emplace(alias, type);
      if (!inserted && it->second != type) {
        throw Error(ErrorCode::kSyntax, "alias '" + alias + "' reused");
      }
    }
    return Pattern::Type(type);
  }

  std::string Resolve(const std::string& name) const {
    auto it = aliases_.find(name);
    return it == aliases_.end() ? name : it->second;
  }

  struct Operand {
    enum class Kind { kAttr, kNextAttr, kLiteral };
    Kind kind;
    std::string type;
    std::string attr;
    Token literal;
  };

  Operand ParseOperand(Lexer& lx) {
    Operand o;
    if (lx.IsKeyword("NEXT") && lx.Peek(1).text == "(") {
      lx.Take();
      lx.Take();
      o.kind = Operand::Kind::kNextAttr;
      o.type = Resolve(lx.ExpectIdent("event type"));
      lx.Expect(")");
      lx.Expect(".");
      o.attr = lx.ExpectIdent("attribute");
      return o;
    }
    if (lx.Peek().kind == Token::Kind::kIdent && lx.Peek(1).text == ".") {
      o.kind = Operand::Kind::kAttr;
      o.type = Resolve(lx.Take().text);
      lx.Take();
      o.attr = lx.ExpectIdent("attribute");
      return o;
    }
    if (lx.Peek().kind == Token::Kind::kNumber ||
        lx.Peek().kind == Token::Kind::kString ||
        lx.Peek().kind == Token::Kind::kIdent) {
      o.kind = Operand::Kind::kLiteral;
      o.literal = lx.Take();
      return o;
    }
    lx.Fail("expected operand");
  }

  Predicate ParsePredicate(Lexer& lx) {
    if (lx.IsPunct("[")) {
      lx.Take();
      std::string attr = lx.ExpectIdent("attribute");
      if (lx.IsPunct(".")) {
        lx.Fail("qualified equivalence predicates are not supported");
      }
      lx.Expect("]");
      return EquivalencePredicate{attr};
    }
    Operand lhs = ParseOperand(lx);
    if (lx.Peek().kind != Token::Kind::kOp) lx.Fail("expected comparison");
    CompareOp op = ParseOp(lx.Take().text);
    Operand rhs = ParseOperand(lx);
    using K = Operand::Kind;
    if (lhs.kind == K::kLiteral && rhs.kind != K::kLiteral) {
      std::swap(lhs, rhs);
      op = Mirror(op);
    }
    if (lhs.kind == K::kNextAttr && rhs.kind == K::kAttr) {
      std::swap(lhs, rhs);
      op = Mirror(op);
    }
    if (lhs.kind == K::kAttr && rhs.kind == K::kLiteral) {
      return LocalPredicate{lhs.type, lhs.attr, op, LiteralValue(rhs.literal)};
    }
    if (lhs.kind == K::kAttr && rhs.kind == K::kNextAttr) {
      return AdjacentPredicate{lhs.type, lhs.attr, op, rhs.type, rhs.attr};
    }
    if (lhs.kind == K::kAttr && rhs.kind == K::kAttr) {
      if (lhs.type == rhs.type) {
        throw Error(ErrorCode::kSyntax,
                    "comparison between two attributes of '" + lhs.type +
                        "' needs NEXT(" + lhs.type + ") on one side");
      }
      return AdjacentPredicate{lhs.type, lhs.attr, op, rhs.type, rhs.attr};
    }
    throw Error(ErrorCode::kSyntax, "unsupported predicate form");
  }

  static Scalar LiteralValue(const Token& t) {
    if (t.kind == Token::Kind::kString || t.kind == Token::Kind::kIdent) {
      return t.text;
    }
    Scalar v = InferScalar(t.text);
    if (v.index() == 2) {
      throw Error(ErrorCode::kSyntax, "bad number '" + t.text + "'");
    }
    return v;
  }

  static int64_t ParseDuration(Lexer& lx) {
    if (lx.Peek().kind != Token::Kind::kNumber) lx.Fail("expected duration");
    const double amount = std::stod(lx.Take().text);
    std::string unit = Upper(lx.ExpectIdent("time unit"));
    double scale = 0;
    if (unit == "MS" || unit == "MILLISECOND" || unit == "MILLISECONDS") {
      scale = 1;
    } else if (unit == "S" || unit == "SEC" || unit == "SECOND" ||
               unit == "SECONDS") {
      scale = 1000;
    } else if (unit == "MIN" || unit == "MINUTE" || unit == "MINUTES") {
      scale = 60000;
    } else if (unit == "H" || unit == "HOUR" || unit == "HOURS") {
      scale = 3600000;
    } else {
      throw Error(ErrorCode::kSyntax, "unknown time unit '" + unit + "'");
    }
    const double ms = amount * scale;
    if (ms != std::floor(ms)) {
      throw Error(ErrorCode::kSyntax, "durations must be whole milliseconds");
    }
    return static_cast<int64_t>(ms);
  }

  void ParseReturnItem(Lexer& lx, Query& q) {
    const std::string head = lx.ExpectIdent("return item");
    const std::string fn = Upper(head);
    static const std::map<std::string, AggSpec::Kind> kFns = {
        {"COUNT", AggSpec::Kind::kCountType}, {"MIN", AggSpec::Kind::kMin},
        {"MAX", AggSpec::Kind::kMax},         {"SUM", AggSpec::Kind::kSum},
        {"AVG", AggSpec::Kind::kAvg}};
    auto it = kFns.find(fn);
    if (it == kFns.end() || !lx.IsPunct("(")) {
      if (lx.IsPunct(".")) lx.Fail("RETURN attributes must be unqualified");
      q.return_attrs.push_back(head);
      return;
    }
    lx.Take();
    AggSpec spec;
    spec.kind = it->second;
    if (spec.kind == AggSpec::Kind::kCountType && lx.IsPunct("*")) {
      lx.Take();
      spec.kind = AggSpec::Kind::kCountStar;
    } else {
      spec.type = Resolve(lx.ExpectIdent("event type"));
      if (spec.kind != AggSpec::Kind::kCountType) {
        lx.Expect(".");
        spec.attr = lx.ExpectIdent("attribute");
      }
    }
    lx.Expect(")");
    q.aggregates.push_back(std::move(spec));
  }

  const Schema& schema_;
  std::map<std::string, std::string> aliases_;
};

void CheckType(const std::set<std::string>& pattern_types,
               const std::string& type) {
  if (!pattern_types.count(type)) {
    throw Error(ErrorCode::kUnknownType,
                "type '" + type + "' does not occur in the pattern");
  }
}

// Returns the attribute kind when the schema knows it.
std::optional<ValueKind> CheckAttribute(const Schema& schema,
                                        const std::string& type,
                                        const std::string& attr) {
  if (!schema.HasType(type)) return std::nullopt;
  auto kind = schema.KindOf(type, attr);
  if (!kind) {
    throw Error(ErrorCode::kUnknownAttribute,
                "type '" + type + "' has no attribute '" + attr + "'");
  }
  return kind;
}

}  // namespace

Query FinalizeQuery(Query q, const Schema& schema) {
  q.pattern_template = CompileTemplate(q.pattern);
  const std::vector<std::string> types = q.pattern.Types();
  const std::set<std::string> type_set(types.begin(), types.end());
  for (const auto& t : types) {
    if (!schema.HasType(t) && !schema.open()) {
      throw Error(ErrorCode::kUnknownType, "unknown event type '" + t + "'");
    }
  }
  if (q.window.slide_ms <= 0 || q.window.within_ms < q.window.slide_ms) {
    throw Error(ErrorCode::kInvalidArgument,
                "window needs WITHIN >= SLIDE > 0");
  }
  for (Predicate& p : q.predicates) {
    if (auto* l = std::get_if<LocalPredicate>(&p)) {
      CheckType(type_set, l->type);
      auto kind = CheckAttribute(schema, l->type, l->attr);
      if (kind) {
        const bool string_attr = *kind == ValueKind::kString;
        if (string_attr && IsNumeric(l->constant)) {
          l->constant = FormatScalar(l->constant);
        } else if (!string_attr && !IsNumeric(l->constant)) {
          throw Error(ErrorCode::kTypeMismatch,
                      "'" + l->type + "." + l->attr + "' is numeric");
        }
      }
    } else if (auto* a = std::get_if<AdjacentPredicate>(&p)) {
      CheckType(type_set, a->prev_type);
      CheckType(type_set, a->next_type);
      auto k1 = CheckAttribute(schema, a->prev_type, a->prev_attr);
      auto k2 = CheckAttribute(schema, a->next_type, a->next_attr);
      if (k1 && k2 && ((*k1 == ValueKind::kString) != (*k2 == ValueKind::kString))) {
        throw Error(ErrorCode::kTypeMismatch,
                    "adjacent predicate compares a string with a number");
      }
    } else {
      const auto& e = std::get<EquivalencePredicate>(p);
      for (const auto& t : types) CheckAttribute(schema, t, e.attr);
    }
  }
  for (const auto& g : q.group_by) {
    for (const auto& t : types) CheckAttribute(schema, t, g);
  }
  const auto partition = q.PartitionAttributes();
  for (const auto& r : q.return_attrs) {
    if (std::find(partition.begin(), partition.end(), r) == partition.end()) {
      throw Error(ErrorCode::kSyntax, "RETURN attribute '" + r +
                                          "' is neither grouped on nor an "
                                          "equivalence attribute");
    }
  }
  for (const AggSpec& a : q.aggregates) {
    if (a.kind == AggSpec::Kind::kCountStar) continue;
    CheckType(type_set, a.type);
    if (a.kind == AggSpec::Kind::kCountType) continue;
    auto kind = CheckAttribute(schema, a.type, a.attr);
    if (kind && *kind == ValueKind::kString) {
      throw Error(ErrorCode::kTypeMismatch,
                  a.ToString() + " needs a numeric attribute");
    }
  }
  return q;
}

Query ParseQuery(std::string_view text, const Schema& schema) {
  QueryParser parser(schema);
  return FinalizeQuery(parser.Parse(text), schema);
}

}  // namespace trendagg
