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

#include "core/agg_cell.h"

#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "core/error.h"

namespace trendagg {
namespace {

bool NeedsValue(AggSpec::Kind kind) {
  return kind != AggSpec::Kind::kCountStar && kind != AggSpec::Kind::kCountType;
}

void MergeExtremum(std::optional<Scalar>& into, const Scalar& v, bool is_min) {
  if (!into) {
    into = v;
    return;
  }
  const int c = CompareScalars(v, *into);
  if (is_min ? c < 0 : c > 0) into = v;
}

}  // namespace

bool AggCell::IsIdentity() const {
  if (count_ != 0) return false;
  for (const AggSlot& s : slots_) {
    if (!(s == AggSlot{})) return false;
  }
  return true;
}

void AggCell::Reset() {
  count_ = 0;
  for (AggSlot& s : slots_) {
    s.count_e = 0;
    s.int_sum = 0;
    s.float_sum = 0.0;
    s.saw_float = false;
    s.extremum.reset();
  }
}

void AggCell::Combine(const AggCell& other, std::span<const AggSpec> specs) {
  if (other.count_ == 0) return;
  count_ += other.count_;
  if (slots_.size() < specs.size()) slots_.resize(specs.size());
  for (size_t i = 0; i < specs.size(); ++i) {
    const AggSlot& o = other.slots_[i];
    AggSlot& s = slots_[i];
    switch (specs[i].kind) {
      case AggSpec::Kind::kCountStar:
        break;
      case AggSpec::Kind::kCountType:
        s.count_e += o.count_e;
        break;
      case AggSpec::Kind::kMin:
      case AggSpec::Kind::kMax:
        if (o.extremum) {
          MergeExtremum(s.extremum, *o.extremum,
                        specs[i].kind == AggSpec::Kind::kMin);
        }
        break;
      case AggSpec::Kind::kSum:
      case AggSpec::Kind::kAvg:
        s.count_e += o.count_e;
        s.int_sum += o.int_sum;
        s.float_sum += o.float_sum;
        s.saw_float = s.saw_float || o.saw_float;
        break;
    }
  }
}

AggCell IdentityCell(std::span<const AggSpec> specs) {
  return AggCell(specs.size());
}

AggCell CombineCells(std::span<const AggCell> cells,
                     std::span<const AggSpec> specs) {
  AggCell out = IdentityCell(specs);
  for (const AggCell& c : cells) out.Combine(c, specs);
  return out;
}

AggCell AbsorbEvent(const AggCell& pred, const Event& e, bool is_start,
                    std::span<const AggSpec> specs) {
  AggCell out = pred;
  AbsorbEventInPlace(out, e, is_start, specs);
  return out;
}

void AbsorbEventInPlace(AggCell& out, const Event& e, bool is_start,
                        std::span<const AggSpec> specs) {
  if (out.slots_.size() < specs.size()) out.slots_.resize(specs.size());
  if (is_start) out.count_ += 1;
  if (out.count_ == 0) {
    out.Reset();
    return;
  }
  for (size_t i = 0; i < specs.size(); ++i) {
    const AggSpec& spec = specs[i];
    if (spec.kind == AggSpec::Kind::kCountStar || spec.type != e.type) continue;
    AggSlot& s = out.slots_[i];
    const Scalar* v = nullptr;
    if (NeedsValue(spec.kind)) {
      v = e.Find(spec.attr);
      if (v == nullptr) {
        throw Error(ErrorCode::kMissingAttribute,
                    "event of type '" + e.type + "' lacks attribute '" +
                        spec.attr + "' needed by " + spec.ToString());
      }
      if (!IsNumeric(*v)) {
        throw Error(ErrorCode::kTypeMismatch,
                    spec.ToString() + " over a string value");
      }
    }
    switch (spec.kind) {
      case AggSpec::Kind::kCountStar:
        break;
      case AggSpec::Kind::kCountType:
        s.count_e += out.count_;
        break;
      case AggSpec::Kind::kMin:
      case AggSpec::Kind::kMax:
        MergeExtremum(s.extremum, *v, spec.kind == AggSpec::Kind::kMin);
        break;
      case AggSpec::Kind::kSum:
      case AggSpec::Kind::kAvg:
        s.count_e += out.count_;
        if (const auto* iv = std::get_if<int64_t>(v)) {
          s.int_sum += BigInt(*iv) * out.count_;
        } else {
          s.float_sum += std::get<double>(*v) * out.count_.convert_to<double>();
          s.saw_float = true;
        }
        break;
    }
  }
}

AggResult FinalizeCell(const AggCell& cell, std::span<const AggSpec> specs) {
  AggResult r;
  for (size_t i = 0; i < specs.size(); ++i) {
    const AggSlot empty;
    const AggSlot& s = i < cell.slots().size() ? cell.slots()[i] : empty;
    switch (specs[i].kind) {
      case AggSpec::Kind::kCountStar:
        r.values.emplace_back(cell.count());
        break;
      case AggSpec::Kind::kCountType:
        r.values.emplace_back(s.count_e);
        break;
      case AggSpec::Kind::kMin:
      case AggSpec::Kind::kMax:
        if (!s.extremum) {
          r.values.emplace_back(std::monostate{});
        } else if (const auto* iv = std::get_if<int64_t>(&*s.extremum)) {
          r.values.emplace_back(BigInt(*iv));
        } else {
          r.values.emplace_back(AsDouble(*s.extremum));
        }
        break;
      case AggSpec::Kind::kSum:
        if (s.saw_float) {
          r.values.emplace_back(s.int_sum.convert_to<double>() + s.float_sum);
        } else {
          r.values.emplace_back(s.int_sum);
        }
        break;
      case AggSpec::Kind::kAvg:
        if (s.count_e == 0) {
          r.values.emplace_back(std::monostate{});
        } else {
          // Divide in extended precision so huge counts do not overflow.
          using boost::multiprecision::cpp_bin_float_50;
          cpp_bin_float_50 sum(s.int_sum);
          sum += s.float_sum;
          cpp_bin_float_50 avg = sum / cpp_bin_float_50(s.count_e);
          r.values.emplace_back(avg.convert_to<double>());
        }
        break;
    }
  }
  return r;
}

std::string FormatAggValue(const AggValue& v) {
  if (std::holds_alternative<std::monostate>(v)) return "";
  if (const auto* b = std::get_if<BigInt>(&v)) return b->str();
  return FormatDouble(std::get<double>(v));
}

double AggValueToDouble(const AggValue& v) {
  if (std::holds_alternative<std::monostate>(v)) return std::nan("");
  if (const auto* b = std::get_if<BigInt>(&v)) return b->convert_to<double>();
  return std::get<double>(v);
}

}  // namespace trendagg
