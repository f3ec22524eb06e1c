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

#ifndef TRENDAGG_CORE_AGG_CELL_H_
#define TRENDAGG_CORE_AGG_CELL_H_

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "core/event.h"
#include "core/query.h"
#include "core/value.h"

namespace trendagg {

// Auxiliary state for one AggSpec. Integer attribute values are summed
// exactly; float values in double precision.
struct AggSlot {
  BigInt count_e;
  BigInt int_sum;
  double float_sum = 0.0;
  bool saw_float = false;
  std::optional<Scalar> extremum;  // nullopt is the +inf / -inf identity

  bool operator==(const AggSlot&) const = default;
};

// Incremental aggregate over a set of (partial) trends: the trend count
// plus one slot per requested aggregate. A cell with count 0 is always the
// identity cell.
class AggCell {
 public:
  AggCell() = default;
  explicit AggCell(size_t num_specs) : slots_(num_specs) {}

  const BigInt& count() const { return count_; }
  const std::vector<AggSlot>& slots() const { return slots_; }
  bool IsIdentity() const;

  // Merges `other` into this cell: counts and sums add, extrema take the
  // lattice meet/join.
  void Combine(const AggCell& other, std::span<const AggSpec> specs);

  // Back to the identity, keeping allocations.
  void Reset();

  bool operator==(const AggCell&) const = default;

 private:
  friend void AbsorbEventInPlace(AggCell&, const Event&, bool,
                                 std::span<const AggSpec>);
  BigInt count_;
  std::vector<AggSlot> slots_;
};

AggCell IdentityCell(std::span<const AggSpec> specs);
AggCell CombineCells(std::span<const AggCell> cells,
                     std::span<const AggSpec> specs);

// Cell of the trends that end at `e`, given the merged cell of all its
// predecessors: the count is pred.count (+1 when e starts a trend). For
// each spec whose type is e's type, e contributes `count` occurrences to
// COUNT(E), `attr * count` to SUM and its value to MIN/MAX; other specs
// carry pred's state unchanged. Throws kMissingAttribute when e lacks a
// needed attribute.
AggCell AbsorbEvent(const AggCell& pred, const Event& e, bool is_start,
                    std::span<const AggSpec> specs);
// Same, turning `cell` from the predecessor cell into the event's cell.
void AbsorbEventInPlace(AggCell& cell, const Event& e, bool is_start,
                        std::span<const AggSpec> specs);

// Null, an exact integer, or a float.
using AggValue = std::variant<std::monostate, BigInt, double>;

struct AggResult {
  std::vector<AggValue> values;  // parallel to the query's aggregates

  bool operator==(const AggResult&) const = default;
};

// COUNT(*) and COUNT(E) as integers; SUM as an integer unless a float
// value was summed; MIN/MAX keep the attribute's kind; AVG is
// SUM / COUNT(E) and null when COUNT(E) = 0.
AggResult FinalizeCell(const AggCell& cell, std::span<const AggSpec> specs);

std::string FormatAggValue(const AggValue& v);
double AggValueToDouble(const AggValue& v);

}  // namespace trendagg

#endif  // TRENDAGG_CORE_AGG_CELL_H_
