// Copyright 2026 The RSLR Workbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <unordered_map>

#include "rslr/dist.hpp"

namespace rslr {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// Raised when a computation exceeds its step budget.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what)
      : Error("budget", what + ": step budget exhausted") {}
};

/// Big-step evaluator for closed terms. Results are memoized per instance
/// on alpha-equivalence classes, so reusing one evaluator across related
/// queries shares work. Not thread-safe; use one per thread.
class Evaluator {
 public:
  explicit Evaluator(std::uint64_t budget = kDefaultBudget) : budget_(budget) {}

  /// The value distribution of `t`. The reference stays valid for the
  /// lifetime of the evaluator.
  const TermDist& eval(const TermRef& t);
  /// Mixes eval over a term distribution.
  TermDist eval(const TermDist& td);

  std::uint64_t steps() const { return steps_; }
  std::uint64_t budget() const { return budget_; }

 private:
  TermDist compute(const TermRef& t);

  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
  std::unordered_map<TermRef, TermDist, TermHash, TermEq> memo_;
};

/// Convenience wrapper with a fresh memo table.
TermDist eval(const TermRef& t, std::uint64_t budget = kDefaultBudget);

/// One call-by-value, left-to-right reduction of a closed non-value.
TermDist reduce(const TermRef& t);

struct StepResult {
  TermDist dist;
  bool fixpoint = false;
};

/// Reduces the first non-value of `td` in its ordering (or the last one when
/// `rightmost`), spreading its mass over the reducts.
StepResult step(const TermDist& td, bool rightmost = false);

/// Iterates step() until every support element is a value.
TermDist normalize_small_step(TermDist td, std::uint64_t budget = kDefaultBudget);

/// The unfolding of rec A m̄ {t0|t1|te} for a literal m̄.
TermRef unfold_rec(const TermRef& rec, const std::string& bits);

}  // namespace rslr
