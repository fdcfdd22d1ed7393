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

#include <map>
#include <optional>

#include "rslr/trace.hpp"

namespace rslr {

/// A context pair (C, T). When C has no hole the inner distribution carries
/// no information and is always the dummy point mass on ε.
struct PairState {
  ContextRef context;
  TermDist inner;
};

struct PairLess {
  bool operator()(const PairState& a, const PairState& b) const;
};

using PairDist = std::map<PairState, Rational, PairLess>;

/// Builds a pair, canonicalizing the inner slot of hole-free contexts.
PairState make_pair(ContextRef c, TermDist inner);
TermDist dummy_inner();

/// True for value pairs: value leaves, abstraction contexts and bare holes
/// over normal distributions, and string constructors applied to those.
bool settled(const PairState& s);
bool is_normal(const PairDist& pd);

/// One machine move of a single unsettled pair; nullopt when settled.
std::optional<PairDist> pair_step_one(const PairState& s);

struct PairStepResult {
  PairDist dist;
  bool fixpoint = false;
};

/// Moves the leftmost (or rightmost) unsettled pair.
PairStepResult pair_step(const PairDist& pd, bool rightmost = false);

PairDist pair_normalize(PairDist pd, std::uint64_t budget = kDefaultBudget,
                        bool rightmost = false);

/// The string distribution a settled Str-typed pair stands for.
StringDist induced_strings(const PairState& s);

/// Pass on a normal pair distribution.
PairDist pair_pass(const PairDist& pd, const TermRef& v);

/// Acceptance probability of `tr` for the pair (C, td), computed by the
/// machine alone. Distinguisher views run the machine on (d C, T).
Rational pair_prob(const ContextRef& c, const TermDist& td, const Trace& tr,
                   std::uint64_t budget = kDefaultBudget, bool rightmost = false);

}  // namespace rslr
