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

#include <set>
#include <string>
#include <vector>

#include "rslr/eval.hpp"
#include "rslr/program.hpp"

namespace rslr {

struct TraceAction {
  enum class Kind { Pass, ViewStr, ViewSet, ViewDist };
  Kind kind = Kind::Pass;
  TermRef term;               // Pass value or distinguisher
  std::string bits;           // ViewStr
  std::set<std::string> set;  // ViewSet
  std::string label;          // display name of a distinguisher, if any

  bool is_view() const { return kind != Kind::Pass; }
};

using Trace = std::vector<TraceAction>;

TraceAction pass(TermRef value);
TraceAction view_str(std::string bits);
TraceAction view_set(std::set<std::string> set);
TraceAction view_dist(TermRef distinguisher, std::string label = {});

/// `pass("01");view("0")` style rendering; parse_trace() reads it back.
std::string to_string(const TraceAction& a);
std::string to_string(const Trace& tr);

/// One pass per arrow, each value typed at the argument, then exactly one
/// view at Str.
bool compatible(const Trace& tr, const TypeRef& type);

/// Resolves a concrete trace literal against a program. Wildcards and the
/// security-parameter pass are rejected here; the CI harness expands them.
Trace resolve_trace(const std::vector<SurfaceAction>& actions, const Program& program);
Trace parse_trace(const std::string& text, const Program& program);

/// Substitutes v into every abstraction of a normal distribution.
TermDist pass_value(const TermDist& normal, const TermRef& v);

/// Normalizes, then alternates pass and normalization. The result is normal.
TermDist run_prefix(const TermDist& td, const Trace& prefix, Evaluator& ev);

/// Weight a view assigns to a string: indicator for ViewStr/ViewSet,
/// ⟦d m⟧(ε) for a distinguisher d.
Rational view_weight(const TraceAction& view, const std::string& m, Evaluator& ev);
/// Σ_m D(m)·view_weight(m).
Rational observe(const StringDist& d, const TraceAction& view, Evaluator& ev);

/// Acceptance probability. A trace without a terminal view accepts with 1.
Rational prob(const TermDist& td, const Trace& tr, Evaluator& ev);
Rational prob(const TermRef& t, const Trace& tr, std::uint64_t budget = kDefaultBudget);

}  // namespace rslr
