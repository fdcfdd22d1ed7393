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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rslr/equivalence.hpp"

namespace rslr {

/// A bound family n ↦ b(n): "2^-n", "c*2^-n", "n^-k", "c*n^-k" or
/// "table:b1,b2,..." (b1 is the bound at n = 1).
struct BoundFamily {
  std::string text;
  std::function<Rational(unsigned)> at;
};

BoundFamily parse_bound(const std::string& text);

/// One slot of a trace template. Wildcards are expanded per n: pass(*) over
/// enumerated values, view(*) over point distinguishers and the registered
/// ones. PassSecurity passes 1^n.
struct TemplateAction {
  enum class Kind { Fixed, PassAny, PassSecurity, ViewAny };
  Kind kind = Kind::Fixed;
  TraceAction action;  // Fixed
};

using TraceTemplate = std::vector<TemplateAction>;

TraceTemplate parse_template(const std::string& text, const Program& program);
/// pass(*) for every argument after the security parameter, then view(*).
TraceTemplate default_template(const TypeRef& type);
std::string to_string(const TraceTemplate& tpl);

/// t 1^n.
TermRef apply_security_param(const TermRef& t, unsigned n);

struct ParamGap {
  Rational p_left = 0;
  Rational p_right = 0;
  Rational gap = 0;
};

/// |Pr(t, pass 1^n · tr) − Pr(s, pass 1^n · tr)|.
ParamGap param_gap(const TermRef& t, const TermRef& s, const Trace& tr, unsigned n,
                   std::uint64_t budget = kDefaultBudget);

struct ParamSweep {
  unsigned n_low = 1;
  unsigned n_high = 8;
  std::optional<TraceTemplate> tpl;  // default_template when empty
  BoundFamily bound = parse_bound("2^-n");
};

struct CiOptions {
  EnumBounds bounds;
  std::vector<TraceAction> distinguishers;  // extra ViewDist candidates
  std::uint64_t budget = kDefaultBudget;
};

struct GapRow {
  unsigned n = 0;
  Rational p_left = 0;
  Rational p_right = 0;
  Rational gap = 0;
  Rational bound = 0;
  Trace witness;  // including the leading pass(1^n)
  std::size_t traces = 0;  // concrete traces searched
};

struct GapReport {
  std::vector<GapRow> rows;
  bool pass = true;
  std::optional<unsigned> first_failure;
  Rational max_gap_scaled = 0;
  std::string bound;
  std::string template_text;
  static constexpr const char* kLabel = "bounded-range evidence";
};

/// Worst case over the template's expansion, for one n.
GapRow worst_gap(const TermRef& t, const TermRef& s, const TraceTemplate& tpl, unsigned n,
                 const CiOptions& opts);

GapReport sweep(const TermRef& t, const TermRef& s, const ParamSweep& sw,
                const CiOptions& opts = {});

}  // namespace rslr
