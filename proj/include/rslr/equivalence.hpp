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

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rslr/machine.hpp"

namespace rslr {

/// Finitization of the quantifiers over values, strings and contexts.
struct EnumBounds {
  std::size_t max_string_len = 2;
  std::size_t max_value_depth = 3;
  std::size_t max_context_size = 4;
};

/// Binary strings of length <= n in shortlex order, ε first.
std::vector<std::string> strings_up_to(std::size_t n);
/// Shortlex order on bit strings.
bool shortlex_less(const std::string& a, const std::string& b);

/// Closed values of `type`. Strings up to the length bound; abstractions
/// over bodies built from variables, "", "0", "1", rand, 0/1/tail and
/// applications of in-scope variables, with λ and every constructor adding
/// one to the depth. Only values that type-check at a subtype survive.
std::vector<TermRef> enumerate_values(const TypeRef& type, const EnumBounds& b);

struct Verdict {
  enum class Kind { Equivalent, Distinguished };
  Kind kind = Kind::Equivalent;
  std::optional<Trace> trace;      // trace witness
  ContextRef context;              // context witness
  std::optional<std::string> splitter;  // bisimulation witness, rendered
  Rational p_left = 0;
  Rational p_right = 0;
  EnumBounds bounds;
  bool exact = false;  // the search covered the whole quantifier

  bool distinguished() const { return kind == Kind::Distinguished; }
  std::string witness_text() const;
};

/// Shared type of two terms, or a "type-mismatch" error.
TypeRef shared_type(const TermRef& t, const TermRef& s);

Verdict trace_equiv(const TermRef& t, const TermRef& s, const EnumBounds& b,
                    std::uint64_t budget = kDefaultBudget);

struct Distance {
  Rational value = 0;
  bool exact = false;
};

Distance trace_distance(const TermRef& t, const TermRef& s, const EnumBounds& b,
                        std::uint64_t budget = kDefaultBudget);

/// Linear contexts of size <= the bound that type at Str around holeType.
/// Leaves: string literals, rand and the closed prelude definitions.
std::vector<ContextRef> enumerate_contexts(const TypeRef& hole_type, const EnumBounds& b);

struct ContextDistance {
  Rational value = 0;
  ContextRef witness;  // null when the distance is 0
  Rational p_left = 0;
  Rational p_right = 0;
};

/// max_C |⟦C[t]⟧(ε) − ⟦C[s]⟧(ε)| over enumerate_contexts. With
/// `use_machine`, each probability comes from the context-pair machine.
ContextDistance context_distance_lb(const TermRef& t, const TermRef& s, const EnumBounds& b,
                                    bool use_machine = false,
                                    std::uint64_t budget = kDefaultBudget);

/// D((([·] v1) ...) vk) for a trace ending in a string or distinguisher view.
ContextRef trace_to_context(const Trace& tr);

/// λx:[]Str. a nested case on tail^i(x) returning ε exactly on m, "1" otherwise.
TermRef point_distinguisher(const std::string& m);

/// ⟦C[t]⟧(ε).
Rational epsilon_prob(const ContextRef& c, const TermRef& t, Evaluator& ev);

// ---------------------------------------------------------------------------
// Labelled Markov chain and applicative bisimilarity
// ---------------------------------------------------------------------------

struct LmcState {
  enum class Kind { Term, Value };
  Kind kind = Kind::Term;
  TermRef term;
  TypeRef type;
};

struct LmcLabel {
  enum class Kind { Eval, Pass, View };
  Kind kind = Kind::Eval;
  TermRef value;     // Pass
  std::string bits;  // View
};

bool operator<(const LmcLabel& a, const LmcLabel& b);
std::string to_string(const LmcLabel& l);

struct LmcEdge {
  LmcLabel label;
  std::size_t target;
  Rational prob;
};

struct LMC {
  std::vector<LmcState> states;
  std::vector<std::vector<LmcEdge>> edges;  // per source state
  std::vector<std::size_t> roots;

  std::optional<std::size_t> find(LmcState::Kind kind, const TermRef& t,
                                  const TypeRef& type) const;
  std::string describe(std::size_t state) const;
};

struct LmcOptions {
  std::size_t max_states = 20000;
  /// Overrides enumerate_values for pass labels at Str arguments.
  std::optional<std::vector<TermRef>> str_pass_values;
};

/// Reachable closure from the roots (as term states at their own types).
LMC build_lmc(const std::vector<TermRef>& roots, const EnumBounds& b,
              const LmcOptions& opts = {}, std::uint64_t budget = kDefaultBudget);
/// Same with explicit root types.
LMC build_lmc(const std::vector<std::pair<TermRef, TypeRef>>& roots, const EnumBounds& b,
              const LmcOptions& opts = {}, std::uint64_t budget = kDefaultBudget);

/// The splitter that separated two states: a label and the block whose
/// mass differs.
struct BisimSplitter {
  LmcLabel label;
  std::vector<std::size_t> block;
  Rational mass_a = 0;
  Rational mass_b = 0;
};

struct BisimResult {
  std::vector<std::size_t> block_of;  // final partition
  std::size_t blocks = 0;
  bool equivalent = false;
  std::optional<BisimSplitter> witness;
};

BisimResult bisim_check(const LMC& lmc, std::size_t a, std::size_t b);

/// build_lmc over {t, s} at their shared type, then bisim_check.
Verdict bisim_verdict(const TermRef& t, const TermRef& s, const EnumBounds& b,
                      const LmcOptions& opts = {}, std::uint64_t budget = kDefaultBudget);

}  // namespace rslr
