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
#include <string>
#include <vector>

#include "rslr/parser.hpp"
#include "rslr/types.hpp"

namespace rslr {

/// Closed core terms the surface sugar expands into.
struct Library {
  TermRef eq;   // []Str -> []Str -> Str, "1" on equal strings
  TermRef neg;  // []Str -> Str, flips every bit
};

/// `not` and `eq` from the embedded prelude.
const Library& builtin_library();

/// Removes if/=/~/1^n. `if c then a else b` becomes
/// case c of {0 -> b | 1 -> a | e -> b}; the case carries Str or an arrow
/// annotation when the branches make it evident, none otherwise.
/// Idempotent on core terms.
TermRef desugar(const TermRef& t, const Library& lib = builtin_library());

struct Definition {
  std::string name;
  TypeRef type;  // as declared
  TermRef term;  // closed core term
  Span span;
};

struct Diagnostic {
  std::string code;
  std::string message;
  Span span;
  std::string variable;
  std::string definition;
};

Diagnostic to_diagnostic(const Error& e, const std::string& definition = {});

/// Elaborated definitions. References to earlier definitions are inlined,
/// so every stored term is closed, desugared and type-checked.
class Program {
 public:
  const Definition* find(const std::string& name) const;
  const Definition& at(const std::string& name) const;
  const std::vector<Definition>& definitions() const { return defs_; }
  const std::optional<std::string>& main() const { return main_; }

  /// Sugar library seen by the next definition: the program's own `eq` and
  /// `not` once defined, the builtin ones before that.
  Library library() const;

  /// Adds (or shadows) a definition after desugaring, inlining and checking.
  void define(const SurfaceDefinition& d);
  void set_main(const std::string& name, Span span = {});

  /// Parses a term in the scope of this program, inlines references and
  /// desugars it. Not type-checked.
  TermRef resolve(const std::string& text) const;
  TermRef resolve(const TermRef& surface) const;

 private:
  std::vector<Definition> defs_;
  std::map<std::string, std::size_t> index_;
  std::optional<std::string> main_;
};

/// Elaborates `src` on top of `base` (usually the prelude). With `diags`,
/// failing definitions are reported and skipped; without, the first error
/// is thrown.
Program elaborate(const SurfaceProgram& src, const Program& base = {},
                  std::vector<Diagnostic>* diags = nullptr);

/// Text of the prelude: $RSLR_PRELUDE if set, else the installed file,
/// else the copy embedded at build time.
std::string prelude_source();
/// The elaborated prelude (RBG, LV, the equality and negation terms and the
/// worked example pairs).
const Program& prelude();

Program load_program(const std::string& path, const Program& base,
                     std::vector<Diagnostic>* diags = nullptr);

}  // namespace rslr
