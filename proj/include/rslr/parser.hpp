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

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rslr/syntax.hpp"

namespace rslr {

struct SurfaceDefinition {
  std::string name;
  TypeRef type;
  TermRef term;  // free names refer to earlier definitions
  Span span;
};

/// A `.rslr` file before elaboration: sugar and named references intact.
struct SurfaceProgram {
  std::vector<SurfaceDefinition> defs;
  std::optional<std::string> main;
  Span main_span;
};

/// Concrete grammar:
///   program := { "let" ident ":" type "=" term ";" | "main" "=" ident ";" }
///   type    := "Str" | "(" type ")" | aspect atype "->" type
///   aspect  := "[]" | "[#]" | "□" | "■"
///   term    := "\" ident ":" aspect atype "." term
///            | "if" term "then" term "else" term
///            | app [ "=" app ]
///   app     := unary { unary }
///   unary   := "~" unary | atom
///   atom    := "\"bits\"" | "rand" | "tail(" term ")" | "0(" term ")"
///            | "1(" term ")" | "1^" digits | ident | "(" term ")"
///            | ("case" | "rec") [type] term "of" "{" branch "|" branch "|" branch "}"
///   branch  := ("0" | "1" | "e") "->" term
/// `--` starts a line comment.
SurfaceProgram parse_program(std::string_view text);
TermRef parse_term(std::string_view text);
TypeRef parse_type(std::string_view text);

/// One action of a trace literal such as `pass("01");view({00,11})`.
/// The `Any` kinds and `PassSecurity` only appear in sweep templates:
/// `pass(*)`, `view(*)` and `pass(1^n)`.
struct SurfaceAction {
  enum class Kind { Pass, PassAny, PassSecurity, ViewStr, ViewSet, ViewDist, ViewAny };
  Kind kind = Kind::Pass;
  TermRef term;              // Pass payload, or an inline distinguisher
  std::string bits;          // ViewStr
  std::set<std::string> set; // ViewSet
  std::string name;          // ViewDist by name
};

std::vector<SurfaceAction> parse_trace_literal(std::string_view text);

}  // namespace rslr
