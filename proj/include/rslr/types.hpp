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
#include <string>

#include "rslr/syntax.hpp"

namespace rslr {

/// Subtyping: reflexive, transitive, arrows contravariant in the
/// argument, covariant in the result and in the aspect.
bool subtype(const TypeRef& a, const TypeRef& b);
/// No arrow anywhere inside carries the □ aspect.
bool box_free(const TypeRef& a);
/// The larger of two comparable types; throws TypeError otherwise.
TypeRef join(const TypeRef& a, const TypeRef& b, Span span = {});

struct Binding {
  Aspect aspect = Aspect::Poly;
  TypeRef type;
};

/// Types of the free names a term may mention. Entries of type Str form the
/// base part, everything else the higher-order part.
using TypingContext = std::map<std::string, Binding>;

/// Diagnostic codes: "unbound-variable", "linearity", "aspect", "box-free",
/// "shape-mismatch", "surface-syntax".
class TypeError : public Error {
 public:
  using Error::Error;
};

/// Synthesizes the type of `t`. Higher-order variables may occur at most
/// once and never inside a recursion step; every variable an argument
/// mentions must carry an aspect below the arrow's aspect; a recursion
/// needs a □-free result type, □ variables in its scrutinee and step
/// functions below □Str -> ■A -> A.
TypeRef typecheck(const TypingContext& ctx, const TermRef& t);
inline TypeRef typecheck(const TermRef& t) { return typecheck({}, t); }

/// Type of C[⊢ hole_type]; the hole counts as a closed term of that type.
TypeRef typecheck_context(const TypingContext& ctx, const ContextRef& c,
                          const TypeRef& hole_type);

}  // namespace rslr
