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
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rslr {

// ---------------------------------------------------------------------------
// Aspects and types
// ---------------------------------------------------------------------------

/// Arrow annotation. `Poly` is □ (the argument may drive recursion),
/// `Const` is ■ (constant-time use). Ordered Poly <: Const.
enum class Aspect : std::uint8_t { Poly, Const };

bool aspect_leq(Aspect a, Aspect b);
std::string_view aspect_symbol(Aspect a);  // "[]" or "[#]"

class Type;
using TypeRef = std::shared_ptr<const Type>;

/// Str | aA -> B. Immutable; build through the static constructors.
class Type {
 public:
  enum class Kind : std::uint8_t { Str, Arrow };

  static TypeRef str();
  static TypeRef arrow(Aspect aspect, TypeRef arg, TypeRef res);

  Kind kind() const { return kind_; }
  bool is_str() const { return kind_ == Kind::Str; }
  bool is_arrow() const { return kind_ == Kind::Arrow; }
  Aspect aspect() const { return aspect_; }
  const TypeRef& arg() const { return arg_; }
  const TypeRef& res() const { return res_; }
  std::size_t hash() const { return hash_; }

  Type(Kind kind, Aspect aspect, TypeRef arg, TypeRef res);

 private:
  Kind kind_;
  Aspect aspect_;
  TypeRef arg_;
  TypeRef res_;
  std::size_t hash_;
};

bool operator==(const Type& a, const Type& b);
bool same_type(const TypeRef& a, const TypeRef& b);
std::string to_string(const Type& t);
inline std::string to_string(const TypeRef& t) { return to_string(*t); }
/// Number of arrows along the result spine.
std::size_t arrow_depth(const Type& t);

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

struct Span {
  int line = 0;
  int column = 0;
};

enum class TermKind : std::uint8_t {
  Var,
  Str,
  Zero,  // 0(t)
  One,   // 1(t)
  Tail,
  App,
  Case,
  Rec,
  Rand,
  Lam,
  // surface sugar, removed by desugar()
  If,
  Eq,
  Not,
  Ones,  // 1^n
};

struct Term;
using TermRef = std::shared_ptr<const Term>;

/// Locally nameless term node. Bound variables carry a de Bruijn index (the
/// name is only a printing hint); free variables carry a name and index -1.
/// Nodes are immutable and only built through the make_* functions below,
/// which fill the cached fields.
///
/// Children: Zero/One/Tail/Not {t}; App/Eq {f, a}; Lam {body};
/// Case/Rec {scrut, t0, t1, te}; If {cond, then, else}.
struct Term {
  TermKind kind;
  std::string text;  // Str bits, Var name, Lam binder hint
  int index = -1;    // bound Var index
  std::size_t count = 0;  // Ones
  Aspect aspect = Aspect::Poly;  // Lam
  TypeRef type;  // Lam argument type, Case/Rec annotation (Case may be null)
  std::vector<TermRef> kids;
  Span span;

  std::size_t hash = 0;       // alpha-invariant
  int loose = 0;              // 1 + largest dangling index; 0 if locally closed
  bool free_names = false;    // contains a free named Var
  bool sugar = false;         // contains a surface node
  std::size_t size = 1;

  bool is_value() const { return kind == TermKind::Str || kind == TermKind::Lam; }
  bool is_closed() const { return loose == 0 && !free_names; }
  const TermRef& kid(std::size_t i) const { return kids[i]; }
};

TermRef make_var(std::string name, Span span = {});
TermRef make_bound(int index, std::string hint = "x", Span span = {});
TermRef make_str(std::string bits, Span span = {});
TermRef make_zero(TermRef t, Span span = {});
TermRef make_one(TermRef t, Span span = {});
TermRef make_prepend(char bit, TermRef t, Span span = {});
TermRef make_tail(TermRef t, Span span = {});
TermRef make_app(TermRef f, TermRef a, Span span = {});
TermRef make_app(TermRef f, std::initializer_list<TermRef> args);
TermRef make_case(TypeRef annot, TermRef scrut, TermRef t0, TermRef t1,
                  TermRef te, Span span = {});
TermRef make_rec(TypeRef annot, TermRef scrut, TermRef t0, TermRef t1,
                 TermRef te, Span span = {});
TermRef make_rand(Span span = {});
/// Body is already in locally nameless form (index 0 is this binder).
TermRef make_lam_raw(std::string hint, Aspect aspect, TypeRef type,
                     TermRef body, Span span = {});
/// Binds the free name `name` in `body`.
TermRef make_lam(const std::string& name, Aspect aspect, TypeRef type,
                 const TermRef& body, Span span = {});
TermRef make_if(TermRef cond, TermRef then_t, TermRef else_t, Span span = {});
TermRef make_eq(TermRef a, TermRef b, Span span = {});
TermRef make_not(TermRef t, Span span = {});
TermRef make_ones(std::size_t n, Span span = {});

/// Rebuild `t` with new children, keeping its payload.
TermRef with_kids(const Term& t, std::vector<TermRef> kids);

bool alpha_equal(const TermRef& a, const TermRef& b);
/// Total order consistent with alpha_equal.
int alpha_compare(const TermRef& a, const TermRef& b);

struct TermHash {
  std::size_t operator()(const TermRef& t) const { return t->hash; }
};
struct TermEq {
  bool operator()(const TermRef& a, const TermRef& b) const {
    return alpha_equal(a, b);
  }
};
struct TermLess {
  bool operator()(const TermRef& a, const TermRef& b) const {
    return alpha_compare(a, b) < 0;
  }
};

/// body[v/0]: beta-instantiation with a closed value.
TermRef instantiate(const TermRef& body, const TermRef& value);
/// Replace dangling index `depth` with `value` (closed), shifting higher ones.
TermRef instantiate_at(const TermRef& t, int depth, const TermRef& value);
/// t[v/x] for the free name x; v must be closed, so no capture can occur.
TermRef substitute(const TermRef& t, const TermRef& value, const std::string& name);
/// Turn the free name x into the dangling index `depth`.
TermRef abstract(const TermRef& t, const std::string& name, int depth = 0);
std::set<std::string> free_names(const TermRef& t);
/// Number of occurrences of dangling index `depth` (0 = the binder just above).
std::size_t count_bound(const TermRef& t, int depth = 0);

std::string pretty(const TermRef& t);

// ---------------------------------------------------------------------------
// Linear one-hole contexts
// ---------------------------------------------------------------------------

enum class ContextKind : std::uint8_t {
  Leaf,          // a plain term
  Hole,
  Lam,           // \x:aA. C
  AppL,          // C t
  AppR,          // t C
  Zero,
  One,
  Tail,
  CaseScrut,     // case A C of {t0|t1|te}
  CaseBranches,  // case A t of {C0|C1|Ce}; the hole sits in at most one branch
  RecScrut,      // rec A C of {t0|t1|te}
};

struct ContextTerm;
using ContextRef = std::shared_ptr<const ContextTerm>;

/// Context node. Terms inside follow the same locally nameless convention;
/// a Lam context binds index 0 for everything below it. Hole-free contexts
/// are always collapsed into a Leaf by the constructors.
///
/// Fields by kind: Leaf {term}; Lam {text, aspect, type, ctx[0]};
/// AppL {ctx[0], terms[0]}; AppR {terms[0], ctx[0]}; Zero/One/Tail {ctx[0]};
/// CaseScrut/RecScrut {type, ctx[0], terms t0,t1,te};
/// CaseBranches {type, terms[0] scrut, ctx[0..2] branches 0,1,e}.
///
/// `image` is the context with its hole replaced by hole_placeholder(); it
/// drives hashing, ordering, filling and substitution.
struct ContextTerm {
  ContextKind kind;
  TermRef term;
  std::string text;
  Aspect aspect = Aspect::Poly;
  TypeRef type;
  std::vector<ContextRef> ctx;
  std::vector<TermRef> terms;

  TermRef image;
  int holes = 0;
};

/// Reserved free variable standing for the hole inside context images.
const std::string& hole_name();
TermRef hole_placeholder();

ContextRef ctx_leaf(TermRef t);
ContextRef ctx_hole();
ContextRef ctx_lam_raw(std::string hint, Aspect aspect, TypeRef type, ContextRef body);
ContextRef ctx_app_left(ContextRef c, TermRef arg);
ContextRef ctx_app_right(TermRef fn, ContextRef c);
ContextRef ctx_prepend(char bit, ContextRef c);
ContextRef ctx_tail(ContextRef c);
ContextRef ctx_case_scrut(TypeRef annot, ContextRef c, TermRef t0, TermRef t1, TermRef te);
ContextRef ctx_case_branches(TypeRef annot, TermRef scrut, ContextRef c0,
                             ContextRef c1, ContextRef ce);
ContextRef ctx_rec_scrut(TypeRef annot, ContextRef c, TermRef t0, TermRef t1, TermRef te);

/// Rebuild the structured view of a term holding at most one placeholder.
/// Throws when the placeholder is duplicated or sits inside a rec branch.
ContextRef context_from_image(const TermRef& image);

/// Occurrences of the hole; 0 or 1 for every well-formed context.
int count_holes(const ContextRef& c);
/// Occurrences of the hole inside rec branches; always 0 by construction.
int count_holes_in_rec_branches(const ContextRef& c);
bool ctx_equal(const ContextRef& a, const ContextRef& b);
int ctx_compare(const ContextRef& a, const ContextRef& b);
/// C[t] for a closed t.
TermRef fill(const ContextRef& c, const TermRef& t);
/// Replace dangling index `depth` with the closed value v everywhere in C.
ContextRef ctx_instantiate(const ContextRef& c, const TermRef& value, int depth = 0);
/// The term t with its single occurrence of dangling index `depth` replaced
/// by the closed context c. Throws if the variable sits inside a rec branch
/// or occurs more than once.
ContextRef splice(const TermRef& t, const ContextRef& c, int depth = 0);

std::string pretty(const ContextRef& c);

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Base for every diagnostic the workbench reports.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message, Span span = {},
        std::string variable = {})
      : std::runtime_error(message),
        code_(std::move(code)),
        span_(span),
        variable_(std::move(variable)) {}

  const std::string& code() const { return code_; }
  Span span() const { return span_; }
  const std::string& variable() const { return variable_; }

 private:
  std::string code_;
  Span span_;
  std::string variable_;
};

}  // namespace rslr
