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

#include "rslr/types.hpp"

#include <array>
#include <vector>

namespace rslr {

bool subtype(const TypeRef& a, const TypeRef& b) {
  if (a->is_str() || b->is_str()) return a->is_str() && b->is_str();
  return aspect_leq(a->aspect(), b->aspect()) && subtype(b->arg(), a->arg()) &&
         subtype(a->res(), b->res());
}

bool box_free(const TypeRef& a) {
  if (a->is_str()) return true;
  return a->aspect() == Aspect::Const && box_free(a->arg()) && box_free(a->res());
}

TypeRef join(const TypeRef& a, const TypeRef& b, Span span) {
  if (subtype(a, b)) return b;
  if (subtype(b, a)) return a;
  throw TypeError("shape-mismatch",
                  "branches have incompatible types " + to_string(a) + " and " + to_string(b),
                  span);
}

namespace {

std::string where(Span s) {
  return "line " + std::to_string(s.line) + ":" + std::to_string(s.column);
}

// A variable is either a free name (level -1) or a binder level.
struct VarKey {
  int level;
  std::string name;
  bool operator<(const VarKey& o) const {
    return level != o.level ? level < o.level : name < o.name;
  }
};

struct Use {
  Span span;
  bool higher;
  Aspect aspect;
  std::string name;
};

using Uses = std::map<VarKey, Use>;

struct Result {
  TypeRef type;
  Uses uses;
};

class Checker {
 public:
  Checker(const TypingContext& free, TypeRef hole) : free_(free), hole_(std::move(hole)) {}

  Result check(const TermRef& t) {
    const auto& k = t->kids;
    switch (t->kind) {
      case TermKind::Var:
        return var(t);
      case TermKind::Str:
      case TermKind::Rand:
        return {Type::str(), {}};
      case TermKind::Zero:
      case TermKind::One:
      case TermKind::Tail: {
        Result r = check(k[0]);
        expect_str(r.type, k[0]);
        return {Type::str(), std::move(r.uses)};
      }
      case TermKind::Lam: {
        stack_.push_back({t->aspect, t->type, t->text});
        Result body = check(k[0]);
        stack_.pop_back();
        body.uses.erase(VarKey{static_cast<int>(stack_.size()), {}});
        return {Type::arrow(t->aspect, t->type, body.type), std::move(body.uses)};
      }
      case TermKind::App:
        return app(t);
      case TermKind::Case:
        return case_of(t);
      case TermKind::Rec:
        return rec(t);
      default:
        throw TypeError("surface-syntax",
                        "surface syntax must be desugared before type checking", t->span);
    }
  }

 private:
  struct Frame {
    Aspect aspect;
    TypeRef type;
    std::string name;
  };

  static void expect_str(const TypeRef& type, const TermRef& at) {
    if (!type->is_str())
      throw TypeError("shape-mismatch", "expected Str but found " + to_string(type), at->span);
  }

  Result var(const TermRef& t) {
    if (t->index < 0) {
      if (t->text == hole_name()) {
        if (!hole_) throw TypeError("shape-mismatch", "unexpected hole", t->span);
        return {hole_, {}};
      }
      auto it = free_.find(t->text);
      if (it == free_.end())
        throw TypeError("unbound-variable", "unbound variable `" + t->text + "`", t->span,
                        t->text);
      const Binding& b = it->second;
      Uses uses;
      uses[VarKey{-1, t->text}] = Use{t->span, b.type->is_arrow(), b.aspect, t->text};
      return {b.type, std::move(uses)};
    }
    if (t->index >= static_cast<int>(stack_.size()))
      throw TypeError("unbound-variable", "dangling bound variable", t->span);
    int level = static_cast<int>(stack_.size()) - 1 - t->index;
    const Frame& f = stack_[static_cast<std::size_t>(level)];
    Uses uses;
    uses[VarKey{level, {}}] = Use{t->span, f.type->is_arrow(), f.aspect, f.name};
    return {f.type, std::move(uses)};
  }

  // Higher-order variables are split between premises, never shared.
  static void merge(Uses& into, const Uses& from) {
    for (const auto& [key, use] : from) {
      auto it = into.find(key);
      if (it == into.end()) {
        into.emplace(key, use);
      } else if (use.higher) {
        throw TypeError("linearity",
                        "higher-order variable `" + use.name + "` is used twice (" +
                            where(it->second.span) + " and " + where(use.span) + ")",
                        use.span, use.name);
      }
    }
  }

  Result app(const TermRef& t) {
    Result f = check(t->kids[0]);
    Result a = check(t->kids[1]);
    if (!f.type->is_arrow())
      throw TypeError("shape-mismatch",
                      "applying a term of type " + to_string(f.type) + " as a function",
                      t->kids[0]->span);
    if (!subtype(a.type, f.type->arg()))
      throw TypeError("shape-mismatch",
                      "argument has type " + to_string(a.type) + " but " +
                          to_string(f.type->arg()) + " is expected",
                      t->kids[1]->span);
    Aspect need = f.type->aspect();
    for (const auto& [key, use] : a.uses) {
      if (!aspect_leq(use.aspect, need))
        throw TypeError("aspect",
                        "variable `" + use.name + "` has aspect " +
                            std::string(aspect_symbol(use.aspect)) +
                            " but is used in an argument of aspect " +
                            std::string(aspect_symbol(need)),
                        use.span, use.name);
    }
    merge(f.uses, a.uses);
    return {f.type->res(), std::move(f.uses)};
  }

  Result case_of(const TermRef& t) {
    const auto& k = t->kids;
    Result s = check(k[0]);
    expect_str(s.type, k[0]);
    Uses uses = std::move(s.uses);
    TypeRef result = t->type;
    for (int i = 1; i <= 3; ++i) {
      Result b = check(k[i]);
      if (t->type) {
        if (!subtype(b.type, t->type))
          throw TypeError("shape-mismatch",
                          "branch has type " + to_string(b.type) + " but the case returns " +
                              to_string(t->type),
                          k[i]->span);
      } else {
        result = result ? join(result, b.type, k[i]->span) : b.type;
      }
      merge(uses, b.uses);
    }
    return {result, std::move(uses)};
  }

  Result rec(const TermRef& t) {
    const auto& k = t->kids;
    const TypeRef& a = t->type;
    if (!box_free(a))
      throw TypeError("box-free",
                      "recursion result type " + to_string(a) + " contains a [] arrow",
                      t->span);
    Result s = check(k[0]);
    expect_str(s.type, k[0]);
    for (const auto& [key, use] : s.uses) {
      if (use.aspect != Aspect::Poly)
        throw TypeError("aspect",
                        "recursion argument mentions `" + use.name + "` of aspect [#]",
                        use.span, use.name);
    }
    TypeRef step = Type::arrow(Aspect::Poly, Type::str(), Type::arrow(Aspect::Const, a, a));
    std::array<Result, 2> steps;
    for (int i = 0; i < 2; ++i) {
      steps[i] = check(k[1 + i]);
      if (!subtype(steps[i].type, step))
        throw TypeError("shape-mismatch",
                        "recursion step has type " + to_string(steps[i].type) +
                            " but must fit " + to_string(step),
                        k[1 + i]->span);
      for (const auto& [key, use] : steps[i].uses) {
        if (use.higher)
          throw TypeError("linearity",
                          "higher-order variable `" + use.name +
                              "` occurs inside a recursion step",
                          use.span, use.name);
      }
    }
    for (const auto& [key, use] : steps[0].uses) {
      if (steps[1].uses.count(key) && use.aspect != Aspect::Poly)
        throw TypeError("aspect",
                        "variable `" + use.name +
                            "` is shared by both recursion steps but has aspect [#]",
                        use.span, use.name);
    }
    Result e = check(k[3]);
    if (!subtype(e.type, a))
      throw TypeError("shape-mismatch",
                      "base case has type " + to_string(e.type) + " but the recursion returns " +
                          to_string(a),
                      k[3]->span);
    Uses uses = std::move(s.uses);
    merge(uses, steps[0].uses);
    merge(uses, steps[1].uses);
    merge(uses, e.uses);
    return {a, std::move(uses)};
  }

  const TypingContext& free_;
  TypeRef hole_;
  std::vector<Frame> stack_;
};

}  // namespace

TypeRef typecheck(const TypingContext& ctx, const TermRef& t) {
  return Checker(ctx, nullptr).check(t).type;
}

TypeRef typecheck_context(const TypingContext& ctx, const ContextRef& c,
                          const TypeRef& hole_type) {
  if (count_holes(c) > 1) throw TypeError("linearity", "the hole occurs more than once");
  if (count_holes_in_rec_branches(c) > 0)
    throw TypeError("linearity", "the hole occurs inside a recursion step");
  return Checker(ctx, hole_type).check(c->image).type;
}

}  // namespace rslr
