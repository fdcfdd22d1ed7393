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

#include "rslr/syntax.hpp"

#include <algorithm>
#include <functional>

namespace rslr {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  // splitmix64 finalizer over the combined word
  std::uint64_t x = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return static_cast<std::size_t>(x ^ (x >> 31));
}

std::size_t hash_str(const std::string& s) { return std::hash<std::string>{}(s); }

bool is_sugar(TermKind k) {
  return k == TermKind::If || k == TermKind::Eq || k == TermKind::Not ||
         k == TermKind::Ones;
}

int compare_types(const TypeRef& a, const TypeRef& b) {
  if (a == b) return 0;
  if (!a) return -1;
  if (!b) return 1;
  if (a->kind() != b->kind()) return a->kind() < b->kind() ? -1 : 1;
  if (a->is_str()) return 0;
  if (a->aspect() != b->aspect()) return a->aspect() < b->aspect() ? -1 : 1;
  if (int c = compare_types(a->arg(), b->arg())) return c;
  return compare_types(a->res(), b->res());
}

TermRef finish(Term&& node) {
  auto t = std::make_shared<Term>(std::move(node));
  std::size_t h = mix(0x51ed27, static_cast<std::size_t>(t->kind));
  switch (t->kind) {
    case TermKind::Var:
      if (t->index >= 0) {
        h = mix(h, static_cast<std::size_t>(t->index));
        t->loose = t->index + 1;
      } else {
        h = mix(mix(h, 0xf7ee), hash_str(t->text));
        t->free_names = true;
      }
      break;
    case TermKind::Str:
      h = mix(h, hash_str(t->text));
      break;
    case TermKind::Ones:
      h = mix(h, t->count);
      break;
    case TermKind::Lam:
      h = mix(mix(h, static_cast<std::size_t>(t->aspect)), t->type->hash());
      break;
    case TermKind::Case:
    case TermKind::Rec:
      h = mix(h, t->type ? t->type->hash() : 0);
      break;
    default:
      break;
  }
  t->sugar = is_sugar(t->kind);
  for (const auto& k : t->kids) {
    h = mix(h, k->hash);
    t->size += k->size;
    t->free_names = t->free_names || k->free_names;
    t->sugar = t->sugar || k->sugar;
    int loose = t->kind == TermKind::Lam ? std::max(0, k->loose - 1) : k->loose;
    t->loose = std::max(t->loose, loose);
  }
  t->hash = h;
  return t;
}

Term node(TermKind kind, Span span, std::vector<TermRef> kids = {}) {
  Term t;
  t.kind = kind;
  t.span = span;
  t.kids = std::move(kids);
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

bool aspect_leq(Aspect a, Aspect b) { return a == Aspect::Poly || b == Aspect::Const; }

std::string_view aspect_symbol(Aspect a) { return a == Aspect::Poly ? "[]" : "[#]"; }

Type::Type(Kind kind, Aspect aspect, TypeRef arg, TypeRef res)
    : kind_(kind), aspect_(aspect), arg_(std::move(arg)), res_(std::move(res)) {
  hash_ = kind_ == Kind::Str
              ? 0x5742
              : mix(mix(mix(0xa77, static_cast<std::size_t>(aspect_)), arg_->hash()),
                    res_->hash());
}

TypeRef Type::str() {
  static const TypeRef s = std::make_shared<Type>(Kind::Str, Aspect::Poly, nullptr, nullptr);
  return s;
}

TypeRef Type::arrow(Aspect aspect, TypeRef arg, TypeRef res) {
  return std::make_shared<Type>(Kind::Arrow, aspect, std::move(arg), std::move(res));
}

bool operator==(const Type& a, const Type& b) {
  if (&a == &b) return true;
  if (a.kind() != b.kind() || a.hash() != b.hash()) return false;
  if (a.is_str()) return true;
  return a.aspect() == b.aspect() && *a.arg() == *b.arg() && *a.res() == *b.res();
}

bool same_type(const TypeRef& a, const TypeRef& b) {
  if (!a || !b) return a == b;
  return *a == *b;
}

std::string to_string(const Type& t) {
  if (t.is_str()) return "Str";
  std::string arg = to_string(*t.arg());
  if (t.arg()->is_arrow()) arg = "(" + arg + ")";
  return std::string(aspect_symbol(t.aspect())) + arg + " -> " + to_string(*t.res());
}

std::size_t arrow_depth(const Type& t) {
  return t.is_str() ? 0 : 1 + arrow_depth(*t.res());
}

// ---------------------------------------------------------------------------
// Term construction
// ---------------------------------------------------------------------------

TermRef make_var(std::string name, Span span) {
  Term t = node(TermKind::Var, span);
  t.text = std::move(name);
  return finish(std::move(t));
}

TermRef make_bound(int index, std::string hint, Span span) {
  Term t = node(TermKind::Var, span);
  t.index = index;
  t.text = std::move(hint);
  return finish(std::move(t));
}

TermRef make_str(std::string bits, Span span) {
  for (char c : bits) {
    if (c != '0' && c != '1') throw Error("syntax", "string literal must be binary", span);
  }
  Term t = node(TermKind::Str, span);
  t.text = std::move(bits);
  return finish(std::move(t));
}

TermRef make_zero(TermRef t, Span span) {
  return finish(node(TermKind::Zero, span, {std::move(t)}));
}

TermRef make_one(TermRef t, Span span) {
  return finish(node(TermKind::One, span, {std::move(t)}));
}

TermRef make_prepend(char bit, TermRef t, Span span) {
  return bit == '0' ? make_zero(std::move(t), span) : make_one(std::move(t), span);
}

TermRef make_tail(TermRef t, Span span) {
  return finish(node(TermKind::Tail, span, {std::move(t)}));
}

TermRef make_app(TermRef f, TermRef a, Span span) {
  return finish(node(TermKind::App, span, {std::move(f), std::move(a)}));
}

TermRef make_app(TermRef f, std::initializer_list<TermRef> args) {
  for (const auto& a : args) f = make_app(f, a);
  return f;
}

TermRef make_case(TypeRef annot, TermRef scrut, TermRef t0, TermRef t1, TermRef te,
                  Span span) {
  Term t = node(TermKind::Case, span,
                {std::move(scrut), std::move(t0), std::move(t1), std::move(te)});
  t.type = std::move(annot);
  return finish(std::move(t));
}

TermRef make_rec(TypeRef annot, TermRef scrut, TermRef t0, TermRef t1, TermRef te,
                 Span span) {
  if (!annot) throw Error("syntax", "rec needs a result type", span);
  Term t = node(TermKind::Rec, span,
                {std::move(scrut), std::move(t0), std::move(t1), std::move(te)});
  t.type = std::move(annot);
  return finish(std::move(t));
}

TermRef make_rand(Span span) { return finish(node(TermKind::Rand, span)); }

TermRef make_lam_raw(std::string hint, Aspect aspect, TypeRef type, TermRef body,
                     Span span) {
  Term t = node(TermKind::Lam, span, {std::move(body)});
  t.text = std::move(hint);
  t.aspect = aspect;
  t.type = std::move(type);
  return finish(std::move(t));
}

TermRef make_lam(const std::string& name, Aspect aspect, TypeRef type,
                 const TermRef& body, Span span) {
  return make_lam_raw(name, aspect, std::move(type), abstract(body, name, 0), span);
}

TermRef make_if(TermRef cond, TermRef then_t, TermRef else_t, Span span) {
  return finish(
      node(TermKind::If, span, {std::move(cond), std::move(then_t), std::move(else_t)}));
}

TermRef make_eq(TermRef a, TermRef b, Span span) {
  return finish(node(TermKind::Eq, span, {std::move(a), std::move(b)}));
}

TermRef make_not(TermRef t, Span span) {
  return finish(node(TermKind::Not, span, {std::move(t)}));
}

TermRef make_ones(std::size_t n, Span span) {
  Term t = node(TermKind::Ones, span);
  t.count = n;
  return finish(std::move(t));
}

TermRef with_kids(const Term& t, std::vector<TermRef> kids) {
  Term copy;
  copy.kind = t.kind;
  copy.text = t.text;
  copy.index = t.index;
  copy.count = t.count;
  copy.aspect = t.aspect;
  copy.type = t.type;
  copy.span = t.span;
  copy.kids = std::move(kids);
  return finish(std::move(copy));
}

// ---------------------------------------------------------------------------
// Alpha equivalence
// ---------------------------------------------------------------------------

namespace {

int compare_payload(const Term& a, const Term& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  switch (a.kind) {
    case TermKind::Var:
      if (a.index != b.index) return a.index < b.index ? -1 : 1;
      if (a.index < 0) return a.text.compare(b.text);
      return 0;
    case TermKind::Str:
      return a.text.compare(b.text);
    case TermKind::Ones:
      return a.count == b.count ? 0 : (a.count < b.count ? -1 : 1);
    case TermKind::Lam:
      if (a.aspect != b.aspect) return a.aspect < b.aspect ? -1 : 1;
      return compare_types(a.type, b.type);
    case TermKind::Case:
    case TermKind::Rec:
      return compare_types(a.type, b.type);
    default:
      return 0;
  }
}

int structural_compare(const TermRef& a, const TermRef& b) {
  if (a == b) return 0;
  if (a->hash != b->hash) return a->hash < b->hash ? -1 : 1;
  if (int c = compare_payload(*a, *b)) return c;
  if (a->kids.size() != b->kids.size()) return a->kids.size() < b->kids.size() ? -1 : 1;
  for (std::size_t i = 0; i < a->kids.size(); ++i) {
    if (int c = structural_compare(a->kids[i], b->kids[i])) return c;
  }
  return 0;
}

}  // namespace

bool alpha_equal(const TermRef& a, const TermRef& b) {
  return structural_compare(a, b) == 0;
}

int alpha_compare(const TermRef& a, const TermRef& b) { return structural_compare(a, b); }

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

namespace {

template <class F>
TermRef map_kids(const TermRef& t, F&& f) {
  std::vector<TermRef> kids;
  kids.reserve(t->kids.size());
  bool changed = false;
  for (std::size_t i = 0; i < t->kids.size(); ++i) {
    int depth_shift = t->kind == TermKind::Lam ? 1 : 0;
    kids.push_back(f(t->kids[i], depth_shift));
    changed = changed || kids.back() != t->kids[i];
  }
  return changed ? with_kids(*t, std::move(kids)) : t;
}

}  // namespace

TermRef instantiate_at(const TermRef& t, int depth, const TermRef& value) {
  if (t->loose <= depth) return t;
  if (t->kind == TermKind::Var) {
    if (t->index == depth) return value;
    return make_bound(t->index - 1, t->text, t->span);  // index > depth
  }
  return map_kids(t, [&](const TermRef& k, int shift) {
    return instantiate_at(k, depth + shift, value);
  });
}

TermRef instantiate(const TermRef& body, const TermRef& value) {
  return instantiate_at(body, 0, value);
}

TermRef substitute(const TermRef& t, const TermRef& value, const std::string& name) {
  if (!t->free_names) return t;
  if (t->kind == TermKind::Var) return t->text == name ? value : t;
  return map_kids(t, [&](const TermRef& k, int) { return substitute(k, value, name); });
}

TermRef abstract(const TermRef& t, const std::string& name, int depth) {
  if (!t->free_names && t->loose <= depth) return t;
  if (t->kind == TermKind::Var) {
    if (t->index < 0) return t->text == name ? make_bound(depth, name, t->span) : t;
    return t->index >= depth ? make_bound(t->index + 1, t->text, t->span) : t;
  }
  return map_kids(t, [&](const TermRef& k, int shift) {
    return abstract(k, name, depth + shift);
  });
}

std::set<std::string> free_names(const TermRef& t) {
  std::set<std::string> out;
  std::function<void(const TermRef&)> walk = [&](const TermRef& u) {
    if (!u->free_names) return;
    if (u->kind == TermKind::Var) {
      out.insert(u->text);
      return;
    }
    for (const auto& k : u->kids) walk(k);
  };
  walk(t);
  return out;
}

std::size_t count_bound(const TermRef& t, int depth) {
  if (t->loose <= depth) return 0;
  if (t->kind == TermKind::Var) return t->index == depth ? 1 : 0;
  std::size_t n = 0;
  for (const auto& k : t->kids) n += count_bound(k, t->kind == TermKind::Lam ? depth + 1 : depth);
  return n;
}

// ---------------------------------------------------------------------------
// Contexts
// ---------------------------------------------------------------------------

const std::string& hole_name() {
  static const std::string name = "\x01hole";
  return name;
}

TermRef hole_placeholder() {
  static const TermRef hole = make_var(hole_name());
  return hole;
}

namespace {

bool has_hole(const TermRef& t) {
  if (!t->free_names) return false;
  if (t->kind == TermKind::Var) return t->text == hole_name();
  for (const auto& k : t->kids) {
    if (has_hole(k)) return true;
  }
  return false;
}

int holes_of(const std::vector<ContextRef>& cs) {
  int n = 0;
  for (const auto& c : cs) n += c->holes;
  return n;
}

ContextRef finish_ctx(ContextTerm&& c) {
  return std::make_shared<ContextTerm>(std::move(c));
}

TermRef leaf_term(const ContextRef& c) { return c->image; }

}  // namespace

ContextRef ctx_leaf(TermRef t) {
  ContextTerm c;
  c.kind = ContextKind::Leaf;
  c.term = t;
  c.image = std::move(t);
  return finish_ctx(std::move(c));
}

ContextRef ctx_hole() {
  static const ContextRef hole = [] {
    ContextTerm c;
    c.kind = ContextKind::Hole;
    c.image = hole_placeholder();
    c.holes = 1;
    return finish_ctx(std::move(c));
  }();
  return hole;
}

ContextRef ctx_lam_raw(std::string hint, Aspect aspect, TypeRef type, ContextRef body) {
  TermRef image = make_lam_raw(hint, aspect, type, body->image);
  if (body->holes == 0) return ctx_leaf(image);
  ContextTerm c;
  c.kind = ContextKind::Lam;
  c.text = std::move(hint);
  c.aspect = aspect;
  c.type = std::move(type);
  c.holes = body->holes;
  c.ctx = {std::move(body)};
  c.image = std::move(image);
  return finish_ctx(std::move(c));
}

ContextRef ctx_app_left(ContextRef fn, TermRef arg) {
  TermRef image = make_app(fn->image, arg);
  if (fn->holes == 0) return ctx_leaf(image);
  ContextTerm c;
  c.kind = ContextKind::AppL;
  c.holes = fn->holes;
  c.ctx = {std::move(fn)};
  c.terms = {std::move(arg)};
  c.image = std::move(image);
  return finish_ctx(std::move(c));
}

ContextRef ctx_app_right(TermRef fn, ContextRef arg) {
  TermRef image = make_app(fn, arg->image);
  if (arg->holes == 0) return ctx_leaf(image);
  ContextTerm c;
  c.kind = ContextKind::AppR;
  c.holes = arg->holes;
  c.ctx = {std::move(arg)};
  c.terms = {std::move(fn)};
  c.image = std::move(image);
  return finish_ctx(std::move(c));
}

ContextRef ctx_prepend(char bit, ContextRef inner) {
  TermRef image = make_prepend(bit, inner->image);
  if (inner->holes == 0) return ctx_leaf(image);
  ContextTerm c;
  c.kind = bit == '0' ? ContextKind::Zero : ContextKind::One;
  c.holes = inner->holes;
  c.ctx = {std::move(inner)};
  c.image = std::move(image);
  return finish_ctx(std::move(c));
}

ContextRef ctx_tail(ContextRef inner) {
  TermRef image = make_tail(inner->image);
  if (inner->holes == 0) return ctx_leaf(image);
  ContextTerm c;
  c.kind = ContextKind::Tail;
  c.holes = inner->holes;
  c.ctx = {std::move(inner)};
  c.image = std::move(image);
  return finish_ctx(std::move(c));
}

ContextRef ctx_case_scrut(TypeRef annot, ContextRef scrut, TermRef t0, TermRef t1,
                          TermRef te) {
  TermRef image = make_case(annot, scrut->image, t0, t1, te);
  if (scrut->holes == 0) return ctx_leaf(image);
  ContextTerm c;
  c.kind = ContextKind::CaseScrut;
  c.type = std::move(annot);
  c.holes = scrut->holes;
  c.ctx = {std::move(scrut)};
  c.terms = {std::move(t0), std::move(t1), std::move(te)};
  c.image = std::move(image);
  return finish_ctx(std::move(c));
}

ContextRef ctx_case_branches(TypeRef annot, TermRef scrut, ContextRef c0, ContextRef c1,
                             ContextRef ce) {
  TermRef image = make_case(annot, scrut, c0->image, c1->image, ce->image);
  std::vector<ContextRef> branches = {std::move(c0), std::move(c1), std::move(ce)};
  int holes = holes_of(branches);
  if (holes == 0) return ctx_leaf(image);
  if (holes > 1) throw Error("context", "the hole occurs more than once");
  ContextTerm c;
  c.kind = ContextKind::CaseBranches;
  c.type = std::move(annot);
  c.holes = holes;
  c.ctx = std::move(branches);
  c.terms = {std::move(scrut)};
  c.image = std::move(image);
  return finish_ctx(std::move(c));
}

ContextRef ctx_rec_scrut(TypeRef annot, ContextRef scrut, TermRef t0, TermRef t1,
                         TermRef te) {
  TermRef image = make_rec(annot, scrut->image, t0, t1, te);
  if (scrut->holes == 0) return ctx_leaf(image);
  ContextTerm c;
  c.kind = ContextKind::RecScrut;
  c.type = std::move(annot);
  c.holes = scrut->holes;
  c.ctx = {std::move(scrut)};
  c.terms = {std::move(t0), std::move(t1), std::move(te)};
  c.image = std::move(image);
  return finish_ctx(std::move(c));
}

ContextRef context_from_image(const TermRef& image) {
  if (!has_hole(image)) return ctx_leaf(image);
  const auto& k = image->kids;
  switch (image->kind) {
    case TermKind::Var:
      return ctx_hole();
    case TermKind::Lam:
      return ctx_lam_raw(image->text, image->aspect, image->type, context_from_image(k[0]));
    case TermKind::App:
      if (has_hole(k[0])) {
        if (has_hole(k[1])) throw Error("context", "the hole occurs more than once");
        return ctx_app_left(context_from_image(k[0]), k[1]);
      }
      return ctx_app_right(k[0], context_from_image(k[1]));
    case TermKind::Zero:
      return ctx_prepend('0', context_from_image(k[0]));
    case TermKind::One:
      return ctx_prepend('1', context_from_image(k[0]));
    case TermKind::Tail:
      return ctx_tail(context_from_image(k[0]));
    case TermKind::Case:
      if (has_hole(k[0])) {
        if (has_hole(k[1]) || has_hole(k[2]) || has_hole(k[3]))
          throw Error("context", "the hole occurs more than once");
        return ctx_case_scrut(image->type, context_from_image(k[0]), k[1], k[2], k[3]);
      }
      return ctx_case_branches(image->type, k[0], context_from_image(k[1]),
                               context_from_image(k[2]), context_from_image(k[3]));
    case TermKind::Rec:
      if (has_hole(k[1]) || has_hole(k[2]) || has_hole(k[3]))
        throw Error("context", "the hole may not occur inside a recursion branch");
      return ctx_rec_scrut(image->type, context_from_image(k[0]), k[1], k[2], k[3]);
    default:
      throw Error("context", "surface syntax inside a context");
  }
}

int count_holes(const ContextRef& c) {
  std::function<int(const TermRef&)> walk = [&](const TermRef& t) {
    if (!t->free_names) return 0;
    if (t->kind == TermKind::Var) return t->text == hole_name() ? 1 : 0;
    int n = 0;
    for (const auto& k : t->kids) n += walk(k);
    return n;
  };
  return walk(c->image);
}

int count_holes_in_rec_branches(const ContextRef& c) {
  std::function<int(const TermRef&, bool)> walk = [&](const TermRef& t, bool in_branch) {
    if (!t->free_names) return 0;
    if (t->kind == TermKind::Var) return in_branch && t->text == hole_name() ? 1 : 0;
    int n = 0;
    for (std::size_t i = 0; i < t->kids.size(); ++i) {
      bool branch = in_branch || (t->kind == TermKind::Rec && i > 0);
      n += walk(t->kids[i], branch);
    }
    return n;
  };
  return walk(c->image, false);
}

bool ctx_equal(const ContextRef& a, const ContextRef& b) {
  return alpha_equal(leaf_term(a), leaf_term(b));
}

int ctx_compare(const ContextRef& a, const ContextRef& b) {
  return alpha_compare(leaf_term(a), leaf_term(b));
}

TermRef fill(const ContextRef& c, const TermRef& t) {
  if (c->holes == 0) return c->image;
  return substitute(c->image, t, hole_name());
}

ContextRef ctx_instantiate(const ContextRef& c, const TermRef& value, int depth) {
  return context_from_image(instantiate_at(c->image, depth, value));
}

ContextRef splice(const TermRef& t, const ContextRef& c, int depth) {
  if (count_bound(t, depth) > 1)
    throw Error("context", "cannot plug a context into a duplicated variable");
  TermRef image = instantiate_at(t, depth, hole_placeholder());
  return context_from_image(substitute(image, c->image, hole_name()));
}

}  // namespace rslr
