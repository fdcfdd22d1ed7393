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

#include "rslr/program.hpp"
#include "rslr/prelude_text.hpp"

namespace rslr {

namespace {

// The type a branch obviously has without looking at variables.
TypeRef evident_type(const TermRef& t) {
  switch (t->kind) {
    case TermKind::Str:
    case TermKind::Zero:
    case TermKind::One:
    case TermKind::Tail:
    case TermKind::Rand:
    case TermKind::Eq:
    case TermKind::Not:
    case TermKind::Ones:
      return Type::str();
    case TermKind::Lam: {
      TypeRef body = evident_type(t->kids[0]);
      return body ? Type::arrow(t->aspect, t->type, body) : nullptr;
    }
    case TermKind::Case:
    case TermKind::Rec:
      return t->type;
    case TermKind::If: {
      TypeRef a = evident_type(t->kids[1]);
      return a ? a : evident_type(t->kids[2]);
    }
    default:
      return nullptr;
  }
}

}  // namespace

TermRef desugar(const TermRef& t, const Library& lib) {
  if (!t->sugar) return t;
  const auto& k = t->kids;
  switch (t->kind) {
    case TermKind::If: {
      TypeRef annot = evident_type(k[1]);
      if (!annot) annot = evident_type(k[2]);
      TermRef then_t = desugar(k[1], lib);
      TermRef else_t = desugar(k[2], lib);
      return make_case(annot, desugar(k[0], lib), else_t, then_t, else_t, t->span);
    }
    case TermKind::Eq:
      return make_app(make_app(lib.eq, desugar(k[0], lib), t->span), desugar(k[1], lib),
                      t->span);
    case TermKind::Not:
      return make_app(lib.neg, desugar(k[0], lib), t->span);
    case TermKind::Ones:
      return make_str(std::string(t->count, '1'), t->span);
    default: {
      std::vector<TermRef> kids;
      kids.reserve(k.size());
      for (const auto& kid : k) kids.push_back(desugar(kid, lib));
      return with_kids(*t, std::move(kids));
    }
  }
}

const Library& builtin_library() {
  static const Library lib = [] {
    SurfaceProgram p = parse_program(detail::kEmbeddedPrelude);
    Library out;
    for (const auto& d : p.defs) {
      if (d.name == "eq") out.eq = d.term;
      if (d.name == "not") out.neg = d.term;
    }
    if (!out.eq || !out.neg || out.eq->sugar || out.neg->sugar || !out.eq->is_closed() ||
        !out.neg->is_closed())
      throw Error("prelude", "the prelude must define closed core terms `eq` and `not`");
    return out;
  }();
  return lib;
}

}  // namespace rslr
