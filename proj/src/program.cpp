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

#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "rslr/program.hpp"
#include "rslr/prelude_text.hpp"

namespace rslr {

namespace {

Span first_use(const TermRef& t, const std::string& name) {
  if (t->kind == TermKind::Var && t->index < 0 && t->text == name) return t->span;
  for (const auto& k : t->kids) {
    if (k->free_names) {
      Span s = first_use(k, name);
      if (s.line > 0) return s;
    }
  }
  return {};
}

}  // namespace

Diagnostic to_diagnostic(const Error& e, const std::string& definition) {
  return Diagnostic{e.code(), e.what(), e.span(), e.variable(), definition};
}

const Definition* Program::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &defs_[it->second];
}

const Definition& Program::at(const std::string& name) const {
  const Definition* d = find(name);
  if (!d) throw Error("unbound-variable", "no definition named `" + name + "`", {}, name);
  return *d;
}

Library Program::library() const {
  Library lib = builtin_library();
  if (const Definition* d = find("eq")) lib.eq = d->term;
  if (const Definition* d = find("not")) lib.neg = d->term;
  return lib;
}

TermRef Program::resolve(const TermRef& surface) const {
  TermRef t = desugar(surface, library());
  for (const auto& name : free_names(t)) {
    const Definition* d = find(name);
    if (!d)
      throw Error("unbound-variable", "unbound name `" + name + "`", first_use(t, name), name);
    t = substitute(t, d->term, name);
  }
  return t;
}

TermRef Program::resolve(const std::string& text) const { return resolve(parse_term(text)); }

void Program::define(const SurfaceDefinition& d) {
  TermRef core = resolve(d.term);
  TypeRef actual = typecheck(core);
  if (!subtype(actual, d.type))
    throw TypeError("shape-mismatch",
                    "`" + d.name + "` has type " + to_string(actual) + " but is declared " +
                        to_string(d.type),
                    d.span, d.name);
  Definition def{d.name, d.type, core, d.span};
  auto it = index_.find(d.name);
  if (it != index_.end()) {
    defs_[it->second] = std::move(def);
  } else {
    index_[d.name] = defs_.size();
    defs_.push_back(std::move(def));
  }
}

void Program::set_main(const std::string& name, Span span) {
  if (!find(name))
    throw Error("unbound-variable", "`main` names unknown definition `" + name + "`", span, name);
  main_ = name;
}

Program elaborate(const SurfaceProgram& src, const Program& base,
                  std::vector<Diagnostic>* diags) {
  Program p = base;
  std::set<std::string> seen;
  for (const auto& d : src.defs) {
    try {
      if (!seen.insert(d.name).second)
        throw Error("duplicate-definition", "`" + d.name + "` is defined twice", d.span,
                    d.name);
      p.define(d);
    } catch (const Error& e) {
      if (!diags) throw;
      diags->push_back(to_diagnostic(e, d.name));
    }
  }
  if (src.main) {
    try {
      p.set_main(*src.main, src.main_span);
    } catch (const Error& e) {
      if (!diags) throw;
      diags->push_back(to_diagnostic(e, "main"));
    }
  }
  return p;
}

std::string prelude_source() {
  auto read = [](const std::string& path) -> std::optional<std::string> {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  if (const char* env = std::getenv("RSLR_PRELUDE"); env && *env) {
    if (auto text = read(env)) return *text;
    throw Error("io", std::string("cannot read RSLR_PRELUDE file ") + env);
  }
#ifdef RSLR_DEFAULT_PRELUDE_PATH
  if (auto text = read(RSLR_DEFAULT_PRELUDE_PATH)) return *text;
#endif
  return detail::kEmbeddedPrelude;
}

const Program& prelude() {
  static const Program p = elaborate(parse_program(prelude_source()));
  return p;
}

Program load_program(const std::string& path, const Program& base,
                     std::vector<Diagnostic>* diags) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return elaborate(parse_program(ss.str()), base, diags);
}

}  // namespace rslr
