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

// Seeded generators of well-typed terms, linear contexts and compatible
// traces shared by the unit tests and the acceptance runner.

#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rslr/ci.hpp"
#include "rslr/equivalence.hpp"
#include "rslr/machine.hpp"
#include "rslr/program.hpp"
#include "rslr/trace.hpp"
#include "rslr/types.hpp"

namespace rslr::testing {

inline TypeRef str() { return Type::str(); }
inline TypeRef arr(Aspect a, TypeRef x, TypeRef y) { return Type::arrow(a, std::move(x), std::move(y)); }
inline TypeRef poly_fn() { return arr(Aspect::Poly, str(), str()); }
inline TypeRef const_fn() { return arr(Aspect::Const, str(), str()); }

inline TermRef def(const std::string& name) { return prelude().at(name).term; }
inline TermRef term(const std::string& text) { return prelude().resolve(text); }

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }

  std::string bits(int max_len) {
    std::string s;
    int n = uniform(0, max_len);
    for (int i = 0; i < n; ++i) s += coin() ? '1' : '0';
    return s;
  }

  Aspect aspect() { return coin() ? Aspect::Poly : Aspect::Const; }

  /// Types of arrow depth <= 2 over Str, occasionally higher order.
  TypeRef type(int depth = 2) {
    if (depth == 0 || coin(0.35)) return str();
    TypeRef arg = depth >= 2 && coin(0.2) ? arr(aspect(), str(), str()) : str();
    return arr(aspect(), arg, type(depth - 1));
  }

  /// A closed term that type-checks at a subtype of `t`.
  TermRef closed(const TypeRef& t, int depth = 3) {
    for (int attempt = 0; attempt < 500; ++attempt) {
      TermRef cand = raw(t, depth, {}, nullptr);
      if (fits(cand, t)) return cand;
    }
    throw std::runtime_error("generator failed to produce a term of type " + to_string(t));
  }

  TermRef value(const TypeRef& t, int depth = 2) {
    if (t->is_str()) return make_str(bits(3));
    for (int attempt = 0; attempt < 500; ++attempt) {
      TermRef cand = closed(t, depth);
      if (cand->is_value()) return cand;
    }
    throw std::runtime_error("generator failed to produce a value");
  }

  /// A linear context of output type `out` (or a subtype) around `hole`.
  ContextRef context(const TypeRef& hole, const TypeRef& out, int depth = 3) {
    for (int attempt = 0; attempt < 2000; ++attempt) {
      HoleSlot slot{hole, false};
      TermRef image = raw(out, depth, {}, &slot);
      if (!slot.used) continue;
      try {
        ContextRef c = context_from_image(image);
        if (subtype(typecheck_context({}, c, hole), out)) return c;
      } catch (const Error&) {
      }
    }
    throw std::runtime_error("generator failed to produce a context");
  }

  TraceAction view() {
    switch (uniform(0, 3)) {
      case 0:
        return view_str(bits(3));
      case 1: {
        std::set<std::string> m;
        int k = uniform(1, 4);
        for (int i = 0; i < k; ++i) m.insert(bits(3));
        return view_set(m);
      }
      case 2:
        return view_dist(point_distinguisher(bits(3)));
      default: {
        static const std::vector<std::string> named{"not", "RBG", "ident", "lazyCoin"};
        const std::string& n = pick(named);
        return view_dist(def(n), n);
      }
    }
  }

  /// A trace compatible with `t`.
  Trace trace(const TypeRef& t) {
    Trace tr;
    TypeRef cur = t;
    while (cur->is_arrow()) {
      tr.push_back(pass(value(cur->arg())));
      cur = cur->res();
    }
    tr.push_back(view());
    return tr;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  struct Var {
    std::string name;
    Aspect aspect;
    TypeRef type;
  };
  using Scope = std::vector<Var>;
  struct HoleSlot {
    TypeRef type;
    bool used;
  };

  static bool fits(const TermRef& t, const TypeRef& type) {
    try {
      return subtype(typecheck(t), type);
    } catch (const Error&) {
      return false;
    }
  }

  std::string fresh() { return "v" + std::to_string(counter_++); }

  TermRef leaf_str(const Scope& scope) {
    std::vector<const Var*> vars;
    for (const auto& v : scope)
      if (v.type->is_str()) vars.push_back(&v);
    if (!vars.empty() && coin(0.5)) return make_var(pick(vars)->name);
    if (coin(0.2)) return make_rand();
    return make_str(bits(3));
  }

  TermRef raw(const TypeRef& t, int depth, const Scope& scope, HoleSlot* hole) {
    if (hole && !hole->used && same_type(hole->type, t) && (depth <= 0 || coin(0.3))) {
      hole->used = true;
      return hole_placeholder();
    }
    if (t->is_str()) return raw_str(depth, scope, hole);

    // Arrow type.
    std::vector<const Var*> vars;
    for (const auto& v : scope)
      if (subtype(v.type, t)) vars.push_back(&v);
    if (!vars.empty() && coin(0.15)) return make_var(pick(vars)->name);
    if (depth > 0 && coin(0.2)) {
      // A probabilistic choice between functions.
      return make_case(t, raw_str(depth - 1, scope, nullptr), raw(t, depth - 1, scope, hole),
                       raw(t, depth - 1, scope, hole), raw(t, depth - 1, scope, hole));
    }
    std::string x = fresh();
    Scope inner = scope;
    inner.push_back({x, t->aspect(), t->arg()});
    return make_lam(x, t->aspect(), t->arg(), raw(t->res(), depth - 1, inner, hole));
  }

  TermRef raw_str(int depth, const Scope& scope, HoleSlot* hole) {
    if (hole && !hole->used && hole->type->is_arrow() && coin(0.3)) {
      // Apply the hole to arguments until it reaches Str.
      hole->used = true;
      TermRef app = hole_placeholder();
      for (TypeRef cur = hole->type; cur->is_arrow(); cur = cur->res())
        app = make_app(app, raw(cur->arg(), std::max(depth - 1, 0), scope, nullptr));
      return app;
    }
    if (depth <= 0) return leaf_str(scope);
    switch (uniform(0, 12)) {
      case 0:
        return leaf_str(scope);
      case 1:
        return make_zero(raw_str(depth - 1, scope, hole));
      case 2:
        return make_one(raw_str(depth - 1, scope, hole));
      case 3:
        return make_tail(raw_str(depth - 1, scope, hole));
      case 4:
        return make_case(str(), raw_str(depth - 1, scope, hole), raw_str(depth - 1, scope, hole),
                         raw_str(depth - 1, scope, hole), raw_str(depth - 1, scope, hole));
      case 5: {
        std::string x = fresh();
        Aspect a = aspect();
        Scope inner = scope;
        inner.push_back({x, a, str()});
        TermRef body = raw_str(depth - 1, inner, hole);
        return make_app(make_lam(x, a, str(), body), raw_str(depth - 1, scope, hole));
      }
      case 6: {
        static const std::vector<std::string> fns{"not", "RBG", "ident", "lazyCoin", "eagerCoin"};
        return make_app(def(pick(fns)), raw_str(depth - 1, scope, hole));
      }
      case 7: {
        // Steps see only their own binders and the []-annotated base variables.
        Scope steps;
        for (const auto& v : scope)
          if (v.type->is_str() && v.aspect == Aspect::Poly) steps.push_back(v);
        auto step = [&]() {
          std::string w = fresh(), z = fresh();
          Scope inner = steps;
          inner.push_back({w, Aspect::Poly, str()});
          inner.push_back({z, Aspect::Const, str()});
          TermRef body = raw_str(std::min(depth - 1, 2), inner, nullptr);
          return make_lam(w, Aspect::Poly, str(), make_lam(z, Aspect::Const, str(), body));
        };
        TermRef scrut = raw_str(depth - 1, scope, hole);
        return make_rec(str(), scrut, step(), step(), raw_str(1, steps, nullptr));
      }
      case 8: {
        std::vector<const Var*> fns;
        for (const auto& v : scope)
          if (v.type->is_arrow() && v.type->arg()->is_str() && v.type->res()->is_str())
            fns.push_back(&v);
        if (fns.empty()) return leaf_str(scope);
        return make_app(make_var(pick(fns)->name), raw_str(depth - 1, scope, hole));
      }
      case 9:
        return make_app(make_app(def("eq"), raw_str(depth - 1, scope, hole)),
                        raw_str(depth - 1, scope, hole));
      case 10: {
        // General application: the function itself is generated.
        TypeRef ft = arr(aspect(), str(), str());
        return make_app(raw(ft, depth - 1, scope, hole), raw_str(depth - 1, scope, hole));
      }
      case 11: {
        // Higher-order argument.
        TypeRef arg = arr(aspect(), str(), str());
        TypeRef ft = arr(aspect(), arg, str());
        return make_app(raw(ft, depth - 1, scope, hole), raw(arg, depth - 1, scope, hole));
      }
      default:
        return make_rand();
    }
  }

  std::mt19937_64 rng_;
  int counter_ = 0;
};

/// Equality up to alpha-equivalence of the support.
inline bool same_dist(const TermDist& a, const TermDist& b) {
  if (a.size() != b.size()) return false;
  for (auto i = a.begin(), j = b.begin(); i != a.end(); ++i, ++j)
    if (!alpha_equal(i->first, j->first) || i->second != j->second) return false;
  return true;
}

inline std::string show(const TermDist& d) {
  std::string s = "{";
  for (const auto& [t, p] : d) s += " " + pretty(t) + ": " + p.get_str() + ";";
  return s + " }";
}

/// Mixture Σ p_i · [C[t_i]], the direct side of the machine comparison.
inline TermDist fill_mix(const ContextRef& c, const TermDist& td) {
  TermDist out;
  for (const auto& [t, p] : td) add_mass(out, fill(c, t), p);
  return out;
}

}  // namespace rslr::testing
