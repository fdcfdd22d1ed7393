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

#include "rslr/eval.hpp"

#include <set>

namespace rslr {

// ---------------------------------------------------------------------------
// Distribution helpers
// ---------------------------------------------------------------------------

bool is_normal(const TermDist& d) {
  for (const auto& [t, p] : d) {
    if (!t->is_value()) return false;
  }
  return true;
}

StringDist to_strings(const TermDist& d) {
  StringDist out;
  for (const auto& [t, p] : d) {
    if (t->kind != TermKind::Str)
      throw Error("shape-mismatch", "expected a string distribution, found " + pretty(t));
    add_mass(out, t->text, p);
  }
  return out;
}

TermDist from_strings(const StringDist& d) {
  TermDist out;
  for (const auto& [m, p] : d) add_mass(out, make_str(m), p);
  return out;
}

Rational tv_distance(const StringDist& d, const StringDist& e) {
  std::set<std::string> keys;
  for (const auto& [m, p] : d) keys.insert(m);
  for (const auto& [m, p] : e) keys.insert(m);
  // The best set collects every string on which one side dominates.
  Rational over = 0, under = 0;
  for (const auto& m : keys) {
    auto a = d.find(m);
    auto b = e.find(m);
    Rational pa = a == d.end() ? Rational(0) : a->second;
    Rational pb = b == e.end() ? Rational(0) : b->second;
    if (pa > pb) over += pa - pb;
    else under += pb - pa;
  }
  return over > under ? over : under;
}

Rational head_mass(const StringDist& d, char bit) {
  Rational s = 0;
  for (const auto& [m, p] : d) {
    if (bit == 'e' ? m.empty() : (!m.empty() && m[0] == bit)) s += p;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Big-step
// ---------------------------------------------------------------------------

namespace {

TermDist coin() {
  TermDist d;
  add_mass(d, make_str("0"), Rational(1, 2));
  add_mass(d, make_str("1"), Rational(1, 2));
  return d;
}

std::string tail_of(const std::string& m) { return m.empty() ? m : m.substr(1); }

[[noreturn]] void stuck(const TermRef& t) {
  throw Error("stuck", "evaluation is stuck at " + pretty(t));
}

}  // namespace

TermRef unfold_rec(const TermRef& rec, const std::string& bits) {
  const auto& k = rec->kids;
  if (bits.empty()) return k[3];
  TermRef step = bits[0] == '0' ? k[1] : k[2];
  TermRef rest = make_rec(rec->type, make_str(bits.substr(1)), k[1], k[2], k[3]);
  return make_app(make_app(step, make_str(bits)), rest);
}

const TermDist& Evaluator::eval(const TermRef& t) {
  auto it = memo_.find(t);
  if (it != memo_.end()) return it->second;
  if (++steps_ > budget_) throw BudgetExceeded("evaluation");
  TermDist d = compute(t);
  return memo_.emplace(t, std::move(d)).first->second;
}

TermDist Evaluator::eval(const TermDist& td) {
  TermDist out;
  for (const auto& [t, p] : td) add_scaled(out, p, eval(t));
  return out;
}

TermDist Evaluator::compute(const TermRef& t) {
  const auto& k = t->kids;
  switch (t->kind) {
    case TermKind::Str:
    case TermKind::Lam:
      return point(t);
    case TermKind::Rand:
      return coin();
    case TermKind::App: {
      TermDist fs = eval(k[0]);
      TermDist args = eval(k[1]);
      TermDist out;
      for (const auto& [f, p] : fs) {
        if (f->kind != TermKind::Lam) stuck(t);
        for (const auto& [v, q] : args) add_scaled(out, p * q, eval(instantiate(f->kids[0], v)));
      }
      return out;
    }
    case TermKind::Zero:
    case TermKind::One: {
      char bit = t->kind == TermKind::Zero ? '0' : '1';
      TermDist out;
      for (const auto& [m, p] : to_strings(eval(k[0]))) add_mass(out, make_str(bit + m), p);
      return out;
    }
    case TermKind::Tail: {
      TermDist out;
      for (const auto& [m, p] : to_strings(eval(k[0]))) add_mass(out, make_str(tail_of(m)), p);
      return out;
    }
    case TermKind::Case: {
      StringDist s = to_strings(eval(k[0]));
      TermDist out;
      const char labels[] = {'0', '1', 'e'};
      for (int i = 0; i < 3; ++i) {
        Rational w = head_mass(s, labels[i]);
        if (sgn(w) != 0) add_scaled(out, w, eval(k[1 + i]));
      }
      return out;
    }
    case TermKind::Rec: {
      StringDist s = to_strings(eval(k[0]));
      TermDist out;
      for (const auto& [m, p] : s) add_scaled(out, p, eval(unfold_rec(t, m)));
      return out;
    }
    default:
      if (t->sugar) throw Error("surface-syntax", "cannot evaluate surface syntax");
      throw Error("open-term", "cannot evaluate a term with free variables: " + pretty(t));
  }
}

TermDist eval(const TermRef& t, std::uint64_t budget) {
  Evaluator ev(budget);
  return ev.eval(t);
}

// ---------------------------------------------------------------------------
// Small-step
// ---------------------------------------------------------------------------

namespace {

template <class F>
TermDist map_reducts(const TermRef& redex, F&& rebuild) {
  TermDist out;
  for (const auto& [r, p] : reduce(redex)) add_mass(out, rebuild(r), p);
  return out;
}

}  // namespace

TermDist reduce(const TermRef& t) {
  const auto& k = t->kids;
  auto replace = [&](std::size_t i) {
    return [&, i](const TermRef& r) {
      std::vector<TermRef> kids = k;
      kids[i] = r;
      return with_kids(*t, std::move(kids));
    };
  };
  switch (t->kind) {
    case TermKind::Rand:
      return coin();
    case TermKind::App:
      if (!k[0]->is_value()) return map_reducts(k[0], replace(0));
      if (!k[1]->is_value()) return map_reducts(k[1], replace(1));
      if (k[0]->kind != TermKind::Lam) stuck(t);
      return point(instantiate(k[0]->kids[0], k[1]));
    case TermKind::Zero:
    case TermKind::One:
    case TermKind::Tail: {
      if (!k[0]->is_value()) return map_reducts(k[0], replace(0));
      if (k[0]->kind != TermKind::Str) stuck(t);
      const std::string& m = k[0]->text;
      if (t->kind == TermKind::Tail) return point(make_str(m.empty() ? m : m.substr(1)));
      return point(make_str((t->kind == TermKind::Zero ? "0" : "1") + m));
    }
    case TermKind::Case: {
      if (!k[0]->is_value()) return map_reducts(k[0], replace(0));
      if (k[0]->kind != TermKind::Str) stuck(t);
      const std::string& m = k[0]->text;
      return point(m.empty() ? k[3] : (m[0] == '0' ? k[1] : k[2]));
    }
    case TermKind::Rec:
      if (!k[0]->is_value()) return map_reducts(k[0], replace(0));
      if (k[0]->kind != TermKind::Str) stuck(t);
      return point(unfold_rec(t, k[0]->text));
    default:
      stuck(t);
  }
}

StepResult step(const TermDist& td, bool rightmost) {
  auto pick = td.end();
  for (auto it = td.begin(); it != td.end(); ++it) {
    if (!it->first->is_value()) {
      pick = it;
      if (!rightmost) break;
    }
  }
  if (pick == td.end()) return {td, true};
  TermDist out = td;
  out.erase(pick->first);
  add_scaled(out, pick->second, reduce(pick->first));
  return {std::move(out), false};
}

TermDist normalize_small_step(TermDist td, std::uint64_t budget) {
  for (std::uint64_t n = 0;; ++n) {
    if (n > budget) throw BudgetExceeded("small-step normalization");
    StepResult r = step(td);
    if (r.fixpoint) return std::move(r.dist);
    td = std::move(r.dist);
  }
}

}  // namespace rslr
