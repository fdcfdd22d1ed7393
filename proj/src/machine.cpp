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

#include "rslr/machine.hpp"

namespace rslr {

namespace {

int compare_dist(const TermDist& a, const TermDist& b) {
  auto i = a.begin();
  auto j = b.begin();
  for (; i != a.end() && j != b.end(); ++i, ++j) {
    if (int c = alpha_compare(i->first, j->first)) return c;
    if (int c = cmp(i->second, j->second)) return c < 0 ? -1 : 1;
  }
  if (i == a.end() && j == b.end()) return 0;
  return i == a.end() ? -1 : 1;
}

[[noreturn]] void stuck(const PairState& s) {
  throw Error("stuck", "context machine is stuck at " + pretty(s.context));
}

using K = ContextKind;

// Rebuild a one-child context around a new child, keeping the other fields.
ContextRef rewrap(const ContextRef& c, const ContextRef& child) {
  switch (c->kind) {
    case K::AppL:
      return ctx_app_left(child, c->terms[0]);
    case K::AppR:
      return ctx_app_right(c->terms[0], child);
    case K::Zero:
      return ctx_prepend('0', child);
    case K::One:
      return ctx_prepend('1', child);
    case K::Tail:
      return ctx_tail(child);
    case K::CaseScrut:
      return ctx_case_scrut(c->type, child, c->terms[0], c->terms[1], c->terms[2]);
    case K::RecScrut:
      return ctx_rec_scrut(c->type, child, c->terms[0], c->terms[1], c->terms[2]);
    default:
      throw Error("stuck", "cannot rewrap context " + pretty(c));
  }
}

PairDist wrap(const ContextRef& parent, const PairDist& inner_steps) {
  PairDist out;
  for (const auto& [s, p] : inner_steps) add_mass(out, make_pair(rewrap(parent, s.context), s.inner), p);
  return out;
}

// Reduce a term sitting in a context slot; `rebuild` puts each reduct back.
template <class F>
PairDist reduce_slot(const TermRef& t, const TermDist& inner, F&& rebuild) {
  PairDist out;
  for (const auto& [r, p] : reduce(t)) add_mass(out, make_pair(rebuild(r), inner), p);
  return out;
}

PairDist step_inner(const PairState& s) {
  PairDist out;
  add_mass(out, make_pair(s.context, step(s.inner).dist), Rational(1));
  return out;
}

bool is_string_pair(const PairState& s) {
  switch (s.context->kind) {
    case K::Leaf:
      return s.context->term->kind == TermKind::Str;
    case K::Hole:
      for (const auto& [t, p] : s.inner)
        if (t->kind != TermKind::Str) return false;
      return true;
    case K::Zero:
    case K::One:
    case K::Tail:
      return true;
    default:
      return false;
  }
}

PairState child(const PairState& s) { return make_pair(s.context->ctx[0], s.inner); }

}  // namespace

bool PairLess::operator()(const PairState& a, const PairState& b) const {
  if (int c = ctx_compare(a.context, b.context)) return c < 0;
  return compare_dist(a.inner, b.inner) < 0;
}

TermDist dummy_inner() { return point(make_str("")); }

PairState make_pair(ContextRef c, TermDist inner) {
  if (c->holes == 0) inner = dummy_inner();
  return PairState{std::move(c), std::move(inner)};
}

bool settled(const PairState& s) {
  switch (s.context->kind) {
    case K::Leaf:
      return s.context->term->is_value();
    case K::Hole:
    case K::Lam:
      return is_normal(s.inner);
    case K::Zero:
    case K::One:
    case K::Tail:
      return settled(child(s));
    default:
      return false;
  }
}

bool is_normal(const PairDist& pd) {
  for (const auto& [s, p] : pd)
    if (!settled(s)) return false;
  return true;
}

StringDist induced_strings(const PairState& s) {
  const ContextRef& c = s.context;
  switch (c->kind) {
    case K::Leaf:
      if (c->term->kind != TermKind::Str) break;
      return StringDist{{c->term->text, Rational(1)}};
    case K::Hole:
      return to_strings(s.inner);
    case K::Zero:
    case K::One: {
      std::string bit(1, c->kind == K::Zero ? '0' : '1');
      StringDist out;
      for (const auto& [m, p] : induced_strings(child(s))) add_mass(out, bit + m, p);
      return out;
    }
    case K::Tail: {
      StringDist out;
      for (const auto& [m, p] : induced_strings(child(s)))
        add_mass(out, m.empty() ? m : m.substr(1), p);
      return out;
    }
    default:
      break;
  }
  throw Error("stuck", "not a settled string pair: " + pretty(c));
}

std::optional<PairDist> pair_step_one(const PairState& s) {
  const ContextRef& c = s.context;
  const TermDist& T = s.inner;
  switch (c->kind) {
    case K::Leaf: {
      if (c->term->is_value()) return std::nullopt;
      return reduce_slot(c->term, T, [](const TermRef& r) { return ctx_leaf(r); });
    }
    case K::Hole:
    case K::Lam:
      if (is_normal(T)) return std::nullopt;
      return step_inner(s);

    case K::Zero:
    case K::One:
    case K::Tail: {
      auto inner = pair_step_one(child(s));
      if (!inner) return std::nullopt;
      return wrap(c, *inner);
    }

    case K::AppL: {
      PairState fn = child(s);
      if (auto inner = pair_step_one(fn)) return wrap(c, *inner);
      const TermRef& arg = c->terms[0];
      if (!arg->is_value())
        return reduce_slot(arg, T, [&](const TermRef& r) { return ctx_app_left(fn.context, r); });
      PairDist out;
      if (fn.context->kind == K::Lam) {
        add_mass(out, make_pair(ctx_instantiate(fn.context->ctx[0], arg), T), Rational(1));
      } else if (fn.context->kind == K::Hole) {
        for (const auto& [lam, p] : pass_value(T, arg)) add_mass(out, make_pair(ctx_leaf(lam), {}), p);
      } else {
        stuck(s);
      }
      return out;
    }

    case K::AppR: {
      const TermRef& fn = c->terms[0];
      PairState arg = child(s);
      if (!fn->is_value())
        return reduce_slot(fn, T, [&](const TermRef& r) { return ctx_app_right(r, arg.context); });
      if (auto inner = pair_step_one(arg)) return wrap(c, *inner);
      if (fn->kind != TermKind::Lam) stuck(s);
      const TermRef& body = fn->kids[0];
      PairDist out;
      if (is_string_pair(arg)) {
        // The argument is a string: consume its distribution.
        for (const auto& [m, p] : induced_strings(arg))
          add_mass(out, make_pair(ctx_leaf(instantiate(body, make_str(m))), {}), p);
      } else {
        // Higher-order argument: the bound variable is linear, splice the
        // context in its place.
        add_mass(out, make_pair(splice(body, arg.context), T), Rational(1));
      }
      return out;
    }

    case K::CaseScrut: {
      PairState scrut = child(s);
      if (auto inner = pair_step_one(scrut)) return wrap(c, *inner);
      StringDist d = induced_strings(scrut);
      PairDist out;
      const char labels[] = {'0', '1', 'e'};
      for (int i = 0; i < 3; ++i)
        add_mass(out, make_pair(ctx_leaf(c->terms[i]), {}), head_mass(d, labels[i]));
      return out;
    }

    case K::CaseBranches: {
      const TermRef& scrut = c->terms[0];
      if (!scrut->is_value())
        return reduce_slot(scrut, T, [&](const TermRef& r) {
          return ctx_case_branches(c->type, r, c->ctx[0], c->ctx[1], c->ctx[2]);
        });
      if (scrut->kind != TermKind::Str) stuck(s);
      const std::string& m = scrut->text;
      const ContextRef& branch = m.empty() ? c->ctx[2] : (m[0] == '0' ? c->ctx[0] : c->ctx[1]);
      PairDist out;
      add_mass(out, make_pair(branch, T), Rational(1));
      return out;
    }

    case K::RecScrut: {
      PairState scrut = child(s);
      if (auto inner = pair_step_one(scrut)) return wrap(c, *inner);
      PairDist out;
      for (const auto& [m, p] : induced_strings(scrut)) {
        TermRef rec = make_rec(c->type, make_str(m), c->terms[0], c->terms[1], c->terms[2]);
        add_mass(out, make_pair(ctx_leaf(rec), {}), p);
      }
      return out;
    }
  }
  stuck(s);
}

PairStepResult pair_step(const PairDist& pd, bool rightmost) {
  auto pick = pd.end();
  std::optional<PairDist> moved;
  if (!rightmost) {
    for (auto it = pd.begin(); it != pd.end(); ++it) {
      if ((moved = pair_step_one(it->first))) {
        pick = it;
        break;
      }
    }
  } else {
    for (auto it = pd.rbegin(); it != pd.rend(); ++it) {
      if ((moved = pair_step_one(it->first))) {
        pick = std::prev(it.base());
        break;
      }
    }
  }
  if (pick == pd.end()) return {pd, true};
  PairDist out = pd;
  out.erase(pick->first);
  add_scaled(out, pick->second, *moved);
  return {std::move(out), false};
}

PairDist pair_normalize(PairDist pd, std::uint64_t budget, bool rightmost) {
  for (std::uint64_t n = 0;; ++n) {
    if (n > budget) throw BudgetExceeded("context machine");
    PairStepResult r = pair_step(pd, rightmost);
    if (r.fixpoint) return std::move(r.dist);
    pd = std::move(r.dist);
  }
}

PairDist pair_pass(const PairDist& pd, const TermRef& v) {
  PairDist out;
  for (const auto& [s, p] : pd) {
    const ContextRef& c = s.context;
    if (c->kind == K::Leaf && c->term->kind == TermKind::Lam) {
      add_mass(out, make_pair(ctx_leaf(instantiate(c->term->kids[0], v)), {}), p);
    } else if (c->kind == K::Lam) {
      add_mass(out, make_pair(ctx_instantiate(c->ctx[0], v), s.inner), p);
    } else if (c->kind == K::Hole) {
      for (const auto& [t, q] : pass_value(s.inner, v))
        add_mass(out, make_pair(ctx_leaf(t), {}), p * q);
    } else {
      throw Error("incompatible", "cannot pass a value to " + pretty(c));
    }
  }
  return out;
}

Rational pair_prob(const ContextRef& c, const TermDist& td, const Trace& tr,
                   std::uint64_t budget, bool rightmost) {
  PairDist pd;
  add_mass(pd, make_pair(c, td), Rational(1));
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const TraceAction& a = tr[i];
    pd = pair_normalize(std::move(pd), budget, rightmost);
    if (a.kind == TraceAction::Kind::Pass) {
      pd = pair_pass(pd, a.term);
      continue;
    }
    if (i + 1 != tr.size()) throw Error("incompatible", "a view must end the trace");
    if (a.kind == TraceAction::Kind::ViewDist) {
      // Run (d C, T) and look for ε.
      PairDist applied;
      for (const auto& [s, p] : pd)
        add_mass(applied, make_pair(ctx_app_right(a.term, s.context), s.inner), p);
      applied = pair_normalize(std::move(applied), budget, rightmost);
      Rational sum = 0;
      for (const auto& [s, p] : applied) {
        StringDist d = induced_strings(s);
        auto it = d.find("");
        if (it != d.end()) sum += p * it->second;
      }
      return sum;
    }
    Rational sum = 0;
    for (const auto& [s, p] : pd) {
      for (const auto& [m, q] : induced_strings(s)) {
        bool hit = a.kind == TraceAction::Kind::ViewStr ? m == a.bits : a.set.count(m) > 0;
        if (hit) sum += p * q;
      }
    }
    return sum;
  }
  return total_mass(pd);
}

}  // namespace rslr
