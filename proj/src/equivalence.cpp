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

#include "rslr/equivalence.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "rslr/types.hpp"

namespace rslr {

// ---------------------------------------------------------------------------
// Strings and values
// ---------------------------------------------------------------------------

bool shortlex_less(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::vector<std::string> strings_up_to(std::size_t n) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() == n) continue;
    out.push_back(out[i] + "0");
    out.push_back(out[i] + "1");
  }
  return out;
}

namespace {

struct ScopeVar {
  std::string name;
  TypeRef type;
};

using Scope = std::vector<ScopeVar>;

void push_unique(std::vector<TermRef>& out, std::set<TermRef, TermLess>& seen, TermRef t) {
  if (seen.insert(t).second) out.push_back(std::move(t));
}

std::vector<TermRef> gen(const Scope& scope, const TypeRef& target, std::size_t depth);

// Applications f a1 .. ak of a scope variable whose result is `target`.
void gen_apps(const Scope& scope, const TypeRef& target, std::size_t depth,
              std::vector<TermRef>& out, std::set<TermRef, TermLess>& seen) {
  if (depth < 2) return;
  for (const auto& v : scope) {
    std::vector<TypeRef> args;
    TypeRef cur = v.type;
    while (cur->is_arrow()) {
      args.push_back(cur->arg());
      cur = cur->res();
      if (!subtype(cur, target)) continue;
      // Cartesian product of argument candidates.
      std::vector<TermRef> partial{make_var(v.name)};
      for (const auto& a : args) {
        std::vector<TermRef> next;
        for (const auto& arg : gen(scope, a, depth - 1))
          for (const auto& f : partial) next.push_back(make_app(f, arg));
        partial = std::move(next);
      }
      for (auto& t : partial) push_unique(out, seen, std::move(t));
    }
  }
}

std::vector<TermRef> gen(const Scope& scope, const TypeRef& target, std::size_t depth) {
  std::vector<TermRef> out;
  std::set<TermRef, TermLess> seen;
  if (depth == 0) return out;
  for (const auto& v : scope)
    if (subtype(v.type, target)) push_unique(out, seen, make_var(v.name));
  if (target->is_str()) {
    for (const char* lit : {"", "0", "1"}) push_unique(out, seen, make_str(lit));
    push_unique(out, seen, make_rand());
    if (depth >= 2) {
      for (const auto& t : gen(scope, target, depth - 1)) {
        push_unique(out, seen, make_zero(t));
        push_unique(out, seen, make_one(t));
        push_unique(out, seen, make_tail(t));
      }
    }
  } else if (depth >= 2) {
    std::string name = "x" + std::to_string(scope.size());
    Scope inner = scope;
    inner.push_back({name, target->arg()});
    for (const auto& body : gen(inner, target->res(), depth - 1))
      push_unique(out, seen, make_lam(name, target->aspect(), target->arg(), body));
  }
  gen_apps(scope, target, depth, out, seen);
  return out;
}

bool well_typed_at(const TermRef& t, const TypeRef& type) {
  try {
    return subtype(typecheck(t), type);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

std::vector<TermRef> enumerate_values(const TypeRef& type, const EnumBounds& b) {
  std::vector<TermRef> out;
  if (type->is_str()) {
    for (const auto& m : strings_up_to(b.max_string_len)) out.push_back(make_str(m));
    return out;
  }
  for (const auto& t : gen({}, type, b.max_value_depth))
    if (t->kind == TermKind::Lam && t->is_closed() && well_typed_at(t, type)) out.push_back(t);
  return out;
}

// ---------------------------------------------------------------------------
// Trace equivalence and distance
// ---------------------------------------------------------------------------

std::string Verdict::witness_text() const {
  if (trace) return to_string(*trace);
  if (context) return pretty(context);
  if (splitter) return *splitter;
  return {};
}

TypeRef shared_type(const TermRef& t, const TermRef& s) {
  TypeRef a = typecheck(t);
  TypeRef b = typecheck(s);
  try {
    return join(a, b);
  } catch (const Error&) {
    throw Error("type-mismatch",
                "terms have incompatible types " + to_string(a) + " and " + to_string(b));
  }
}

namespace {

Rational mass_of(const StringDist& d, const std::string& m) {
  auto it = d.find(m);
  return it == d.end() ? Rational(0) : it->second;
}

// The string with the largest gap; ties prefer a string one side never
// produces, then shortlex order.
std::optional<std::string> best_witness(const StringDist& l, const StringDist& r) {
  std::set<std::string> keys;
  for (const auto& [m, p] : l) keys.insert(m);
  for (const auto& [m, p] : r) keys.insert(m);
  std::optional<std::string> best;
  Rational best_gap = 0;
  bool best_absent = false;
  std::vector<std::string> ordered(keys.begin(), keys.end());
  std::sort(ordered.begin(), ordered.end(), shortlex_less);
  for (const auto& m : ordered) {
    Rational pl = mass_of(l, m), pr = mass_of(r, m);
    Rational gap = abs_diff(pl, pr);
    if (sgn(gap) == 0) continue;
    bool absent = sgn(pl) == 0 || sgn(pr) == 0;
    if (!best || gap > best_gap || (gap == best_gap && absent && !best_absent)) {
      best = m;
      best_gap = gap;
      best_absent = absent;
    }
  }
  return best;
}

struct EquivSearch {
  const EnumBounds& bounds;
  Evaluator ev;
  std::map<std::string, std::vector<TermRef>> values;

  const std::vector<TermRef>& values_of(const TypeRef& t) {
    auto key = to_string(t);
    auto it = values.find(key);
    if (it == values.end()) it = values.emplace(key, enumerate_values(t, bounds)).first;
    return it->second;
  }

  std::optional<Verdict> equiv(const TermDist& l, const TermDist& r, const TypeRef& type,
                               Trace& prefix) {
    if (type->is_str()) {
      StringDist ls = to_strings(l), rs = to_strings(r);
      auto m = best_witness(ls, rs);
      if (!m) return std::nullopt;
      Verdict v;
      v.kind = Verdict::Kind::Distinguished;
      v.trace = prefix;
      v.trace->push_back(view_str(*m));
      v.p_left = mass_of(ls, *m);
      v.p_right = mass_of(rs, *m);
      return v;
    }
    for (const auto& val : values_of(type->arg())) {
      TermDist l2 = ev.eval(pass_value(l, val));
      TermDist r2 = ev.eval(pass_value(r, val));
      prefix.push_back(pass(val));
      auto found = equiv(l2, r2, type->res(), prefix);
      prefix.pop_back();
      if (found) return found;
    }
    return std::nullopt;
  }

  Rational distance(const TermDist& l, const TermDist& r, const TypeRef& type) {
    if (type->is_str()) return tv_distance(to_strings(l), to_strings(r));
    Rational best = 0;
    for (const auto& val : values_of(type->arg())) {
      Rational d = distance(ev.eval(pass_value(l, val)), ev.eval(pass_value(r, val)), type->res());
      if (d > best) best = d;
    }
    return best;
  }
};

}  // namespace

Verdict trace_equiv(const TermRef& t, const TermRef& s, const EnumBounds& b,
                    std::uint64_t budget) {
  TypeRef type = shared_type(t, s);
  EquivSearch search{b, Evaluator(budget), {}};
  Trace prefix;
  auto found = search.equiv(search.ev.eval(t), search.ev.eval(s), type, prefix);
  Verdict v = found ? *found : Verdict{};
  v.bounds = b;
  v.exact = type->is_str();
  return v;
}

Distance trace_distance(const TermRef& t, const TermRef& s, const EnumBounds& b,
                        std::uint64_t budget) {
  TypeRef type = shared_type(t, s);
  EquivSearch search{b, Evaluator(budget), {}};
  Distance d;
  d.value = search.distance(search.ev.eval(t), search.ev.eval(s), type);
  d.exact = type->is_str();
  return d;
}

// ---------------------------------------------------------------------------
// Contexts
// ---------------------------------------------------------------------------

namespace {

struct Leaf {
  TermRef term;
  TypeRef type;
};

struct Item {
  ContextRef ctx;
  TypeRef type;
};

std::vector<Leaf> leaf_pool(const EnumBounds& b) {
  std::vector<Leaf> out;
  for (const auto& m : strings_up_to(b.max_string_len)) out.push_back({make_str(m), Type::str()});
  out.push_back({make_rand(), Type::str()});
  for (const auto& d : prelude().definitions()) out.push_back({d.term, d.type});
  return out;
}

std::optional<TypeRef> type_of(const ContextRef& c, const TypeRef& hole) {
  try {
    return typecheck_context({}, c, hole);
  } catch (const Error&) {
    return std::nullopt;
  }
}

// step functions usable in a rec: []Str -> [#]A -> A with A box-free.
std::optional<TypeRef> rec_result(const TypeRef& step) {
  if (!step->is_arrow() || step->aspect() != Aspect::Poly || !step->arg()->is_str())
    return std::nullopt;
  const TypeRef& inner = step->res();
  if (!inner->is_arrow() || !same_type(inner->arg(), inner->res()) || !box_free(inner->res()))
    return std::nullopt;
  return inner->res();
}

}  // namespace

std::vector<ContextRef> enumerate_contexts(const TypeRef& hole_type, const EnumBounds& b) {
  const std::size_t max = b.max_context_size;
  std::vector<Leaf> leaves = leaf_pool(b);
  std::vector<TermRef> short_lits;
  for (const auto& m : strings_up_to(std::min<std::size_t>(1, b.max_string_len)))
    short_lits.push_back(make_str(m));

  // by_size[s]: typable contexts of exactly size s.
  std::vector<std::vector<Item>> by_size(max + 1);
  std::set<ContextRef, bool (*)(const ContextRef&, const ContextRef&)> seen(
      [](const ContextRef& x, const ContextRef& y) { return ctx_compare(x, y) < 0; });
  auto add = [&](std::size_t size, const ContextRef& c) {
    if (size > max || c->holes != 1 || !seen.insert(c).second) return;
    if (auto t = type_of(c, hole_type)) by_size[size].push_back({c, *t});
  };

  if (max >= 1) add(1, ctx_hole());
  for (std::size_t s = 2; s <= max; ++s) {
    for (const auto& it : by_size[s - 1]) {
      if (!it.type->is_str()) continue;
      add(s, ctx_prepend('0', it.ctx));
      add(s, ctx_prepend('1', it.ctx));
      add(s, ctx_tail(it.ctx));
    }
    if (s >= 3) {
      for (const auto& it : by_size[s - 2]) {
        for (const auto& l : leaves) {
          if (it.type->is_arrow() && subtype(l.type, it.type->arg()))
            add(s, ctx_app_left(it.ctx, l.term));
          if (l.type->is_arrow() && subtype(it.type, l.type->arg()))
            add(s, ctx_app_right(l.term, it.ctx));
        }
      }
    }
    if (s >= 5) {
      for (const auto& it : by_size[s - 4]) {
        if (!it.type->is_str()) continue;
        for (const auto& a : short_lits) {
          for (const auto& c : short_lits) {
            for (const auto& e : short_lits) add(s, ctx_case_scrut(Type::str(), it.ctx, a, c, e));
            ContextRef la = ctx_leaf(a), lc = ctx_leaf(c);
            add(s, ctx_case_branches(Type::str(), make_rand(), it.ctx, la, lc));
            add(s, ctx_case_branches(Type::str(), make_rand(), la, it.ctx, lc));
            add(s, ctx_case_branches(Type::str(), make_rand(), la, lc, it.ctx));
          }
        }
        for (const auto& step : leaves) {
          auto res = rec_result(step.type);
          if (!res) continue;
          for (const auto& te : leaves)
            if (subtype(te.type, *res))
              add(s, ctx_rec_scrut(*res, it.ctx, step.term, step.term, te.term));
        }
      }
    }
  }
  std::vector<ContextRef> out;
  for (const auto& level : by_size)
    for (const auto& it : level)
      if (it.type->is_str()) out.push_back(it.ctx);
  return out;
}

Rational epsilon_prob(const ContextRef& c, const TermRef& t, Evaluator& ev) {
  const TermDist& d = ev.eval(fill(c, t));
  auto it = d.find(make_str(""));
  return it == d.end() ? Rational(0) : it->second;
}

ContextDistance context_distance_lb(const TermRef& t, const TermRef& s, const EnumBounds& b,
                                    bool use_machine, std::uint64_t budget) {
  TypeRef type = shared_type(t, s);
  Evaluator ev(budget);
  ContextDistance best;
  const Trace view_eps{view_str("")};
  for (const auto& c : enumerate_contexts(type, b)) {
    Rational pl, pr;
    if (use_machine) {
      pl = pair_prob(c, point(t), view_eps, budget);
      pr = pair_prob(c, point(s), view_eps, budget);
    } else {
      pl = epsilon_prob(c, t, ev);
      pr = epsilon_prob(c, s, ev);
    }
    Rational gap = abs_diff(pl, pr);
    if (gap > best.value) best = {gap, c, pl, pr};
  }
  return best;
}

TermRef point_distinguisher(const std::string& m) {
  // Innermost level: the input must end here.
  TermRef probe = make_var("x");
  std::vector<TermRef> probes{probe};
  for (std::size_t i = 0; i < m.size(); ++i) probes.push_back(make_tail(probes.back()));
  const TermRef reject = make_str("1");
  TermRef body =
      make_case(Type::str(), probes[m.size()], reject, reject, make_str(""));
  for (std::size_t i = m.size(); i-- > 0;) {
    TermRef on0 = m[i] == '0' ? body : reject;
    TermRef on1 = m[i] == '1' ? body : reject;
    body = make_case(Type::str(), probes[i], on0, on1, reject);
  }
  return make_lam("x", Aspect::Poly, Type::str(), body);
}

ContextRef trace_to_context(const Trace& tr) {
  if (tr.empty() || !tr.back().is_view())
    throw Error("trace", "a trace must end with a view to be compiled into a context");
  ContextRef c = ctx_hole();
  for (std::size_t i = 0; i + 1 < tr.size(); ++i) {
    if (tr[i].kind != TraceAction::Kind::Pass)
      throw Error("trace", "only the last action may be a view");
    c = ctx_app_left(c, tr[i].term);
  }
  const TraceAction& v = tr.back();
  switch (v.kind) {
    case TraceAction::Kind::ViewStr:
      return ctx_app_right(point_distinguisher(v.bits), c);
    case TraceAction::Kind::ViewDist:
      return ctx_app_right(v.term, c);
    default:
      throw Error("view-set",
                  "a set view is not a single ε-test; expand it into point views first");
  }
}

// ---------------------------------------------------------------------------
// Labelled Markov chain
// ---------------------------------------------------------------------------

bool operator<(const LmcLabel& a, const LmcLabel& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.kind == LmcLabel::Kind::Pass) return alpha_compare(a.value, b.value) < 0;
  return a.bits < b.bits;
}

std::string to_string(const LmcLabel& l) {
  switch (l.kind) {
    case LmcLabel::Kind::Eval:
      return "eval";
    case LmcLabel::Kind::Pass:
      return "pass(" + pretty(l.value) + ")";
    case LmcLabel::Kind::View:
      return "view(\"" + l.bits + "\")";
  }
  return {};
}

std::optional<std::size_t> LMC::find(LmcState::Kind kind, const TermRef& t,
                                     const TypeRef& type) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i].kind == kind && same_type(states[i].type, type) &&
        alpha_equal(states[i].term, t))
      return i;
  return std::nullopt;
}

std::string LMC::describe(std::size_t i) const {
  const LmcState& s = states.at(i);
  return std::string(s.kind == LmcState::Kind::Term ? "term " : "value ") + pretty(s.term) +
         " : " + to_string(s.type);
}

namespace {

struct StateKey {
  int kind;
  TermRef term;
  std::string type;
  bool operator<(const StateKey& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (type != o.type) return type < o.type;
    return alpha_compare(term, o.term) < 0;
  }
};

}  // namespace

LMC build_lmc(const std::vector<TermRef>& roots, const EnumBounds& b, const LmcOptions& opts,
              std::uint64_t budget) {
  std::vector<std::pair<TermRef, TypeRef>> typed;
  for (const auto& r : roots) typed.emplace_back(r, typecheck(r));
  return build_lmc(typed, b, opts, budget);
}

LMC build_lmc(const std::vector<std::pair<TermRef, TypeRef>>& roots, const EnumBounds& b,
              const LmcOptions& opts, std::uint64_t budget) {
  LMC lmc;
  Evaluator ev(budget);
  std::map<StateKey, std::size_t> index;
  std::deque<std::size_t> work;
  std::map<std::string, std::vector<TermRef>> values;

  auto intern = [&](LmcState::Kind kind, const TermRef& t, const TypeRef& type) {
    StateKey key{static_cast<int>(kind), t, to_string(type)};
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (lmc.states.size() >= opts.max_states)
      throw Error("cap", "labelled Markov chain exceeds " + std::to_string(opts.max_states) +
                             " states");
    std::size_t id = lmc.states.size();
    lmc.states.push_back({kind, t, type});
    lmc.edges.emplace_back();
    index.emplace(key, id);
    work.push_back(id);
    return id;
  };
  auto pass_values = [&](const TypeRef& arg) -> const std::vector<TermRef>& {
    std::string key = to_string(arg);
    auto it = values.find(key);
    if (it == values.end()) {
      std::vector<TermRef> vs = arg->is_str() && opts.str_pass_values ? *opts.str_pass_values
                                                                       : enumerate_values(arg, b);
      it = values.emplace(key, std::move(vs)).first;
    }
    return it->second;
  };

  for (const auto& [t, type] : roots) lmc.roots.push_back(intern(LmcState::Kind::Term, t, type));

  while (!work.empty()) {
    std::size_t id = work.front();
    work.pop_front();
    LmcState s = lmc.states[id];
    std::vector<LmcEdge> edges;
    if (s.kind == LmcState::Kind::Term) {
      for (const auto& [v, p] : ev.eval(s.term))
        edges.push_back({LmcLabel{LmcLabel::Kind::Eval, nullptr, {}},
                         intern(LmcState::Kind::Value, v, s.type), p});
    } else if (s.type->is_str()) {
      edges.push_back({LmcLabel{LmcLabel::Kind::View, nullptr, s.term->text}, id, Rational(1)});
    } else {
      if (s.term->kind != TermKind::Lam)
        throw Error("stuck", "value state is not an abstraction: " + pretty(s.term));
      for (const auto& v : pass_values(s.type->arg()))
        edges.push_back({LmcLabel{LmcLabel::Kind::Pass, v, {}},
                         intern(LmcState::Kind::Term, instantiate(s.term->kids[0], v),
                                s.type->res()),
                         Rational(1)});
    }
    lmc.edges[id] = std::move(edges);
  }
  return lmc;
}

// ---------------------------------------------------------------------------
// Partition refinement
// ---------------------------------------------------------------------------

BisimResult bisim_check(const LMC& lmc, std::size_t a, std::size_t b) {
  const std::size_t n = lmc.states.size();
  if (a >= n || b >= n) throw Error("lmc", "state is not part of the chain");

  // Initial partition: kind and type, string values by literal.
  std::vector<std::size_t> block(n);
  {
    std::map<std::string, std::size_t> ids;
    for (std::size_t i = 0; i < n; ++i) {
      const LmcState& s = lmc.states[i];
      std::string key = (s.kind == LmcState::Kind::Term ? "T:" : "V:") + to_string(s.type);
      if (s.kind == LmcState::Kind::Value && s.type->is_str()) key += ":" + s.term->text;
      block[i] = ids.emplace(key, ids.size()).first->second;
    }
  }
  std::size_t blocks = 0;
  for (auto x : block) blocks = std::max(blocks, x + 1);

  std::set<LmcLabel> labels;
  for (const auto& es : lmc.edges)
    for (const auto& e : es) labels.insert(e.label);

  std::optional<BisimSplitter> witness;
  auto members = [&](std::size_t blk) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
      if (block[i] == blk) out.push_back(i);
    return out;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    // Splitters in order of increasing size.
    std::vector<std::pair<std::size_t, std::size_t>> order;
    for (std::size_t blk = 0; blk < blocks; ++blk) order.emplace_back(members(blk).size(), blk);
    std::sort(order.begin(), order.end());
    for (const auto& [size, splitter] : order) {
      for (const auto& label : labels) {
        std::vector<Rational> mass(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i)
          for (const auto& e : lmc.edges[i])
            if (block[e.target] == splitter && !(e.label < label) && !(label < e.label))
              mass[i] += e.prob;
        // Split every block by its members' mass into the splitter.
        std::map<std::pair<std::size_t, Rational>, std::size_t> fresh;
        std::vector<std::size_t> next(n);
        std::map<std::size_t, Rational> first_mass;
        std::size_t count = blocks;
        for (std::size_t i = 0; i < n; ++i) {
          auto [fm, inserted] = first_mass.emplace(block[i], mass[i]);
          if (inserted || fm->second == mass[i]) {
            next[i] = block[i];
            continue;
          }
          auto key = std::make_pair(block[i], mass[i]);
          auto it = fresh.find(key);
          if (it == fresh.end()) it = fresh.emplace(key, count++).first;
          next[i] = it->second;
        }
        if (count == blocks) continue;
        if (block[a] == block[b] && next[a] != next[b])
          witness = BisimSplitter{label, members(splitter), mass[a], mass[b]};
        block = std::move(next);
        blocks = count;
        changed = true;
        break;
      }
      if (changed) break;
    }
  }
  if (block[a] != block[b] && !witness) {
    // Separated by the initial partition: a view or the types tell them apart.
    const LmcState& sa = lmc.states[a];
    if (sa.kind == LmcState::Kind::Value && sa.type->is_str())
      witness = BisimSplitter{LmcLabel{LmcLabel::Kind::View, nullptr, sa.term->text}, {a},
                              Rational(1), Rational(0)};
  }

  BisimResult r;
  r.equivalent = block[a] == block[b];
  if (!r.equivalent) r.witness = witness;
  r.block_of = block;
  r.blocks = blocks;
  return r;
}

Verdict bisim_verdict(const TermRef& t, const TermRef& s, const EnumBounds& b,
                      const LmcOptions& opts, std::uint64_t budget) {
  TypeRef type = shared_type(t, s);
  LMC lmc = build_lmc({{t, type}, {s, type}}, b, opts, budget);
  BisimResult r = bisim_check(lmc, lmc.roots[0], lmc.roots[1]);
  Verdict v;
  v.bounds = b;
  v.exact = false;
  if (!r.equivalent) {
    v.kind = Verdict::Kind::Distinguished;
    if (r.witness) {
      std::string blk;
      for (std::size_t i = 0; i < r.witness->block.size(); ++i) {
        if (i) blk += ", ";
        blk += lmc.describe(r.witness->block[i]);
      }
      v.splitter = to_string(r.witness->label) + " into {" + blk + "}";
      v.p_left = r.witness->mass_a;
      v.p_right = r.witness->mass_b;
    }
  }
  return v;
}

}  // namespace rslr
