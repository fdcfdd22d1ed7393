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

#include "rslr/trace.hpp"

#include "rslr/types.hpp"

namespace rslr {

TraceAction pass(TermRef value) {
  TraceAction a;
  a.kind = TraceAction::Kind::Pass;
  a.term = std::move(value);
  return a;
}

TraceAction view_str(std::string bits) {
  TraceAction a;
  a.kind = TraceAction::Kind::ViewStr;
  a.bits = std::move(bits);
  return a;
}

TraceAction view_set(std::set<std::string> set) {
  if (set.empty()) throw Error("trace", "view set must be nonempty");
  TraceAction a;
  a.kind = TraceAction::Kind::ViewSet;
  a.set = std::move(set);
  return a;
}

TraceAction view_dist(TermRef distinguisher, std::string label) {
  TraceAction a;
  a.kind = TraceAction::Kind::ViewDist;
  a.term = std::move(distinguisher);
  a.label = std::move(label);
  return a;
}

std::string to_string(const TraceAction& a) {
  switch (a.kind) {
    case TraceAction::Kind::Pass:
      return "pass(" + pretty(a.term) + ")";
    case TraceAction::Kind::ViewStr:
      return "view(\"" + a.bits + "\")";
    case TraceAction::Kind::ViewSet: {
      std::string s = "view({";
      bool first = true;
      for (const auto& m : a.set) {
        if (!first) s += ",";
        first = false;
        s += m.empty() ? "e" : m;
      }
      return s + "})";
    }
    case TraceAction::Kind::ViewDist:
      return "view(dist " + (a.label.empty() ? "(" + pretty(a.term) + ")" : a.label) + ")";
  }
  return {};
}

std::string to_string(const Trace& tr) {
  std::string s;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    if (i) s += ";";
    s += to_string(tr[i]);
  }
  return s;
}

namespace {

bool fits(const TermRef& t, const TypeRef& type) {
  try {
    return subtype(typecheck(t), type);
  } catch (const Error&) {
    return false;
  }
}

const TypeRef& distinguisher_type() {
  static const TypeRef t = Type::arrow(Aspect::Const, Type::str(), Type::str());
  return t;
}

}  // namespace

bool compatible(const Trace& tr, const TypeRef& type) {
  TypeRef cur = type;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const TraceAction& a = tr[i];
    if (a.kind == TraceAction::Kind::Pass) {
      if (!cur->is_arrow() || !a.term->is_value() || !fits(a.term, cur->arg())) return false;
      cur = cur->res();
      continue;
    }
    if (i + 1 != tr.size() || !cur->is_str()) return false;
    if (a.kind == TraceAction::Kind::ViewSet && a.set.empty()) return false;
    if (a.kind == TraceAction::Kind::ViewDist && !fits(a.term, distinguisher_type()))
      return false;
    return true;
  }
  return false;
}

Trace resolve_trace(const std::vector<SurfaceAction>& actions, const Program& program) {
  Trace tr;
  for (const auto& a : actions) {
    switch (a.kind) {
      case SurfaceAction::Kind::Pass:
        tr.push_back(pass(program.resolve(a.term)));
        break;
      case SurfaceAction::Kind::ViewStr:
        tr.push_back(view_str(a.bits));
        break;
      case SurfaceAction::Kind::ViewSet:
        tr.push_back(view_set(a.set));
        break;
      case SurfaceAction::Kind::ViewDist:
        if (!a.name.empty())
          tr.push_back(view_dist(program.at(a.name).term, a.name));
        else
          tr.push_back(view_dist(program.resolve(a.term)));
        break;
      default:
        throw Error("trace", "wildcard actions are only allowed in CI templates");
    }
  }
  return tr;
}

Trace parse_trace(const std::string& text, const Program& program) {
  return resolve_trace(parse_trace_literal(text), program);
}

TermDist pass_value(const TermDist& normal, const TermRef& v) {
  TermDist out;
  for (const auto& [t, p] : normal) {
    if (t->kind != TermKind::Lam)
      throw Error("incompatible", "cannot pass a value to " + pretty(t));
    add_mass(out, instantiate(t->kids[0], v), p);
  }
  return out;
}

TermDist run_prefix(const TermDist& td, const Trace& prefix, Evaluator& ev) {
  TermDist cur = ev.eval(td);
  for (const auto& a : prefix) {
    if (a.kind != TraceAction::Kind::Pass)
      throw Error("incompatible", "a trace prefix may only contain pass actions");
    cur = ev.eval(pass_value(cur, a.term));
  }
  return cur;
}

Rational view_weight(const TraceAction& view, const std::string& m, Evaluator& ev) {
  switch (view.kind) {
    case TraceAction::Kind::ViewStr:
      return m == view.bits ? 1 : 0;
    case TraceAction::Kind::ViewSet:
      return view.set.count(m) ? 1 : 0;
    case TraceAction::Kind::ViewDist: {
      const TermDist& out = ev.eval(make_app(view.term, make_str(m)));
      auto it = out.find(make_str(""));
      return it == out.end() ? Rational(0) : it->second;
    }
    default:
      throw Error("incompatible", "not a view action");
  }
}

Rational observe(const StringDist& d, const TraceAction& view, Evaluator& ev) {
  Rational s = 0;
  for (const auto& [m, p] : d) s += p * view_weight(view, m, ev);
  return s;
}

Rational prob(const TermDist& td, const Trace& tr, Evaluator& ev) {
  std::size_t passes = tr.size();
  if (!tr.empty() && tr.back().is_view()) --passes;
  Trace prefix(tr.begin(), tr.begin() + static_cast<std::ptrdiff_t>(passes));
  TermDist out = run_prefix(td, prefix, ev);
  if (passes == tr.size()) return total_mass(out);
  return observe(to_strings(out), tr.back(), ev);
}

Rational prob(const TermRef& t, const Trace& tr, std::uint64_t budget) {
  Evaluator ev(budget);
  return prob(point(t), tr, ev);
}

}  // namespace rslr
