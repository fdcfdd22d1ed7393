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

#include "rslr/ci.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "rslr/types.hpp"

namespace rslr {

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  auto bad = [&]() { return Error("usage", "not a rational number: `" + raw + "`"); };
  if (text.empty()) throw bad();
  try {
    auto dot = text.find('.');
    if (dot != std::string::npos) {
      std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
      bool neg = !whole.empty() && whole[0] == '-';
      if (neg) whole.erase(0, 1);
      if (whole.empty()) whole = "0";
      for (char c : whole + frac)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
      Rational q(mpz_class(whole + frac, 10), den);
      q.canonicalize();
      return neg ? Rational(-q) : q;
    }
    for (char c : text)
      if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/' && c != '-') throw bad();
    Rational q(text, 10);
    if (sgn(q.get_den()) == 0) throw bad();
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw bad();
  }
}

// ---------------------------------------------------------------------------
// Bounds
// ---------------------------------------------------------------------------

BoundFamily parse_bound(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  BoundFamily b;
  b.text = text;
  if (text.rfind("table:", 0) == 0) {
    std::vector<Rational> table;
    std::string rest = text.substr(6);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      std::size_t comma = rest.find(',', pos);
      if (comma == std::string::npos) comma = rest.size();
      table.push_back(parse_rational(rest.substr(pos, comma - pos)));
      if (sgn(table.back()) <= 0) throw Error("usage", "bounds must be positive");
      pos = comma + 1;
    }
    b.at = [table](unsigned n) {
      if (n == 0 || n > table.size())
        throw Error("usage", "bound table has no entry for n = " + std::to_string(n));
      return table[n - 1];
    };
    return b;
  }
  Rational c = 1;
  std::string family = text;
  if (auto star = text.find('*'); star != std::string::npos) {
    c = parse_rational(text.substr(0, star));
    family = text.substr(star + 1);
  }
  if (sgn(c) <= 0) throw Error("usage", "bound constant must be positive");
  if (family == "2^-n") {
    b.at = [c](unsigned n) { return Rational(c * pow2_neg(n)); };
    return b;
  }
  if (family.rfind("n^-", 0) == 0) {
    std::string k_text = family.substr(3);
    if (k_text.empty() || !std::all_of(k_text.begin(), k_text.end(), ::isdigit))
      throw Error("usage", "bad exponent in bound `" + raw + "`");
    unsigned long k = std::stoul(k_text);
    b.at = [c, k](unsigned n) {
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), n, k);
      return Rational(c / Rational(den));
    };
    return b;
  }
  throw Error("usage", "unknown bound family `" + raw +
                           "` (expected 2^-n, c*2^-n, n^-k, c*n^-k or table:...)");
}

// ---------------------------------------------------------------------------
// Templates
// ---------------------------------------------------------------------------

TraceTemplate parse_template(const std::string& text, const Program& program) {
  TraceTemplate tpl;
  for (const auto& a : parse_trace_literal(text)) {
    TemplateAction t;
    switch (a.kind) {
      case SurfaceAction::Kind::PassAny:
        t.kind = TemplateAction::Kind::PassAny;
        break;
      case SurfaceAction::Kind::PassSecurity:
        t.kind = TemplateAction::Kind::PassSecurity;
        break;
      case SurfaceAction::Kind::ViewAny:
        t.kind = TemplateAction::Kind::ViewAny;
        break;
      default:
        t.action = resolve_trace({a}, program).front();
        break;
    }
    tpl.push_back(std::move(t));
  }
  // The security parameter always comes first.
  if (tpl.empty() || tpl.front().kind != TemplateAction::Kind::PassSecurity)
    tpl.insert(tpl.begin(), TemplateAction{TemplateAction::Kind::PassSecurity, {}});
  return tpl;
}

TraceTemplate default_template(const TypeRef& type) {
  if (!type->is_arrow() || !type->arg()->is_str())
    throw Error("shape-mismatch", "a parametric term must take the security parameter first");
  TraceTemplate tpl{{TemplateAction::Kind::PassSecurity, {}}};
  for (TypeRef cur = type->res(); cur->is_arrow(); cur = cur->res())
    tpl.push_back({TemplateAction::Kind::PassAny, {}});
  tpl.push_back({TemplateAction::Kind::ViewAny, {}});
  return tpl;
}

std::string to_string(const TraceTemplate& tpl) {
  std::string s;
  for (std::size_t i = 0; i < tpl.size(); ++i) {
    if (i) s += ";";
    switch (tpl[i].kind) {
      case TemplateAction::Kind::Fixed:
        s += to_string(tpl[i].action);
        break;
      case TemplateAction::Kind::PassAny:
        s += "pass(*)";
        break;
      case TemplateAction::Kind::PassSecurity:
        s += "pass(1^n)";
        break;
      case TemplateAction::Kind::ViewAny:
        s += "view(*)";
        break;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Gaps
// ---------------------------------------------------------------------------

TermRef apply_security_param(const TermRef& t, unsigned n) {
  TypeRef type = typecheck(t);
  if (!type->is_arrow() || !type->arg()->is_str())
    throw Error("shape-mismatch",
                "expected a function of the security parameter, found " + to_string(type));
  return make_app(t, make_str(std::string(n, '1')));
}

ParamGap param_gap(const TermRef& t, const TermRef& s, const Trace& tr, unsigned n,
                   std::uint64_t budget) {
  Evaluator ev(budget);
  ParamGap g;
  g.p_left = prob(point(apply_security_param(t, n)), tr, ev);
  g.p_right = prob(point(apply_security_param(s, n)), tr, ev);
  g.gap = abs_diff(g.p_left, g.p_right);
  return g;
}

namespace {

struct GapSearch {
  const TraceTemplate& tpl;
  const CiOptions& opts;
  unsigned n;
  Evaluator ev;
  GapRow best;
  bool found = false;
  Trace prefix;

  void consider(const Rational& pl, const Rational& pr, const TraceAction& view) {
    ++best.traces;
    Rational gap = abs_diff(pl, pr);
    if (found && gap <= best.gap) return;
    found = true;
    best.p_left = pl;
    best.p_right = pr;
    best.gap = gap;
    best.witness = prefix;
    best.witness.push_back(view);
  }

  void view(const TermDist& l, const TermDist& r, const TemplateAction& slot) {
    StringDist ls = to_strings(l), rs = to_strings(r);
    if (slot.kind == TemplateAction::Kind::Fixed) {
      consider(observe(ls, slot.action, ev), observe(rs, slot.action, ev), slot.action);
      return;
    }
    // Point distinguishers over short strings and the joint support.
    std::set<std::string> points;
    for (const auto& m : strings_up_to(opts.bounds.max_string_len)) points.insert(m);
    for (const auto& [m, p] : ls) points.insert(m);
    for (const auto& [m, p] : rs) points.insert(m);
    std::vector<std::string> ordered(points.begin(), points.end());
    std::sort(ordered.begin(), ordered.end(), shortlex_less);
    for (const auto& m : ordered) {
      TraceAction d = view_dist(point_distinguisher(m), "D_" + (m.empty() ? "e" : m));
      consider(observe(ls, d, ev), observe(rs, d, ev), d);
    }
    for (const auto& d : opts.distinguishers) consider(observe(ls, d, ev), observe(rs, d, ev), d);
  }

  void run(const TermDist& l, const TermDist& r, const TypeRef& type, std::size_t i) {
    if (i == tpl.size()) throw Error("incompatible", "trace template has no view");
    const TemplateAction& slot = tpl[i];
    bool is_view = slot.kind == TemplateAction::Kind::ViewAny ||
                   (slot.kind == TemplateAction::Kind::Fixed && slot.action.is_view());
    if (is_view) {
      if (i + 1 != tpl.size() || !type->is_str())
        throw Error("incompatible", "template view does not match the type " + to_string(type));
      view(l, r, slot);
      return;
    }
    if (!type->is_arrow())
      throw Error("incompatible", "template passes a value to a term of type " + to_string(type));
    std::vector<TermRef> values;
    switch (slot.kind) {
      case TemplateAction::Kind::PassSecurity:
        values = {make_str(std::string(n, '1'))};
        break;
      case TemplateAction::Kind::PassAny:
        values = enumerate_values(type->arg(), opts.bounds);
        break;
      default:
        values = {slot.action.term};
        break;
    }
    for (const auto& v : values) {
      TermDist l2 = ev.eval(pass_value(l, v));
      TermDist r2 = ev.eval(pass_value(r, v));
      prefix.push_back(pass(v));
      run(l2, r2, type->res(), i + 1);
      prefix.pop_back();
    }
  }
};

}  // namespace

GapRow worst_gap(const TermRef& t, const TermRef& s, const TraceTemplate& tpl, unsigned n,
                 const CiOptions& opts) {
  TypeRef type = shared_type(t, s);
  if (tpl.empty() || tpl.front().kind != TemplateAction::Kind::PassSecurity)
    throw Error("incompatible", "the template must start with pass(1^n)");
  GapSearch search{tpl, opts, n, Evaluator(opts.budget), {}, false, {}};
  search.run(search.ev.eval(t), search.ev.eval(s), type, 0);
  GapRow row = std::move(search.best);
  row.n = n;
  return row;
}

GapReport sweep(const TermRef& t, const TermRef& s, const ParamSweep& sw, const CiOptions& opts) {
  if (sw.n_low > sw.n_high) throw Error("usage", "empty range of security parameters");
  TypeRef type = shared_type(t, s);
  TraceTemplate tpl = sw.tpl ? *sw.tpl : default_template(type);
  GapReport report;
  report.bound = sw.bound.text;
  report.template_text = to_string(tpl);
  for (unsigned n = sw.n_low; n <= sw.n_high; ++n) {
    GapRow row;
    try {
      row = worst_gap(t, s, tpl, n, opts);
    } catch (const Error& e) {
      throw Error(e.code(), "n = " + std::to_string(n) + ": " + e.what(), e.span(), e.variable());
    }
    row.bound = sw.bound.at(n);
    Rational scaled = row.gap / row.bound;
    if (scaled > report.max_gap_scaled) report.max_gap_scaled = scaled;
    if (row.gap > row.bound && report.pass) {
      report.pass = false;
      report.first_failure = n;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace rslr
