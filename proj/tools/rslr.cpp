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

// rslr: command-line front end. Exit codes: 0 ok / equivalent / pass,
// 1 usage or type error, 2 distinguished / fail, 3 resource cap.

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "rslr/json_io.hpp"
#include "rslr/machine.hpp"

namespace {

using namespace rslr;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kDistinguished = 2;
constexpr int kResource = 3;

struct Common {
  std::vector<std::string> files;
  std::size_t str_len = 2;
  std::size_t value_depth = 3;
  std::size_t ctx_size = 4;
  std::uint64_t budget = kDefaultBudget;
  std::string format = "json";
  std::string oracle;

  EnumBounds bounds() const { return {str_len, value_depth, ctx_size}; }
};

void add_common(CLI::App* cmd, Common& c, bool with_files = true) {
  if (with_files) cmd->add_option("-f,--file", c.files, "program files loaded after the prelude");
  cmd->add_option("--bounds-str-len", c.str_len, "longest enumerated string")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--bounds-value-depth", c.value_depth, "deepest enumerated value")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--bounds-ctx-size", c.ctx_size, "largest enumerated context")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--budget", c.budget, "evaluation step budget")->check(CLI::PositiveNumber);
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--oracle", c.oracle, "cross-check with an independent oracle")
      ->check(CLI::IsMember({"pair-machine"}));
}

Program load(const std::vector<std::string>& files) {
  Program p = prelude();
  for (const auto& f : files) {
    std::vector<Diagnostic> diags;
    p = load_program(f, p, &diags);
    if (!diags.empty()) {
      const Diagnostic& d = diags.front();
      throw Error(d.code, f + ": " + d.message, d.span, d.variable);
    }
  }
  return p;
}

TermRef resolve_checked(const Program& p, const std::string& text) {
  TermRef t = p.resolve(text);
  typecheck(t);
  return t;
}

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

int report_error(const Error& e) {
  Json j;
  j["error"] = diagnostic_json(to_diagnostic(e));
  std::cerr << j.dump(2) << '\n';
  return e.code() == "budget" || e.code() == "cap" ? kResource : kError;
}

std::pair<unsigned, unsigned> parse_range(const std::string& text) {
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      unsigned n = static_cast<unsigned>(std::stoul(text));
      return {n, n};
    }
    return {static_cast<unsigned>(std::stoul(text.substr(0, dots))),
            static_cast<unsigned>(std::stoul(text.substr(dots + 2)))};
  } catch (const std::exception&) {
    throw Error("usage", "bad range `" + text + "` (expected N or LO..HI)");
  }
}

// --- subcommands ------------------------------------------------------------

int cmd_check(const std::vector<std::string>& files) {
  std::vector<Diagnostic> diags;
  Program base = prelude();
  for (const auto& f : files) {
    try {
      base = load_program(f, base, &diags);
    } catch (const Error& e) {
      diags.push_back(to_diagnostic(e));
    }
  }
  Json j = diagnostics_json(diags);
  j["definitions"] = base.definitions().size();
  print(j);
  return diags.empty() ? kOk : kError;
}

int cmd_eval(const Common& c, std::string term) {
  Program p = load(c.files);
  if (term.empty()) {
    if (!p.main()) throw Error("usage", "no TERM given and no `main` declared");
    term = *p.main();
  }
  TermRef t = resolve_checked(p, term);
  TermDist d = eval(t, c.budget);
  if (c.oracle == "pair-machine") {
    // The same distribution through the machine, one view per support string.
    if (typecheck(t)->is_str()) {
      for (const auto& [v, mass] : d) {
        Rational m = pair_prob(ctx_hole(), point(t), {view_str(v->text)}, c.budget);
        if (m != mass) throw Error("oracle", "pair machine disagrees on " + pretty(v));
      }
    }
  }
  if (c.format == "csv")
    std::cout << dist_csv(d);
  else
    print(dist_json(d));
  return kOk;
}

int cmd_trace(const Common& c, const std::string& term, const std::string& literal) {
  Program p = load(c.files);
  TermRef t = resolve_checked(p, term);
  Trace tr = parse_trace(literal, p);
  TypeRef type = typecheck(t);
  if (!compatible(tr, type))
    throw Error("incompatible", "trace `" + literal + "` is not compatible with " +
                                    to_string(type));
  Rational pr = prob(t, tr, c.budget);
  Json j;
  j["term"] = term;
  j["trace"] = to_string(tr);
  j["prob"] = rational_json(pr);
  if (c.oracle == "pair-machine") {
    Rational m = pair_prob(ctx_hole(), point(t), tr, c.budget);
    j["pairMachine"] = rational_json(m);
    j["oracleAgrees"] = m == pr;
    if (m != pr) {
      print(j);
      return kError;
    }
  }
  print(j);
  return kOk;
}

int cmd_compare(const Common& c, const std::string& mode, const std::string& left,
                const std::string& right) {
  Program p = load(c.files);
  TermRef t = resolve_checked(p, left);
  TermRef s = resolve_checked(p, right);
  EnumBounds b = c.bounds();
  if (mode == "equiv") {
    Verdict v = trace_equiv(t, s, b, c.budget);
    Json j = verdict_json(v);
    if (v.distinguished() && c.oracle == "pair-machine" && v.trace) {
      // Replay the witness on the machine.
      Rational pl = pair_prob(ctx_hole(), point(t), *v.trace, c.budget);
      Rational pr = pair_prob(ctx_hole(), point(s), *v.trace, c.budget);
      j["oracleAgrees"] = pl == v.p_left && pr == v.p_right;
    }
    print(j);
    return v.distinguished() ? kDistinguished : kOk;
  }
  if (mode == "distance") {
    print(distance_json(trace_distance(t, s, b, c.budget), b));
    return kOk;
  }
  if (mode == "context") {
    ContextDistance d = context_distance_lb(t, s, b, c.oracle == "pair-machine", c.budget);
    print(context_distance_json(d, b));
    return kOk;
  }
  Verdict v = bisim_verdict(t, s, b, {}, c.budget);
  print(verdict_json(v));
  return v.distinguished() ? kDistinguished : kOk;
}

int cmd_ci(const Common& c, const std::string& left, const std::string& right,
           const std::string& range, const std::string& bound, const std::string& tpl,
           const std::vector<std::string>& dists) {
  Program p = load(c.files);
  TermRef t = resolve_checked(p, left);
  TermRef s = resolve_checked(p, right);
  ParamSweep sw;
  std::tie(sw.n_low, sw.n_high) = parse_range(range);
  sw.bound = parse_bound(bound);
  if (!tpl.empty()) sw.tpl = parse_template(tpl, p);
  CiOptions opts;
  opts.bounds = c.bounds();
  opts.budget = c.budget;
  for (const auto& name : dists) opts.distinguishers.push_back(view_dist(p.at(name).term, name));
  GapReport r = sweep(t, s, sw, opts);
  if (c.format == "csv")
    std::cout << gap_report_csv(r);
  else
    print(gap_report_json(r));
  return r.pass ? kOk : kDistinguished;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RSLR workbench: exact semantics and equivalence checking"};
  app.require_subcommand(1);

  Common common;

  std::vector<std::string> check_files;
  auto* check = app.add_subcommand("check", "parse and type-check program files");
  check->add_option("files", check_files, "files to check (the prelude is always checked)");

  std::string eval_term;
  auto* evalc = app.add_subcommand("eval", "evaluate a term to its value distribution");
  add_common(evalc, common);
  evalc->add_option("term", eval_term, "term or definition name (default: main)");

  std::string trace_term, trace_lit;
  auto* trace = app.add_subcommand("trace", "acceptance probability of a trace");
  add_common(trace, common);
  trace->add_option("term", trace_term, "term or definition name")->required();
  trace->add_option("--trace", trace_lit, "trace literal, e.g. pass(\"01\");view(\"0\")")
      ->required();

  std::string mode, left, right;
  auto* compare = app.add_subcommand("compare", "compare two terms");
  add_common(compare, common);
  compare->add_option("mode", mode, "equiv, distance, context or bisim")
      ->required()
      ->check(CLI::IsMember({"equiv", "distance", "context", "bisim"}));
  compare->add_option("--left", left)->required();
  compare->add_option("--right", right)->required();

  std::string ci_left, ci_right, range = "1..8", bound = "2^-n", tpl;
  std::vector<std::string> dists;
  auto* ci = app.add_subcommand("ci", "parametric gap sweep over security parameters");
  add_common(ci, common);
  ci->add_option("--left", ci_left)->required();
  ci->add_option("--right", ci_right)->required();
  ci->add_option("--n", range, "range LO..HI of security parameters");
  ci->add_option("--bound", bound, "bound family: 2^-n, c*2^-n, n^-k, c*n^-k, table:...");
  ci->add_option("--trace", tpl, "trace template, e.g. pass(*);view(*)");
  ci->add_option("--dist", dists, "extra distinguisher definitions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*check) return cmd_check(check_files);
    if (*evalc) return cmd_eval(common, eval_term);
    if (*trace) return cmd_trace(common, trace_term, trace_lit);
    if (*compare) return cmd_compare(common, mode, left, right);
    if (*ci) return cmd_ci(common, ci_left, ci_right, range, bound, tpl, dists);
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << "{\"error\": {\"code\": \"internal\", \"message\": " << Json(e.what()).dump()
              << "}}\n";
    return kError;
  }
  return kError;
}
