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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "support.hpp"

namespace rslr {
namespace {

using namespace testing;

TEST(Parse, Keywords) {
  TermRef t = parse_term("rand");
  EXPECT_EQ(t->kind, TermKind::Rand);
}

TEST(Parse, IdentityFunction) {
  TermRef t = parse_term("\\x:[]Str. x");
  ASSERT_EQ(t->kind, TermKind::Lam);
  EXPECT_EQ(t->aspect, Aspect::Poly);
  EXPECT_TRUE(t->type->is_str());
  EXPECT_EQ(t->kids[0]->kind, TermKind::Var);
  EXPECT_EQ(t->kids[0]->index, 0);
  EXPECT_TRUE(t->is_closed());
}

TEST(Parse, UnicodeSyntax) {
  TermRef a = parse_term("λx:□Str. ¬x");
  TermRef b = parse_term("\\x:[]Str. ~x");
  EXPECT_TRUE(alpha_equal(a, b));
  EXPECT_TRUE(same_type(parse_type("■Str -> Str"), parse_type("[#]Str -> Str")));
}

TEST(Parse, RbgMatchesRecursionShape) {
  TermRef rbg = parse_term(
      "\\y:[]Str. rec Str y of { 0 -> \\w:[]Str. \\z:[#]Str. case Str rand of "
      "{0 -> 0(z) | 1 -> 1(z) | e -> \"\"} | 1 -> \\w:[]Str. \\z:[#]Str. case Str rand of "
      "{0 -> 0(z) | 1 -> 1(z) | e -> \"\"} | e -> \"\" }");
  ASSERT_EQ(rbg->kind, TermKind::Lam);
  EXPECT_EQ(rbg->kids[0]->kind, TermKind::Rec);
  EXPECT_TRUE(alpha_equal(rbg, def("RBG")));
}

TEST(Parse, SyntaxErrorsCarryPositions) {
  try {
    parse_program("let a : Str = \"0\";\nlet b : Str = (;");
    FAIL() << "expected a syntax error";
  } catch (const Error& e) {
    EXPECT_EQ(e.span().line, 2);
    EXPECT_GT(e.span().column, 0);
  }
}

TEST(Parse, UnboundNameAtUseSite) {
  try {
    elaborate(parse_program("let a : Str =\n  0(nope);"), prelude());
    FAIL() << "expected an unbound name";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "unbound-variable");
    EXPECT_EQ(e.variable(), "nope");
    EXPECT_EQ(e.span().line, 2);
  }
}

TEST(Parse, BinaryStringsOnly) { EXPECT_THROW(parse_term("\"012\""), Error); }

TEST(Desugar, IfThenElse) {
  TermRef t = desugar(parse_term("if rand then \"1\" else \"0\""));
  TermRef expected =
      make_case(str(), make_rand(), make_str("0"), make_str("1"), make_str("0"));
  EXPECT_TRUE(alpha_equal(t, expected));
  EXPECT_TRUE(same_type(t->type, str()));
}

TEST(Desugar, Numerals) {
  EXPECT_TRUE(alpha_equal(desugar(parse_term("1^3")), make_str("111")));
  EXPECT_TRUE(alpha_equal(desugar(parse_term("1^0")), make_str("")));
}

TEST(Desugar, NegationEvaluates) {
  TermDist d = eval(term("~\"01\""));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_TRUE(alpha_equal(d.begin()->first, make_str("10")));
  EXPECT_EQ(d.begin()->second, 1);
}

TEST(Desugar, EqualityEvaluates) {
  for (const auto& a : strings_up_to(3))
    for (const auto& b : strings_up_to(3)) {
      TermDist d = eval(term("\"" + a + "\" = \"" + b + "\""));
      ASSERT_EQ(d.size(), 1u);
      EXPECT_EQ(d.begin()->first->text, a == b ? "1" : "0") << a << " vs " << b;
    }
}

TEST(Desugar, IdempotentOnCore) {
  Gen g(11);
  for (int i = 0; i < 200; ++i) {
    TermRef t = g.closed(g.type());
    EXPECT_TRUE(alpha_equal(desugar(t), t));
    EXPECT_EQ(desugar(t).get(), t.get());
  }
}

TEST(Pretty, Examples) {
  EXPECT_EQ(pretty(make_rand()), "rand");
  EXPECT_EQ(pretty(parse_term("\\x:[]Str. x")), "\\x:[]Str. x");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Pretty, RoundTripOnCorpus) {
  for (const char* file : {RSLR_PRELUDE_FILE, RSLR_TEST_DATA "/corpus.rslr"}) {
    SurfaceProgram p = parse_program(read_file(file));
    ASSERT_FALSE(p.defs.empty()) << file;
    for (const auto& d : p.defs) {
      TermRef again = parse_term(pretty(d.term));
      EXPECT_TRUE(alpha_equal(again, d.term)) << d.name << ": " << pretty(d.term);
    }
  }
}

TEST(Pretty, RoundTripOnGeneratedTerms) {
  Gen g(7);
  for (int i = 0; i < 500; ++i) {
    TermRef t = g.closed(g.type(), 4);
    TermRef again = parse_term(pretty(t));
    ASSERT_TRUE(alpha_equal(again, t)) << pretty(t);
  }
}

TEST(Alpha, BinderNamesDoNotMatter) {
  EXPECT_TRUE(alpha_equal(parse_term("\\x:[]Str. x"), parse_term("\\y:[]Str. y")));
  EXPECT_FALSE(alpha_equal(parse_term("\\x:[]Str. x"), parse_term("\\x:[#]Str. x")));
  EXPECT_FALSE(alpha_equal(parse_term("\\x:[]Str. \\y:[]Str. x"),
                           parse_term("\\x:[]Str. \\y:[]Str. y")));
}

TEST(Substitute, Examples) {
  TermRef v = make_str("01");
  EXPECT_TRUE(alpha_equal(substitute(make_var("x"), v, "x"), v));
  TermRef lam = make_lam("y", Aspect::Poly, str(), make_var("x"));
  TermRef expected = make_lam("y", Aspect::Poly, str(), v);
  EXPECT_TRUE(alpha_equal(substitute(lam, v, "x"), expected));
  // Shadowed occurrences stay bound.
  TermRef shadow = make_lam("x", Aspect::Poly, str(), make_var("x"));
  EXPECT_TRUE(alpha_equal(substitute(shadow, v, "x"), shadow));
}

// A named mini-language with its own substitution, compared through a
// de Bruijn rendering against the locally nameless implementation.
struct Named {
  enum Kind { Var, Lam, App, Zero, Lit } kind;
  std::string name;
  std::vector<Named> kids;
};

Named random_named(Gen& g, int depth) {
  static const std::vector<std::string> names{"x", "y", "z"};
  int k = depth <= 0 ? g.uniform(0, 1) * 4 : g.uniform(0, 4);
  switch (k) {
    case 0:
      return {Named::Var, g.pick(names), {}};
    case 1:
      return {Named::Lam, g.pick(names), {random_named(g, depth - 1)}};
    case 2:
      return {Named::App, "", {random_named(g, depth - 1), random_named(g, depth - 1)}};
    case 3:
      return {Named::Zero, "", {random_named(g, depth - 1)}};
    default:
      return {Named::Lit, g.bits(2), {}};
  }
}

TermRef build(const Named& n) {
  switch (n.kind) {
    case Named::Var:
      return make_var(n.name);
    case Named::Lam:
      return make_lam(n.name, Aspect::Poly, str(), build(n.kids[0]));
    case Named::App:
      return make_app(build(n.kids[0]), build(n.kids[1]));
    case Named::Zero:
      return make_zero(build(n.kids[0]));
    case Named::Lit:
      return make_str(n.name);
  }
  return nullptr;
}

Named named_subst(const Named& n, const std::string& x, const Named& v) {
  if (n.kind == Named::Var) return n.name == x ? v : n;
  if (n.kind == Named::Lam && n.name == x) return n;
  Named out = n;
  for (auto& k : out.kids) k = named_subst(k, x, v);
  return out;
}

std::string db_named(const Named& n, std::vector<std::string>& env) {
  switch (n.kind) {
    case Named::Var:
      for (std::size_t i = env.size(); i-- > 0;)
        if (env[i] == n.name) return "#" + std::to_string(env.size() - 1 - i);
      return n.name;
    case Named::Lam: {
      env.push_back(n.name);
      std::string s = "(L " + db_named(n.kids[0], env) + ")";
      env.pop_back();
      return s;
    }
    case Named::App:
      return "(" + db_named(n.kids[0], env) + " " + db_named(n.kids[1], env) + ")";
    case Named::Zero:
      return "(0 " + db_named(n.kids[0], env) + ")";
    case Named::Lit:
      return "'" + n.name + "'";
  }
  return {};
}

std::string db_term(const TermRef& t) {
  switch (t->kind) {
    case TermKind::Var:
      return t->index >= 0 ? "#" + std::to_string(t->index) : t->text;
    case TermKind::Lam:
      return "(L " + db_term(t->kids[0]) + ")";
    case TermKind::App:
      return "(" + db_term(t->kids[0]) + " " + db_term(t->kids[1]) + ")";
    case TermKind::Zero:
      return "(0 " + db_term(t->kids[0]) + ")";
    case TermKind::Str:
      return "'" + t->text + "'";
    default:
      return "?";
  }
}

TEST(Substitute, AgreesWithDeBruijnOracle) {
  Gen g(2024);
  for (int i = 0; i < 1000; ++i) {
    Named n = random_named(g, 4);
    // A closed value: a literal or an abstraction without free names.
    Named v = g.coin() ? Named{Named::Lit, g.bits(2), {}}
                       : Named{Named::Lam, "y", {Named{Named::Var, "y", {}}}};
    std::vector<std::string> env;
    std::string expected = db_named(named_subst(n, "x", v), env);
    std::string actual = db_term(substitute(build(n), build(v), "x"));
    ASSERT_EQ(actual, expected) << db_named(n, env);
  }
}

TEST(Context, HoleLinearityByConstruction) {
  ContextRef c = ctx_prepend('0', ctx_hole());
  EXPECT_EQ(count_holes(c), 1);
  EXPECT_EQ(count_holes_in_rec_branches(c), 0);
  EXPECT_EQ(count_holes(ctx_leaf(make_rand())), 0);
  // A placeholder inside a rec branch is rejected.
  TermRef bad = make_rec(str(), make_str("0"), hole_placeholder(), def("rbgStep"), make_str(""));
  EXPECT_THROW(context_from_image(bad), Error);
  TermRef twice = make_app(make_app(def("eq"), hole_placeholder()), hole_placeholder());
  EXPECT_THROW(context_from_image(twice), Error);
}

TEST(Context, FillAndInstantiate) {
  ContextRef c = ctx_app_right(def("not"), ctx_tail(ctx_hole()));
  TermRef filled = fill(c, make_str("011"));
  EXPECT_TRUE(alpha_equal(filled, make_app(def("not"), make_tail(make_str("011")))));
  // (\x. 0(x) [.]) then pass "1" into the lambda context.
  ContextRef lam = context_from_image(
      make_lam("x", Aspect::Poly, str(), make_app(make_app(def("eq"), make_var("x")), hole_placeholder())));
  ASSERT_EQ(lam->kind, ContextKind::Lam);
  ContextRef body = ctx_instantiate(lam->ctx[0], make_str("1"));
  EXPECT_TRUE(alpha_equal(fill(body, make_str("1")),
                          make_app(make_app(def("eq"), make_str("1")), make_str("1"))));
}

TEST(Context, GeneratedContextsStayLinear) {
  Gen g(5);
  for (int i = 0; i < 300; ++i) {
    ContextRef c = g.context(g.coin() ? str() : poly_fn(), str());
    EXPECT_EQ(count_holes(c), 1);
    EXPECT_EQ(count_holes_in_rec_branches(c), 0);
    EXPECT_TRUE(ctx_equal(context_from_image(c->image), c));
  }
}

}  // namespace
}  // namespace rslr
