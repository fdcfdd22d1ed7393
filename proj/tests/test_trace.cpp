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

#include "support.hpp"

namespace rslr {
namespace {

using namespace testing;

Rational pr(const std::string& t, const std::string& trace) {
  return prob(term(t), parse_trace(trace, prelude()));
}

TEST(Trace, Rendering) {
  Trace tr{pass(make_str("01")), view_str("0")};
  EXPECT_EQ(to_string(tr), "pass(\"01\");view(\"0\")");
  EXPECT_EQ(to_string(view_set({"", "00"})), "view({e,00})");
  EXPECT_EQ(to_string(view_dist(def("not"), "not")), "view(dist not)");
}

TEST(Trace, ParseRoundTrip) {
  for (const std::string text :
       {"pass(\"01\");view(\"0\")", "view({e,00})", "pass(\"\");view(dist not)",
        "pass(\"1\");pass(\"\");view(\"\")"}) {
    Trace tr = parse_trace(text, prelude());
    EXPECT_EQ(to_string(tr), text);
  }
}

TEST(Trace, WildcardsAreRejected) {
  try {
    parse_trace("pass(*);view(\"0\")", prelude());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "trace");
  }
}

TEST(Trace, Compatibility) {
  TypeRef two = typecheck(def("LV"));
  EXPECT_TRUE(compatible({pass(make_str("1")), pass(make_str("11")), view_str("1")}, two));
  EXPECT_FALSE(compatible({pass(make_str("1")), view_str("1")}, two));
  EXPECT_FALSE(compatible({pass(make_str("1")), pass(make_str("1")), pass(make_str("1")),
                           view_str("1")},
                          two));
  EXPECT_FALSE(compatible({view_str("1")}, poly_fn()));
  EXPECT_TRUE(compatible({view_str("1")}, str()));
  // Passed values must be values of the argument type.
  EXPECT_FALSE(compatible({pass(make_rand()), view_str("1")}, poly_fn()));
  EXPECT_FALSE(compatible({pass(def("ident")), view_str("1")}, poly_fn()));
  // Distinguishers need the type [#]Str -> Str or a subtype.
  EXPECT_TRUE(compatible({view_dist(def("not"))}, str()));
  EXPECT_FALSE(compatible({view_dist(def("LV"))}, str()));
  // A trailing pass without a view is not a complete trace.
  EXPECT_FALSE(compatible({pass(make_str("1"))}, poly_fn()));
}

TEST(Prob, Examples) {
  EXPECT_EQ(pr("ident", "pass(\"01\");view(\"01\")"), 1);
  EXPECT_EQ(pr("ident", "pass(\"01\");view(\"1\")"), 0);
  EXPECT_EQ(pr("lazyCoin", "pass(\"0\");view(\"1\")"), rational(1, 2));
  EXPECT_EQ(pr("eagerCoin", "pass(\"0\");view(\"1\")"), rational(1, 2));
  EXPECT_EQ(pr("RBG", "pass(\"01\");view({00,11})"), rational(1, 2));
  EXPECT_EQ(pr("RBG", "pass(\"01\");view({e,0,1})"), 0);
  EXPECT_EQ(pr("rand", "view(dist not)"), 0);
  EXPECT_EQ(pr("tail(rand)", "view(dist not)"), 1);
  EXPECT_EQ(pr("LV", "pass(\"1\");pass(\"111\");view(\"100\")"), 1);
}

TEST(Prob, TraceWithoutViewReturnsMass) {
  Evaluator ev;
  EXPECT_EQ(prob(point(def("RBG")), {pass(make_str("1"))}, ev), 1);
}

TEST(Prob, PointDistinguisherMatchesStringView) {
  Evaluator ev;
  StringDist d = to_strings(eval(term("RBG \"011\"")));
  for (const auto& m : strings_up_to(3)) {
    EXPECT_EQ(observe(d, view_dist(point_distinguisher(m)), ev), observe(d, view_str(m), ev))
        << m;
  }
}

TEST(Prob, ViewSetsAreAdditive) {
  Gen g(4);
  const std::vector<std::string> all = strings_up_to(3);
  for (int i = 0; i < 300; ++i) {
    TermRef t = g.closed(str());
    std::set<std::string> a, b;
    for (const auto& m : all) (g.coin() ? a : b).insert(m);
    if (a.empty() || b.empty()) continue;
    Rational pa = prob(t, {view_set(a)}), pb = prob(t, {view_set(b)});
    std::set<std::string> both = a;
    both.insert(b.begin(), b.end());
    ASSERT_EQ(pa + pb, prob(t, {view_set(both)})) << pretty(t);
    Rational singletons = 0;
    for (const auto& m : a) singletons += prob(t, {view_str(m)});
    ASSERT_EQ(singletons, pa);
  }
}

TEST(Prob, InvariantUnderInternalSteps) {
  Gen g(21);
  for (int i = 0; i < 300; ++i) {
    TypeRef type = g.type();
    TermRef t = g.closed(type);
    Trace tr = g.trace(typecheck(t));
    ASSERT_TRUE(compatible(tr, typecheck(t))) << to_string(tr);
    Evaluator ev;
    Rational before = prob(point(t), tr, ev);
    TermDist cur = point(t);
    for (int k = 0; k < 5; ++k) {
      StepResult s = step(cur, k % 2 == 1);
      if (s.fixpoint) break;
      cur = std::move(s.dist);
      ASSERT_EQ(prob(cur, tr, ev), before) << pretty(t) << " " << to_string(tr);
    }
  }
}

TEST(Prob, RunPrefixIsNormal) {
  Gen g(6);
  for (int i = 0; i < 200; ++i) {
    TypeRef type = g.type();
    TermRef t = g.closed(type);
    Trace tr = g.trace(typecheck(t));
    tr.pop_back();
    Evaluator ev;
    TermDist out = run_prefix(point(t), tr, ev);
    EXPECT_TRUE(is_normal(out));
    EXPECT_EQ(total_mass(out), 1);
  }
}

}  // namespace
}  // namespace rslr
