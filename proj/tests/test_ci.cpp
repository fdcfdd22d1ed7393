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

std::string usage_code(const std::string& bound) {
  try {
    parse_bound(bound).at(1);
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

TEST(Rational, Parsing) {
  EXPECT_EQ(parse_rational("3/6"), rational(1, 2));
  EXPECT_EQ(parse_rational("0.25"), rational(1, 4));
  EXPECT_EQ(parse_rational(".5"), rational(1, 2));
  EXPECT_EQ(parse_rational("-2"), -2);
  EXPECT_EQ(parse_rational(" 7 "), 7);
  // Leading zeros are decimal, not octal.
  EXPECT_EQ(parse_rational("010"), 10);
  EXPECT_EQ(parse_rational("010/012"), rational(5, 6));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("x"), Error);
  EXPECT_THROW(parse_rational(""), Error);
}

TEST(Bounds, Families) {
  EXPECT_EQ(parse_bound("2^-n").at(3), rational(1, 8));
  EXPECT_EQ(parse_bound("3*2^-n").at(2), rational(3, 4));
  EXPECT_EQ(parse_bound("n^-2").at(3), rational(1, 9));
  EXPECT_EQ(parse_bound("1/2*n^-1").at(4), rational(1, 8));
  EXPECT_EQ(parse_bound("0.5 * 2^-n").at(1), rational(1, 4));
  BoundFamily t = parse_bound("table:1/2,1/4,0.1");
  EXPECT_EQ(t.at(1), rational(1, 2));
  EXPECT_EQ(t.at(3), rational(1, 10));
  EXPECT_THROW(t.at(4), Error);
  EXPECT_THROW(t.at(0), Error);
}

TEST(Bounds, Errors) {
  EXPECT_EQ(usage_code("3^-n"), "usage");
  EXPECT_EQ(usage_code("n^-k"), "usage");
  EXPECT_EQ(usage_code("0*2^-n"), "usage");
  EXPECT_EQ(usage_code("table:1,0"), "usage");
  EXPECT_EQ(usage_code("2^-n"), "");
}

TEST(Template, Parsing) {
  TraceTemplate tpl = parse_template("pass(*);view(*)", prelude());
  EXPECT_EQ(to_string(tpl), "pass(1^n);pass(*);view(*)");
  EXPECT_EQ(to_string(parse_template("pass(1^n);view(\"0\")", prelude())),
            "pass(1^n);view(\"0\")");
  EXPECT_EQ(to_string(default_template(typecheck(def("padCut")))), "pass(1^n);pass(*);view(*)");
  EXPECT_EQ(to_string(default_template(poly_fn())), "pass(1^n);view(*)");
  EXPECT_THROW(default_template(str()), Error);
}

TEST(ParamGap, PadCutPair) {
  Trace tr{pass(make_str("0")), view_str("000")};
  ParamGap g = param_gap(def("padCut"), def("padCutFlip"), tr, 3);
  EXPECT_EQ(g.p_left, 1);
  EXPECT_EQ(g.p_right, rational(7, 8));
  EXPECT_EQ(g.gap, rational(1, 8));
  // A distinguisher that always accepts sees nothing.
  TermRef accept = term("\\x:[#]Str. \"\"");
  Trace constant{pass(make_str("0")), view_dist(accept)};
  EXPECT_EQ(param_gap(def("padCut"), def("padCutFlip"), constant, 3).gap, 0);
}

TEST(ParamGap, LengthOfPaddedVector) {
  for (unsigned n = 0; n <= 5; ++n)
    for (const auto& x : strings_up_to(3)) {
      TermRef lv = make_app(make_app(def("LV"), make_str(x)), make_str(std::string(n, '1')));
      StringDist d = to_strings(eval(lv));
      ASSERT_EQ(d.size(), 1u);
      EXPECT_EQ(d.begin()->first.size(), n);
    }
}

TEST(Sweep, PadCutMeetsTheBoundExactly) {
  ParamSweep sw;
  sw.n_low = 1;
  sw.n_high = 6;
  GapReport r = sweep(def("padCut"), def("padCutFlip"), sw);
  ASSERT_EQ(r.rows.size(), 6u);
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(r.first_failure);
  EXPECT_EQ(r.max_gap_scaled, 1);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.gap, pow2_neg(row.n)) << row.n;
    EXPECT_EQ(row.bound, pow2_neg(row.n));
    EXPECT_GT(row.traces, 0u);
    ASSERT_FALSE(row.witness.empty());
    EXPECT_TRUE(alpha_equal(row.witness.front().term, make_str(std::string(row.n, '1'))));
    EXPECT_EQ(param_gap(def("padCut"), def("padCutFlip"),
                        Trace(row.witness.begin() + 1, row.witness.end()), row.n)
                  .gap,
              row.gap);
  }
  EXPECT_EQ(r.template_text, "pass(1^n);pass(*);view(*)");
}

TEST(Sweep, ConstantGapFailsAtTwo) {
  TermRef coin = term("\\s:[]Str. \\x:[]Str. rand");
  TermRef zero = term("\\s:[]Str. \\x:[]Str. \"0\"");
  ParamSweep sw;
  sw.n_low = 1;
  sw.n_high = 4;
  GapReport r = sweep(coin, zero, sw);
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.first_failure);
  EXPECT_EQ(*r.first_failure, 2u);
  EXPECT_EQ(r.rows[0].gap, rational(1, 2));
  EXPECT_EQ(r.max_gap_scaled, 8);
  // A looser bound family accepts it.
  sw.bound = parse_bound("1/2*n^-0");
  EXPECT_TRUE(sweep(coin, zero, sw).pass);
}

TEST(Sweep, PointDistinguisherGrid) {
  const std::vector<std::string> all = strings_up_to(3);
  CiOptions opts;
  opts.bounds = {3, 2, 4};
  TraceTemplate tpl = parse_template("view(*)", prelude());
  for (const auto& x : all)
    for (const auto& y : all) {
      TermRef l = term("\\s:[]Str. \"" + x + "\"");
      TermRef r = term("\\s:[]Str. \"" + y + "\"");
      GapRow row = worst_gap(l, r, tpl, 1, opts);
      ASSERT_EQ(row.gap, x == y ? 0 : 1) << x << " vs " << y;
    }
}

TEST(Sweep, ExtraDistinguishersAreSearched) {
  // Strings longer than the enumeration bound are still covered by the support.
  TermRef l = term("\\s:[]Str. \"0000\"");
  TermRef r = term("\\s:[]Str. \"0001\"");
  CiOptions opts;
  opts.bounds = {1, 2, 4};
  GapRow row = worst_gap(l, r, parse_template("view(*)", prelude()), 1, opts);
  EXPECT_EQ(row.gap, 1);
  opts.distinguishers.push_back(view_dist(def("not"), "not"));
  EXPECT_EQ(worst_gap(l, r, parse_template("view(*)", prelude()), 1, opts).gap, 1);
}

TEST(Sweep, Errors) {
  ParamSweep sw;
  sw.n_low = 3;
  sw.n_high = 2;
  EXPECT_THROW(sweep(def("padCut"), def("padCutFlip"), sw), Error);
  try {
    sweep(make_str("0"), make_str("1"), ParamSweep{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "shape-mismatch");
  }
}

}  // namespace
}  // namespace rslr
