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

#include "rslr/json_io.hpp"
#include "support.hpp"

namespace rslr {
namespace {

using namespace testing;

TEST(Json, Integers) {
  EXPECT_EQ(integer_json(mpz_class(42)).dump(), "42");
  EXPECT_EQ(integer_json(mpz_class(-7)).dump(), "-7");
  mpz_class big;
  mpz_ui_pow_ui(big.get_mpz_t(), 2, 80);
  EXPECT_EQ(integer_json(big).dump(), "\"1208925819614629174706176\"");
}

TEST(Json, Rationals) {
  EXPECT_EQ(rational_json(rational(3, 4)).dump(), R"({"num":3,"den":4,"approx":"0.75"})");
  EXPECT_EQ(rational_json(Rational(0)).dump(), R"({"num":0,"den":1,"approx":"0"})");
  Json tiny = rational_json(pow2_neg(100));
  EXPECT_EQ(tiny["num"], 1);
  EXPECT_TRUE(tiny["den"].is_string());
}

TEST(Json, DistributionIsSortedByPrintedValue) {
  TermDist d = eval(term("RBG \"01\""));
  EXPECT_EQ(dist_json(d).dump(),
            R"({"dist":[{"value":"\"00\"","num":1,"den":4},{"value":"\"01\"","num":1,"den":4},)"
            R"({"value":"\"10\"","num":1,"den":4},{"value":"\"11\"","num":1,"den":4}]})");
  EXPECT_EQ(dist_csv(eval(make_rand())), "value,num,den\n\"\"\"0\"\"\",1,2\n\"\"\"1\"\"\",1,2\n");
}

TEST(Json, Verdicts) {
  Verdict v = trace_equiv(make_rand(), make_str("0"), {});
  Json j = verdict_json(v);
  EXPECT_EQ(j["kind"], "Distinguished");
  EXPECT_EQ(j["witness"], "view(\"1\")");
  EXPECT_EQ(j["pLeft"]["num"], 1);
  EXPECT_EQ(j["pLeft"]["den"], 2);
  EXPECT_EQ(j["pRight"]["num"], 0);
  EXPECT_EQ(j["exact"], true);
  EXPECT_EQ(j["bounds"].dump(), R"({"maxStringLen":2,"maxValueDepth":3,"maxContextSize":4})");
  Json same = verdict_json(trace_equiv(make_rand(), make_rand(), {}));
  EXPECT_EQ(same["kind"], "EquivalentUpToBound");
  EXPECT_FALSE(same.contains("witness"));
}

TEST(Json, Distances) {
  Json d = distance_json(trace_distance(make_rand(), make_str("0"), {}), {});
  EXPECT_EQ(d["kind"], "TraceDistance");
  EXPECT_EQ(d["value"]["num"], 1);
  EXPECT_EQ(d["value"]["den"], 2);
  EXPECT_EQ(d["exact"], true);
  Json c = context_distance_json(context_distance_lb(make_rand(), make_str(""), {}), {});
  EXPECT_EQ(c["witness"], "[.]");
  EXPECT_EQ(c["exact"], false);
}

TEST(Json, GapReports) {
  ParamSweep sw;
  sw.n_low = 1;
  sw.n_high = 3;
  GapReport r = sweep(def("padCut"), def("padCutFlip"), sw);
  Json j = gap_report_json(r);
  EXPECT_EQ(j["label"], "bounded-range evidence");
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["rows"].size(), 3u);
  EXPECT_EQ(j["rows"][2]["gap"]["den"], 8);
  EXPECT_EQ(j["maxGapScaled"]["num"], 1);
  EXPECT_FALSE(j.contains("firstFailure"));
  EXPECT_EQ(gap_report_csv(r),
            "n,p_left,p_right,gap,bound\n1,1,1/2,1/2,1/2\n2,1,3/4,1/4,1/4\n3,1,7/8,1/8,1/8\n");
}

TEST(Json, Diagnostics) {
  Diagnostic d{"linearity", "used twice", {3, 29}, "f", "dup"};
  EXPECT_EQ(diagnostic_json(d).dump(),
            R"({"code":"linearity","message":"used twice","span":{"line":3,"column":29},)"
            R"("variable":"f","definition":"dup"})");
  EXPECT_EQ(diagnostics_json({}).dump(), R"({"ok":true,"diagnostics":[]})");
}

TEST(Json, Deterministic) {
  for (int i = 0; i < 3; ++i)
    EXPECT_EQ(dist_json(eval(term("RBG 1^4"))).dump(), dist_json(eval(term("RBG 1^4"))).dump());
}

}  // namespace
}  // namespace rslr
