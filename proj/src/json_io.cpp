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

#include "rslr/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace rslr {

Json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return Json(static_cast<std::int64_t>(z.get_si()));
  return Json(z.get_str());
}

Json rational_json(const Rational& q) {
  Json j;
  j["num"] = integer_json(q.get_num());
  j["den"] = integer_json(q.get_den());
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", q.get_d());
  j["approx"] = buf;
  return j;
}

namespace {

std::vector<std::pair<std::string, Rational>> printed(const TermDist& d) {
  std::vector<std::pair<std::string, Rational>> rows;
  for (const auto& [t, p] : d) rows.emplace_back(pretty(t), p);
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return rows;
}

}  // namespace

Json dist_json(const TermDist& d) {
  Json rows = Json::array();
  for (const auto& [value, p] : printed(d)) {
    Json row;
    row["value"] = value;
    row["num"] = integer_json(p.get_num());
    row["den"] = integer_json(p.get_den());
    rows.push_back(std::move(row));
  }
  Json j;
  j["dist"] = std::move(rows);
  return j;
}

std::string dist_csv(const TermDist& d) {
  std::ostringstream out;
  out << "value,num,den\n";
  for (const auto& [value, p] : printed(d)) {
    std::string quoted;
    for (char c : value) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    out << '"' << quoted << "\"," << p.get_num().get_str() << ',' << p.get_den().get_str()
        << '\n';
  }
  return out.str();
}

Json bounds_json(const EnumBounds& b) {
  Json j;
  j["maxStringLen"] = b.max_string_len;
  j["maxValueDepth"] = b.max_value_depth;
  j["maxContextSize"] = b.max_context_size;
  return j;
}

Json verdict_json(const Verdict& v) {
  Json j;
  j["kind"] = v.distinguished() ? "Distinguished" : "EquivalentUpToBound";
  if (v.distinguished()) {
    std::string w = v.witness_text();
    if (!w.empty()) {
      j["witness"] = w;
      j["pLeft"] = rational_json(v.p_left);
      j["pRight"] = rational_json(v.p_right);
    }
  }
  j["bounds"] = bounds_json(v.bounds);
  j["exact"] = v.exact;
  return j;
}

Json distance_json(const Distance& d, const EnumBounds& b) {
  Json j;
  j["kind"] = "TraceDistance";
  j["value"] = rational_json(d.value);
  j["bounds"] = bounds_json(b);
  j["exact"] = d.exact;
  return j;
}

Json context_distance_json(const ContextDistance& d, const EnumBounds& b) {
  Json j;
  j["kind"] = "ContextDistanceLowerBound";
  j["value"] = rational_json(d.value);
  if (d.witness) {
    j["witness"] = pretty(d.witness);
    j["pLeft"] = rational_json(d.p_left);
    j["pRight"] = rational_json(d.p_right);
  }
  j["bounds"] = bounds_json(b);
  j["exact"] = false;
  return j;
}

Json gap_report_json(const GapReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json j;
    j["n"] = row.n;
    j["pLeft"] = rational_json(row.p_left);
    j["pRight"] = rational_json(row.p_right);
    j["gap"] = rational_json(row.gap);
    j["bound"] = rational_json(row.bound);
    j["witness"] = to_string(row.witness);
    j["tracesSearched"] = row.traces;
    rows.push_back(std::move(j));
  }
  Json j;
  j["kind"] = "GapReport";
  j["label"] = GapReport::kLabel;
  j["template"] = r.template_text;
  j["boundFamily"] = r.bound;
  j["rows"] = std::move(rows);
  j["verdict"] = r.pass ? "pass" : "fail";
  if (r.first_failure) j["firstFailure"] = *r.first_failure;
  j["maxGapScaled"] = rational_json(r.max_gap_scaled);
  return j;
}

std::string gap_report_csv(const GapReport& r) {
  std::ostringstream out;
  out << "n,p_left,p_right,gap,bound\n";
  for (const auto& row : r.rows)
    out << row.n << ',' << row.p_left.get_str() << ',' << row.p_right.get_str() << ','
        << row.gap.get_str() << ',' << row.bound.get_str() << '\n';
  return out.str();
}

Json diagnostic_json(const Diagnostic& d) {
  Json j;
  j["code"] = d.code;
  j["message"] = d.message;
  j["span"] = {{"line", d.span.line}, {"column", d.span.column}};
  if (!d.variable.empty()) j["variable"] = d.variable;
  if (!d.definition.empty()) j["definition"] = d.definition;
  return j;
}

Json diagnostics_json(const std::vector<Diagnostic>& ds) {
  Json arr = Json::array();
  for (const auto& d : ds) arr.push_back(diagnostic_json(d));
  Json j;
  j["ok"] = ds.empty();
  j["diagnostics"] = std::move(arr);
  return j;
}

}  // namespace rslr
