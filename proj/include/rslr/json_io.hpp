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

#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "rslr/ci.hpp"

namespace rslr {

using Json = nlohmann::ordered_json;

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
Json integer_json(const mpz_class& z);

/// {"num", "den", "approx"}.
Json rational_json(const Rational& q);

/// {"dist": [{"value", "num", "den"}...]} ordered by the printed value.
Json dist_json(const TermDist& d);
std::string dist_csv(const TermDist& d);

Json bounds_json(const EnumBounds& b);
/// {kind, witness?, pLeft?, pRight?, bounds, exact}.
Json verdict_json(const Verdict& v);
Json distance_json(const Distance& d, const EnumBounds& b);
Json context_distance_json(const ContextDistance& d, const EnumBounds& b);

Json gap_report_json(const GapReport& r);
/// n,p_left,p_right,gap,bound rows with exact fractions.
std::string gap_report_csv(const GapReport& r);

/// {code, message, span, variable?}.
Json diagnostic_json(const Diagnostic& d);
Json diagnostics_json(const std::vector<Diagnostic>& ds);

}  // namespace rslr
