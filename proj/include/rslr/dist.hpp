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

#include <map>
#include <string>

#include "rslr/rational.hpp"
#include "rslr/syntax.hpp"

namespace rslr {

/// Finite distributions with exact masses. Keys are merged by the map's
/// ordering (alpha-equivalence for terms); zero masses are never stored.
template <class K, class Less = std::less<K>>
using Dist = std::map<K, Rational, Less>;

using TermDist = Dist<TermRef, TermLess>;
using StringDist = Dist<std::string>;

template <class K, class Less>
void add_mass(Dist<K, Less>& d, const K& key, const Rational& p) {
  if (sgn(p) == 0) return;
  auto [it, inserted] = d.emplace(key, p);
  if (!inserted) {
    it->second += p;
    if (sgn(it->second) == 0) d.erase(it);
  }
}

/// d += w * e.
template <class K, class Less>
void add_scaled(Dist<K, Less>& d, const Rational& w, const Dist<K, Less>& e) {
  if (sgn(w) == 0) return;
  for (const auto& [k, p] : e) add_mass(d, k, w * p);
}

template <class K, class Less>
Rational total_mass(const Dist<K, Less>& d) {
  Rational s = 0;
  for (const auto& [k, p] : d) s += p;
  return s;
}

inline TermDist point(const TermRef& t) { return TermDist{{t, Rational(1)}}; }

/// True when every support element is a value.
bool is_normal(const TermDist& d);

/// Projects a distribution over string literals onto their bits; throws if a
/// support element is not a string literal.
StringDist to_strings(const TermDist& d);
TermDist from_strings(const StringDist& d);

/// The largest gap any set of strings can observe; half the L1 distance
/// when both sides have the same total mass.
Rational tv_distance(const StringDist& d, const StringDist& e);

/// Mass of the strings starting with `bit` ('0' or '1'), or of the empty
/// string for 'e'.
Rational head_mass(const StringDist& d, char bit);

}  // namespace rslr
