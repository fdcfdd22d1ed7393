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

#include <gmpxx.h>

#include <string>

namespace rslr {

/// Exact rational; every probability in the workbench is one of these.
using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// 2^-n.
inline Rational pow2_neg(unsigned n) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, n);
  return Rational(mpz_class(1), den);
}

inline Rational abs_diff(const Rational& a, const Rational& b) {
  return a > b ? Rational(a - b) : Rational(b - a);
}

/// "p/q", or "p" when q = 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "p/q" or a decimal integer; throws std::invalid_argument.
Rational parse_rational(const std::string& text);

}  // namespace rslr
