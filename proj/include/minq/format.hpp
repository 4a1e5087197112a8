// Copyright 2026 The minq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MINQ_FORMAT_HPP
#define MINQ_FORMAT_HPP

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace minq {

/// Shortest decimal string that parses back to exactly x; integral values
/// keep a trailing ".0" so the text is unambiguously floating point.
inline std::string format_double_exact(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

/// x rounded to 9 significant digits (as a value). Reports serialize through
/// this so that re-parsed numbers compare equal to re-serialized ones.
inline double round_sig9(double x) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return std::strtod(buf, nullptr);
}

/// Decimal text of round_sig9(x): at most 9 significant digits, never more
/// text than needed (shortest representation of the rounded value).
inline std::string format_double_sig9(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return format_double_exact(round_sig9(x));
}

}  // namespace minq

#endif  // MINQ_FORMAT_HPP
