// Copyright 2026 The stricteq Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STRICTEQ_SCALAR_HPP_
#define STRICTEQ_SCALAR_HPP_

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

#include "stricteq/rational.hpp"

namespace stricteq {

enum class Ordering { less, equal, greater };

/// Arithmetic-mode traits. The whole solver stack is templated on the
/// scalar type; Rational gives exact results, double gives fast
/// tolerance-based results. No third instantiation is supported.
template <typename N>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static const char* mode_name() { return "rational"; }

  static Rational zero() { return Rational(0); }
  static Rational from_long(long v) { return Rational(v); }
  static std::optional<Rational> parse(std::string_view s) {
    return Rational::parse(s);
  }
  static std::string to_string(const Rational& v) { return v.to_string(); }
  static double to_double(const Rational& v) { return v.to_double(); }
  static Rational floor(const Rational& v) { return v.floor(); }
  static Rational ceil(const Rational& v) { return v.ceil(); }
  static Rational abs(const Rational& v) { return v.abs(); }
  static long floor_long(const Rational& v) { return v.floor_long(); }
  static bool finite(const Rational&) { return true; }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static const char* mode_name() { return "float"; }

  static double zero() { return 0.0; }
  static double from_long(long v) { return static_cast<double>(v); }
  static std::optional<double> parse(std::string_view s) {
    // Accepts the same forms as the rational parser, including "a/b".
    const size_t slash = s.find('/');
    if (slash != std::string_view::npos) {
      auto num = parse(s.substr(0, slash));
      auto den = parse(s.substr(slash + 1));
      if (!num || !den || *den == 0.0) return std::nullopt;
      return *num / *den;
    }
    std::string buf(s);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || buf.empty()) return std::nullopt;
    if (!std::isfinite(v)) return std::nullopt;
    return v;
  }
  static std::string to_string(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
  }
  static double to_double(double v) { return v; }
  static double floor(double v) { return std::floor(v); }
  static double ceil(double v) { return std::ceil(v); }
  static double abs(double v) { return std::fabs(v); }
  static long floor_long(double v) { return static_cast<long>(std::floor(v)); }
  static bool finite(double v) { return std::isfinite(v); }
};

/// Comparison and feasibility tolerances. Rational mode admits only
/// zero tolerances: every comparison is exact.
template <typename N>
struct Tolerances {
  N feasibility;
  N integrality;
  N complementarity;

  Tolerances()
      : feasibility(scalar_traits<N>::zero()),
        integrality(scalar_traits<N>::zero()),
        complementarity(scalar_traits<N>::zero()) {
    if constexpr (!scalar_traits<N>::exact) {
      feasibility = 1e-9;
      integrality = 1e-6;
      complementarity = 1e-8;
    }
  }

  static Tolerances exact_zero() {
    Tolerances t;
    t.feasibility = scalar_traits<N>::zero();
    t.integrality = scalar_traits<N>::zero();
    t.complementarity = scalar_traits<N>::zero();
    return t;
  }
};

/// Three-way comparison with absolute tolerance eps >= 0.
template <typename N>
Ordering compare(const N& a, const N& b, const N& eps) {
  const N d = a - b;
  if (d > eps) return Ordering::greater;
  if (d < -eps) return Ordering::less;
  return Ordering::equal;
}

template <typename N>
bool approx_equal(const N& a, const N& b, const N& eps) {
  return compare(a, b, eps) == Ordering::equal;
}

}  // namespace stricteq

#endif  // STRICTEQ_SCALAR_HPP_
