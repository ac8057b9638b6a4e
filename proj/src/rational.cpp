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

#include "stricteq/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace stricteq {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Parses "[+-]digits[.digits][eE[+-]digits]" into an exact rational.
std::optional<mpq_class> parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  const size_t epos = s.find_first_of("eE");
  if (epos != std::string_view::npos) {
    std::string_view es = s.substr(epos + 1);
    s = s.substr(0, epos);
    bool eneg = false;
    if (!es.empty() && (es[0] == '+' || es[0] == '-')) {
      eneg = es[0] == '-';
      es.remove_prefix(1);
    }
    if (!all_digits(es) || es.size() > 6) return std::nullopt;
    exponent = std::stol(std::string(es));
    if (eneg) exponent = -exponent;
  }
  std::string digits;
  const size_t dot = s.find('.');
  if (dot != std::string_view::npos) {
    std::string_view frac = s.substr(dot + 1);
    if (s.find('.', dot + 1) != std::string_view::npos) return std::nullopt;
    digits = std::string(s.substr(0, dot)) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
    if (digits.empty()) return std::nullopt;
  } else {
    digits = std::string(s);
  }
  if (!all_digits(digits)) return std::nullopt;
  mpz_class num(digits, 10);
  mpz_class den(1);
  if (exponent > 0) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent));
    num *= scale;
  } else if (exponent < 0) {
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(-exponent));
  }
  if (negative) num = -num;
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

std::optional<Rational> Rational::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  const size_t slash = text.find('/');
  if (slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    bool nneg = false;
    if (!num.empty() && (num[0] == '+' || num[0] == '-')) {
      nneg = num[0] == '-';
      num.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) return std::nullopt;
    if (nneg) n = -n;
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(q);
  }
  auto q = parse_decimal(text);
  if (!q) return std::nullopt;
  return Rational(*q);
}

std::string Rational::to_string() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(),
             v_.get_den().get_mpz_t());
  return Rational(mpq_class(q));
}

Rational Rational::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(),
             v_.get_den().get_mpz_t());
  return Rational(mpq_class(q));
}

long Rational::floor_long() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(),
             v_.get_den().get_mpz_t());
  if (!q.fits_slong_p()) {
    throw std::overflow_error("rational floor does not fit in long");
  }
  return q.get_si();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

}  // namespace stricteq
