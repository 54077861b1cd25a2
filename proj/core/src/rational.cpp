// Copyright 2026 The Authors.
//
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

#include "clinch/rational.hpp"

#include <cctype>
#include <cstdio>
#include <vector>

#include "clinch/errors.hpp"

namespace clinch {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

mpq_class Rational::make_int(long long value) {
  mpz_class z;
  // mpz_class has no long long constructor on LP64-unfriendly platforms;
  // route through the decimal form to stay portable.
  z = std::to_string(value);
  return mpq_class(z);
}

Rational::Rational(long long num, long long den) {
  if (den == 0) {
    throw Error(ErrorCode::validation_error, "zero denominator");
  }
  mpq_class q(make_int(num));
  q /= make_int(den);
  value_ = q;
  value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) {
    throw Error(ErrorCode::validation_error, "division by zero");
  }
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::from_string(std::string_view text) {
  std::string_view num = text;
  std::string_view den;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  bool negative = false;
  if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
    negative = num.front() == '-';
    num.remove_prefix(1);
  }
  if (!all_digits(num)) {
    throw Error(ErrorCode::parse_error,
                "bad rational literal '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num), 10);
  if (negative) n = -n;
  if (den.data() == nullptr) {
    return Rational(mpq_class(n));
  }
  if (!all_digits(den)) {
    throw Error(ErrorCode::parse_error,
                "bad rational literal '" + std::string(text) + "'");
  }
  mpz_class d(std::string(den), 10);
  if (d == 0) {
    throw Error(ErrorCode::parse_error,
                "zero denominator in '" + std::string(text) + "'");
  }
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(q);
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::decimal(int significant_digits) const {
  // 256 bits of working precision comfortably cover 20 significant decimal
  // digits; the output is a function of the exact value only.
  mpf_class approx(value_, 256);
  std::vector<char> buf(significant_digits + 64);
  gmp_snprintf(buf.data(), buf.size(), "%.*Fg", significant_digits,
               approx.get_mpf_t());
  return std::string(buf.data());
}

Rational Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num().get_mpz_t(),
             value_.get_den().get_mpz_t());
  return Rational(mpq_class(q));
}

long long Rational::to_int64() const {
  if (!is_integer()) {
    throw Error(ErrorCode::validation_error,
                "expected integer value, got " + str());
  }
  const mpz_class& n = value_.get_num();
  if (!n.fits_slong_p()) {
    throw Error(ErrorCode::guard_exceeded, "integer out of range: " + str());
  }
  return n.get_si();
}

}  // namespace clinch
