#pragma once
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

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace clinch {

// Arbitrary-precision rational kept in canonical form (coprime, positive
// denominator). All arithmetic is exact; prices, budgets and welfare values
// never touch floating point except in the display-only decimal column.
class Rational {
 public:
  Rational() : value_(0) {}
  Rational(long long value) : value_(make_int(value)) {}  // NOLINT: implicit
  Rational(int value) : value_(static_cast<long>(value)) {}  // NOLINT
  Rational(long long num, long long den);
  explicit Rational(const mpq_class& value) : value_(value) {
    value_.canonicalize();
  }

  // Accepts "p", "-p" and "p/q" with q > 0. Anything else is a parse error.
  static Rational from_string(std::string_view text);

  // Canonical text form: "3", "-3" or "3/4".
  std::string str() const;

  // Decimal approximation with the given number of significant digits.
  // Display-only; never used in comparisons.
  std::string decimal(int significant_digits = 20) const;

  bool is_integer() const { return value_.get_den() == 1; }
  bool is_negative() const { return sgn(value_) < 0; }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_positive() const { return sgn(value_) > 0; }

  // Largest integer <= *this, as a Rational.
  Rational floor() const;

  // Requires an integer value that fits in int64.
  long long to_int64() const;

  const mpq_class& raw() const { return value_; }

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
  }
  Rational& operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
  }
  Rational& operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
  }
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) {
    return lhs += rhs;
  }
  friend Rational operator-(Rational lhs, const Rational& rhs) {
    return lhs -= rhs;
  }
  friend Rational operator*(Rational lhs, const Rational& rhs) {
    return lhs *= rhs;
  }
  friend Rational operator/(Rational lhs, const Rational& rhs) {
    return lhs /= rhs;
  }

  friend bool operator==(const Rational& lhs, const Rational& rhs) {
    return mpq_equal(lhs.value_.get_mpq_t(), rhs.value_.get_mpq_t()) != 0;
  }
  friend bool operator!=(const Rational& lhs, const Rational& rhs) {
    return !(lhs == rhs);
  }
  friend bool operator<(const Rational& lhs, const Rational& rhs) {
    return cmp(lhs.value_, rhs.value_) < 0;
  }
  friend bool operator>(const Rational& lhs, const Rational& rhs) {
    return rhs < lhs;
  }
  friend bool operator<=(const Rational& lhs, const Rational& rhs) {
    return !(rhs < lhs);
  }
  friend bool operator>=(const Rational& lhs, const Rational& rhs) {
    return !(lhs < rhs);
  }

 private:
  static mpq_class make_int(long long value);

  mpq_class value_;
};

inline Rational min(const Rational& a, const Rational& b) {
  return a < b ? a : b;
}
inline Rational max(const Rational& a, const Rational& b) {
  return a < b ? b : a;
}

}  // namespace clinch
