// Copyright 2026 The polycoord Authors.
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

#include "polycoord/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace polycoord {
namespace {

bool is_integer_literal(std::string_view text) {
  std::size_t pos = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) pos = 1;
  if (pos == text.size()) return false;
  for (; pos < text.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(text[pos]))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view text) {
  if (!is_integer_literal(text)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  std::string digits(text.front() == '+' ? text.substr(1) : text);
  return mpz_class(digits, 10);
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::invalid_argument("rational with zero denominator");
  value_ = mpq_class(mpz_class(numerator), mpz_class(denominator));
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  mpq_class value;
  if (slash == std::string_view::npos) {
    value = mpq_class(parse_integer(text));
  } else {
    const mpz_class num = parse_integer(text.substr(0, slash));
    const std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    const mpz_class den = parse_integer(den_text);
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    value = mpq_class(num, den);
    value.canonicalize();
  }
  return Rational(std::move(value));
}

Rational Rational::pow2(unsigned exponent) {
  mpz_class v = 1;
  v <<= exponent;
  return Rational(mpq_class(v));
}

std::string Rational::numerator_str() const { return value_.get_num().get_str(); }
std::string Rational::denominator_str() const { return value_.get_den().get_str(); }

std::string Rational::str() const {
  if (is_integer()) return numerator_str();
  return numerator_str() + "/" + denominator_str();
}

bool Rational::is_integer() const { return value_.get_den() == 1; }

bool Rational::to_longs(long& numerator, long& denominator) const {
  if (!value_.get_num().fits_slong_p() || !value_.get_den().fits_slong_p()) return false;
  numerator = value_.get_num().get_si();
  denominator = value_.get_den().get_si();
  return true;
}

Rational& Rational::operator+=(const Rational& other) {
  value_ += other.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& other) {
  value_ -= other.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& other) {
  value_ *= other.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& other) {
  if (other.sign() == 0) throw std::domain_error("division by zero");
  value_ /= other.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

std::size_t Rational::hash() const {
  const std::size_t h1 = std::hash<std::string>{}(numerator_str());
  const std::size_t h2 = std::hash<std::string>{}(denominator_str());
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

}  // namespace polycoord
