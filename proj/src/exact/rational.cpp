#include "isochrone/exact/rational.hpp"

#include <cctype>

#include "isochrone/error.hpp"

namespace isochrone::exact {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t pos = (s.front() == '-' || s.front() == '+') ? 1 : 0;
  if (pos == s.size()) return false;
  for (; pos < s.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(s[pos]))) return false;
  }
  return true;
}

std::string strip_plus(std::string_view s) {
  return std::string(!s.empty() && s.front() == '+' ? s.substr(1) : s);
}

}  // namespace

Rational::Rational(long long value) : value_(mpz_class(std::to_string(value))) {}

Rational::Rational(long long numerator, long long denominator) {
  if (denominator == 0) throw DomainError(Module::exactpoly, "rational with zero denominator");
  value_ = mpq_class(mpz_class(std::to_string(numerator)), mpz_class(std::to_string(denominator)));
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-') {
    throw StructuralError(Module::exactpoly, "malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(strip_plus(num));
  mpz_class d(strip_plus(den));
  if (d == 0) throw DomainError(Module::exactpoly, "rational with zero denominator: '" + std::string(text) + "'");
  return Rational(mpq_class(n, d));
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw DomainError(Module::exactpoly, "division by zero rational");
  value_ /= rhs.value_;
  return *this;
}

}  // namespace isochrone::exact
