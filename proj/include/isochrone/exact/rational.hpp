#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace isochrone::exact {

/// Arbitrary-precision rational number, always held in lowest terms with a
/// positive denominator. Equality is therefore structural.
class Rational {
 public:
  Rational() = default;
  Rational(long long value);  // NOLINT(google-explicit-constructor): integer literals
  Rational(long long numerator, long long denominator);
  explicit Rational(mpq_class value);

  /// Parses "p/q", "p" or "-p/q". Throws StructuralError on malformed text and
  /// DomainError on a zero denominator.
  static Rational parse(std::string_view text);

  const mpq_class& value() const noexcept { return value_; }
  std::string numerator_str() const { return value_.get_num().get_str(); }
  std::string denominator_str() const { return value_.get_den().get_str(); }

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const { return value_.get_str(); }
  double to_double() const { return value_.get_d(); }

  bool is_zero() const noexcept { return sgn(value_) == 0; }
  int sign() const noexcept { return sgn(value_); }
  bool is_integer() const noexcept { return value_.get_den() == 1; }

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

inline double to_real(const Rational& r) { return r.to_double(); }
inline double to_real(double x) { return x; }

inline bool is_zero_value(const Rational& r) { return r.is_zero(); }
inline bool is_zero_value(double x) { return x == 0.0; }

}  // namespace isochrone::exact
