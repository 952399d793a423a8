#pragma once

#include <algorithm>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "isochrone/error.hpp"
#include "isochrone/exact/rational.hpp"

namespace isochrone::exact {

/// Which variable a polynomial is written in: the energy level h or the
/// compactified coordinate u.
enum class Var { h, u };

inline const char* var_name(Var v) { return v == Var::h ? "h" : "u"; }

/// Dense univariate polynomial, coefficient index = power. Canonical: no
/// trailing zero coefficients, so the zero polynomial has no coefficients and
/// degree -1.
template <class T>
class Polynomial {
 public:
  using value_type = T;

  Polynomial() = default;
  explicit Polynomial(Var var) : var_(var) {}
  Polynomial(Var var, std::vector<T> coeffs) : var_(var), coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(Var var, std::initializer_list<T> coeffs) : var_(var), coeffs_(coeffs) { trim(); }

  static Polynomial constant(Var var, const T& c) { return Polynomial(var, std::vector<T>{c}); }

  static Polynomial monomial(Var var, const T& c, int power) {
    std::vector<T> coeffs(static_cast<std::size_t>(power) + 1, T{});
    coeffs.back() = c;
    return Polynomial(var, std::move(coeffs));
  }

  Var var() const noexcept { return var_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::span<const T> coefficients() const noexcept { return coeffs_; }

  T coefficient(int power) const {
    if (power < 0 || power > degree()) return T{};
    return coeffs_[static_cast<std::size_t>(power)];
  }

  Polynomial operator-() const {
    Polynomial out(*this);
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    check_same_var(p, q, "add");
    std::vector<T> out(std::max(p.coeffs_.size(), q.coeffs_.size()), T{});
    for (std::size_t k = 0; k < p.coeffs_.size(); ++k) out[k] += p.coeffs_[k];
    for (std::size_t k = 0; k < q.coeffs_.size(); ++k) out[k] += q.coeffs_[k];
    return Polynomial(p.var_, std::move(out));
  }

  friend Polynomial operator-(const Polynomial& p, const Polynomial& q) {
    check_same_var(p, q, "sub");
    return p + (-q);
  }

  friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    check_same_var(p, q, "mul");
    if (p.is_zero() || q.is_zero()) return Polynomial(p.var_);
    std::vector<T> out(p.coeffs_.size() + q.coeffs_.size() - 1, T{});
    for (std::size_t a = 0; a < p.coeffs_.size(); ++a) {
      if (is_zero_value(p.coeffs_[a])) continue;
      for (std::size_t b = 0; b < q.coeffs_.size(); ++b) out[a + b] += p.coeffs_[a] * q.coeffs_[b];
    }
    return Polynomial(p.var_, std::move(out));
  }

  Polynomial scaled(const T& factor) const {
    std::vector<T> out(coeffs_);
    for (auto& c : out) c *= factor;
    return Polynomial(var_, std::move(out));
  }

  /// Multiplies by var^power (power >= 0).
  Polynomial shifted(int power) const {
    if (is_zero()) return *this;
    std::vector<T> out(static_cast<std::size_t>(power), T{});
    out.insert(out.end(), coeffs_.begin(), coeffs_.end());
    return Polynomial(var_, std::move(out));
  }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return Polynomial(var_);
    std::vector<T> out(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = coeffs_[k] * T(static_cast<long long>(k));
    return Polynomial(var_, std::move(out));
  }

  /// Exact Horner evaluation in the coefficient type.
  T operator()(const T& x) const {
    T acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Floating-point Horner evaluation.
  double eval(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_real(*it);
    return acc;
  }

  /// Returns the same coefficients re-tagged with another variable.
  Polynomial retagged(Var var) const { return Polynomial(var, coeffs_); }

  friend bool operator==(const Polynomial& p, const Polynomial& q) {
    return p.var_ == q.var_ && p.coeffs_ == q.coeffs_;
  }

 private:
  static void check_same_var(const Polynomial& p, const Polynomial& q, const char* op) {
    if (p.var_ != q.var_) {
      throw StructuralError(Module::exactpoly, std::string("variable-tag mismatch in ") + op + ": " +
                                                   var_name(p.var_) + " vs " + var_name(q.var_));
    }
  }

  void trim() {
    while (!coeffs_.empty() && is_zero_value(coeffs_.back())) coeffs_.pop_back();
  }

  Var var_ = Var::h;
  std::vector<T> coeffs_;
};

using RationalPoly = Polynomial<Rational>;
using RealPoly = Polynomial<double>;

inline RealPoly to_real(const RationalPoly& p) {
  std::vector<double> out;
  out.reserve(p.coefficients().size());
  for (const auto& c : p.coefficients()) out.push_back(c.to_double());
  return RealPoly(p.var(), std::move(out));
}

}  // namespace isochrone::exact
