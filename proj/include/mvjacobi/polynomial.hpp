#pragma once

#include "mvjacobi/matrix.hpp"
#include "mvjacobi/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mvjacobi {

// Shape-aware zero and zero test for the coefficient types used below.
inline Rational coeff_zero_like(const Rational&) { return Rational(0); }
inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline double coeff_zero_like(double) { return 0.0; }
inline bool coeff_is_zero(double c) { return c == 0.0; }
template <class T>
Matrix<T> coeff_zero_like(const Matrix<T>& c) {
  return Matrix<T>(c.rows(), c.cols());
}
template <class T>
bool coeff_is_zero(const Matrix<T>& c) {
  return c.is_zero();
}
template <class T>
Vector<T> coeff_zero_like(const Vector<T>& c) {
  return Vector<T>(c.size());
}
template <class T>
bool coeff_is_zero(const Vector<T>& c) {
  return c.is_zero();
}

/// Polynomial in x with coefficients in a module C (scalars, vectors or
/// matrices). coeffs()[i] multiplies x^i; trailing zeros are trimmed, so the
/// zero polynomial has no coefficients. A zero prototype remembers the
/// coefficient shape.
template <class C>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(C zero) : zero_(coeff_zero_like(zero)) {}
  Polynomial(std::vector<C> coeffs, C zero) : coeffs_(std::move(coeffs)), zero_(coeff_zero_like(zero)) { trim(); }
  explicit Polynomial(std::vector<C> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("Polynomial: use the zero-prototype constructor for 0");
    zero_ = coeff_zero_like(coeffs_.front());
    trim();
  }

  static Polynomial constant(C c) { return Polynomial(std::vector<C>{std::move(c)}); }
  /// c * x^power
  static Polynomial monomial(C c, std::size_t power) {
    C z = coeff_zero_like(c);
    std::vector<C> v(power + 1, z);
    v[power] = std::move(c);
    return Polynomial(std::move(v), z);
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<C>& coeffs() const { return coeffs_; }
  const C& zero() const { return zero_; }
  /// Coefficient of x^i (the zero prototype beyond the degree).
  const C& coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : zero_; }
  const C& leading() const {
    if (coeffs_.empty()) throw std::logic_error("leading coefficient of the zero polynomial");
    return coeffs_.back();
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), zero_);
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), zero_);
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  template <class S>
  Polynomial& scale(const S& s) {
    for (auto& c : coeffs_) c *= s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a.scale(Rational(-1)); }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a.scale(s); }

  /// Exact equality of the trimmed coefficient lists.
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  Polynomial mul_by_x() const {
    if (is_zero()) return *this;
    std::vector<C> v;
    v.reserve(coeffs_.size() + 1);
    v.push_back(zero_);
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return Polynomial(std::move(v), zero_);
  }

  /// (x^2 - 1) * this
  Polynomial mul_by_Q() const {
    if (is_zero()) return *this;
    std::vector<C> v(coeffs_.size() + 2, zero_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      v[i + 2] += coeffs_[i];
      v[i] -= coeffs_[i];
    }
    return Polynomial(std::move(v), zero_);
  }

  Polynomial d_dx() const {
    if (coeffs_.size() <= 1) return Polynomial(zero_);
    std::vector<C> v;
    v.reserve(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
      C c = coeffs_[i];
      c *= Rational(static_cast<long>(i));
      v.push_back(std::move(c));
    }
    return Polynomial(std::move(v), zero_);
  }

  /// Horner evaluation at an exact point.
  C eval(const Rational& x) const {
    C acc = zero_;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc *= x;
      acc += *it;
    }
    return acc;
  }

  /// Applies f to every coefficient (e.g. left multiplication by an operator).
  template <class F>
  auto map(F&& f) const {
    using R = decltype(f(zero_));
    std::vector<R> v;
    v.reserve(coeffs_.size());
    for (const auto& c : coeffs_) v.push_back(f(c));
    return Polynomial<R>(std::move(v), f(zero_));
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeff_is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<C> coeffs_;
  C zero_{};
};

/// Scalar polynomial with exact coefficients.
using ScalarPoly = Polynomial<Rational>;

/// Product of two scalar polynomials.
inline ScalarPoly multiply(const ScalarPoly& a, const ScalarPoly& b) {
  if (a.is_zero() || b.is_zero()) return ScalarPoly(Rational(0));
  std::vector<Rational> v(a.coeffs().size() + b.coeffs().size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) v[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return ScalarPoly(std::move(v), Rational(0));
}

/// (c1 x + c0)^power
inline ScalarPoly linear_power(const Rational& c1, const Rational& c0, unsigned power) {
  ScalarPoly acc = ScalarPoly::constant(Rational(1));
  const ScalarPoly lin(std::vector<Rational>{c0, c1}, Rational(0));
  for (unsigned i = 0; i < power; ++i) acc = multiply(acc, lin);
  return acc;
}

}  // namespace mvjacobi
