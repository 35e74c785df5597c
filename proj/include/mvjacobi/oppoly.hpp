#pragma once

#include "mvjacobi/operators.hpp"
#include "mvjacobi/polynomial.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace mvjacobi {

/// Polynomial in x whose coefficients are operators on P_n.
using OpPoly = Polynomial<OperatorMatrix>;
/// Element of P_n[x]: polynomial in x with P_n-coordinate coefficients.
using VectorPoly = Polynomial<PolyVector>;

inline OpPoly identity_oppoly(std::size_t dim) { return OpPoly::constant(OperatorMatrix::identity(dim)); }

/// op * r, coefficient-wise (op is constant in x).
inline OpPoly left_multiply(const OperatorMatrix& op, const OpPoly& r) {
  return r.map([&](const OperatorMatrix& c) { return op * c; });
}
inline VectorPoly left_multiply(const OperatorMatrix& op, const VectorPoly& r) {
  return r.map([&](const PolyVector& c) { return op * c; });
}

/// r * op, coefficient-wise.
inline OpPoly right_multiply(const OpPoly& r, const OperatorMatrix& op) {
  return r.map([&](const OperatorMatrix& c) { return c * op; });
}

/// Full product of two operator polynomials.
inline OpPoly multiply(const OpPoly& a, const OpPoly& b) {
  if (a.is_zero() || b.is_zero()) return OpPoly(a.zero() * b.zero());
  std::vector<OperatorMatrix> v(a.coeffs().size() + b.coeffs().size() - 1, a.zero() * b.zero());
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) v[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return OpPoly(std::move(v), a.zero());
}

/// Applies the first-order operator x(2j + D1) + D2 + Q d/dx to r.
/// D1 and D2 act on each coefficient from the left.
template <class C>
Polynomial<C> apply_A(int j, const OperatorMatrix& d1, const OperatorMatrix& d2, const Polynomial<C>& r) {
  if (d1.rows() != d2.rows()) throw std::invalid_argument("apply_A: D1 and D2 act on different spaces");
  auto shifted = left_multiply(d1.shifted(Rational(2 * j)), r).mul_by_x();
  shifted += left_multiply(d2, r);
  shifted += r.d_dx().mul_by_Q();
  return shifted;
}

/// A_1 A_2 ... A_k applied to r, innermost A_k first.
template <class C>
Polynomial<C> apply_A_chain(int k, const OperatorMatrix& d1, const OperatorMatrix& d2, Polynomial<C> r) {
  for (int j = k; j >= 1; --j) r = apply_A(j, d1, d2, r);
  return r;
}

/// P_k = A_1 A_2 ... A_k (identity), built from explicit D1, D2. Verifies
/// deg P_k = k with leading coefficient (D1+k+1)...(D1+2k).
inline OpPoly build_Pk(const OperatorMatrix& d1, const OperatorMatrix& d2, int k) {
  if (k < 0) throw std::invalid_argument("build_Pk: k must be >= 0");
  OpPoly p = apply_A_chain(k, d1, d2, identity_oppoly(d1.rows()));
  const auto gamma = dominant_coefficient(d1, k);
  if (p.degree() != k) {
    if (gamma.is_zero())
      throw ResonanceError("dominant coefficient of P_" + std::to_string(k), "it vanishes identically");
    throw std::logic_error("build_Pk: degree of P_" + std::to_string(k) + " is " + std::to_string(p.degree()));
  }
  if (!(p.leading() == gamma))
    throw std::logic_error("build_Pk: leading coefficient of P_" + std::to_string(k) + " differs from Gamma_k");
  return p;
}

inline OpPoly build_Pk(const ProblemSpec& spec, const PolySpace& space, int k) {
  return build_Pk(build_D(spec, space, 1), build_D(spec, space, 2), k);
}

/// P_0 ... P_kmax. Each P_k nests the A_j in the opposite order from P_{k+1},
/// so there is nothing to share between them.
inline std::vector<OpPoly> build_Pk_family(const OperatorMatrix& d1, const OperatorMatrix& d2, int k_max) {
  std::vector<OpPoly> out;
  for (int k = 0; k <= k_max; ++k) out.push_back(build_Pk(d1, d2, k));
  return out;
}

/// (P q)(x) coefficient-wise.
inline VectorPoly apply_to(const OpPoly& p, const PolyVector& q) {
  return p.map([&](const OperatorMatrix& c) { return c * q; });
}

inline OperatorMatrix eval(const OpPoly& p, const Rational& x) { return p.eval(x); }

/// Coefficients converted to double, for the numeric layer.
inline std::vector<Matrix<double>> to_double_coeffs(const OpPoly& p) {
  std::vector<Matrix<double>> out;
  for (const auto& c : p.coeffs()) out.push_back(c.map<double>([](const Rational& r) { return to_double(r); }));
  return out;
}

/// Horner evaluation of double-converted coefficients; `dim` sizes the zero polynomial.
inline Matrix<double> eval_double(const std::vector<Matrix<double>>& coeffs, double x, std::size_t dim) {
  Matrix<double> acc(dim, dim);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

}  // namespace mvjacobi
