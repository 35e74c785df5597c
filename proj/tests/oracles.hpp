#pragma once

// Independent reference computations used by the tests. Nothing here calls
// the library routines it is compared against.

#include "mvjacobi/oppoly.hpp"
#include "mvjacobi/polyspace.hpp"
#include "mvjacobi/rational.hpp"

#include <functional>
#include <map>
#include <vector>

namespace oracle {

using mvjacobi::Matrix;
using mvjacobi::Rational;
using mvjacobi::ScalarPoly;

/// Number of d-tuples of non-negative integers summing to n, by exhaustive search.
inline std::size_t count_exponent_tuples(int d, int n) {
  std::size_t count = 0;
  std::vector<int> t(static_cast<std::size_t>(d), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t slot, int sum) {
    if (slot == t.size()) {
      if (sum == n) ++count;
      return;
    }
    for (int v = 0; v <= n; ++v) rec(slot + 1, sum + v);
  };
  rec(0, 0);
  return count;
}

inline ScalarPoly poly(std::vector<Rational> c) { return ScalarPoly(std::move(c), Rational(0)); }

inline ScalarPoly times(const ScalarPoly& a, const ScalarPoly& b) {
  if (a.is_zero() || b.is_zero()) return poly({});
  std::vector<Rational> c(a.coeffs().size() + b.coeffs().size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return poly(c);
}

inline ScalarPoly power(const ScalarPoly& p, int e) {
  ScalarPoly r = poly({1});
  for (int i = 0; i < e; ++i) r = times(r, p);
  return r;
}

inline Rational ff(const Rational& z, int r) {
  Rational out = 1;
  for (int i = 0; i < r; ++i) out *= z - i;
  return out;
}

inline Rational choose(int n, int k) {
  Rational out = 1;
  for (int i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
  return out;
}

/// (x-1)^{-p}(x+1)^{-q} d^k/dx^k [(x-1)^{p+k}(x+1)^{q+k}] by the Leibniz rule.
inline ScalarPoly leibniz(const Rational& p, const Rational& q, int k) {
  ScalarPoly out = poly({});
  const ScalarPoly xm = poly({-1, 1}), xp = poly({1, 1});
  for (int i = 0; i <= k; ++i) {
    const Rational c = choose(k, i) * ff(p + k, i) * ff(q + k, k - i);
    out += c * times(power(xm, k - i), power(xp, i));
  }
  return out;
}

/// Classical Jacobi polynomial from the explicit hypergeometric-type sum
///   sum_s C(k+a, k-s) C(k+b, s) ((x-1)/2)^s ((x+1)/2)^(k-s)
/// with generalized binomials.
inline ScalarPoly jacobi(int k, const Rational& a, const Rational& b) {
  auto gbin = [](const Rational& z, int r) { return ff(z, r) / ff(Rational(r), r); };
  const ScalarPoly xm = poly({Rational(-1, 2), Rational(1, 2)}), xp = poly({Rational(1, 2), Rational(1, 2)});
  ScalarPoly out = poly({});
  for (int s = 0; s <= k; ++s) out += gbin(a + k, k - s) * gbin(b + k, s) * times(power(xm, s), power(xp, k - s));
  return out;
}

/// Legendre polynomials by Bonnet's recurrence.
inline ScalarPoly legendre(int k) {
  ScalarPoly prev = poly({1}), cur = poly({0, 1});
  if (k == 0) return prev;
  for (int m = 1; m < k; ++m) {
    ScalarPoly next = Rational(2 * m + 1, m + 1) * times(poly({0, 1}), cur) - Rational(m, m + 1) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// Sparse multivariate polynomials for brute-force substitution.
using Mono = std::vector<int>;
using MPoly = std::map<Mono, Rational>;

inline MPoly mtimes(const MPoly& a, const MPoly& b) {
  MPoly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Mono m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out[m] += ca * cb;
    }
  return out;
}

/// Matrix of q(w) -> Y^{-1} q(Y w) by expanding each substituted monomial.
inline Matrix<Rational> induced_action(const Matrix<Rational>& y, const Matrix<Rational>& y_inv,
                                       const mvjacobi::PolySpace& space) {
  const auto d = static_cast<std::size_t>(space.d());
  Matrix<Rational> out(space.dim(), space.dim());
  // (Y w)_i as a linear form.
  std::vector<MPoly> lin(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t l = 0; l < d; ++l)
      if (y(i, l) != 0) {
        Mono m(d, 0);
        m[l] = 1;
        lin[i][m] += y(i, l);
      }
  for (std::size_t col = 0; col < space.dim(); ++col) {
    const auto b = space.basis(col);
    MPoly sub{{Mono(d, 0), Rational(1)}};
    for (std::size_t i = 0; i < d; ++i)
      for (int e = 0; e < b.m[i]; ++e) sub = mtimes(sub, lin[i]);
    for (const auto& [m, c] : sub) {
      if (c == 0) continue;
      for (std::size_t r = 0; r < d; ++r) {
        const Rational v = y_inv(r, b.component) * c;
        if (v != 0) out(space.index_of(m, r), col) += v;
      }
    }
  }
  return out;
}

}  // namespace oracle
