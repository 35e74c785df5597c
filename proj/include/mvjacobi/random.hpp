#pragma once

#include "mvjacobi/oppoly.hpp"
#include "mvjacobi/operators.hpp"
#include "mvjacobi/rational.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>

namespace mvjacobi {

/// Seeded source of random exact inputs. The engine is mt19937_64, and
/// integers are drawn by rejection from raw 64-bit output, so a seed gives the
/// same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  long integer(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r;
    do r = engine_();
    while (r >= limit);
    return lo + static_cast<long>(r % span);
  }

  /// p/q with |p| <= max_num and 1 <= q <= max_den.
  Rational rational(long max_num, long max_den) {
    const long p = integer(-max_num, max_num);
    const long q = integer(1, max_den);
    return Rational(p, q);
  }

  Matrix<Rational> matrix(std::size_t rows, std::size_t cols, long max_num, long max_den) {
    Matrix<Rational> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rational(max_num, max_den);
    return m;
  }

  PolyVector vector(std::size_t n, long max_num, long max_den) {
    PolyVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rational(max_num, max_den);
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

/// True when D1 + s is invertible for every s in [1, max_shift]. D1 is
/// diagonal because M1 is, so this reads the diagonal directly.
inline bool nonresonant_up_to(const ProblemSpec& spec, long max_shift) {
  const auto d1 = build_D(spec, spec.space(), 1);
  for (std::size_t i = 0; i < d1.rows(); ++i) {
    const Rational& mu = d1(i, i);
    if (denominator(mu) == 1) {
      const auto v = numerator(mu);
      if (v < 0 && -v <= max_shift) return false;
    }
  }
  return true;
}

/// Random problem with A + B diagonal and entries p/q (|p| <= max_num,
/// q <= max_den), redrawn until D1 + s is invertible for s = 1..max_shift.
inline ProblemSpec random_spec(Rng& rng, int d, int n, long max_num, long max_den, long max_shift) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    auto a = rng.matrix(static_cast<std::size_t>(d), static_cast<std::size_t>(d), max_num, max_den);
    Matrix<Rational> b(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < static_cast<std::size_t>(d); ++i)
      for (std::size_t j = 0; j < static_cast<std::size_t>(d); ++j)
        b(i, j) = i == j ? rng.rational(max_num, max_den) : -a(i, j);
    ProblemSpec spec(n, a, b);
    if (nonresonant_up_to(spec, max_shift)) return spec;
  }
  throw std::runtime_error("random_spec: could not draw a nonresonant problem");
}

inline OpPoly random_oppoly(Rng& rng, std::size_t dim, int degree, long max_num = 3, long max_den = 3) {
  std::vector<OperatorMatrix> coeffs;
  for (int i = 0; i <= degree; ++i) coeffs.push_back(rng.matrix(dim, dim, max_num, max_den));
  return OpPoly(std::move(coeffs), OperatorMatrix(dim, dim));
}

inline VectorPoly random_vectorpoly(Rng& rng, std::size_t dim, int degree, long max_num = 3, long max_den = 3) {
  std::vector<PolyVector> coeffs;
  for (int i = 0; i <= degree; ++i) coeffs.push_back(rng.vector(dim, max_num, max_den));
  return VectorPoly(std::move(coeffs), PolyVector(dim));
}

inline ScalarPoly random_scalar_poly(Rng& rng, int degree, long max_num = 5, long max_den = 4) {
  std::vector<Rational> coeffs;
  for (int i = 0; i <= degree; ++i) coeffs.push_back(rng.rational(max_num, max_den));
  return ScalarPoly(std::move(coeffs), Rational(0));
}

}  // namespace mvjacobi
