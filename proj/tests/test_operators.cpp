#include "mvjacobi/operators.hpp"
#include "mvjacobi/random.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace mvjacobi;

namespace {

// d/dt q(w + t M w) at t = 0, from exact Lagrange interpolation on t = 0..n.
Vector<Rational> directional_derivative(const PolySpace& s, const PolyVector& q, const Matrix<Rational>& m,
                                        const Vector<Rational>& w) {
  const int n = s.n();
  const auto mw = m * w;
  Vector<Rational> out(w.size());
  for (int i = 0; i <= n; ++i) {
    // L_i'(0) for nodes 0..n
    Rational c = 0;
    if (i == 0) {
      for (int l = 1; l <= n; ++l) c -= Rational(1, l);
    } else {
      c = Rational(1, i);
      for (int l = 1; l <= n; ++l)
        if (l != i) c *= Rational(-l) / Rational(i - l);
    }
    out += evaluate(s, q, w + mw * Rational(i)) * c;
  }
  return out;
}

}  // namespace

TEST(ProblemSpec, Validation) {
  EXPECT_THROW(ProblemSpec(0, Matrix<Rational>{{1}}, Matrix<Rational>{{1}}), std::invalid_argument);
  EXPECT_THROW(ProblemSpec(1, Matrix<Rational>{{1, 0}, {0, 1}}, Matrix<Rational>{{1}}), std::invalid_argument);
  try {
    ProblemSpec(2, Matrix<Rational>{{1, 1}, {0, 1}}, Matrix<Rational>{{0, 0}, {0, 0}});
    FAIL() << "non-diagonal A + B accepted";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("conjugate"), std::string::npos);
  }
  const ProblemSpec ok(2, Matrix<Rational>{{1, 1}, {0, 1}}, Matrix<Rational>{{0, -1}, {0, 2}});
  EXPECT_EQ(ok.M1(), (Matrix<Rational>{{1, 0}, {0, 3}}));
  EXPECT_EQ(ok.M2(), (Matrix<Rational>{{1, 2}, {0, -1}}));
  EXPECT_FALSE(ok.is_commutative());
}

TEST(BuildD, ScalarIsMultiplication) {
  for (int n = 1; n <= 5; ++n) {
    const ProblemSpec spec(n, Matrix<Rational>{{Rational(1, 2)}}, Matrix<Rational>{{Rational(1, 3)}});
    const auto d1 = build_D(spec, spec.space(), 1);
    EXPECT_EQ(d1, (Matrix<Rational>{{Rational(n - 1) * Rational(5, 6)}}));
  }
}

TEST(BuildD, IdentityGivesNMinusOne) {
  for (int d = 1; d <= 3; ++d)
    for (int n = 1; n <= 3; ++n) {
      const auto s = enumerate_basis(d, n);
      const auto i = Matrix<Rational>::identity(static_cast<std::size_t>(d));
      EXPECT_EQ(build_D(i, s), OperatorMatrix::identity(s.dim()) * Rational(n - 1));
    }
}

TEST(BuildD, DiagonalMGivesEigenvaluesMDotLambdaMinusLambdaJ) {
  Rng rng(5);
  for (int d = 1; d <= 3; ++d)
    for (int n = 1; n <= 3; ++n) {
      const auto s = enumerate_basis(d, n);
      std::vector<Rational> lam;
      for (int i = 0; i < d; ++i) lam.push_back(rng.rational(5, 4));
      const auto d1 = build_D(Matrix<Rational>::diagonal(lam), s);
      ASSERT_TRUE(d1.is_diagonal());
      for (std::size_t i = 0; i < s.dim(); ++i) {
        const auto b = s.basis(i);
        Rational mu = -lam[b.component];
        for (int t = 0; t < d; ++t) mu += Rational(b.m[static_cast<std::size_t>(t)]) * lam[static_cast<std::size_t>(t)];
        EXPECT_EQ(d1(i, i), mu);
      }
    }
}

TEST(BuildD, MatchesDirectionalDerivativeOracle) {
  Rng rng(6);
  for (int d = 1; d <= 3; ++d)
    for (int n = 1; n <= 3; ++n) {
      const auto s = enumerate_basis(d, n);
      const auto m = rng.matrix(static_cast<std::size_t>(d), static_cast<std::size_t>(d), 3, 3);
      const auto op = build_D(m, s);
      for (int t = 0; t < 4; ++t) {
        const auto q = rng.vector(s.dim(), 4, 3);
        const auto w = rng.vector(static_cast<std::size_t>(d), 4, 3);
        EXPECT_EQ(evaluate(s, op * q, w), directional_derivative(s, q, m, w) - m * evaluate(s, q, w));
      }
    }
}

TEST(BuildD, CommuteWhenMatricesAreSimultaneouslyDiagonal) {
  const auto s = enumerate_basis(3, 2);
  const auto a = build_D(Matrix<Rational>::diagonal({1, Rational(1, 2), -2}), s);
  const auto b = build_D(Matrix<Rational>::diagonal({Rational(3, 7), 0, 5}), s);
  EXPECT_EQ(a * b, b * a);
}

TEST(BuildD, SpaceMismatch) {
  const ProblemSpec spec(2, Matrix<Rational>{{1}}, Matrix<Rational>{{1}});
  EXPECT_THROW(build_D(spec, enumerate_basis(1, 3), 1), std::invalid_argument);
  EXPECT_THROW(build_D(spec, spec.space(), 3), std::invalid_argument);
  EXPECT_THROW(build_D(Matrix<Rational>::identity(2), enumerate_basis(1, 2)), std::invalid_argument);
}

TEST(DominantCoefficient, Examples) {
  const auto s = enumerate_basis(2, 2);
  const OperatorMatrix any = build_D(Matrix<Rational>::diagonal({1, 2}), s);
  EXPECT_EQ(dominant_coefficient(any, 0), OperatorMatrix::identity(s.dim()));
  EXPECT_EQ(dominant_coefficient(OperatorMatrix(1, 1), 2), (OperatorMatrix{{12}}));
  for (int k = 0; k <= 4; ++k) {
    const auto g = dominant_coefficient(any, k);
    ASSERT_TRUE(g.is_diagonal());
    for (std::size_t i = 0; i < s.dim(); ++i) {
      Rational expect = 1;
      for (int t = k + 1; t <= 2 * k; ++t) expect *= any(i, i) + t;
      EXPECT_EQ(g(i, i), expect);
    }
  }
  EXPECT_THROW(dominant_coefficient(any, -1), std::invalid_argument);
}

TEST(DominantCoefficient, InvertibleWhenEveryFactorIs) {
  Rng rng(8);
  for (int t = 0; t < 6; ++t) {
    const auto spec = random_spec(rng, 2, 2, 3, 3, 8);
    const auto d1 = build_D(spec, spec.space(), 1);
    for (int k = 1; k <= 4; ++k) EXPECT_TRUE(check_invertibility(dominant_coefficient(d1, k)).invertible);
  }
}

TEST(CheckInvertibility, Examples) {
  EXPECT_TRUE(check_invertibility(OperatorMatrix::identity(4)).invertible);
  const auto zero = check_invertibility(OperatorMatrix(3, 3));
  EXPECT_FALSE(zero.invertible);
  ASSERT_TRUE(zero.kernel.has_value());
  EXPECT_FALSE(zero.kernel->is_zero());

  // lambda = (1, 4): w1^2 e2 has eigenvalue 2 - 4 = -2; w2^2 e1 has 8 - 1 = 7;
  // w1 w2 e2 has 1 + 4 - 4 = 1; pick lambda so that w2^2 e1 gives -3.
  const auto s = enumerate_basis(2, 2);
  const auto d1 = build_D(Matrix<Rational>::diagonal({3, Rational(0)}), s);
  // w2^2 e1: 0 - 3 = -3
  const auto cert = check_invertibility(d1.shifted(Rational(3)));
  ASSERT_FALSE(cert.invertible);
  EXPECT_EQ(*cert.kernel * (Rational(1) / (*cert.kernel)[s.index_of({0, 2}, 0)]), s.unit({0, 2}, 0));
  EXPECT_EQ(d1.shifted(Rational(3)) * *cert.kernel, PolyVector(s.dim()));
}

TEST(ShiftedInverse, NamesTheOperator) {
  const auto s = enumerate_basis(2, 2);
  const auto d1 = build_D(Matrix<Rational>::diagonal({3, Rational(0)}), s);
  try {
    shifted_inverse(d1, 3, s);
    FAIL() << "expected resonance";
  } catch (const ResonanceError& e) {
    EXPECT_EQ(e.op(), "D1 + 3");
    EXPECT_NE(std::string(e.what()).find("w^(0,2) e_1"), std::string::npos) << e.what();
  }
  EXPECT_EQ(shifted_inverse(d1, 1, s) * d1.shifted(Rational(1)), OperatorMatrix::identity(s.dim()));
}

TEST(InducedAction, IdentityAndDiagonal) {
  const auto s = enumerate_basis(3, 2);
  EXPECT_EQ(induced_action(Matrix<Rational>::identity(3), s), OperatorMatrix::identity(s.dim()));
  const std::vector<Rational> y{2, Rational(-1, 3), 5};
  const auto t = induced_action(Matrix<Rational>::diagonal(y), s);
  ASSERT_TRUE(t.is_diagonal());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const auto b = s.basis(i);
    Rational ym = 1;
    for (std::size_t k = 0; k < 3; ++k)
      for (int e = 0; e < b.m[k]; ++e) ym *= y[k];
    EXPECT_EQ(t(i, i), ym / y[b.component]);
  }
}

TEST(InducedAction, MatchesSubstitutionOracle) {
  Rng rng(9);
  for (int d = 1; d <= 3; ++d)
    for (int n = 1; n <= 3; ++n) {
      const auto s = enumerate_basis(d, n);
      Matrix<Rational> y;
      do y = rng.matrix(static_cast<std::size_t>(d), static_cast<std::size_t>(d), 3, 3);
      while (rank(y) != static_cast<std::size_t>(d));
      EXPECT_EQ(induced_action(y, s), oracle::induced_action(y, inverse(y), s));
    }
}

TEST(InducedAction, AntiHomomorphismAndInverse) {
  Rng rng(10);
  const auto s = enumerate_basis(2, 2);
  for (int t = 0; t < 5; ++t) {
    Matrix<Rational> y, c;
    do y = rng.matrix(2, 2, 3, 3);
    while (rank(y) != 2);
    do c = rng.matrix(2, 2, 3, 3);
    while (rank(c) != 2);
    EXPECT_EQ(induced_action(y * c, s), induced_action(c, s) * induced_action(y, s));
    EXPECT_EQ(induced_action(y, s) * induced_action(inverse(y), s), OperatorMatrix::identity(s.dim()));
  }
}

TEST(InducedAction, FloatMatchesExact) {
  const auto s = enumerate_basis(2, 3);
  const Matrix<Rational> y{{Rational(1, 2), 2}, {Rational(-1, 3), 1}};
  const auto exact = induced_action(y, s);
  const auto approx = induced_action(y.map<double>([](const Rational& r) { return to_double(r); }), s);
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.dim(); ++j) EXPECT_NEAR(approx(i, j), to_double(exact(i, j)), 1e-12);
}

TEST(InducedAction, Singular) {
  const auto s = enumerate_basis(2, 1);
  EXPECT_THROW(induced_action(Matrix<Rational>{{1, 2}, {2, 4}}, s), std::domain_error);
}
