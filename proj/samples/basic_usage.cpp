// Build a small family, print its recurrence coefficients, expand a
// polynomial and spot-check quasi-orthogonality numerically.
#include "mvjacobi/numeric.hpp"
#include "mvjacobi/structure.hpp"

#include <iostream>

using namespace mvjacobi;

int main() {
  // A + B must be diagonal; A - B may be anything.
  const Matrix<Rational> a{{Rational(1, 3), Rational(1, 2)}, {Rational(-2, 3), Rational(1, 4)}};
  const Matrix<Rational> b{{0, Rational(-1, 2)}, {Rational(2, 3), Rational(-9, 20)}};
  const ProblemSpec spec(2, a, b);
  const PolynomialFamily fam(spec, 4);
  std::cout << "dim P_n = " << fam.dim() << "\n";
  std::cout << "leading coefficient of P_2:\n" << fam.P(2).coeff(2) << "\n";

  const auto rc = recurrence_coeffs(spec, 1);
  std::cout << "alpha_1:\n" << rc.alpha << "\n";

  // f = x^2 w1^2 e1 + w2^2 e2
  VectorPoly f = VectorPoly::constant(fam.space().unit({0, 2}, 1));
  f += VectorPoly::monomial(fam.space().unit({2, 0}, 0), 2);
  const auto e = expand(fam, f);
  std::cout << "expansion has " << e.coefficients.size() << " terms, round trip "
            << (reconstruct(fam, e) == f ? "exact" : "broken") << "\n";

  const ProblemSpec diag(2, Matrix<Rational>::diagonal({Rational(1, 4), Rational(-1, 10)}),
                         Matrix<Rational>::diagonal({Rational(1, 3), Rational(1, 5)}));
  const PolynomialFamily cfam(diag, 3);
  const auto r = numeric::quasi_orth_integral(cfam, 1, 3, numeric::Side::right, 1e-8);
  std::cout << "max |int P_1 W P_3| = " << r.max_abs_entry << (r.pass ? " (vanishes)" : " (does not vanish)") << "\n";
}
