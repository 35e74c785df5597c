#pragma once

#include "mvjacobi/oppoly.hpp"
#include "mvjacobi/operators.hpp"
#include "mvjacobi/polynomial.hpp"
#include "mvjacobi/random.hpp"
#include "mvjacobi/report.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mvjacobi {

/// A problem together with D1, D2 and the polynomials P_0 .. P_kmax.
class PolynomialFamily {
 public:
  PolynomialFamily(ProblemSpec spec, int k_max)
      : spec_(std::move(spec)),
        space_(spec_.space()),
        d1_(build_D(spec_, space_, 1)),
        d2_(build_D(spec_, space_, 2)),
        polys_(build_Pk_family(d1_, d2_, k_max)) {}

  const ProblemSpec& spec() const { return spec_; }
  const PolySpace& space() const { return space_; }
  const OperatorMatrix& D1() const { return d1_; }
  const OperatorMatrix& D2() const { return d2_; }
  int k_max() const { return static_cast<int>(polys_.size()) - 1; }
  std::size_t dim() const { return space_.dim(); }

  /// P_k, with P_{-1} = 0.
  OpPoly P(int k) const {
    if (k == -1) return OpPoly(OperatorMatrix(dim(), dim()));
    if (k < -1 || k > k_max()) throw std::out_of_range("P_" + std::to_string(k) + " was not built");
    return polys_[static_cast<std::size_t>(k)];
  }
  const std::vector<OpPoly>& polys() const { return polys_; }

 private:
  ProblemSpec spec_;
  PolySpace space_;
  OperatorMatrix d1_, d2_;
  std::vector<OpPoly> polys_;
};

// ---------------------------------------------------------------------------
// Three-term recurrence x P_k = P_{k+1} alpha_k + P_k beta_k + P_{k-1} gamma_k

struct RecurrenceCoeffs {
  int k = 0;
  OperatorMatrix alpha, beta, gamma;
};

/// Solves the coefficient-matching equations for (alpha_k, beta_k, gamma_k).
/// k = 0 uses the direct solution alpha_0 = (D1+2)^{-1}, beta_0 = -D2 alpha_0,
/// gamma_0 = 0, which never inverts D1 itself.
inline RecurrenceCoeffs solve_recurrence_equations(const OperatorMatrix& d1, const OperatorMatrix& d2,
                                                   const PolySpace& space, int k) {
  if (k < 0) throw std::invalid_argument("recurrence: k must be >= 0");
  const std::size_t dim = d1.rows();
  RecurrenceCoeffs rc{k, {}, {}, {}};
  if (k == 0) {
    rc.alpha = shifted_inverse(d1, 2, space);
    rc.beta = -(d2 * rc.alpha);
    rc.gamma = OperatorMatrix(dim, dim);
    return rc;
  }
  const auto inv_odd = shifted_inverse(d1, 2L * k + 1, space);
  const auto inv_even = shifted_inverse(d1, 2L * k + 2, space);
  const auto inv_2k = shifted_inverse(d1, 2L * k, space);
  rc.alpha = inv_odd * inv_even * d1.shifted(Rational(k + 1));
  const OperatorMatrix bracket = Rational(4 * k + 2) * d2 + d1 * d2 + d2 * d1;
  rc.beta = inv_2k * (d2 - bracket * rc.alpha);
  rc.gamma = OperatorMatrix::identity(dim) * Rational(k - 1) - (d2 * d2 - d1.shifted(Rational(2 * k + 2))) * rc.alpha -
             d2 * rc.beta;
  return rc;
}

/// The three matching equations, each checked as its own matrix identity:
///   k+1+D1 = (2k+1+D1)(2k+2+D1) alpha
///   D2     = [(4k+2)D2 + D1 D2 + D2 D1] alpha + (2k+D1) beta
///   k-1    = [D2^2 - (2k+2+D1)] alpha + D2 beta + gamma
inline std::array<bool, 3> recurrence_equations_hold(const OperatorMatrix& d1, const OperatorMatrix& d2,
                                                     const RecurrenceCoeffs& rc) {
  const int k = rc.k;
  const std::size_t dim = d1.rows();
  const auto id = OperatorMatrix::identity(dim);
  const bool e1 = d1.shifted(Rational(k + 1)) == d1.shifted(Rational(2 * k + 1)) * d1.shifted(Rational(2 * k + 2)) * rc.alpha;
  const OperatorMatrix bracket = Rational(4 * k + 2) * d2 + d1 * d2 + d2 * d1;
  const bool e2 = d2 == bracket * rc.alpha + d1.shifted(Rational(2 * k)) * rc.beta;
  const bool e3 =
      id * Rational(k - 1) == (d2 * d2 - d1.shifted(Rational(2 * k + 2))) * rc.alpha + d2 * rc.beta + rc.gamma;
  return {e1, e2, e3};
}

/// Exact check of x P_k = P_{k+1} alpha + P_k beta + P_{k-1} gamma.
inline bool recurrence_identity_holds(const PolynomialFamily& fam, const RecurrenceCoeffs& rc) {
  const int k = rc.k;
  const OpPoly lhs = fam.P(k).mul_by_x();
  OpPoly rhs = right_multiply(fam.P(k + 1), rc.alpha);
  rhs += right_multiply(fam.P(k), rc.beta);
  rhs += right_multiply(fam.P(k - 1), rc.gamma);
  return lhs == rhs;
}

/// Recurrence coefficients for P_k, post-verified against the polynomial
/// identity. Needs fam.k_max() >= k + 1.
inline RecurrenceCoeffs recurrence_coeffs(const PolynomialFamily& fam, int k) {
  if (k + 1 > fam.k_max()) throw std::out_of_range("recurrence_coeffs: family too short for k");
  auto rc = solve_recurrence_equations(fam.D1(), fam.D2(), fam.space(), k);
  if (!recurrence_identity_holds(fam, rc))
    throw std::logic_error("recurrence coefficients for k=" + std::to_string(k) + " do not close the identity");
  return rc;
}

inline RecurrenceCoeffs recurrence_coeffs(const ProblemSpec& spec, int k) {
  // Solve first so that a singular D1 + s is reported by name before P_{k+1}
  // is built.
  const auto space = spec.space();
  solve_recurrence_equations(build_D(spec, space, 1), build_D(spec, space, 2), space, k);
  return recurrence_coeffs(PolynomialFamily(spec, k + 1), k);
}

/// Checks the recurrence identity and the three matching equations for
/// k = 0..k_max. Resonance errors propagate.
inline Report verify_recurrence(const PolynomialFamily& fam, int k_max) {
  Report r{"recurrence", {}};
  for (int k = 0; k <= k_max; ++k) {
    const auto rc = solve_recurrence_equations(fam.D1(), fam.D2(), fam.space(), k);
    const auto ks = std::to_string(k);
    r.add("recurrence identity k=" + ks, recurrence_identity_holds(fam, rc));
    const auto eqs = recurrence_equations_hold(fam.D1(), fam.D2(), rc);
    r.add("alpha equation k=" + ks, eqs[0]);
    r.add("beta equation k=" + ks, eqs[1]);
    r.add("gamma equation k=" + ks, eqs[2]);
  }
  return r;
}

inline Report verify_recurrence(const ProblemSpec& spec, int k_max) {
  return verify_recurrence(PolynomialFamily(spec, k_max + 1), k_max);
}

/// Leading coefficient of each P_k against (D1+k+1)...(D1+2k).
inline Report verify_dominant_coefficient(const PolynomialFamily& fam) {
  Report r{"dominant coefficient", {}};
  for (int k = 0; k <= fam.k_max(); ++k) {
    const auto p = fam.P(k);
    r.add("leading coefficient k=" + std::to_string(k),
          p.degree() == k && p.leading() == dominant_coefficient(fam.D1(), k));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Completeness: f = sum_j P_j q_j

struct Expansion {
  std::vector<PolyVector> coefficients;  // q_0 .. q_K
};

/// Unique expansion of f in the P_j by leading-term elimination.
inline Expansion expand(const PolynomialFamily& fam, const VectorPoly& f) {
  const int top = f.degree();
  if (top > fam.k_max()) throw std::out_of_range("expand: family does not reach deg f");
  for (int j = 1; j <= top; ++j)
    require_invertible(dominant_coefficient(fam.D1(), j), fam.space(),
                       "Gamma_" + std::to_string(j) + " = (D1 + " + std::to_string(j + 1) + ")...(D1 + " +
                           std::to_string(2 * j) + ")");
  Expansion e;
  e.coefficients.assign(static_cast<std::size_t>(top + 1), PolyVector(fam.dim()));
  VectorPoly rem = f;
  for (int j = top; j >= 0; --j) {
    const PolyVector& lead = rem.coeff(static_cast<std::size_t>(j));
    if (lead.is_zero()) continue;
    const auto gamma = dominant_coefficient(fam.D1(), j);
    Matrix<Rational> rhs(lead.size(), 1);
    for (std::size_t i = 0; i < lead.size(); ++i) rhs(i, 0) = lead[i];
    const PolyVector qj = solve(gamma, rhs).column(0);
    rem -= apply_to(fam.P(j), qj);
    if (rem.degree() >= j) throw std::logic_error("expand: leading term did not cancel");
    e.coefficients[static_cast<std::size_t>(j)] = qj;
  }
  if (!rem.is_zero()) throw std::logic_error("expand: nonzero remainder");
  return e;
}

inline Expansion expand(const ProblemSpec& spec, const VectorPoly& f) {
  return expand(PolynomialFamily(spec, std::max(f.degree(), 0)), f);
}

/// sum_j P_j q_j
inline VectorPoly reconstruct(const PolynomialFamily& fam, const Expansion& e) {
  VectorPoly out(PolyVector(fam.dim()));
  for (std::size_t j = 0; j < e.coefficients.size(); ++j) out += apply_to(fam.P(static_cast<int>(j)), e.coefficients[j]);
  return out;
}

// ---------------------------------------------------------------------------
// Shifted ("tilde") system M~ = M - 2x/((n-1)Q) I

/// D1 of the shifted system, built from M1 - 2/(n-1) I directly.
inline OperatorMatrix tilde_D1_direct(const ProblemSpec& spec, const PolySpace& space) {
  if (spec.n() < 2) throw std::invalid_argument("tilde system needs n >= 2 (shift divides by n-1)");
  const auto shift = Rational(-2, spec.n() - 1);
  return build_D(spec.M1().shifted(shift), space);
}

/// P~_k: the product construction with D1 replaced by D1 - 2.
inline OpPoly build_tilde_Pk(const OperatorMatrix& d1, const OperatorMatrix& d2, int k) {
  return apply_A_chain(k, d1.shifted(Rational(-2)), d2, identity_oppoly(d1.rows()));
}

inline OpPoly build_tilde_Pk(const ProblemSpec& spec, int k) {
  if (spec.n() < 2) throw std::invalid_argument("tilde system needs n >= 2 (shift divides by n-1)");
  const auto space = spec.space();
  return build_tilde_Pk(build_D(spec, space, 1), build_D(spec, space, 2), k);
}

/// (x D1 + D2 + Q d/dx) P
inline OpPoly derivative_operator(const OperatorMatrix& d1, const OperatorMatrix& d2, const OpPoly& p) {
  OpPoly out = left_multiply(d1, p).mul_by_x();
  out += left_multiply(d2, p);
  out += p.d_dx().mul_by_Q();
  return out;
}

/// (x D1 + D2 + Q d/dx) P_k = P~_{k+1} for k <= fam.k_max(), plus the
/// construction-level check D~1 = D1 - 2.
inline Report verify_derivative_relation(const PolynomialFamily& fam) {
  Report r{"tilde", {}};
  const auto direct = tilde_D1_direct(fam.spec(), fam.space());
  r.add("D~1 from shifted M1 equals D1 - 2", direct == fam.D1().shifted(Rational(-2)));
  for (int k = 0; k <= fam.k_max(); ++k) {
    const auto lhs = derivative_operator(fam.D1(), fam.D2(), fam.P(k));
    const auto rhs = build_tilde_Pk(fam.D1(), fam.D2(), k + 1);
    r.add("derivative relation k=" + std::to_string(k), lhs == rhs);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Scalar (d = 1) reductions and the classical oracles

/// 2^k k!: the factor between the product-form polynomials and the
/// standard Jacobi normalization.
inline Rational rodrigues_normalization(int k) {
  Rational p = factorial(static_cast<unsigned>(k));
  for (int i = 0; i < k; ++i) p *= 2;
  return p;
}

namespace detail {
/// z (z-1) ... (z-r+1) / r!
inline Rational general_binomial(const Rational& z, unsigned r) { return falling_factorial(z, r) / factorial(r); }

/// Explicit sum sum_s C(k+a, k-s) C(k+b, s) ((x-1)/2)^s ((x+1)/2)^(k-s).
inline ScalarPoly jacobi_explicit(int k, const Rational& alpha, const Rational& beta) {
  ScalarPoly out(Rational(0));
  const auto uk = static_cast<unsigned>(k);
  for (unsigned s = 0; s <= uk; ++s) {
    const Rational c = general_binomial(alpha + k, uk - s) * general_binomial(beta + k, s);
    if (c == 0) continue;
    auto term = multiply(linear_power(Rational(1, 2), Rational(-1, 2), s),
                         linear_power(Rational(1, 2), Rational(1, 2), uk - s));
    out += c * term;
  }
  return out;
}
}  // namespace detail

/// Classical P_k^{(alpha,beta)} in the standard normalization, via the
/// three-term recurrence. Parameter pairs where a recurrence denominator
/// vanishes fall back to the explicit finite sum.
inline ScalarPoly classical_jacobi(int k, const Rational& alpha, const Rational& beta) {
  if (k < 0) throw std::invalid_argument("classical_jacobi: k must be >= 0");
  ScalarPoly prev = ScalarPoly::constant(Rational(1));
  if (k == 0) return prev;
  const Rational ab = alpha + beta;
  ScalarPoly cur(std::vector<Rational>{(alpha - beta) / 2, (ab + 2) / 2}, Rational(0));
  for (int m = 2; m <= k; ++m) {
    const Rational a1 = Rational(2 * m) * (m + ab) * (2 * m + ab - 2);
    if (a1 == 0) return detail::jacobi_explicit(k, alpha, beta);
    const Rational a2 = (2 * m + ab - 1) * (alpha * alpha - beta * beta);
    const Rational a3 = (2 * m + ab - 2) * (2 * m + ab - 1) * (2 * m + ab);
    const Rational a4 = Rational(2) * (m + alpha - 1) * (m + beta - 1) * (2 * m + ab);
    ScalarPoly next = a3 * cur.mul_by_x();
    next += a2 * cur;
    next -= a4 * prev;
    next.scale(Rational(1) / a1);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// The single entry of a 1 x 1 operator polynomial.
inline ScalarPoly to_scalar(const OpPoly& p) {
  if (p.zero().rows() != 1) throw std::invalid_argument("to_scalar: operator polynomial is not 1 x 1");
  return p.map([](const OperatorMatrix& c) { return c(0, 0); });
}

inline ProblemSpec scalar_spec(const Rational& a, const Rational& b, int n) {
  return ProblemSpec(n, Matrix<Rational>{{a}}, Matrix<Rational>{{b}});
}

/// d = 1: P_k equals 2^k k! P_k^{((n-1)a,(n-1)b)} for k <= k_max. The
/// normalization is first confirmed by comparing leading coefficients.
inline Report verify_scalar_reduction(const Rational& a, const Rational& b, int n, int k_max) {
  Report r{"scalar", {}};
  const PolynomialFamily fam(scalar_spec(a, b, n), k_max);
  const Rational alpha = a * (n - 1), beta = b * (n - 1);
  for (int k = 0; k <= k_max; ++k) {
    const auto ks = std::to_string(k);
    const ScalarPoly pk = to_scalar(fam.P(k));
    const ScalarPoly jac = classical_jacobi(k, alpha, beta);
    const Rational c = rodrigues_normalization(k);
    const bool lead_ok = jac.degree() == k && pk.degree() == k && pk.leading() == c * jac.leading();
    r.add("leading coefficient ratio 2^k k! at k=" + ks, lead_ok);
    r.add("P_k = 2^k k! Jacobi at k=" + ks, pk == c * jac);
  }
  return r;
}

/// Scalar A_j = (2j + alpha + beta) x + (alpha - beta) + Q d/dx.
inline ScalarPoly scalar_apply_A(int j, const Rational& alpha, const Rational& beta, const ScalarPoly& r) {
  ScalarPoly out = (alpha + beta + 2 * j) * r.mul_by_x();
  out += (alpha - beta) * r;
  out += r.d_dx().mul_by_Q();
  return out;
}

/// d = 1: d/dx A_j = (alpha+beta+2j) + A_{j+1} d/dx on random polynomials,
/// and A_1 d/dx P_k = k(alpha+beta+k+1) P_k.
inline Report verify_scalar_eigen_identity(const Rational& a, const Rational& b, int n, int k_max, Rng& rng,
                                           int samples = 5) {
  Report r{"scalar eigen", {}};
  const PolynomialFamily fam(scalar_spec(a, b, n), k_max);
  const Rational alpha = a * (n - 1), beta = b * (n - 1);
  for (int j = 1; j <= std::max(k_max, 1); ++j) {
    bool ok = true;
    for (int s = 0; s < samples; ++s) {
      const auto p = random_scalar_poly(rng, static_cast<int>(rng.integer(0, 6)));
      const auto lhs = scalar_apply_A(j, alpha, beta, p).d_dx();
      auto rhs = (alpha + beta + 2 * j) * p;
      rhs += scalar_apply_A(j + 1, alpha, beta, p.d_dx());
      ok = ok && lhs == rhs;
    }
    r.add("commutation d/dx A_j at j=" + std::to_string(j), ok);
  }
  for (int k = 0; k <= k_max; ++k) {
    const ScalarPoly pk = to_scalar(fam.P(k));
    const auto lhs = scalar_apply_A(1, alpha, beta, pk.d_dx());
    r.add("A_1 d/dx P_k = k(alpha+beta+k+1) P_k at k=" + std::to_string(k), lhs == (alpha + beta + k + 1) * k * pk);
  }
  return r;
}

/// n = 1: Tr[P_k q] = 2^k k! Leg_k(x) Tr q for q over the matrix units E_rs.
inline Report verify_trace_legendre(const PolynomialFamily& fam) {
  if (fam.spec().n() != 1) throw std::invalid_argument("trace identity needs n = 1");
  Report r{"trace", {}};
  const auto& space = fam.space();
  const auto d = static_cast<std::size_t>(space.d());
  // Coordinate of the matrix entry (row, col) is the basis element w_col e_row.
  auto entry_index = [&](std::size_t row, std::size_t col) {
    MultiIndex m(d, 0);
    m[col] = 1;
    return space.index_of(m, row);
  };
  for (int k = 0; k <= fam.k_max(); ++k) {
    const ScalarPoly leg = rodrigues_normalization(k) * classical_jacobi(k, 0, 0);
    bool ok = true;
    for (std::size_t row = 0; row < d; ++row)
      for (std::size_t col = 0; col < d; ++col) {
        PolyVector q(space.dim());
        q[entry_index(row, col)] = 1;
        const auto image = apply_to(fam.P(k), q);
        const ScalarPoly tr = image.map([&](const PolyVector& c) {
          Rational t = 0;
          for (std::size_t i = 0; i < d; ++i) t += c[entry_index(i, i)];
          return t;
        });
        const Rational tr_q = row == col ? 1 : 0;
        ok = ok && tr == tr_q * leg;
      }
    r.add("trace identity at k=" + std::to_string(k), ok);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Identities used in deriving the recurrence

/// A_j(x r) = x A_j(r) + Q r
inline bool product_rule_identity(int j, const OperatorMatrix& d1, const OperatorMatrix& d2, const OpPoly& r) {
  return apply_A(j, d1, d2, r.mul_by_x()) == apply_A(j, d1, d2, r).mul_by_x() + r.mul_by_Q();
}

/// Q A_j(r) = A_{j-1}(Q r)
inline bool shift_identity(int j, const OperatorMatrix& d1, const OperatorMatrix& d2, const OpPoly& r) {
  return apply_A(j, d1, d2, r).mul_by_Q() == apply_A(j - 1, d1, d2, r.mul_by_Q());
}

/// A_1...A_k(x q) = x A_1...A_k q + k A_1...A_{k-1}(Q q) for constant q
inline bool iterated_identity(int k, const OperatorMatrix& d1, const OperatorMatrix& d2, const OperatorMatrix& q) {
  const auto qc = OpPoly::constant(q);
  const auto lhs = apply_A_chain(k, d1, d2, qc.mul_by_x());
  auto rhs = apply_A_chain(k, d1, d2, qc).mul_by_x();
  rhs += Rational(k) * apply_A_chain(k - 1, d1, d2, qc.mul_by_Q());
  return lhs == rhs;
}

/// Each identity on `instances` random operator polynomials of degree <= 3.
inline Report verify_proof_identities(const PolynomialFamily& fam, Rng& rng, int instances, int max_j) {
  Report r{"identities", {}};
  bool a = true, b = true, c = true;
  for (int i = 0; i < instances; ++i) {
    const int j = static_cast<int>(rng.integer(1, max_j));
    const auto poly = random_oppoly(rng, fam.dim(), static_cast<int>(rng.integer(0, 3)));
    a = a && product_rule_identity(j, fam.D1(), fam.D2(), poly);
    b = b && shift_identity(j + 1, fam.D1(), fam.D2(), poly);
    c = c && iterated_identity(j, fam.D1(), fam.D2(), rng.matrix(fam.dim(), fam.dim(), 3, 3));
  }
  const auto n = std::to_string(instances);
  r.add("product rule A_j(x r) = x A_j r + Q r (" + n + " instances)", a);
  r.add("shift Q A_j r = A_{j-1}(Q r) (" + n + " instances)", b);
  r.add("iterated A_1..A_k(x q) identity (" + n + " instances)", c);
  return r;
}

/// Expansion round trip on random f and uniqueness on P_j q.
inline Report verify_completeness(const PolynomialFamily& fam, Rng& rng, int instances) {
  Report r{"completeness", {}};
  const int top = fam.k_max();
  bool round = true;
  for (int i = 0; i < instances; ++i) {
    const auto f = random_vectorpoly(rng, fam.dim(), static_cast<int>(rng.integer(0, top)));
    round = round && reconstruct(fam, expand(fam, f)) == f;
  }
  r.add("expansion round trip (" + std::to_string(instances) + " instances)", round);
  for (int j = 0; j <= top; ++j) {
    const auto q = rng.vector(fam.dim(), 3, 3);
    const auto e = expand(fam, apply_to(fam.P(j), q));
    bool ok = e.coefficients.size() == static_cast<std::size_t>(j + 1) || q.is_zero();
    for (std::size_t i = 0; i < e.coefficients.size(); ++i)
      ok = ok && e.coefficients[i] == (static_cast<int>(i) == j ? q : PolyVector(fam.dim()));
    r.add("expansion of P_j q is q at slot j=" + std::to_string(j), ok);
  }
  return r;
}

}  // namespace mvjacobi
