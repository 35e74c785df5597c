#pragma once

#include "mvjacobi/matrix.hpp"
#include "mvjacobi/polyspace.hpp"
#include "mvjacobi/rational.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace mvjacobi {

/// Linear operator on P_n as an exact N x N matrix in the canonical basis.
using OperatorMatrix = Matrix<Rational>;

/// Raised when one of the shifted operators D1 + j that the construction must
/// invert turns out singular, i.e. the nonresonance hypothesis fails for the
/// requested degree range.
class ResonanceError : public std::runtime_error {
 public:
  ResonanceError(std::string op, std::string detail)
      : std::runtime_error(op + " is singular: " + detail), op_(std::move(op)) {}
  const std::string& op() const { return op_; }

 private:
  std::string op_;
};

/// The Fuchsian system y' = [A/(x-1) + B/(x+1)] y together with the
/// polynomial degree n in w. M1 = A + B must be diagonal.
class ProblemSpec {
 public:
  ProblemSpec(int n, Matrix<Rational> a, Matrix<Rational> b) : n_(n), a_(std::move(a)), b_(std::move(b)) {
    if (n_ < 1) throw std::invalid_argument("n must be >= 1");
    if (!a_.is_square() || a_.rows() == 0) throw std::invalid_argument("A must be a non-empty square matrix");
    if (b_.rows() != a_.rows() || b_.cols() != a_.cols())
      throw std::invalid_argument("A and B must have the same shape");
    m1_ = a_ + b_;
    m2_ = a_ - b_;
    if (!m1_.is_diagonal())
      throw std::invalid_argument(
          "A + B is not diagonal; conjugate A and B by an eigenbasis of A + B before input");
  }

  int d() const { return static_cast<int>(a_.rows()); }
  int n() const { return n_; }
  const Matrix<Rational>& A() const { return a_; }
  const Matrix<Rational>& B() const { return b_; }
  const Matrix<Rational>& M1() const { return m1_; }
  const Matrix<Rational>& M2() const { return m2_; }

  /// Eigenvalues of A + B (its diagonal).
  std::vector<Rational> lambda() const {
    std::vector<Rational> l;
    for (std::size_t i = 0; i < m1_.rows(); ++i) l.push_back(m1_(i, i));
    return l;
  }

  /// A and B both diagonal: the system decouples into scalar Jacobi weights.
  bool is_commutative() const { return a_.is_diagonal() && b_.is_diagonal(); }

  PolySpace space() const { return PolySpace(d(), n_); }

 private:
  int n_;
  Matrix<Rational> a_, b_, m1_, m2_;
};

/// Matrix of q(w) -> dq(w) M w - M q(w) on P_n.
inline OperatorMatrix build_D(const Matrix<Rational>& m, const PolySpace& space) {
  const auto d = static_cast<std::size_t>(space.d());
  if (!m.is_square() || m.rows() != d) throw std::invalid_argument("build_D: matrix does not act on C^d");
  OperatorMatrix out(space.dim(), space.dim());
  for (std::size_t col = 0; col < space.dim(); ++col) {
    const auto [mono, j] = space.basis(col);
    // d(w^m) M w: w^m e_j differentiated along M w
    for (std::size_t i = 0; i < d; ++i) {
      if (mono[i] == 0) continue;
      for (std::size_t l = 0; l < d; ++l) {
        if (m(i, l) == 0) continue;
        MultiIndex shifted = mono;
        --shifted[i];
        ++shifted[l];
        out(space.index_of(shifted, j), col) += Rational(mono[i]) * m(i, l);
      }
    }
    // - M (w^m e_j)
    for (std::size_t r = 0; r < d; ++r)
      if (m(r, j) != 0) out(space.index_of(mono, r), col) -= m(r, j);
  }
  return out;
}

/// D_1 (which == 1) or D_2 (which == 2) for the given problem.
inline OperatorMatrix build_D(const ProblemSpec& spec, const PolySpace& space, int which) {
  if (space.d() != spec.d() || space.n() != spec.n())
    throw std::invalid_argument("build_D: space does not match the problem dimensions");
  if (which == 1) return build_D(spec.M1(), space);
  if (which == 2) return build_D(spec.M2(), space);
  throw std::invalid_argument("build_D: which must be 1 or 2");
}

/// Leading x^k coefficient of P_k: (D1+k+1)(D1+k+2)...(D1+2k). Identity for k = 0.
inline OperatorMatrix dominant_coefficient(const OperatorMatrix& d1, int k) {
  if (k < 0) throw std::invalid_argument("dominant_coefficient: k must be >= 0");
  OperatorMatrix g = OperatorMatrix::identity(d1.rows());
  for (int i = k + 1; i <= 2 * k; ++i) g = g * d1.shifted(Rational(i));
  return g;
}

struct InvertibilityCertificate {
  bool invertible = true;
  std::optional<PolyVector> kernel;  // set when singular
};

/// Exact full-rank test over Q; a singular operator comes back with a kernel vector.
inline InvertibilityCertificate check_invertibility(const OperatorMatrix& op) {
  if (!op.is_square()) throw std::invalid_argument("check_invertibility: non-square operator");
  if (auto k = kernel_vector(op)) return {false, std::move(k)};
  return {true, std::nullopt};
}

/// Human-readable list of the basis elements carrying a kernel vector.
inline std::string describe_vector(const PolySpace& space, const PolyVector& v) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    const auto b = space.basis(i);
    os << (first ? "" : " + ");
    if (v[i] != 1) os << "(" << to_string(v[i]) << ")*";
    os << "w^(";
    for (std::size_t t = 0; t < b.m.size(); ++t) os << (t ? "," : "") << b.m[t];
    os << ") e_" << b.component + 1;
    first = false;
  }
  return first ? "0" : os.str();
}

/// Throws ResonanceError naming `name` if `op` is singular.
inline void require_invertible(const OperatorMatrix& op, const PolySpace& space, const std::string& name) {
  auto cert = check_invertibility(op);
  if (!cert.invertible) throw ResonanceError(name, "kernel contains " + describe_vector(space, *cert.kernel));
}

/// "D1 + s" / "D1 - s" / "D1"
inline std::string shifted_name(const char* base, long s) {
  if (s == 0) return base;
  return std::string(base) + (s > 0 ? " + " : " - ") + std::to_string(s > 0 ? s : -s);
}

/// Inverse of D1 + s, raising ResonanceError when singular.
inline OperatorMatrix shifted_inverse(const OperatorMatrix& d1, long s, const PolySpace& space) {
  const auto op = d1.shifted(Rational(s));
  require_invertible(op, space, shifted_name("D1", s));
  return inverse(op);
}

/// Matrix of q(w) -> Y^{-1} q(Y w) on P_n, for exact or floating Y.
/// Throws std::domain_error if Y is singular.
template <class T>
Matrix<T> induced_action(const Matrix<T>& y, const PolySpace& space) {
  const auto d = static_cast<std::size_t>(space.d());
  if (!y.is_square() || y.rows() != d) throw std::invalid_argument("induced_action: Y must be d x d");
  Matrix<T> y_inv;
  try {
    y_inv = inverse(y);
  } catch (const std::domain_error&) {
    throw std::domain_error("induced_action: Y is singular");
  }
  Matrix<T> out(space.dim(), space.dim());
  const auto& monos = space.monomials();
  for (std::size_t a = 0; a < monos.size(); ++a) {
    // (Y w)^m as a polynomial in w
    std::map<MultiIndex, T> expansion{{MultiIndex(d, 0), T(1)}};
    for (std::size_t i = 0; i < d; ++i) {
      for (int e = 0; e < monos[a][i]; ++e) {
        std::map<MultiIndex, T> next;
        for (const auto& [mono, c] : expansion)
          for (std::size_t l = 0; l < d; ++l) {
            if (y(i, l) == T(0)) continue;
            MultiIndex bumped = mono;
            ++bumped[l];
            next[bumped] += c * y(i, l);
          }
        expansion = std::move(next);
      }
    }
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t col = a * d + j;
      for (const auto& [mono, c] : expansion)
        for (std::size_t r = 0; r < d; ++r) out(space.index_of(mono, r), col) += c * y_inv(r, j);
    }
  }
  return out;
}

}  // namespace mvjacobi
