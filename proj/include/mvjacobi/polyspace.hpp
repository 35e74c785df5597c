#pragma once

#include "mvjacobi/matrix.hpp"
#include "mvjacobi/rational.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvjacobi {

/// Exponent tuple (m_1, ..., m_d) of the monomial w^m.
using MultiIndex = std::vector<int>;

inline int total_degree(const MultiIndex& m) {
  int s = 0;
  for (int e : m) s += e;
  return s;
}

/// Basis element b_{m,j} = w^m e_j. `component` is zero-based.
struct BasisIndex {
  MultiIndex m;
  std::size_t component = 0;
  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

/// Coordinates of an element of P_n in the canonical basis.
using PolyVector = Vector<Rational>;

/// The space P_n of C^d-valued homogeneous polynomials of degree n in w,
/// with a fixed ordered basis: multi-indices in lexicographically
/// descending order (m_1 largest first), and for each multi-index the
/// components e_1..e_d.
class PolySpace {
 public:
  PolySpace(int d, int n) : d_(d), n_(n) {
    if (d <= 0) throw std::invalid_argument("PolySpace: d must be >= 1, got " + std::to_string(d));
    if (n <= 0) throw std::invalid_argument("PolySpace: n must be >= 1, got " + std::to_string(n));
    MultiIndex m(static_cast<std::size_t>(d), 0);
    fill(m, 0, n);
    for (std::size_t i = 0; i < monomials_.size(); ++i) position_[monomials_[i]] = i;
  }

  int d() const { return d_; }
  int n() const { return n_; }
  /// N = d * C(n+d-1, d-1)
  std::size_t dim() const { return monomials_.size() * static_cast<std::size_t>(d_); }
  const std::vector<MultiIndex>& monomials() const { return monomials_; }

  BasisIndex basis(std::size_t i) const {
    return {monomials_[i / static_cast<std::size_t>(d_)], i % static_cast<std::size_t>(d_)};
  }
  std::vector<BasisIndex> basis() const {
    std::vector<BasisIndex> out;
    out.reserve(dim());
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis(i));
    return out;
  }

  /// Coordinate position of w^m e_component.
  std::size_t index_of(const MultiIndex& m, std::size_t component) const {
    auto it = position_.find(m);
    if (it == position_.end() || component >= static_cast<std::size_t>(d_))
      throw std::out_of_range("basis element not in P_n");
    return it->second * static_cast<std::size_t>(d_) + component;
  }

  /// Coordinates of the single basis vector w^m e_component.
  PolyVector unit(const MultiIndex& m, std::size_t component) const {
    PolyVector v(dim());
    v[index_of(m, component)] = 1;
    return v;
  }

  friend bool operator==(const PolySpace& a, const PolySpace& b) { return a.d_ == b.d_ && a.n_ == b.n_; }

 private:
  void fill(MultiIndex& m, std::size_t slot, int remaining) {
    if (slot + 1 == m.size()) {
      m[slot] = remaining;
      monomials_.push_back(m);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      m[slot] = e;
      fill(m, slot + 1, remaining - e);
    }
    m[slot] = 0;
  }

  int d_, n_;
  std::vector<MultiIndex> monomials_;
  std::map<MultiIndex, std::size_t> position_;
};

inline PolySpace enumerate_basis(int d, int n) { return PolySpace(d, n); }

/// Evaluates sum_i coords_i * w^{m_i} e_{j_i} at the point w.
template <class T, class C>
Vector<T> evaluate(const PolySpace& space, const Vector<C>& q, const Vector<T>& w) {
  if (q.size() != space.dim())
    throw std::invalid_argument("evaluate: coordinate vector has wrong length");
  if (w.size() != static_cast<std::size_t>(space.d()))
    throw std::invalid_argument("evaluate: point has wrong dimension");
  Vector<T> out(static_cast<std::size_t>(space.d()));
  const auto& monos = space.monomials();
  for (std::size_t a = 0; a < monos.size(); ++a) {
    T mono(1);
    for (std::size_t i = 0; i < monos[a].size(); ++i)
      for (int e = 0; e < monos[a][i]; ++e) mono *= w[i];
    for (std::size_t j = 0; j < static_cast<std::size_t>(space.d()); ++j) {
      const auto& c = q[a * static_cast<std::size_t>(space.d()) + j];
      if (c == C(0)) continue;
      out[j] += static_cast<T>(c) * mono;
    }
  }
  return out;
}

}  // namespace mvjacobi
