#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace mvjacobi {

namespace detail {
template <class T>
bool is_zero_scalar(const T& v) {
  return v == T(0);
}

inline void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}
}  // namespace detail

/// Dense column vector over an exact or floating scalar.
template <class T>
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n, const T& fill = T(0)) : data_(n, fill) {}
  Vector(std::initializer_list<T> init) : data_(init) {}
  explicit Vector(std::vector<T> data) : data_(std::move(data)) {}

  std::size_t size() const { return data_.size(); }
  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }
  const std::vector<T>& data() const { return data_; }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& v) { return detail::is_zero_scalar(v); });
  }

  Vector& operator+=(const Vector& o) {
    detail::require(size() == o.size(), "vector size mismatch");
    for (std::size_t i = 0; i < size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    detail::require(size() == o.size(), "vector size mismatch");
    for (std::size_t i = 0; i < size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Vector& operator*=(const T& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator-(Vector a) { return a *= T(-1); }
  friend Vector operator*(Vector a, const T& s) { return a *= s; }
  friend Vector operator*(const T& s, Vector a) { return a *= s; }
  friend bool operator==(const Vector& a, const Vector& b) { return a.data_ == b.data_; }
  friend std::ostream& operator<<(std::ostream& os, const Vector& v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    return os << ']';
  }

 private:
  std::vector<T> data_;
};

/// Dense row-major matrix. Products and elimination are written for both exact
/// (Rational) and floating scalars; the pivot rule switches on the scalar kind.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      detail::require(row.size() == cols_, "ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix diagonal(const std::vector<T>& diag) {
    Matrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& v) { return detail::is_zero_scalar(v); });
  }
  bool is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i != j && !detail::is_zero_scalar((*this)(i, j))) return false;
    return true;
  }

  T trace() const {
    detail::require(is_square(), "trace of non-square matrix");
    T t(0);
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  Vector<T> column(std::size_t j) const {
    Vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  template <class U, class F>
  Matrix<U> map(F&& f) const {
    Matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  Matrix& operator+=(const Matrix& o) {
    detail::require(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    detail::require(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  /// this + s·I
  Matrix shifted(const T& s) const {
    detail::require(is_square(), "shift of non-square matrix");
    Matrix m = *this;
    for (std::size_t i = 0; i < rows_; ++i) m(i, i) += s;
    return m;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) { return a *= T(-1); }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    detail::require(a.cols_ == b.rows_, "matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const T& ail = a(i, l);
        if (detail::is_zero_scalar(ail)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += ail * b(l, j);
      }
    return c;
  }

  friend Vector<T> operator*(const Matrix& a, const Vector<T>& v) {
    detail::require(a.cols_ == v.size(), "matrix-vector shape mismatch");
    Vector<T> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? "\n[" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
      os << "]";
    }
    return os;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

/// Max |entry|, for floating matrices.
inline double max_abs(const Matrix<double>& m) {
  double best = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) best = std::max(best, std::abs(m(i, j)));
  return best;
}

namespace detail {

template <class T>
struct Echelon {
  Matrix<T> reduced;                 // reduced row echelon form of [A | rhs]
  std::vector<std::size_t> pivots;   // pivot column per pivot row
};

/// Gauss-Jordan elimination on the first `ncols` columns of `m`.
template <class T>
Echelon<T> row_reduce(Matrix<T> m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.rows(); ++col) {
    std::size_t best = m.rows();
    if constexpr (std::is_floating_point_v<T>) {
      T mag = 0;
      for (std::size_t r = row; r < m.rows(); ++r)
        if (std::abs(m(r, col)) > mag) mag = std::abs(m(r, col)), best = r;
      if (best != m.rows() && mag <= T(1e-300)) best = m.rows();
    } else {
      for (std::size_t r = row; r < m.rows(); ++r)
        if (!is_zero_scalar(m(r, col))) { best = r; break; }
    }
    if (best == m.rows()) continue;
    if (best != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(best, j));
    const T inv = T(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero_scalar(m(r, col))) continue;
      const T f = m(r, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(r, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

}  // namespace detail

template <class T>
std::size_t rank(const Matrix<T>& a) {
  return detail::row_reduce(a, a.cols()).pivots.size();
}

/// A nonzero vector v with a·v = 0, or nullopt when a has full column rank.
template <class T>
std::optional<Vector<T>> kernel_vector(const Matrix<T>& a) {
  auto ech = detail::row_reduce(a, a.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector<T> v(a.cols());
    v[free] = T(1);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.reduced(r, free);
    return v;
  }
  return std::nullopt;
}

/// Solves a·X = b. Throws std::domain_error when a is singular.
template <class T>
Matrix<T> solve(const Matrix<T>& a, const Matrix<T>& b) {
  detail::require(a.is_square() && a.rows() == b.rows(), "solve shape mismatch");
  const std::size_t n = a.rows();
  Matrix<T> aug(n, n + b.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) aug(i, n + j) = b(i, j);
  }
  auto ech = detail::row_reduce(std::move(aug), n);
  if (ech.pivots.size() != n) throw std::domain_error("singular matrix");
  Matrix<T> x(n, b.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = ech.reduced(i, n + j);
  return x;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  return solve(a, Matrix<T>::identity(a.rows()));
}

}  // namespace mvjacobi
