#pragma once

#include <vector>

#include "cbtau/errors.hpp"
#include "cbtau/scalar.hpp"

namespace cbtau {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, T(0)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }
  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

// Reduced row echelon form over the first `ncols` columns; later columns ride
// along as right-hand sides. Pivots are chosen as the first nonzero entry so
// the result does not depend on anything but the input.
template <class T>
std::vector<int> rref(Matrix<T>& m, int ncols) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < ncols && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!is_zero(m(i, c))) {
        p = i;
        break;
      }
    if (p < 0) continue;
    m.swap_rows(r, p);
    T inv = T(1) / m(r, c);
    for (int j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      T f = m(i, c);
      for (int j = c; j < m.cols(); ++j)
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Rows of zeros in the coefficient block but not in the rhs block.
template <class T>
bool rref_consistent(const Matrix<T>& m, int ncols, int rank) {
  for (int i = rank; i < m.rows(); ++i)
    for (int j = ncols; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) return false;
  return true;
}

template <class T>
std::vector<T> solve_unique(const Matrix<T>& a, const std::vector<T>& b) {
  int n = a.cols();
  Matrix<T> m(a.rows(), n + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n) = b[i];
  }
  auto piv = rref(m, n);
  if (static_cast<int>(piv.size()) < n) throw NonGenericPoint("singular linear system");
  if (!rref_consistent(m, n, n)) throw InconsistentSystem("inconsistent linear system");
  std::vector<T> x(n);
  for (int i = 0; i < n; ++i) x[i] = m(i, n);
  return x;
}

template <class T>
T determinant(Matrix<T> m) {
  int n = m.rows();
  T det(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!is_zero(m(i, c))) {
        p = i;
        break;
      }
    if (p < 0) return T(0);
    if (p != c) {
      m.swap_rows(p, c);
      det = -det;
    }
    det *= m(c, c);
    T inv = T(1) / m(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      T f = m(i, c) * inv;
      for (int j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

// Basis of {x : a x = 0}.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> a) {
  int n = a.cols();
  auto piv = rref(a, n);
  std::vector<bool> is_piv(n, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<T>> basis;
  for (int f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    std::vector<T> v(n, T(0));
    v[f] = T(1);
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a(static_cast<int>(r), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace cbtau
