#pragma once

// Dense exact matrices over a field descriptor, plus the row-reduction
// toolkit every higher module leans on: rref, solve, kernel, cokernel,
// inverse. Pivoting is leftmost-column, topmost-row; all bases these
// routines emit are therefore deterministic functions of the input.

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "arknit/common.hpp"

namespace arknit {

template <class F>
class Matrix {
 public:
  using K = typename F::Elem;

  Matrix(F field, int rows, int cols)
      : f_(field), r_(rows), c_(cols),
        a_(static_cast<size_t>(rows) * cols, field.zero()) {
    ARKNIT_CHECK(rows >= 0 && cols >= 0, "negative matrix dimension");
  }

  static Matrix identity(F field, int n) {
    Matrix m(field, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = field.one();
    return m;
  }

  /// Column vector with a single 1 at position i.
  static Matrix unit(F field, int n, int i) {
    Matrix m(field, n, 1);
    m.at(i, 0) = field.one();
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  const F& field() const { return f_; }

  K& at(int i, int j) {
    ARKNIT_CHECK(0 <= i && i < r_ && 0 <= j && j < c_, "index out of range");
    return a_[static_cast<size_t>(i) * c_ + j];
  }
  const K& at(int i, int j) const {
    ARKNIT_CHECK(0 <= i && i < r_ && 0 <= j && j < c_, "index out of range");
    return a_[static_cast<size_t>(i) * c_ + j];
  }

  Matrix operator*(const Matrix& o) const {
    check_same_field(o);
    ARKNIT_CHECK(c_ == o.r_, "inner dimensions differ: " + shape() + " * " +
                                 o.shape());
    Matrix out(f_, r_, o.c_);
    for (int i = 0; i < r_; ++i)
      for (int k = 0; k < c_; ++k) {
        const K& x = at(i, k);
        if (x.is_zero()) continue;
        for (int j = 0; j < o.c_; ++j) out.at(i, j) += x * o.at(k, j);
      }
    return out;
  }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix out(f_, r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + o.a_[i];
    return out;
  }

  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix out(f_, r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - o.a_[i];
    return out;
  }

  Matrix scaled(const K& s) const {
    Matrix out(f_, r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] * s;
    return out;
  }

  Matrix transposed() const {
    Matrix out(f_, c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) out.at(j, i) = at(i, j);
    return out;
  }

  /// [this | o] side by side.
  Matrix hstack(const Matrix& o) const {
    check_same_field(o);
    ARKNIT_CHECK(r_ == o.r_, "row counts differ");
    Matrix out(f_, r_, c_ + o.c_);
    for (int i = 0; i < r_; ++i) {
      for (int j = 0; j < c_; ++j) out.at(i, j) = at(i, j);
      for (int j = 0; j < o.c_; ++j) out.at(i, c_ + j) = o.at(i, j);
    }
    return out;
  }

  /// [this; o] stacked.
  Matrix vstack(const Matrix& o) const {
    check_same_field(o);
    ARKNIT_CHECK(c_ == o.c_, "column counts differ");
    Matrix out(f_, r_ + o.r_, c_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) out.at(i, j) = at(i, j);
    for (int i = 0; i < o.r_; ++i)
      for (int j = 0; j < c_; ++j) out.at(r_ + i, j) = o.at(i, j);
    return out;
  }

  Matrix column(int j) const {
    Matrix out(f_, r_, 1);
    for (int i = 0; i < r_; ++i) out.at(i, 0) = at(i, j);
    return out;
  }

  bool is_zero() const {
    for (const K& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  bool operator==(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) return false;
    for (size_t i = 0; i < a_.size(); ++i)
      if (a_[i] != o.a_[i]) return false;
    return true;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  std::string shape() const {
    return std::to_string(r_) + "x" + std::to_string(c_);
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < r_; ++i) {
      if (i) os << "; ";
      for (int j = 0; j < c_; ++j) {
        if (j) os << " ";
        os << at(i, j).str();
      }
    }
    os << "]";
    return os.str();
  }

 private:
  void check_same_field(const Matrix& o) const {
    if (f_ != o.f_) throw CheckError("matrices over different fields");
  }
  void check_same_shape(const Matrix& o) const {
    check_same_field(o);
    ARKNIT_CHECK(r_ == o.r_ && c_ == o.c_,
                 "shapes differ: " + shape() + " vs " + o.shape());
  }

  F f_;
  int r_, c_;
  std::vector<K> a_;
};

/// Reduced row echelon form with the row operations recorded:
/// ops * input == reduced.
template <class F>
struct Rref {
  Matrix<F> reduced;
  Matrix<F> ops;
  std::vector<int> pivot_cols;
  int rank() const { return static_cast<int>(pivot_cols.size()); }
};

template <class F>
Rref<F> rref(const Matrix<F>& input) {
  Rref<F> out{input, Matrix<F>::identity(input.field(), input.rows()), {}};
  Matrix<F>& a = out.reduced;
  Matrix<F>& e = out.ops;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < a.rows(); ++i) {
      if (!a.at(i, col).is_zero()) { piv = i; break; }
    }
    if (piv < 0) continue;
    if (piv != row) {
      for (int j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(row, j));
      for (int j = 0; j < e.cols(); ++j) std::swap(e.at(piv, j), e.at(row, j));
    }
    auto inv = a.at(row, col).inverse();
    for (int j = 0; j < a.cols(); ++j) a.at(row, j) = a.at(row, j) * inv;
    for (int j = 0; j < e.cols(); ++j) e.at(row, j) = e.at(row, j) * inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == row || a.at(i, col).is_zero()) continue;
      auto factor = a.at(i, col);
      for (int j = 0; j < a.cols(); ++j)
        a.at(i, j) = a.at(i, j) - factor * a.at(row, j);
      for (int j = 0; j < e.cols(); ++j)
        e.at(i, j) = e.at(i, j) - factor * e.at(row, j);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  return out;
}

template <class F>
int rank(const Matrix<F>& a) {
  return rref(a).rank();
}

/// Basis of { x : a x = 0 } as matrix columns, one per non-pivot column of a,
/// in ascending column order.
template <class F>
Matrix<F> kernel_basis(const Matrix<F>& a) {
  Rref<F> r = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : r.pivot_cols) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < a.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Matrix<F> out(a.field(), a.cols(), static_cast<int>(free_cols.size()));
  for (int k = 0; k < static_cast<int>(free_cols.size()); ++k) {
    int j = free_cols[k];
    out.at(j, k) = a.field().one();
    for (int i = 0; i < r.rank(); ++i)
      out.at(r.pivot_cols[i], k) = -r.reduced.at(i, j);
  }
  return out;
}

/// One solution of a x = b (column-wise), or nullopt if inconsistent.
/// Free coordinates are set to zero, so the solution is deterministic.
template <class F>
std::optional<Matrix<F>> solve(const Matrix<F>& a, const Matrix<F>& b) {
  ARKNIT_CHECK(b.rows() == a.rows(), "right-hand side row count mismatch");
  Rref<F> r = rref(a);
  Matrix<F> eb = r.ops * b;
  for (int i = r.rank(); i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      if (!eb.at(i, j).is_zero()) return std::nullopt;
  Matrix<F> x(a.field(), a.cols(), b.cols());
  for (int i = 0; i < r.rank(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      x.at(r.pivot_cols[i], j) = eb.at(i, j);
  return x;
}

/// Quotient of the ambient column space k^m by the column span of a (m x n).
/// `kept` lists the coordinates whose classes form the quotient basis (the
/// non-pivot coordinates, in ascending order); proj maps a vector to its
/// class, section embeds the basis back (proj * section == id).
template <class F>
struct Cokernel {
  std::vector<int> kept;
  Matrix<F> proj;
  Matrix<F> section;
  int dim() const { return static_cast<int>(kept.size()); }
};

template <class F>
Cokernel<F> cokernel(const Matrix<F>& a) {
  int m = a.rows();
  Rref<F> r = rref(a.transposed());
  std::vector<bool> is_pivot(m, false);
  for (int c : r.pivot_cols) is_pivot[c] = true;
  std::vector<int> kept;
  for (int j = 0; j < m; ++j)
    if (!is_pivot[j]) kept.push_back(j);
  int d = static_cast<int>(kept.size());
  Matrix<F> proj(a.field(), d, m);
  for (int k = 0; k < d; ++k) {
    proj.at(k, kept[k]) = a.field().one();
    // A pivot coordinate reduces to minus the tail of its rref row.
    for (int i = 0; i < r.rank(); ++i)
      proj.at(k, r.pivot_cols[i]) = -r.reduced.at(i, kept[k]);
  }
  Matrix<F> section(a.field(), m, d);
  for (int k = 0; k < d; ++k) section.at(kept[k], k) = a.field().one();
  return Cokernel<F>{std::move(kept), std::move(proj), std::move(section)};
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
  ARKNIT_CHECK(a.rows() == a.cols(), "inverse of non-square matrix");
  Rref<F> r = rref(a);
  if (r.rank() != a.rows()) return std::nullopt;
  return r.ops;
}

}  // namespace arknit
