#pragma once
// Dense exact matrices with deterministic (first-nonzero-column) elimination.

#include <optional>
#include <vector>

#include "shv/field.hpp"

namespace shv {

class Matrix {
 public:
  Matrix() : fld_{}, rows_(0), cols_(0) {}
  Matrix(FieldConfig f, int rows, int cols)
      : fld_(f), rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, Scalar(f, 0)) {
    assert(rows >= 0 && cols >= 0);
  }

  static Matrix identity(FieldConfig f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(f, 1);
    return m;
  }

  FieldConfig field() const { return fld_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Scalar& at(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return a_[std::size_t(i) * cols_ + j];
  }
  const Scalar& at(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return a_[std::size_t(i) * cols_ + j];
  }

  bool isZero() const {
    for (const auto& x : a_)
      if (!x.isZero()) return false;
    return true;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && fld_ == o.fld_ && a_ == o.a_;
  }

  Matrix operator+(const Matrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Matrix r(fld_, rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Matrix r(fld_, rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
    return r;
  }
  Matrix operator*(const Matrix& o) const {
    assert(cols_ == o.rows_);
    Matrix r(fld_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        if (at(i, k).isZero()) continue;
        for (int j = 0; j < o.cols_; ++j) {
          if (o.at(k, j).isZero()) continue;
          r.at(i, j) += at(i, k) * o.at(k, j);
        }
      }
    return r;
  }
  Matrix scaled(const Scalar& c) const {
    Matrix r(fld_, rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * c;
    return r;
  }
  Matrix operator-() const { return scaled(Scalar(fld_, -1)); }

  Matrix transpose() const {
    Matrix r(fld_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  // Kronecker product (row-major block layout).
  Matrix kron(const Matrix& o) const {
    Matrix r(fld_, rows_ * o.rows_, cols_ * o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) {
        if (at(i, j).isZero()) continue;
        for (int p = 0; p < o.rows_; ++p)
          for (int q = 0; q < o.cols_; ++q)
            r.at(i * o.rows_ + p, j * o.cols_ + q) = at(i, j) * o.at(p, q);
      }
    return r;
  }

  // Direct sum placement helpers.
  void paste(const Matrix& m, int row0, int col0) {
    for (int i = 0; i < m.rows_; ++i)
      for (int j = 0; j < m.cols_; ++j) at(row0 + i, col0 + j) = m.at(i, j);
  }
  Matrix block(int row0, int col0, int nrows, int ncols) const {
    Matrix r(fld_, nrows, ncols);
    for (int i = 0; i < nrows; ++i)
      for (int j = 0; j < ncols; ++j) r.at(i, j) = at(row0 + i, col0 + j);
    return r;
  }

  // Reduced row echelon form in place, pivoting on the first nonzero column,
  // within a column on the first usable row. Returns pivot columns.
  std::vector<int> rref() {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
      int pr = -1;
      for (int i = r; i < rows_; ++i)
        if (!at(i, c).isZero()) { pr = i; break; }
      if (pr < 0) continue;
      if (pr != r)
        for (int j = 0; j < cols_; ++j) std::swap(at(pr, j), at(r, j));
      Scalar inv = at(r, c).inverse();
      for (int j = c; j < cols_; ++j) at(r, j) *= inv;
      for (int i = 0; i < rows_; ++i) {
        if (i == r || at(i, c).isZero()) continue;
        Scalar f = at(i, c);
        for (int j = c; j < cols_; ++j) at(i, j) -= f * at(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  int rank() const {
    Matrix m = *this;
    return int(m.rref().size());
  }

  // Columns spanning the kernel, in the deterministic basis given by rref
  // free columns.
  Matrix kernelBasis() const {
    Matrix m = *this;
    std::vector<int> piv = m.rref();
    std::vector<bool> isPiv(cols_, false);
    for (int c : piv) isPiv[c] = true;
    int nf = cols_ - int(piv.size());
    Matrix ker(fld_, cols_, nf);
    int kc = 0;
    for (int c = 0; c < cols_; ++c) {
      if (isPiv[c]) continue;
      ker.at(c, kc) = Scalar(fld_, 1);
      for (std::size_t pi = 0; pi < piv.size(); ++pi)
        ker.at(piv[pi], kc) = -m.at(int(pi), c);
      ++kc;
    }
    return ker;
  }

  // Solve this * X = B; returns std::nullopt if inconsistent.
  std::optional<Matrix> solve(const Matrix& b) const {
    assert(b.rows_ == rows_);
    Matrix aug(fld_, rows_, cols_ + b.cols_);
    aug.paste(*this, 0, 0);
    aug.paste(b, 0, cols_);
    std::vector<int> piv = aug.rref();
    for (int c : piv)
      if (c >= cols_) return std::nullopt;
    Matrix x(fld_, cols_, b.cols_);
    for (std::size_t pi = 0; pi < piv.size(); ++pi)
      for (int j = 0; j < b.cols_; ++j) x.at(piv[pi], j) = aug.at(int(pi), cols_ + j);
    return x;
  }

 private:
  FieldConfig fld_;
  int rows_, cols_;
  std::vector<Scalar> a_;
};

}  // namespace shv
