#include "fedq/matrix.hpp"

#include <utility>

namespace fedq {

ScalarMatrix ScalarMatrix::identity(int n) {
  ScalarMatrix m(n);
  for (int k = 0; k < n; ++k) m(k, k) = Scalar(1);
  return m;
}

ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.n_ != b.n_) throw Error("matrix size mismatch");
  ScalarMatrix r(a.n_);
  for (int i = 0; i < a.n_; ++i) {
    for (int k = 0; k < a.n_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (int j = 0; j < a.n_; ++j) r(i, j) += a(i, k) * b(k, j);
    }
  }
  return r;
}

ScalarMatrix operator+(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.n_ != b.n_) throw Error("matrix size mismatch");
  ScalarMatrix r = a;
  for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += b.a_[k];
  return r;
}

ScalarMatrix operator-(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.n_ != b.n_) throw Error("matrix size mismatch");
  ScalarMatrix r = a;
  for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= b.a_[k];
  return r;
}

ScalarMatrix ScalarMatrix::transposed() const {
  ScalarMatrix t(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

bool ScalarMatrix::is_zero() const {
  for (const auto& x : a_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

bool ScalarMatrix::is_symmetric() const { return *this == transposed(); }

bool ScalarMatrix::is_antisymmetric() const {
  ScalarMatrix t = transposed();
  for (size_t k = 0; k < a_.size(); ++k) {
    if (!(a_[k] + t.a_[k]).is_zero()) return false;
  }
  return true;
}

Scalar ScalarMatrix::trace() const {
  Scalar s;
  for (int k = 0; k < n_; ++k) s += (*this)(k, k);
  return s;
}

ScalarMatrix ScalarMatrix::inverse() const {
  ScalarMatrix a = *this;
  ScalarMatrix inv = identity(n_);
  for (int col = 0; col < n_; ++col) {
    int pivot = -1;
    for (int r = col; r < n_; ++r) {
      if (!a(r, col).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw Error("matrix is singular");
    if (pivot != col) {
      for (int c = 0; c < n_; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    Scalar p = a(col, col);
    for (int c = 0; c < n_; ++c) {
      a(col, c) /= p;
      inv(col, c) /= p;
    }
    for (int r = 0; r < n_; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      Scalar f = a(r, col);
      for (int c = 0; c < n_; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

}  // namespace fedq
