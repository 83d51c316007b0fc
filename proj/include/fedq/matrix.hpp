#pragma once

#include "fedq/scalar.hpp"

#include <vector>

namespace fedq {

/// Dense square matrix of exact scalars, row-major.
class ScalarMatrix {
public:
  ScalarMatrix() = default;
  explicit ScalarMatrix(int n) : n_(n), a_(static_cast<size_t>(n * n)) {}

  static ScalarMatrix identity(int n);

  int size() const { return n_; }
  Scalar& operator()(int r, int c) { return a_[static_cast<size_t>(r * n_ + c)]; }
  const Scalar& operator()(int r, int c) const { return a_[static_cast<size_t>(r * n_ + c)]; }

  friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b);
  friend ScalarMatrix operator+(const ScalarMatrix& a, const ScalarMatrix& b);
  friend ScalarMatrix operator-(const ScalarMatrix& a, const ScalarMatrix& b);
  friend bool operator==(const ScalarMatrix& a, const ScalarMatrix& b) {
    return a.n_ == b.n_ && a.a_ == b.a_;
  }

  ScalarMatrix transposed() const;
  bool is_zero() const;
  bool is_symmetric() const;
  bool is_antisymmetric() const;
  Scalar trace() const;

  /// Exact inverse by Gauss-Jordan elimination; throws on a singular matrix.
  ScalarMatrix inverse() const;

private:
  int n_ = 0;
  std::vector<Scalar> a_;
};

}  // namespace fedq
