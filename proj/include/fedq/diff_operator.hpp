#pragma once

#include "fedq/poly_jet.hpp"

#include <map>
#include <string>

namespace fedq {

/// Normal-ordered differential operator sum hbar^m a(q) d^beta on functions
/// of the base coordinates.
class DiffOperator {
public:
  struct Key {
    Mono deriv;
    int hpow;
    friend auto operator<=>(const Key&, const Key&) = default;
  };

  DiffOperator() = default;
  explicit DiffOperator(VarsPtr vars, int cap = PolyJet::kNoCap) : vars_(std::move(vars)), cap_(cap) {}

  static DiffOperator multiplication(const PolyJet& a, int hpow = 0);
  /// c * hbar^hpow * d^beta.
  static DiffOperator derivative(VarsPtr vars, Mono beta, const Scalar& c = Scalar(1), int hpow = 0);

  const VarsPtr& vars() const { return vars_; }
  const std::map<Key, PolyJet>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  PolyJet coeff(Mono deriv, int hpow) const;

  void add(const Key& k, const PolyJet& a);
  DiffOperator& operator+=(const DiffOperator& o);
  DiffOperator& operator-=(const DiffOperator& o);
  friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
  friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }
  /// Composition, re-normal-ordered by the Leibniz rule.
  friend DiffOperator operator*(const DiffOperator& a, const DiffOperator& b);

  DiffOperator scaled(const Scalar& s) const;
  DiffOperator hbar_shifted(int k) const;
  /// Drops coefficient terms above total degree `cap`.
  DiffOperator truncated(int cap) const;
  /// Coefficients evaluated at q = 0.
  DiffOperator at_origin() const;
  /// Degree through which every coefficient is known; survives cancellation.
  int cap() const { return cap_; }
  void limit_cap(int cap);

  /// Applies the operator to a function; returns the hbar^m parts.
  std::map<int, PolyJet> apply(const PolyJet& f) const;

  friend bool operator==(const DiffOperator& a, const DiffOperator& b) { return a.terms_ == b.terms_; }
  /// One line per term: "hbar^m d[..] : coeff".
  std::string str() const;

private:
  VarsPtr vars_;
  std::map<Key, PolyJet> terms_;
  int cap_ = PolyJet::kNoCap;
};

/// u^{-1} o D o u for a jet u with nonzero constant term; u^{-1} is taken to
/// the cap of u (or `order` when u is exact).
DiffOperator conjugate(const DiffOperator& d, const PolyJet& u, int order);

}  // namespace fedq
