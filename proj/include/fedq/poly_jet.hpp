#pragma once

#include "fedq/scalar.hpp"

#include <climits>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fedq {

using VarList = std::vector<std::string>;
using VarsPtr = std::shared_ptr<const VarList>;

VarsPtr make_vars(std::vector<std::string> names);
bool same_vars(const VarsPtr& a, const VarsPtr& b);

/// Packed exponent vector: up to 8 variables, one byte each, variable 0 in the
/// most significant byte so that integer order is lexicographic order.
using Mono = std::uint64_t;

namespace mono {

inline constexpr int kMaxVars = 8;

inline int exp(Mono m, int v) { return static_cast<int>((m >> (8 * (7 - v))) & 0xffu); }
inline Mono unit(int v) { return Mono{1} << (8 * (7 - v)); }
inline int degree(Mono m) { return static_cast<int>((m * 0x0101010101010101ull) >> 56); }
Mono from_exponents(std::span<const int> e);
std::vector<int> exponents(Mono m, int nvars);
/// Component-wise a - b; requires b <= a.
inline Mono sub(Mono a, Mono b) { return a - b; }
bool divides(Mono small, Mono big);

/// Canonical term order: ascending total degree, then descending lexicographic.
inline bool canonical_less(Mono a, Mono b) {
  int da = degree(a);
  int db = degree(b);
  if (da != db) return da < db;
  return a > b;
}

}  // namespace mono

/// Sparse multivariate polynomial over Gaussian rationals, optionally a jet
/// truncated at total degree `cap`.
///
/// A default-constructed PolyJet is the zero of an unspecified ring and
/// combines with any other jet.
class PolyJet {
public:
  static constexpr int kNoCap = INT_MAX / 4;
  using Term = std::pair<Mono, Scalar>;

  PolyJet() = default;
  explicit PolyJet(VarsPtr vars, int cap = kNoCap) : vars_(std::move(vars)), cap_(cap) {}

  static PolyJet constant(VarsPtr vars, const Scalar& c, int cap = kNoCap);
  static PolyJet variable(VarsPtr vars, int v, int cap = kNoCap);
  static PolyJet monomial(VarsPtr vars, Mono m, const Scalar& c, int cap = kNoCap);
  /// Builds from unsorted terms, combining duplicates.
  static PolyJet from_terms(VarsPtr vars, std::vector<Term> terms, int cap = kNoCap);

  const VarsPtr& vars() const { return vars_; }
  int nvars() const { return vars_ ? static_cast<int>(vars_->size()) : 0; }
  const std::vector<Term>& terms() const { return terms_; }
  int cap() const { return cap_; }
  bool capped() const { return cap_ < kNoCap; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Highest total degree present, -1 for zero.
  int degree() const;
  Scalar coeff(Mono m) const;
  Scalar constant_term() const { return coeff(0); }

  PolyJet& operator+=(const PolyJet& o);
  PolyJet& operator-=(const PolyJet& o);
  friend PolyJet operator+(PolyJet a, const PolyJet& b) { return a += b; }
  friend PolyJet operator-(PolyJet a, const PolyJet& b) { return a -= b; }
  friend PolyJet operator*(const PolyJet& a, const PolyJet& b);
  PolyJet operator-() const;

  PolyJet scaled(const Scalar& s) const;
  /// Multiplies by the monomial m with coefficient s.
  PolyJet shifted(Mono m, const Scalar& s) const;
  PolyJet derivative(int v) const;
  PolyJet truncated(int cap) const;
  /// Coefficient-wise complex conjugate.
  PolyJet conj() const;
  /// Substitutes x_v -> 0.
  PolyJet at_zero(int v) const;

  /// Re-expresses the jet over `target`, mapping variable k to index_map[k].
  PolyJet remapped(const VarsPtr& target, std::span<const int> index_map) const;

  /// Equality of the term lists; caps are metadata and are not compared.
  friend bool operator==(const PolyJet& a, const PolyJet& b) { return a.terms_ == b.terms_; }

private:
  void check_compatible(const PolyJet& o) const;
  void adopt(const PolyJet& o);

  VarsPtr vars_;
  std::vector<Term> terms_;
  int cap_ = kNoCap;
};

/// Binomial series u^e truncated at total degree `order`; u must have
/// constant term 1.
PolyJet jet_power(const PolyJet& u, const Rational& e, int order);

/// Multiplicative inverse of a jet with nonzero constant term, to `order`.
PolyJet jet_inverse(const PolyJet& u, int order);

}  // namespace fedq
