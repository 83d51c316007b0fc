#pragma once

#include "fedq/weyl.hpp"

#include <array>
#include <vector>

namespace fedq {

/// Dense table of jets with `rank` indices, each running over 0..dim-1.
class JetTensor {
public:
  JetTensor() = default;
  JetTensor(int rank, int dim, const VarsPtr& vars, int cap = PolyJet::kNoCap);

  int rank() const { return rank_; }
  int dim() const { return dim_; }

  PolyJet& at(std::initializer_list<int> idx) { return data_[offset(idx)]; }
  const PolyJet& at(std::initializer_list<int> idx) const { return data_[offset(idx)]; }
  PolyJet& operator()(int a, int b, int c) { return at({a, b, c}); }
  const PolyJet& operator()(int a, int b, int c) const { return at({a, b, c}); }
  PolyJet& operator()(int a, int b, int c, int d) { return at({a, b, c, d}); }
  const PolyJet& operator()(int a, int b, int c, int d) const { return at({a, b, c, d}); }

  bool is_zero() const;
  friend bool operator==(const JetTensor& a, const JetTensor& b) {
    return a.rank_ == b.rank_ && a.dim_ == b.dim_ && a.data_ == b.data_;
  }

private:
  size_t offset(std::initializer_list<int> idx) const;

  int rank_ = 0;
  int dim_ = 0;
  std::vector<PolyJet> data_;
};

/// One representative of a symmetry orbit of the lowered connection table.
struct GammaEntry {
  std::array<int, 3> indices;
  PolyJet coeff;
};

/// A Darboux chart with a symplectic connection given by the fully
/// symmetric lowered coefficients Gamma_{ijk} = omega_{il} Gamma^l_{jk}.
class ChartGeometry {
public:
  /// Validates the full index symmetry of `gamma_lower`.
  ChartGeometry(FiberPtr space, JetTensor gamma_lower, int xcap = PolyJet::kNoCap);

  /// Fills every permutation of each listed representative; listing two
  /// members of one orbit is an error.
  static ChartGeometry from_orbits(FiberPtr space, const std::vector<GammaEntry>& entries,
                                   int xcap = PolyJet::kNoCap);
  static ChartGeometry flat(FiberPtr space, int xcap = PolyJet::kNoCap);

  const FiberPtr& space() const { return space_; }
  const VarsPtr& coords() const { return space_->coords(); }
  int dim() const { return space_->dim(); }
  int xcap() const { return xcap_; }
  bool is_flat() const { return gamma_.is_zero(); }

  /// Gamma_{ijk}.
  const JetTensor& gamma() const { return gamma_; }
  /// Gamma^l_{jk} = omega^{li} Gamma_{ijk}.
  const JetTensor& gamma_up() const { return gamma_up_; }
  /// R^i_{jkl}.
  const JetTensor& curvature_up() const { return curv_up_; }
  /// R_{ijkl} = omega_{im} R^m_{jkl}: symmetric in (ij), antisymmetric in (kl).
  const JetTensor& curvature() const { return curv_; }

  /// Canonical orbit representatives with nonzero coefficient (i <= j <= k).
  std::vector<GammaEntry> orbit_entries() const;

  /// -1/2 Gamma_{ijk} y^i y^j dx^k: the 1-form whose adjoint action is the
  /// connection part of nabla.
  WeylForm connection_generator() const;
  /// Rhat = -1/4 R_{ijkl} y^i y^j dx^k ^ dx^l, truncated at dcap.
  WeylForm rhat(int dcap = WeylForm::kNoDcap) const;

private:
  FiberPtr space_;
  int xcap_;
  JetTensor gamma_;
  JetTensor gamma_up_;
  JetTensor curv_up_;
  JetTensor curv_;
  WeylForm generator_;
};

/// Raises the first index with omega^{-1}: out^l_{..} = omega^{li} t_{i..}.
JetTensor raise_first(const FiberSpace& space, const JetTensor& t);
/// Lowers the first index with omega: out_{i..} = omega_{im} t^m_{..}.
JetTensor lower_first(const FiberSpace& space, const JetTensor& t);

/// Curvature R^i_{jkl} of the connection with coefficients gamma_up.
JetTensor curvature_from_connection(const JetTensor& gamma_up);

/// nabla a = d a + (i/hbar)[connection_generator, a].
WeylForm nabla(const ChartGeometry& g, const WeylForm& a);

/// True when omega_{mu lambda} A^lambda_nu is symmetric.
bool in_sp(const FiberSpace& space, const ScalarMatrix& a);

/// dU(A) = -(i/2 hbar) omega_{ij} A^j_k y^i y^k, stored with hpow = -1.
WeylForm dU_of(const FiberPtr& space, const ScalarMatrix& a);

}  // namespace fedq
