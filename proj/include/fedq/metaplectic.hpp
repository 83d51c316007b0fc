#pragma once

#include "fedq/geometry.hpp"

#include <map>
#include <string>
#include <vector>

namespace fedq {

/// Polynomial wave function with explicit hbar powers: sum_h hbar^h psi_h.
class PolyWave {
public:
  PolyWave() = default;
  explicit PolyWave(VarsPtr vars) : vars_(std::move(vars)) {}

  static PolyWave constant(VarsPtr vars, const Scalar& c);
  static PolyWave monomial(VarsPtr vars, Mono m, const Scalar& c = Scalar(1), int hpow = 0);

  const VarsPtr& vars() const { return vars_; }
  const std::map<int, PolyJet>& parts() const { return parts_; }
  bool is_zero() const { return parts_.empty(); }

  void add(int hpow, const PolyJet& p);
  PolyWave& operator+=(const PolyWave& o);
  PolyWave& operator-=(const PolyWave& o);
  friend PolyWave operator+(PolyWave a, const PolyWave& b) { return a += b; }
  friend PolyWave operator-(PolyWave a, const PolyWave& b) { return a -= b; }
  PolyWave scaled(const Scalar& s) const;
  PolyWave hbar_shifted(int k) const;
  PolyWave times_var(int v) const;
  PolyWave derivative(int v) const;

  friend bool operator==(const PolyWave& a, const PolyWave& b) { return a.parts_ == b.parts_; }
  std::string str() const;

private:
  VarsPtr vars_;
  std::map<int, PolyJet> parts_;
};

enum class RepKind { kSchrodingerPosition, kSchrodingerMomentum, kFock };

/// Which fiber generators multiply and which differentiate.  The fiber space
/// is split into a first block (q or z) and a second block (p or zbar).
struct RepConfig {
  RepKind kind;
  FiberPtr space;

  int n() const { return space->dim() / 2; }
  /// Wave-function variables: first-block names for position and Fock,
  /// second-block names for momentum.
  VarsPtr wave_vars() const;
};

/// Action of one fiber generator y^mu.
PolyWave apply_generator(const RepConfig& cfg, int mu, const PolyWave& psi);

/// Action of a pure fiber element (form degree 0, constant coefficients);
/// each symmetric monomial acts as the average over its distinct orderings.
PolyWave rep_apply(const RepConfig& cfg, const WeylForm& a, const PolyWave& psi);

/// Normal-ordered operator sum c hbar^h x^mult d^deriv on wave functions.
class WaveOperator {
public:
  struct Key {
    int hpow;
    Mono mult;
    Mono deriv;
    friend auto operator<=>(const Key&, const Key&) = default;
  };

  explicit WaveOperator(VarsPtr vars) : vars_(std::move(vars)) {}

  void add(const Key& k, const Scalar& c);
  const std::map<Key, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  PolyWave apply(const PolyWave& psi) const;
  std::string str() const;

private:
  VarsPtr vars_;
  std::map<Key, Scalar> terms_;
};

/// The closed-form operator of dU(X) in the chosen representation, with
/// X = [[A, B], [C, -A^T]] in the block order of the fiber space.
WaveOperator metaplectic_operator(const RepConfig& cfg, const ScalarMatrix& x);

}  // namespace fedq
