#pragma once

#include "fedq/matrix.hpp"
#include "fedq/poly_jet.hpp"

#include <climits>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fedq {

/// The symplectic vector space underlying one chart: coordinate names,
/// the constant form omega_{mu nu} and its inverse omega^{mu nu}, with
/// omega^{mu lambda} omega_{lambda nu} = delta^mu_nu.
class FiberSpace {
public:
  struct InversePair {
    int mu;
    int nu;
    Scalar value;  // omega^{mu nu}
  };

  FiberSpace(VarsPtr coords, ScalarMatrix omega);

  /// Coordinates (q^1..q^n, p_1..p_n) with omega = dp_j ^ dq^j.
  static std::shared_ptr<const FiberSpace> darboux(VarsPtr coords);
  /// Coordinates (z^1..z^n, zbar^1..zbar^n) with omega = i dz^j ^ dzbar^j.
  static std::shared_ptr<const FiberSpace> complex_standard(VarsPtr coords);

  int dim() const { return dim_; }
  const VarsPtr& coords() const { return coords_; }
  const std::string& name(int mu) const { return (*coords_)[static_cast<size_t>(mu)]; }
  const ScalarMatrix& omega() const { return omega_; }
  const ScalarMatrix& omega_inv() const { return omega_inv_; }
  const std::vector<InversePair>& inverse_pairs() const { return pairs_; }

  /// True when omega is the standard dp^dq block form for this dimension.
  bool is_standard_darboux() const;

private:
  int dim_;
  VarsPtr coords_;
  ScalarMatrix omega_;
  ScalarMatrix omega_inv_;
  std::vector<InversePair> pairs_;
};

using FiberPtr = std::shared_ptr<const FiberSpace>;

/// Monomial hbar^hpow * y^sym * dx^form.  `sym` is a packed multiset of fiber
/// generators; `form` a bitmask of strictly increasing form indices.
struct WeylKey {
  int hpow = 0;
  Mono sym = 0;
  std::uint16_t form = 0;

  int sym_degree() const { return mono::degree(sym); }
  int form_degree() const { return __builtin_popcount(form); }
  /// 2*hpow + |sym|: twice the hbar-degree.
  int doubled_degree() const { return 2 * hpow + sym_degree(); }

  friend bool operator==(const WeylKey&, const WeylKey&) = default;
  friend bool operator<(const WeylKey& a, const WeylKey& b);
};

/// Lexicographic comparison of two sorted index sets given as bitmasks.
bool form_less(std::uint16_t a, std::uint16_t b);

/// Element of Gamma(W (x) Lambda) on a chart: sparse map from WeylKey to
/// jet coefficients.  Everything of doubled degree above `dcap` is dropped;
/// `xcap` is the coordinate-degree reliability of the coefficients.  It is
/// tracked per doubled degree: low degrees of a Fedosov series need fewer
/// derivatives of the chart data and keep longer jets.
class WeylForm {
public:
  static constexpr int kNoDcap = INT_MAX / 4;
  using TermMap = std::map<WeylKey, PolyJet>;

  WeylForm() = default;
  explicit WeylForm(FiberPtr space, int dcap = kNoDcap, int xcap = PolyJet::kNoCap);

  static WeylForm scalar(FiberPtr space, const PolyJet& f, int dcap = kNoDcap);
  static WeylForm generator(FiberPtr space, int mu, int dcap = kNoDcap);
  static WeylForm term(FiberPtr space, const WeylKey& key, const PolyJet& coeff,
                       int dcap = kNoDcap);
  static WeylForm constant_term(FiberPtr space, const WeylKey& key, const Scalar& c,
                                int dcap = kNoDcap);

  const FiberPtr& space() const { return space_; }
  const TermMap& terms() const { return terms_; }
  int dcap() const { return dcap_; }
  /// Smallest cap over all degrees.
  int xcap() const;
  /// Cap of the coefficients of doubled degree D.
  int xcap_at(int D) const;
  /// Cap of every degree without its own entry.
  int base_xcap() const { return xcap_; }
  const std::map<int, int>& degree_caps() const { return degree_caps_; }
  bool is_zero() const { return terms_.empty(); }
  PolyJet coeff(const WeylKey& key) const;

  /// Adds c to the coefficient at key, honoring both caps.
  void add(const WeylKey& key, const PolyJet& c);
  /// Lowers the coordinate cap of the whole form.
  void limit_xcap(int xcap);
  /// Lowers the cap of doubled degree D only.
  void limit_xcap_at(int D, int xcap);
  /// A zero form with these caps moved by `shift` doubled degrees and
  /// lowered by `lower`.
  WeylForm empty_like(int shift = 0, int lower = 0) const;

  std::optional<int> min_hpow() const;
  std::optional<int> max_doubled_degree() const;
  /// Form degree when all terms share one, otherwise nullopt.
  std::optional<int> form_degree() const;

  WeylForm& operator+=(const WeylForm& o);
  WeylForm& operator-=(const WeylForm& o);
  friend WeylForm operator+(WeylForm a, const WeylForm& b) { return a += b; }
  friend WeylForm operator-(WeylForm a, const WeylForm& b) { return a -= b; }
  WeylForm operator-() const;

  WeylForm scaled(const Scalar& s) const;
  WeylForm times(const PolyJet& f) const;
  WeylForm truncated(int dcap) const;
  /// Multiplies by hbar^k (k may be negative).
  WeylForm hbar_shifted(int k) const;

  /// Equality of term maps (caps are not compared).
  friend bool operator==(const WeylForm& a, const WeylForm& b) { return a.terms_ == b.terms_; }

  std::string key_str(const WeylKey& key) const;
  /// One line per term in canonical order: "hbar^h y[..] dx[..] : coeff".
  std::string str() const;

private:
  void check_space(const WeylForm& o) const;

  FiberPtr space_;
  TermMap terms_;
  int dcap_ = kNoDcap;
  int xcap_ = PolyJet::kNoCap;
  std::map<int, int> degree_caps_;
};

/// Fiberwise Weyl product with wedge on form parts, truncated at `dcap`.
WeylForm product(const WeylForm& a, const WeylForm& b, int dcap);
/// a o b truncated at the smaller of the two caps.
WeylForm weyl_product(const WeylForm& a, const WeylForm& b);
/// Graded commutator a o b - (-1)^{pq} b o a, truncated at `dcap`.
WeylForm commutator(const WeylForm& a, const WeylForm& b, int dcap);
WeylForm graded_commutator(const WeylForm& a, const WeylForm& b);
/// pi_{(x)0}(a o b): only fully contracted terms, truncated at `dcap`.
WeylForm product_sym0(const WeylForm& a, const WeylForm& b, int dcap);

/// (i/hbar)[gen, a], truncated at a's cap.  The hbar division is exact.
WeylForm adjoint_action(const WeylForm& gen, const WeylForm& a);
/// (i/hbar) a for a form whose every term carries at least one hbar.
WeylForm times_i_over_hbar(const WeylForm& a);

WeylForm delta(const WeylForm& a);
WeylForm delta_star(const WeylForm& a);
WeylForm delta_inv(const WeylForm& a);
/// Coordinate exterior derivative dx^mu ^ d_mu on coefficients.
WeylForm exterior_d(const WeylForm& a);
/// Interior product with the coordinate vector field d/dx^mu.
WeylForm contract(const WeylForm& a, int mu);

struct GradingSelector {
  enum class Kind { kHbarDegree, kSymDegree, kSym0, kScalar00 };
  Kind kind;
  int value = 0;  // doubled degree D or symmetric degree k

  static GradingSelector hbar_degree(int doubled) { return {Kind::kHbarDegree, doubled}; }
  static GradingSelector sym_degree(int k) { return {Kind::kSymDegree, k}; }
  static GradingSelector sym0() { return {Kind::kSym0, 0}; }
  static GradingSelector scalar00() { return {Kind::kScalar00, 0}; }
};

WeylForm project(const WeylForm& a, GradingSelector which);

struct GradingReport {
  std::map<int, std::vector<std::string>> by_doubled_degree;
  std::optional<int> q_degree_min;
};

GradingReport grading_report(const WeylForm& a);

}  // namespace fedq
