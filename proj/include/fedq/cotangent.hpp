#pragma once

#include "fedq/diff_operator.hpp"
#include "fedq/fedosov.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace fedq {

/// A (semi-)Riemannian metric jet on the base Q of a cotangent bundle.
class BaseMetric {
public:
  /// `g` must be symmetric with g(0) invertible.  The inverse is exact when
  /// det g is constant, otherwise a series truncated at `jet_order`.
  BaseMetric(VarsPtr coords, std::vector<std::vector<PolyJet>> g, int jet_order);

  int n() const { return n_; }
  const VarsPtr& coords() const { return coords_; }
  int jet_order() const { return jet_order_; }
  const PolyJet& g(int i, int j) const { return g_[i][j]; }
  const PolyJet& ginv(int i, int j) const { return ginv_[i][j]; }
  const PolyJet& det() const { return det_; }
  bool inverse_exact() const { return inverse_exact_; }

  /// Gamma~^k_{ij}, stored as christoffel()(k, i, j).
  const JetTensor& christoffel() const { return christoffel_; }
  /// R~^i_{jkl}.
  const JetTensor& curvature() const { return curvature_; }
  /// g^{jl} R~^i_{jil}.
  const PolyJet& scalar_curvature() const { return scalar_; }
  bool is_flat() const { return christoffel_.is_zero(); }

private:
  int n_;
  VarsPtr coords_;
  int jet_order_;
  std::vector<std::vector<PolyJet>> g_;
  std::vector<std::vector<PolyJet>> ginv_;
  PolyJet det_;
  bool inverse_exact_ = false;
  JetTensor christoffel_;
  JetTensor curvature_;
  PolyJet scalar_;
};

/// Coordinates (q^1..q^n, p_1..p_n) of T*Q; momenta are named "p" + base name.
VarsPtr cotangent_vars(const VarsPtr& base);
/// Re-expresses a base jet over the cotangent coordinates.
PolyJet pull_back(const PolyJet& f, const VarsPtr& lifted);

/// The canonical lift of the Levi-Civita connection to T*Q with its
/// Darboux form dp_j ^ dq^j.
ChartGeometry lift_connection(const BaseMetric& base);
/// The same lift for any torsion-free base connection, christoffel(k, i, j).
ChartGeometry lift_connection(const VarsPtr& base, const JetTensor& christoffel);

/// (#y^q - #y^p) + (#dq - #dp) for one monomial; the first n chart
/// coordinates are the q-block.
int key_q_degree(const WeylKey& key, int n);
/// Minimum over all terms, nullopt for zero.
std::optional<int> q_degree(const WeylForm& a, int n);

struct CheckItem {
  std::string name;
  bool pass = false;
  std::string detail;  // counterexample or summary
};

struct CheckReport {
  std::vector<CheckItem> items;
  bool all_pass() const;
  void add(std::string name, bool pass, std::string detail = {});
  std::string str() const;
};

/// The pieces of the connection form A (without its overall i/hbar):
/// omega_{mu nu} y^nu dx^mu - 1/2 Gamma_{abc} y^a y^b dx^c + r.
WeylForm connection_form(const FedosovData& fd);

/// Order conditions for the vertical polarization spanned by d/dp:
/// (a) Gamma_{kbar lbar mu} = 0, (b) R_{(abc) kbar} = 0 for two or more
/// barred among a, b, c, (c) nabla keeps P and R(P, P)P = 0, (d) A(d/dp_k)
/// annihilates the constant momentum-space wave function through dcap.
CheckReport check_compatibility(const ChartGeometry& chart, int dcap);

/// The four Q-degree statements on a cotangent chart, with the flat
/// sections of `functions` (each of p-degree N) used for the last one.
CheckReport check_qgrad(const FedosovData& fd, const std::vector<PolyJet>& functions);

/// Degree in the momentum variables (the last n coordinates).
int p_degree(const PolyJet& f, int n);

/// sigma(f) for polynomials in p on the lifted chart of `base`.
class SigmaEngine {
public:
  /// A fixed `dcap` must be at least twice the p-degree of every requested
  /// function.  0 sizes the Fedosov data on demand, 2N + 4 for degree N.
  SigmaEngine(const BaseMetric& base, int dcap);
  /// Lifts an arbitrary torsion-free base connection instead.
  SigmaEngine(const VarsPtr& base, const JetTensor& christoffel, int dcap);

  const ChartGeometry& chart() const { return *chart_; }
  int dcap() const { return dcap_; }
  const VarsPtr& lifted_vars() const { return lifted_; }

  /// f is expressed in the cotangent coordinates.  `pmax` bounds the
  /// momentum degree a capped jet may hide; by default its own p-degree.
  DiffOperator sigma(const PolyJet& f, int pmax = -1);
  /// Recomputes sigma(f) with dcap + 2 and compares through the common cap.
  bool stable_under_increase(const PolyJet& f);
  /// Star coefficients on the lifted chart.
  StarResult star(const PolyJet& f, const PolyJet& g);

private:
  void ensure_fedosov(int needed);
  const FlatSection& section(const PolyJet& f);
  DiffOperator sigma_monomial(const PolyJet& h_of_q, Mono p_part);

  VarsPtr base_;
  JetTensor christoffel_;
  int n_;
  VarsPtr lifted_;
  std::shared_ptr<const ChartGeometry> chart_;
  int dcap_;
  std::unique_ptr<FedosovData> fd_;
  bool auto_dcap_;
  std::map<std::string, FlatSection> sections_;
  std::map<std::string, DiffOperator> memo_;
};

}  // namespace fedq
