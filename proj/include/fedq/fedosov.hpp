#pragma once

#include "fedq/geometry.hpp"

#include <memory>
#include <vector>

namespace fedq {

/// How the Fedosov fixed points are reached.  Both give the same result;
/// the graded scheme solves one doubled degree at a time, the fixed-point
/// scheme reapplies the full map until nothing changes.
enum class IterationScheme { kGraded, kFixedPoint };

/// The abelian connection 1-form r of a chart, truncated at doubled degree dcap.
struct FedosovData {
  std::shared_ptr<const ChartGeometry> chart;
  int dcap = 0;
  WeylForm r;
  WeylForm rhat;
  int iterations = 0;

  const FiberPtr& space() const { return chart->space(); }
};

/// Solves delta r = Rhat + nabla r + (i/hbar) r o r with delta^{-1} r = 0.
FedosovData build_r(const ChartGeometry& chart, int dcap,
                    IterationScheme scheme = IterationScheme::kGraded);

/// delta r - Rhat - nabla r - (i/hbar) r o r.  Its degree-D part depends on
/// r up to degree D + 1, so only the part of doubled degree <= dcap - 1 is
/// determined by fd; the returned form is truncated there.
WeylForm check_flatness(const FedosovData& fd);

/// The Fedosov connection D a = nabla a - delta a + (i/hbar)[r, a].
WeylForm fedosov_connection(const FedosovData& fd, const WeylForm& a);

struct FlatSection {
  PolyJet source;
  WeylForm lifted;
  int dcap = 0;
};

/// The flat section fhat with pi_{(x)0} fhat = f, exact through doubled degree dcap.
FlatSection quantize(const FedosovData& fd, const PolyJet& f,
                     IterationScheme scheme = IterationScheme::kGraded);

/// D fhat truncated at dcap - 1 (the range fixed by fhat's own cap).
WeylForm check_flat_section(const FedosovData& fd, const FlatSection& s);

/// Coefficients of f * g = sum_k hbar^k c_k(f, g).  `coeffs[k]` is reliable
/// for k <= valid_order = floor(dcap / 2); nothing beyond is returned.
struct StarResult {
  std::vector<PolyJet> coeffs;
  int valid_order = 0;

  PolyJet coeff(int k) const;
};

StarResult star(const FedosovData& fd, const PolyJet& f, const PolyJet& g);
StarResult star_sections(const FlatSection& f, const FlatSection& g);

}  // namespace fedq
