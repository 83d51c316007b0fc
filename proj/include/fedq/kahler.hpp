#pragma once

#include "fedq/cotangent.hpp"

namespace fedq {

/// A Kahler potential on n complex dimensions with its connection chart.
/// Coordinates are (z1..zn, zbar1..zbarn).
struct KahlerChart {
  int n = 0;
  PolyJet K;
  std::shared_ptr<const ChartGeometry> chart;
  /// True when i d dbar K is not constant; omega is then its value at 0.
  bool omega_frozen = false;
};

/// Coordinates z1..zn, zbar1..zbarn (or z, zbar for n = 1).
VarsPtr kahler_vars(int n);

/// True when K is invariant under z <-> zbar with conjugated coefficients.
bool is_real_potential(const PolyJet& K, int n);

/// Gamma_{abar b c} = -i d^3 K, Gamma_{a bbar cbar} = i d^3 K, all others 0,
/// over omega_{a bbar} = i K_{a bbar}(0).  A non-constant i d dbar K is an
/// error unless `freeze_omega`, which keeps its value at 0 and flags the chart.
KahlerChart kahler_chart(const PolyJet& K, int xcap = PolyJet::kNoCap, bool freeze_omega = false);

/// c_k(f, g) = 0 for 1 <= k <= order, and f * d_a K = f d_a K + (i hbar/2){f, d_a K}
/// through hbar^order, for holomorphic f and g.  Uses dcap = 2 * order.
CheckReport check_holomorphic_star(const KahlerChart& kc, const PolyJet& f, const PolyJet& g, int order);

}  // namespace fedq
