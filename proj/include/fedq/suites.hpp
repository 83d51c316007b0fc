#pragma once

#include "fedq/cotangent.hpp"

#include <cstdint>
#include <random>

namespace fedq {

/// Randomized property suites behind `check <suite>`.  Every suite is a
/// deterministic function of its seed.

/// Weyl product associativity, the canonical commutation relation, and the
/// delta / delta* / delta^{-1} identities, on dims 2 and 4.
CheckReport suite_weyl(std::uint64_t seed, int trials = 40);

/// Flatness residual, D fhat = 0, and the star-product axioms (c_0 = fg,
/// correspondence principle, associativity modulo the cap) on one chart.
CheckReport suite_fedosov(const ChartGeometry& chart, int dcap, std::uint64_t seed, int trials = 6);

/// dU homomorphism, the adjoint action of dU on generators, and the
/// closed-form Schrodinger / Fock operators against rep_apply, dims 2 and 4.
CheckReport suite_metaplectic(std::uint64_t seed, int maxdeg = 6);

/// On the lifted chart of `base`: c_k(f, g) = 0 for k > N + M and c_k
/// homogeneous of momentum degree N + M - k, for all pairs of momentum
/// monomials (times the given q-factors) with N + M <= max_total.
CheckReport suite_homogeneity(const BaseMetric& base, int max_total = 4,
                              const std::vector<std::string>& q_factors = {"1"});

/// Random polynomial-Gamma Darboux chart of dimension 2n.
ChartGeometry random_darboux_chart(std::mt19937_64& rng, int n, int deg, int xcap = PolyJet::kNoCap);
/// Random polynomial with up to `nterms` terms of degree <= deg.
PolyJet random_polynomial(std::mt19937_64& rng, const VarsPtr& vars, int deg, int nterms, bool complex = true);

}  // namespace fedq
