#pragma once

#include "fedq/expr.hpp"
#include "fedq/weyl.hpp"

#include <random>

namespace fedq::testing {

inline Scalar small_scalar(std::mt19937_64& rng, bool complex = true) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  Rational re(num(rng), den(rng));
  Rational im = complex ? Rational(num(rng), den(rng)) : Rational(0);
  return Scalar(re, im);
}

/// Random polynomial with up to `nterms` terms of total degree <= deg.
inline PolyJet random_poly(std::mt19937_64& rng, const VarsPtr& vars, int deg, int nterms,
                           int cap = PolyJet::kNoCap, bool complex = true) {
  std::uniform_int_distribution<int> d(0, deg);
  std::uniform_int_distribution<int> v(0, static_cast<int>(vars->size()) - 1);
  std::vector<PolyJet::Term> terms;
  for (int t = 0; t < nterms; ++t) {
    Mono m = 0;
    int k = d(rng);
    for (int j = 0; j < k; ++j) m += mono::unit(v(rng));
    terms.emplace_back(m, small_scalar(rng, complex));
  }
  return PolyJet::from_terms(vars, std::move(terms), cap);
}

/// Random Weyl element of fixed form degree with constant-or-linear coefficients.
inline WeylForm random_weyl(std::mt19937_64& rng, const FiberPtr& space, int max_sym, int form_deg,
                            int nterms, int dcap, int coeff_deg = 1) {
  WeylForm w(space, dcap);
  int dim = space->dim();
  std::uniform_int_distribution<int> sd(0, max_sym);
  std::uniform_int_distribution<int> hd(0, 1);
  std::uniform_int_distribution<int> idx(0, dim - 1);
  for (int t = 0; t < nterms; ++t) {
    WeylKey key;
    key.hpow = hd(rng);
    int k = sd(rng);
    for (int j = 0; j < k; ++j) key.sym += mono::unit(idx(rng));
    while (key.form_degree() < form_deg) key.form |= static_cast<std::uint16_t>(1u << idx(rng));
    w.add(key, random_poly(rng, space->coords(), coeff_deg, 2));
  }
  return w;
}

inline PolyJet P(const VarsPtr& vars, const std::string& s) { return parse_poly(s, vars); }

}  // namespace fedq::testing
