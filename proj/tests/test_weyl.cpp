#include "test_util.hpp"

#include <doctest.h>

using namespace fedq;

namespace {

FiberPtr flat2() { return FiberSpace::darboux(make_vars({"q", "p"})); }
FiberPtr flat4() { return FiberSpace::darboux(make_vars({"q1", "q2", "p1", "p2"})); }

WeylForm y(const FiberPtr& s, int mu, int dcap = WeylForm::kNoDcap) {
  return WeylForm::generator(s, mu, dcap);
}

WeylForm c(const FiberPtr& s, int hpow, Mono sym, std::uint16_t form, const Scalar& v,
           int dcap = WeylForm::kNoDcap) {
  return WeylForm::constant_term(s, WeylKey{hpow, sym, form}, v, dcap);
}

// pi_{(x)0}(y^{a_1}..y^{a_k} o y^{b_1}..y^{b_k}) = (i hbar/2)^k * sum over all
// bijections of the slots of products of omega^{a_t b_s}.
Scalar contraction_oracle(const FiberSpace& s, const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return Scalar();
  std::vector<size_t> perm(b.size());
  for (size_t t = 0; t < perm.size(); ++t) perm[t] = t;
  Scalar sum;
  do {
    Scalar prod(1);
    for (size_t t = 0; t < a.size(); ++t) prod *= s.omega_inv()(a[t], b[perm[t]]);
    sum += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum * pow(Scalar(Rational(0), Rational(1, 2)), static_cast<unsigned>(a.size()));
}

Mono key_of(const std::vector<int>& idx) {
  Mono m = 0;
  for (int i : idx) m += mono::unit(i);
  return m;
}

}  // namespace

TEST_CASE("omega convention") {
  auto s = flat2();
  CHECK(s->omega()(1, 0) == Scalar(1));
  CHECK(s->omega_inv()(0, 1) == Scalar(1));
  CHECK(s->is_standard_darboux());
}

TEST_CASE("Weyl product of generators") {
  auto s = flat2();
  WeylForm prod = weyl_product(y(s, 0), y(s, 1));
  WeylForm expect = c(s, 0, mono::unit(0) + mono::unit(1), 0, Scalar(1)) +
                    c(s, 1, 0, 0, Scalar(Rational(0), Rational(1, 2)));
  CHECK(prod == expect);
  CHECK(graded_commutator(y(s, 0), y(s, 1)) == c(s, 1, 0, 0, Scalar::i()));
  CHECK(graded_commutator(y(s, 0), y(s, 0)).is_zero());
}

TEST_CASE("full contraction matches the symmetrized omega sum") {
  auto s = flat4();
  // y^a y^b o y^i y^j, fully contracted: (i hbar/2)^2 (w^{ai} w^{bj} + w^{aj} w^{bi}).
  for (int a = 0; a < 4; ++a) {
    for (int b = a; b < 4; ++b) {
      for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
          WeylForm l = c(s, 0, key_of({a, b}), 0, Scalar(1));
          WeylForm r = c(s, 0, key_of({i, j}), 0, Scalar(1));
          WeylForm got = project(product(l, r, 8), GradingSelector::sym0());
          const auto& w = s->omega_inv();
          Scalar expect = Scalar(Rational(-1, 4)) * (w(a, i) * w(b, j) + w(a, j) * w(b, i));
          CHECK(got.coeff(WeylKey{2, 0, 0}).constant_term() == expect);
          CHECK(product_sym0(l, r, 8) == got);
        }
      }
    }
  }
}

TEST_CASE("full contraction oracle up to degree 4") {
  auto s = flat4();
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> idx(0, 3);
  for (int t = 0; t < 60; ++t) {
    int k = 1 + t % 4;
    std::vector<int> a(static_cast<size_t>(k)), b(static_cast<size_t>(k));
    for (auto& x : a) x = idx(rng);
    for (auto& x : b) x = idx(rng);
    WeylForm l = c(s, 0, key_of(a), 0, Scalar(1));
    WeylForm r = c(s, 0, key_of(b), 0, Scalar(1));
    Scalar got = product_sym0(l, r, 2 * k).coeff(WeylKey{k, 0, 0}).constant_term();
    CHECK(got == contraction_oracle(*s, a, b));
  }
}

TEST_CASE("associativity on random forms") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    auto s = t % 2 ? flat2() : flat4();
    int dcap = 6;
    WeylForm a = testing::random_weyl(rng, s, 3, t % 3 == 0 ? 1 : 0, 3, dcap);
    WeylForm b = testing::random_weyl(rng, s, 3, t % 5 == 0 ? 1 : 0, 3, dcap);
    WeylForm d = testing::random_weyl(rng, s, 3, 0, 3, dcap);
    REQUIRE(product(product(a, b, dcap), d, dcap) == product(a, product(b, d, dcap), dcap));
  }
}

TEST_CASE("graded commutator sign for one-forms") {
  std::mt19937_64 rng(9);
  auto s = flat4();
  for (int t = 0; t < 30; ++t) {
    WeylForm a = testing::random_weyl(rng, s, 3, 1, 3, 8);
    WeylForm b = testing::random_weyl(rng, s, 3, (t % 3), 3, 8);
    int sign = b.is_zero() || (t % 3) == 0 ? 1 : ((t % 3) % 2 ? -1 : 1);
    WeylForm direct = product(a, b, 8) - product(b, a, 8).scaled(Scalar(sign));
    CHECK(commutator(a, b, 8) == direct);
  }
}

TEST_CASE("delta operators") {
  auto s = flat4();
  WeylForm a = c(s, 0, mono::unit(0), 1u << 1, Scalar(1));
  CHECK(delta(delta_star(a)) + delta_star(delta(a)) == a.scaled(Scalar(2)));
  CHECK(delta(WeylForm::scalar(s, testing::P(s->coords(), "q1*p2"))).is_zero());

  std::mt19937_64 rng(13);
  for (int t = 0; t < 100; ++t) {
    WeylForm w = testing::random_weyl(rng, s, 4, t % 3, 4, 10);
    CHECK(delta(delta(w)).is_zero());
    CHECK(delta_star(delta_star(w)).is_zero());
    WeylForm a00 = project(w, GradingSelector::scalar00());
    if (w.form_degree().value_or(1) != 0) a00 = WeylForm(s);
    CHECK(delta_inv(delta(w)) + delta(delta_inv(w)) + a00 == w);
  }
  WeylForm b = c(s, 0, mono::unit(0) + mono::unit(1), 1u << 0, Scalar(1));
  CHECK(delta_inv(delta(b)) + delta(delta_inv(b)) == b);
}

TEST_CASE("delta shifts doubled degree by one") {
  std::mt19937_64 rng(17);
  auto s = flat2();
  for (int t = 0; t < 50; ++t) {
    WeylForm w = testing::random_weyl(rng, s, 4, 1, 1, 10);
    if (w.is_zero()) continue;
    int d = w.terms().begin()->first.doubled_degree();
    WeylForm down = delta(w);
    WeylForm up = delta_star(w);
    for (const auto& [k, v] : down.terms()) CHECK(k.doubled_degree() == d - 1);
    for (const auto& [k, v] : up.terms()) CHECK(k.doubled_degree() == d + 1);
  }
}

TEST_CASE("projections") {
  auto s = flat2();
  WeylForm a = y(s, 0) + c(s, 0, 0, 0, Scalar(3));
  CHECK(project(a, GradingSelector::sym0()) == c(s, 0, 0, 0, Scalar(3)));
  WeylForm b = c(s, 1, 0, 0, Scalar(1)) + c(s, 0, mono::unit(0) + mono::unit(1), 0, Scalar(1)) + y(s, 0);
  CHECK(project(b, GradingSelector::hbar_degree(2)) ==
        c(s, 1, 0, 0, Scalar(1)) + c(s, 0, mono::unit(0) + mono::unit(1), 0, Scalar(1)));
  CHECK(project(c(s, 0, 0, 1, Scalar(1)), GradingSelector::scalar00()).is_zero());
}

TEST_CASE("adjoint action") {
  std::mt19937_64 rng(19);
  auto s = flat4();
  WeylForm gen(s);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (s->omega()(a, b).is_zero()) continue;
      gen.add(WeylKey{0, mono::unit(b), static_cast<std::uint16_t>(1u << a)},
              PolyJet::constant(s->coords(), s->omega()(a, b)));
    }
  }
  for (int t = 0; t < 40; ++t) {
    WeylForm w = testing::random_weyl(rng, s, 4, t % 2, 4, 10);
    CHECK(adjoint_action(gen, w) == -delta(w));
  }
  CHECK(adjoint_action(gen, c(s, 0, 0, 0, Scalar(1))).is_zero());
  // Scalars are central.
  WeylForm f = WeylForm::scalar(s, testing::P(s->coords(), "q1^2 - 3*p2"));
  CHECK(graded_commutator(gen, f).is_zero());
}

TEST_CASE("chart mismatch is rejected") {
  CHECK_THROWS_AS(weyl_product(y(flat2(), 0), y(flat4(), 0)), Error);
}

TEST_CASE("canonical printing of forms") {
  auto s = flat2();
  WeylForm w = c(s, 1, 0, 0, Scalar(2)) + c(s, 0, mono::unit(0) + mono::unit(1), 2, Scalar(1));
  CHECK(w.str() == "y[q,p] dx[p] : 1\nhbar^1 : 2\n");
}
