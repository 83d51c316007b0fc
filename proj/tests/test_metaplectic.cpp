#include "test_charts.hpp"

#include "fedq/metaplectic.hpp"

#include <doctest.h>

using namespace fedq;
using namespace fedq::testing;

namespace {

FiberPtr fock_space(int n) {
  std::vector<std::string> names;
  for (int j = 1; j <= n; ++j) names.push_back("z" + std::to_string(j));
  for (int j = 1; j <= n; ++j) names.push_back("zbar" + std::to_string(j));
  return FiberSpace::complex_standard(make_vars(names));
}

std::vector<RepConfig> all_configs(int n) {
  return {{RepKind::kSchrodingerPosition, darboux_space(n)},
          {RepKind::kSchrodingerMomentum, darboux_space(n)},
          {RepKind::kFock, fock_space(n)}};
}

std::vector<PolyWave> monomials(const VarsPtr& v, int maxdeg) {
  std::vector<PolyWave> out;
  int n = static_cast<int>(v->size());
  std::vector<int> e(static_cast<size_t>(n), 0);
  for (;;) {
    int total = 0;
    for (int x : e) total += x;
    if (total <= maxdeg) out.push_back(PolyWave::monomial(v, mono::from_exponents(e)));
    int pos = 0;
    while (pos < n && ++e[pos] > maxdeg) e[pos++] = 0;
    if (pos == n) break;
  }
  return out;
}

}  // namespace

TEST_CASE("generator actions") {
  RepConfig pos{RepKind::kSchrodingerPosition, darboux_space(1)};
  auto wv = pos.wave_vars();
  PolyWave q = PolyWave::monomial(wv, mono::unit(0));
  CHECK(apply_generator(pos, 1, q) == PolyWave::monomial(wv, 0, -Scalar::i(), 1));
  RepConfig fock{RepKind::kFock, fock_space(1)};
  auto fv = fock.wave_vars();
  CHECK(apply_generator(fock, 1, PolyWave::monomial(fv, 2 * mono::unit(0))) ==
        PolyWave::monomial(fv, mono::unit(0), Scalar(2), 1));
  for (const auto& cfg : all_configs(1)) {
    WeylForm comm = graded_commutator(WeylForm::generator(cfg.space, 0), WeylForm::generator(cfg.space, 1));
    for (const auto& psi : monomials(cfg.wave_vars(), 3)) {
      Scalar ih = Scalar::i() * cfg.space->omega_inv()(0, 1);
      CHECK(rep_apply(cfg, comm, psi) == psi.scaled(ih).hbar_shifted(1));
    }
  }
}

TEST_CASE("representation respects the Weyl product") {
  std::mt19937_64 rng(211);
  for (int n = 1; n <= 2; ++n) {
    for (const auto& cfg : all_configs(n)) {
      auto wv = cfg.wave_vars();
      for (int t = 0; t < 8; ++t) {
        WeylForm a = random_weyl(rng, cfg.space, 4, 0, 3, WeylForm::kNoDcap, 0);
        WeylForm b = random_weyl(rng, cfg.space, 4, 0, 3, WeylForm::kNoDcap, 0);
        WeylForm ab = product(a, b, WeylForm::kNoDcap);
        for (const auto& psi : monomials(wv, 2)) {
          REQUIRE(rep_apply(cfg, ab, psi) == rep_apply(cfg, a, rep_apply(cfg, b, psi)));
        }
      }
    }
  }
}

TEST_CASE("closed-form metaplectic operators agree with dU") {
  std::mt19937_64 rng(223);
  for (int n = 1; n <= 2; ++n) {
    for (const auto& cfg : all_configs(n)) {
      auto mons = monomials(cfg.wave_vars(), 6);
      for (int t = 0; t < 4; ++t) {
        ScalarMatrix x = random_sp(rng, *cfg.space);
        WaveOperator op = metaplectic_operator(cfg, x);
        WeylForm du = dU_of(cfg.space, x);
        for (const auto& psi : mons) REQUIRE(op.apply(psi) == rep_apply(cfg, du, psi));
      }
      CHECK(metaplectic_operator(cfg, ScalarMatrix(2 * n)).is_zero());
    }
  }
}

TEST_CASE("metaplectic operators form a Lie algebra representation") {
  std::mt19937_64 rng(227);
  for (int n = 1; n <= 2; ++n) {
    for (const auto& cfg : all_configs(n)) {
      auto mons = monomials(cfg.wave_vars(), 6);
      ScalarMatrix a = random_sp(rng, *cfg.space);
      ScalarMatrix b = random_sp(rng, *cfg.space);
      WaveOperator oa = metaplectic_operator(cfg, a);
      WaveOperator ob = metaplectic_operator(cfg, b);
      WaveOperator oc = metaplectic_operator(cfg, a * b - b * a);
      for (const auto& psi : mons) {
        REQUIRE(oa.apply(ob.apply(psi)) - ob.apply(oa.apply(psi)) == oc.apply(psi));
      }
    }
  }
}

TEST_CASE("generator relation holds in the representation") {
  std::mt19937_64 rng(229);
  for (const auto& cfg : all_configs(2)) {
    ScalarMatrix a = random_sp(rng, *cfg.space);
    WeylForm body = dU_of(cfg.space, a).hbar_shifted(1).scaled(-Scalar::i());
    for (int i = 0; i < cfg.space->dim(); ++i) {
      WeylForm yi = WeylForm::generator(cfg.space, i);
      for (const auto& psi : monomials(cfg.wave_vars(), 3)) {
        PolyWave comm = rep_apply(cfg, body, rep_apply(cfg, yi, psi)) - rep_apply(cfg, yi, rep_apply(cfg, body, psi));
        PolyWave expect(cfg.wave_vars());
        for (int j = 0; j < cfg.space->dim(); ++j) expect += rep_apply(cfg, WeylForm::generator(cfg.space, j), psi).scaled(-a(i, j));
        CHECK(comm.scaled(Scalar::i()).hbar_shifted(-1) == expect);
      }
    }
  }
}

TEST_CASE("polarization-preserving elements scale the vacuum by the half trace") {
  std::mt19937_64 rng(233);
  for (int n = 1; n <= 2; ++n) {
    for (const auto& cfg : all_configs(n)) {
      ScalarMatrix x = random_sp(rng, *cfg.space);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          x(r, n + c) = Scalar();
          if (cfg.kind == RepKind::kFock) x(n + r, c) = Scalar();
        }
      REQUIRE(in_sp(*cfg.space, x));
      Scalar tr;
      for (int j = 0; j < n; ++j) tr += x(j, j);
      PolyWave one = PolyWave::constant(cfg.wave_vars(), Scalar(1));
      PolyWave image = rep_apply(cfg, dU_of(cfg.space, x), one);
      if (cfg.kind == RepKind::kSchrodingerMomentum) {
        CHECK(image == one.scaled(tr * Scalar(make_rational(1, 2))));
      } else if (cfg.kind == RepKind::kFock) {
        CHECK(image == one.scaled(tr * Scalar(make_rational(-1, 2))));
      }
    }
  }
}

TEST_CASE("representation input validation") {
  RepConfig pos{RepKind::kSchrodingerPosition, darboux_space(1)};
  PolyWave one = PolyWave::constant(pos.wave_vars(), Scalar(1));
  WeylForm form = WeylForm::constant_term(pos.space, WeylKey{0, 0, 1}, Scalar(1));
  CHECK_THROWS_AS(rep_apply(pos, form, one), Error);
  WeylForm nonconst = WeylForm::scalar(pos.space, P(pos.space->coords(), "q"));
  CHECK_THROWS_AS(rep_apply(pos, nonconst, one), Error);
}
