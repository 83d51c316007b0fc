#include "test_charts.hpp"

#include "fedq/cotangent.hpp"

#include <doctest.h>

using namespace fedq;
using namespace fedq::testing;

namespace {

VarsPtr base_xy() { return make_vars({"x", "y"}); }

// g = L L^T with L unit lower triangular: det g = 1, inverse polynomial.
BaseMetric unimodular_metric(const std::string& a) {
  VarsPtr v = base_xy();
  PolyJet av = P(v, a);
  PolyJet one = PolyJet::constant(v, Scalar(1));
  return BaseMetric(v, {{one, av}, {av, one + av * av}}, 6);
}

// Second-order normal-coordinate metric of constant curvature K.
BaseMetric normal_sphere(const Scalar& K, int jet_order) {
  VarsPtr v = base_xy();
  Scalar t = K / Scalar(3);
  PolyJet one = PolyJet::constant(v, Scalar(1));
  PolyJet g11 = one - P(v, "y^2").scaled(t);
  PolyJet g22 = one - P(v, "x^2").scaled(t);
  PolyJet g12 = P(v, "x*y").scaled(t);
  return BaseMetric(v, {{g11, g12}, {g12, g22}}, jet_order);
}

}  // namespace

TEST_CASE("christoffel symbols of a warped metric") {
  VarsPtr v = base_xy();
  PolyJet one = PolyJet::constant(v, Scalar(1));
  PolyJet zero(v);
  BaseMetric m(v, {{one, zero}, {zero, one + P(v, "x^2")}}, 7);
  CHECK_FALSE(m.inverse_exact());
  // Gamma^x_{yy} = -x, Gamma^y_{xy} = x / (1 + x^2).
  CHECK(m.christoffel()(0, 1, 1) == P(v, "-x"));
  CHECK(m.christoffel()(1, 0, 1).truncated(5) == P(v, "x - x^3 + x^5"));
  CHECK(m.christoffel()(1, 1, 0) == m.christoffel()(1, 0, 1));
  CHECK(m.christoffel()(0, 0, 0).is_zero());
}

TEST_CASE("normal coordinates have scalar curvature 2K at the origin") {
  Scalar K(make_rational(3, 5));
  BaseMetric m = normal_sphere(K, 8);
  CHECK(m.scalar_curvature().constant_term() == Scalar(2) * K);
  BaseMetric u = unimodular_metric("x*y");
  CHECK(u.inverse_exact());
  CHECK(u.det() == PolyJet::constant(u.coords(), Scalar(1)));
}

TEST_CASE("lift of a flat metric is flat") {
  VarsPtr v = base_xy();
  PolyJet one = PolyJet::constant(v, Scalar(1));
  PolyJet zero(v);
  BaseMetric m(v, {{one, zero}, {zero, one}}, 4);
  ChartGeometry c = lift_connection(m);
  CHECK(c.is_flat());
  CHECK(*c.coords() == VarList{"x", "y", "px", "py"});
}

namespace {

// Expected curvature R^mu_{nu a b} of the lifted connection from base data.
JetTensor lifted_curvature_oracle(const BaseMetric& m, const VarsPtr& lifted) {
  int n = m.n();
  int d = 2 * n;
  auto G = [&](int a, int i, int j) { return pull_back(m.christoffel()(a, i, j), lifted); };
  auto R = [&](int a, int b, int c, int e) { return pull_back(m.curvature()(a, b, c, e), lifted); };
  auto pv = [&](int a) { return PolyJet::variable(lifted, n + a); };
  auto nablaR = [&](int i, int a, int j, int l, int k) {
    PolyJet v = R(a, j, l, k).derivative(i);
    for (int q = 0; q < n; ++q) {
      v += G(a, i, q) * R(q, j, l, k);
      v -= G(q, i, j) * R(a, q, l, k) + G(q, i, l) * R(a, j, q, k) + G(q, i, k) * R(a, j, l, q);
    }
    return v;
  };
  JetTensor out(4, d, lifted);
  Scalar third(make_rational(1, 3));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          out(l, k, i, j) = R(l, k, i, j);
          out(n + k, n + l, i, j) = -R(l, k, i, j);
          PolyJet mixed = (R(j, l, k, i) + R(j, k, l, i)).scaled(third);
          out(n + l, k, i, n + j) = mixed;
          out(n + l, k, n + j, i) = -mixed;
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          PolyJet s(lifted);
          for (int a = 0; a < n; ++a) {
            for (auto [x, y] : {std::pair{i, j}, std::pair{j, i}}) {
              PolyJet t = nablaR(x, a, y, l, k);
              for (int q = 0; q < n; ++q) {
                t -= (G(a, x, q) * R(q, y, l, k)).scaled(Scalar(3));
                t -= G(a, l, q) * R(q, x, y, k);
                t += G(a, k, q) * R(q, x, y, l);
              }
              s += pv(a) * t;
            }
          }
          out(n + i, j, k, l) = s.scaled(third);
        }
  return out;
}

}  // namespace

TEST_CASE("lifted curvature matches the component formulas") {
  for (const char* a : {"x*y", "x^2 + 2*y", "y^2 - x*y + 3*x"}) {
    BaseMetric m = unimodular_metric(a);
    ChartGeometry c = lift_connection(m);
    JetTensor want = lifted_curvature_oracle(m, c.coords());
    int d = c.dim();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            INFO(a, " R^", i, "_", j, k, l);
            CHECK(c.curvature_up()(i, j, k, l) == want(i, j, k, l));
          }
  }
}

TEST_CASE("lifted curvature formulas on a metric with varying volume") {
  VarsPtr v = base_xy();
  PolyJet one = PolyJet::constant(v, Scalar(1));
  BaseMetric m(v, {{one + P(v, "y^2"), P(v, "x*y")}, {P(v, "x*y"), one + P(v, "x^2")}}, 8);
  ChartGeometry c = lift_connection(m);
  JetTensor want = lifted_curvature_oracle(m, c.coords());
  int d = c.dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          const PolyJet& got = c.curvature_up()(i, j, k, l);
          int cap = std::min(got.cap(), want(i, j, k, l).cap());
          INFO("R^", i, "_", j, k, l, " cap ", cap);
          CHECK(got.truncated(cap) == want(i, j, k, l).truncated(cap));
        }
  CheckReport rep = check_compatibility(c, 0);
  INFO(rep.str());
  CHECK(rep.all_pass());
}

TEST_CASE("lifted connection keeps the vertical polarization") {
  BaseMetric m = unimodular_metric("x*y + y^2");
  ChartGeometry c = lift_connection(m);
  CheckReport rep = check_compatibility(c, 6);
  INFO(rep.str());
  CHECK(rep.all_pass());
  CHECK(rep.items.size() == 5);

  std::mt19937_64 rng(7);
  ChartGeometry bad = random_chart(rng, 2, 1, 0.5);
  CheckReport r2 = check_compatibility(bad, 4);
  INFO(r2.str());
  CHECK_FALSE(r2.all_pass());
}

TEST_CASE("Q-degree bounds on a lifted chart") {
  BaseMetric m = unimodular_metric("x*y");
  auto c = std::make_shared<const ChartGeometry>(lift_connection(m));
  FedosovData fd = build_r(*c, 7);
  VarsPtr v = c->coords();
  CheckReport rep = check_qgrad(fd, {P(v, "px"), P(v, "x*py^2 + px*py"), P(v, "x^2*y")});
  INFO(rep.str());
  CHECK(rep.all_pass());
  CHECK(rep.items.size() == 6);

  WeylForm probe(c->space());
  probe.add(WeylKey{0, mono::unit(0) + mono::unit(3), 0b0100}, PolyJet::constant(v, Scalar(1)));
  CHECK(q_degree(probe, 2) == -1);
  CHECK_FALSE(q_degree(WeylForm(c->space()), 2).has_value());
}

TEST_CASE("sigma on functions of low momentum degree") {
  BaseMetric m = unimodular_metric("x*y");
  SigmaEngine se(m, 0);
  VarsPtr L = se.lifted_vars();
  VarsPtr B = m.coords();
  Scalar mi = -Scalar::i();

  CHECK(se.sigma(P(L, "x^2*y + 3")) == DiffOperator::multiplication(P(B, "x^2*y + 3")));
  CHECK(se.sigma(P(L, "py")) == DiffOperator::derivative(B, mono::unit(1), mi, 1));

  // alpha^j p_j goes to -i hbar (alpha^j d_j + 1/2 d_j alpha^j).
  PolyJet a1 = P(B, "x*y + y^3"), a2 = P(B, "x^2 - y");
  DiffOperator want = DiffOperator::multiplication(a1.scaled(mi), 1) * DiffOperator::derivative(B, mono::unit(0)) +
                      DiffOperator::multiplication(a2.scaled(mi), 1) * DiffOperator::derivative(B, mono::unit(1)) +
                      DiffOperator::multiplication((a1.derivative(0) + a2.derivative(1)).scaled(mi / Scalar(2)), 1);
  CHECK(se.sigma(P(L, "(x*y + y^3)*px + (x^2 - y)*py")) == want);
  CHECK(se.dcap() >= 6);
  CHECK(se.stable_under_increase(P(L, "x*px^2 + py")));
}

TEST_CASE("sigma is a homomorphism on polynomial symbols") {
  BaseMetric m = unimodular_metric("x*y");
  SigmaEngine se(m, 8);
  VarsPtr L = se.lifted_vars();
  PolyJet f = P(L, "x*px"), g = P(L, "y^2*py + px");
  StarResult st = se.star(f, g);
  DiffOperator lhs = se.sigma(f) * se.sigma(g);
  DiffOperator rhs(m.coords());
  for (int k = 0; k <= 2; ++k) rhs += se.sigma(st.coeff(k)).hbar_shifted(k);
  CHECK(lhs == rhs);
}

TEST_CASE("conjugating by a jet and the operator algebra") {
  VarsPtr B = base_xy();
  DiffOperator dx = DiffOperator::derivative(B, mono::unit(0));
  PolyJet u = P(B, "1 + x");
  DiffOperator c = conjugate(dx, u, 6);
  // u^{-1} d_x u = d_x + u'/u.
  CHECK(c.coeff(mono::unit(0), 0) == PolyJet::constant(B, Scalar(1)));
  CHECK(c.coeff(0, 0) == P(B, "1 - x + x^2 - x^3 + x^4 - x^5 + x^6"));
  CHECK(c.cap() == 6);
  DiffOperator e = conjugate(dx, P(B, "3"), 6);
  CHECK(e == dx);
  auto out = (dx * DiffOperator::multiplication(P(B, "x*y"))).apply(P(B, "x"));
  CHECK(out.at(0) == P(B, "2*x*y"));
}

namespace {

// g^{ij} d_i d_j - g^{ij} Gamma^k_{ij} d_k.
DiffOperator laplace_beltrami(const BaseMetric& m) {
  VarsPtr v = m.coords();
  DiffOperator lap(v);
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) {
      lap += DiffOperator::multiplication(m.ginv(i, j)) * DiffOperator::derivative(v, mono::unit(i) + mono::unit(j));
      for (int k = 0; k < m.n(); ++k)
        lap -= DiffOperator::multiplication(m.ginv(i, j) * m.christoffel()(k, i, j)) *
               DiffOperator::derivative(v, mono::unit(k));
    }
  return lap;
}

DiffOperator kinetic(SigmaEngine& se, const BaseMetric& m) {
  VarsPtr L = se.lifted_vars();
  PolyJet H(L);
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j)
      H += pull_back(m.ginv(i, j), L) * PolyJet::variable(L, m.n() + i) * PolyJet::variable(L, m.n() + j);
  DiffOperator D = se.sigma(H);
  PolyJet d0 = m.det().scaled(Scalar(1) / m.det().constant_term());
  return conjugate(D, jet_power(d0, Rational(1, 4), m.jet_order()), m.jet_order());
}

}  // namespace

TEST_CASE("kinetic energy quantizes to the Laplacian plus a quarter of R") {
  SUBCASE("unimodular, exact") {
    BaseMetric m = unimodular_metric("x*y + y");
    SigmaEngine se(m, 0);
    DiffOperator rest = kinetic(se, m) + laplace_beltrami(m).hbar_shifted(2);
    CHECK(rest == DiffOperator::multiplication(m.scalar_curvature().scaled(Scalar(make_rational(1, 4))), 2));
  }
  SUBCASE("warped, through the cap") {
    VarsPtr v = base_xy();
    PolyJet one = PolyJet::constant(v, Scalar(1));
    BaseMetric m(v, {{one, PolyJet(v)}, {PolyJet(v), one + P(v, "x^2")}}, 10);
    SigmaEngine se(m, 0);
    DiffOperator rest = kinetic(se, m) + laplace_beltrami(m).hbar_shifted(2);
    int cap = rest.cap();
    REQUIRE(cap >= 2);
    CHECK(rest.truncated(cap) ==
          DiffOperator::multiplication(m.scalar_curvature().scaled(Scalar(make_rational(1, 4))), 2).truncated(cap));
  }
  SUBCASE("normal coordinates at the origin") {
    Scalar K(make_rational(3, 5));
    BaseMetric m = normal_sphere(K, 8);
    SigmaEngine se(m, 0);
    DiffOperator at0 = kinetic(se, m).at_origin();
    VarsPtr v = m.coords();
    DiffOperator want = DiffOperator::derivative(v, mono::unit(0) * 2, Scalar(-1), 2) +
                        DiffOperator::derivative(v, mono::unit(1) * 2, Scalar(-1), 2) +
                        DiffOperator::multiplication(PolyJet::constant(v, Scalar(2) * K / Scalar(4)), 2);
    CHECK(at0 == want);
  }
}

TEST_CASE("capped connection data give honest caps downstream") {
  VarsPtr v = base_xy();
  JetTensor exact(3, 2, v), capped(3, 2, v);
  auto set = [&](int k, int i, int j, const char* s) {
    for (auto [t, c] : {std::pair{&exact, PolyJet::kNoCap}, {&capped, 9}}) {
      (*t)(k, i, j) = P(v, s).truncated(c);
      (*t)(k, j, i) = (*t)(k, i, j);
    }
  };
  set(0, 0, 0, "x + y^2");
  set(1, 0, 1, "x*y - x^3");
  set(0, 1, 1, "y + x^2*y");
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (capped(a, i, j).is_zero()) capped(a, i, j) = PolyJet(v, 9);
  SigmaEngine se(v, exact, 6), sc(v, capped, 6);
  VarsPtr L = se.lifted_vars();
  PolyJet f = P(L, "x*px^2 + py"), g = P(L, "y*py");
  StarResult a = se.star(f, g), b = sc.star(f, g);
  for (int k = 0; k <= 3; ++k) {
    INFO("c", k);
    CHECK(b.coeff(k).cap() >= 9 - 2 * k - 1);
    CHECK(a.coeff(k).truncated(b.coeff(k).cap()) == b.coeff(k));
  }
  DiffOperator oe = se.sigma(f * g), oc = sc.sigma(f * g);
  REQUIRE(oc.cap() >= 0);
  CHECK(oe.truncated(oc.cap()) == oc);
  // sigma stays multiplicative on the exact data.
  DiffOperator prod(v);
  for (int k = 0; k <= 3; ++k) prod += se.sigma(a.coeff(k)).hbar_shifted(k);
  CHECK(se.sigma(f) * se.sigma(g) == prod);
}
