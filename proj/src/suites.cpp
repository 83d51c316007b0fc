#include "fedq/suites.hpp"

#include "fedq/expr.hpp"
#include "fedq/metaplectic.hpp"

#include <algorithm>

namespace fedq {

namespace {

Scalar random_scalar(std::mt19937_64& rng, bool complex) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  Rational re(num(rng), den(rng));
  Rational im = complex ? Rational(num(rng), den(rng)) : Rational(0);
  return Scalar(re, im);
}

VarsPtr darboux_names(int n) {
  VarList names;
  for (int j = 1; j <= n; ++j) names.push_back(n == 1 ? "q" : "q" + std::to_string(j));
  for (int j = 1; j <= n; ++j) names.push_back(n == 1 ? "p" : "p" + std::to_string(j));
  return make_vars(names);
}

FiberPtr fock_space(int n) {
  VarList names;
  for (int j = 1; j <= n; ++j) names.push_back("z" + std::to_string(j));
  for (int j = 1; j <= n; ++j) names.push_back("zbar" + std::to_string(j));
  return FiberSpace::complex_standard(make_vars(names));
}

WeylForm random_form(std::mt19937_64& rng, const FiberPtr& s, int max_sym, int form_deg, int nterms, int dcap) {
  WeylForm w(s, dcap);
  int dim = s->dim();
  std::uniform_int_distribution<int> sd(0, max_sym);
  std::uniform_int_distribution<int> hd(0, 1);
  std::uniform_int_distribution<int> idx(0, dim - 1);
  for (int t = 0; t < nterms; ++t) {
    WeylKey key;
    key.hpow = hd(rng);
    int k = sd(rng);
    for (int j = 0; j < k; ++j) key.sym += mono::unit(idx(rng));
    while (key.form_degree() < form_deg) key.form |= static_cast<std::uint16_t>(1u << idx(rng));
    w.add(key, random_polynomial(rng, s->coords(), 1, 2));
  }
  return w;
}

/// Constant-coefficient fiber element, for the representations.
WeylForm random_fiber(std::mt19937_64& rng, const FiberPtr& s, int max_sym, int nterms) {
  WeylForm w(s);
  std::uniform_int_distribution<int> sd(0, max_sym);
  std::uniform_int_distribution<int> idx(0, s->dim() - 1);
  for (int t = 0; t < nterms; ++t) {
    WeylKey key;
    int k = sd(rng);
    for (int j = 0; j < k; ++j) key.sym += mono::unit(idx(rng));
    w.add(key, PolyJet::constant(s->coords(), random_scalar(rng, true)));
  }
  return w;
}

ScalarMatrix random_sp(std::mt19937_64& rng, const FiberSpace& s) {
  int d = s.dim();
  ScalarMatrix sym(d);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      Scalar v = random_scalar(rng, false);
      sym(i, j) = v;
      sym(j, i) = v;
    }
  }
  return s.omega_inv() * sym;
}

std::vector<PolyWave> wave_monomials(const VarsPtr& v, int maxdeg) {
  std::vector<PolyWave> out;
  int n = static_cast<int>(v->size());
  std::vector<int> e(static_cast<size_t>(n), 0);
  for (;;) {
    int total = 0;
    for (int x : e) total += x;
    if (total <= maxdeg) out.push_back(PolyWave::monomial(v, mono::from_exponents(e)));
    int pos = 0;
    while (pos < n && ++e[static_cast<size_t>(pos)] > maxdeg) e[static_cast<size_t>(pos++)] = 0;
    if (pos == n) break;
  }
  return out;
}

bool equal_to_cap(const PolyJet& a, const PolyJet& b) {
  int cap = std::min(a.cap(), b.cap());
  return a.truncated(cap) == b.truncated(cap);
}

std::string show(const PolyJet& f) { return print_canonical(f); }

PolyJet poisson(const FiberSpace& s, const PolyJet& f, const PolyJet& g) {
  PolyJet out(s.coords());
  for (int mu = 0; mu < s.dim(); ++mu)
    for (int nu = 0; nu < s.dim(); ++nu)
      if (!s.omega_inv()(mu, nu).is_zero()) out += (f.derivative(mu) * g.derivative(nu)).scaled(s.omega_inv()(mu, nu));
  return out;
}

}  // namespace

PolyJet random_polynomial(std::mt19937_64& rng, const VarsPtr& vars, int deg, int nterms, bool complex) {
  std::uniform_int_distribution<int> d(0, deg);
  std::uniform_int_distribution<int> v(0, static_cast<int>(vars->size()) - 1);
  std::vector<PolyJet::Term> terms;
  for (int t = 0; t < nterms; ++t) {
    Mono m = 0;
    int k = d(rng);
    for (int j = 0; j < k; ++j) m += mono::unit(v(rng));
    terms.emplace_back(m, random_scalar(rng, complex));
  }
  return PolyJet::from_terms(vars, std::move(terms));
}

ChartGeometry random_darboux_chart(std::mt19937_64& rng, int n, int deg, int xcap) {
  FiberPtr s = FiberSpace::darboux(darboux_names(n));
  std::vector<GammaEntry> entries;
  int d = 2 * n;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j)
      for (int k = j; k < d; ++k) {
        PolyJet c = random_polynomial(rng, s->coords(), deg, 2, false);
        if (!c.is_zero()) entries.push_back({{i, j, k}, c});
      }
  return ChartGeometry::from_orbits(s, entries, xcap);
}

CheckReport suite_weyl(std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  CheckReport rep;
  std::string bad;
  for (int t = 0; t < trials && bad.empty(); ++t) {
    FiberPtr s = FiberSpace::darboux(darboux_names(1 + t % 2));
    int dcap = 6;
    WeylForm a = random_form(rng, s, 3, t % 3 == 0 ? 1 : 0, 3, dcap);
    WeylForm b = random_form(rng, s, 3, t % 4 == 0 ? 1 : 0, 3, dcap);
    WeylForm c = random_form(rng, s, 3, 0, 3, dcap);
    if (!(product(product(a, b, dcap), c, dcap) == product(a, product(b, c, dcap), dcap)))
      bad = "trial " + std::to_string(t);
  }
  rep.add("associativity (a o b) o c = a o (b o c)", bad.empty(), bad);

  bad.clear();
  for (int n = 1; n <= 2 && bad.empty(); ++n) {
    FiberPtr s = FiberSpace::darboux(darboux_names(n));
    for (int a = 0; a < 2 * n; ++a)
      for (int b = 0; b < 2 * n; ++b) {
        WeylForm ya = WeylForm::generator(s, a);
        WeylForm yb = WeylForm::generator(s, b);
        WeylForm lhs = product(ya, yb, WeylForm::kNoDcap) - product(yb, ya, WeylForm::kNoDcap);
        WeylForm rhs(s);
        rhs.add(WeylKey{1, 0, 0}, PolyJet::constant(s->coords(), Scalar::i() * s->omega_inv()(a, b)));
        if (!(lhs == rhs) && bad.empty()) bad = "[" + s->name(a) + ", " + s->name(b) + "]";
      }
  }
  rep.add("[y^a, y^b] = i hbar omega^{ab}", bad.empty(), bad);

  std::string squares, hodge, laplace;
  for (int t = 0; t < trials; ++t) {
    FiberPtr s = FiberSpace::darboux(darboux_names(1 + t % 2));
    WeylForm w = random_form(rng, s, 4, t % 3, 4, 10);
    if (!delta(delta(w)).is_zero() || !delta_star(delta_star(w)).is_zero())
      if (squares.empty()) squares = "trial " + std::to_string(t);
    WeylForm a00 = project(w, GradingSelector::scalar00());
    if (w.form_degree().value_or(1) != 0) a00 = WeylForm(s);
    if (!(delta_inv(delta(w)) + delta(delta_inv(w)) + a00 == w) && hodge.empty()) hodge = "trial " + std::to_string(t);
    // On each monomial, delta delta* + delta* delta multiplies by l + p.
    for (const auto& [key, c] : w.terms()) {
      WeylForm m = WeylForm::term(s, key, c);
      Scalar lp(key.sym_degree() + key.form_degree());
      if (!(delta(delta_star(m)) + delta_star(delta(m)) == m.scaled(lp)) && laplace.empty())
        laplace = s->name(0) + " chart, " + w.key_str(key);
    }
  }
  rep.add("delta^2 = 0, delta*^2 = 0", squares.empty(), squares);
  rep.add("delta delta* + delta* delta = (l + p) id", laplace.empty(), laplace);
  rep.add("a = delta delta^-1 a + delta^-1 delta a + a_00", hodge.empty(), hodge);
  return rep;
}

CheckReport suite_fedosov(const ChartGeometry& chart, int dcap, std::uint64_t seed, int trials) {
  if (dcap < 3) throw Error("dcap must be at least 3");
  std::mt19937_64 rng(seed);
  CheckReport rep;
  FedosovData fd = build_r(chart, dcap);
  WeylForm res = check_flatness(fd);
  rep.add("flatness residual", res.is_zero(), res.is_zero() ? "" : std::to_string(res.terms().size()) + " terms");

  const FiberSpace& s = *chart.space();
  std::string dfhat, c0, corr, assoc;
  int top = dcap / 2;
  for (int t = 0; t < trials; ++t) {
    PolyJet f = random_polynomial(rng, chart.coords(), 3, 3);
    PolyJet g = random_polynomial(rng, chart.coords(), 3, 3);
    PolyJet h = random_polynomial(rng, chart.coords(), 2, 2);
    FlatSection fs = quantize(fd, f);
    if (!check_flat_section(fd, fs).is_zero() && dfhat.empty()) dfhat = "f = " + show(f);
    StarResult fg = star_sections(fs, quantize(fd, g));
    StarResult gf = star(fd, g, f);
    if (!equal_to_cap(fg.coeff(0), f * g) && c0.empty()) c0 = "f = " + show(f) + ", g = " + show(g);
    if (top >= 1 && !equal_to_cap(fg.coeff(1) - gf.coeff(1), poisson(s, f, g).scaled(Scalar::i())) && corr.empty())
      corr = "f = " + show(f) + ", g = " + show(g);
    // Associativity coefficient by coefficient through hbar^top.
    if (t < 2 && assoc.empty()) {
      StarResult gh = star(fd, g, h);
      for (int k = 0; k <= top && assoc.empty(); ++k) {
        PolyJet left(chart.coords()), right(chart.coords());
        for (int j = 0; j <= k; ++j) {
          left += star(fd, fg.coeff(j), h).coeff(k - j);
          right += star(fd, f, gh.coeff(j)).coeff(k - j);
        }
        if (!equal_to_cap(left, right)) assoc = "hbar^" + std::to_string(k) + " trial " + std::to_string(t);
      }
    }
  }
  rep.add("D fhat = 0", dfhat.empty(), dfhat);
  rep.add("c_0(f, g) = f g", c0.empty(), c0);
  rep.add("c_1(f, g) - c_1(g, f) = i {f, g}", corr.empty(), corr);
  rep.add("(f * g) * h = f * (g * h) through hbar^" + std::to_string(top), assoc.empty(), assoc);
  return rep;
}

CheckReport suite_metaplectic(std::uint64_t seed, int maxdeg) {
  std::mt19937_64 rng(seed);
  CheckReport rep;
  std::string hom, adj, rep_hom, closed, lie;
  for (int n = 1; n <= 2; ++n) {
    FiberPtr s = FiberSpace::darboux(darboux_names(n));
    ScalarMatrix a = random_sp(rng, *s);
    ScalarMatrix b = random_sp(rng, *s);
    if (!(commutator(dU_of(s, a), dU_of(s, b), WeylForm::kNoDcap) == dU_of(s, a * b - b * a)) && hom.empty())
      hom = "dim " + std::to_string(2 * n);
    WeylForm body = dU_of(s, a).hbar_shifted(1).scaled(-Scalar::i());
    for (int i = 0; i < s->dim(); ++i) {
      WeylForm expect(s);
      for (int j = 0; j < s->dim(); ++j)
        expect.add(WeylKey{0, mono::unit(j), 0}, PolyJet::constant(s->coords(), -a(i, j)));
      if (!(adjoint_action(body, WeylForm::generator(s, i)) == expect) && adj.empty()) adj = "y^" + s->name(i);
    }

    std::vector<RepConfig> configs = {{RepKind::kSchrodingerPosition, s},
                                      {RepKind::kSchrodingerMomentum, s},
                                      {RepKind::kFock, fock_space(n)}};
    for (const auto& cfg : configs) {
      std::string tag = std::string(cfg.kind == RepKind::kFock ? "fock" : cfg.kind == RepKind::kSchrodingerPosition
                                                                              ? "position"
                                                                              : "momentum") +
                        " dim " + std::to_string(2 * n);
      auto mons = wave_monomials(cfg.wave_vars(), maxdeg);
      WeylForm u = random_fiber(rng, cfg.space, 3, 3);
      WeylForm v = random_fiber(rng, cfg.space, 3, 3);
      WeylForm uv = product(u, v, WeylForm::kNoDcap);
      ScalarMatrix x = random_sp(rng, *cfg.space);
      ScalarMatrix z = random_sp(rng, *cfg.space);
      WaveOperator ox = metaplectic_operator(cfg, x);
      WaveOperator oz = metaplectic_operator(cfg, z);
      WaveOperator oc = metaplectic_operator(cfg, x * z - z * x);
      WeylForm dux = dU_of(cfg.space, x);
      for (const auto& psi : mons) {
        if (!(rep_apply(cfg, uv, psi) == rep_apply(cfg, u, rep_apply(cfg, v, psi))) && rep_hom.empty())
          rep_hom = tag + " on " + psi.str();
        if (!(ox.apply(psi) == rep_apply(cfg, dux, psi)) && closed.empty()) closed = tag + " on " + psi.str();
        if (!(ox.apply(oz.apply(psi)) - oz.apply(ox.apply(psi)) == oc.apply(psi)) && lie.empty())
          lie = tag + " on " + psi.str();
      }
    }
  }
  rep.add("[dU(A), dU(B)] = dU([A, B])", hom.empty(), hom);
  rep.add("(i/hbar)[(hbar/i) dU(A), y^i] = -A^i_j y^j", adj.empty(), adj);
  rep.add("representations respect the Weyl product", rep_hom.empty(), rep_hom);
  rep.add("closed-form operators equal rep of dU through degree " + std::to_string(maxdeg), closed.empty(), closed);
  rep.add("operators represent [A, B]", lie.empty(), lie);
  return rep;
}

CheckReport suite_homogeneity(const BaseMetric& base, int max_total, const std::vector<std::string>& q_factors) {
  int n = base.n();
  VarsPtr lifted = cotangent_vars(base.coords());
  ChartGeometry chart = lift_connection(base);
  int dcap = 2 * max_total + 2;
  FedosovData fd = build_r(chart, dcap);
  int top = dcap / 2;

  // Momentum monomials of degree <= max_total times each q-factor.
  struct Entry {
    PolyJet f;
    int deg;
    FlatSection section;
  };
  std::vector<Entry> funcs;
  for (const auto& qf : q_factors) {
    PolyJet q = pull_back(parse_poly(qf, base.coords()), lifted);
    std::vector<int> e(static_cast<size_t>(2 * n), 0);
    for (;;) {
      int deg = 0;
      for (int v = n; v < 2 * n; ++v) deg += e[static_cast<size_t>(v)];
      if (deg <= max_total) {
        PolyJet f = q * PolyJet::from_terms(lifted, {{mono::from_exponents(e), Scalar(1)}});
        funcs.push_back({f, deg, quantize(fd, f)});
      }
      int v = n;
      while (v < 2 * n && ++e[static_cast<size_t>(v)] > max_total) e[static_cast<size_t>(v++)] = 0;
      if (v == 2 * n) break;
    }
  }

  CheckReport rep;
  std::string bound, homog;
  int pairs = 0;
  for (const auto& a : funcs)
    for (const auto& b : funcs) {
      int total = a.deg + b.deg;
      if (total > max_total) continue;
      ++pairs;
      StarResult st = star_sections(a.section, b.section);
      for (int k = 0; k <= top; ++k) {
        PolyJet c = st.coeff(k);
        std::string where = "c_" + std::to_string(k) + "(" + show(a.f) + ", " + show(b.f) + ")";
        if (k > total) {
          if (!c.is_zero() && bound.empty()) bound = where + " = " + show(c);
          continue;
        }
        for (const auto& [m, s] : c.terms()) {
          int d = 0;
          for (int v = n; v < 2 * n; ++v) d += mono::exp(m, v);
          if (d != total - k && homog.empty()) homog = where + " has momentum degree " + std::to_string(d);
        }
      }
    }
  std::string summary = std::to_string(pairs) + " pairs";
  rep.add("c_k = 0 for k > N + M", bound.empty(), bound.empty() ? summary : bound);
  rep.add("deg_p c_k = N + M - k", homog.empty(), homog.empty() ? summary : homog);
  return rep;
}

}  // namespace fedq
