#include "fedq/kahler.hpp"

#include "fedq/expr.hpp"

#include <numeric>

namespace fedq {

VarsPtr kahler_vars(int n) {
  if (n < 1 || 2 * n > mono::kMaxVars) throw Error("complex dimension must be between 1 and 4");
  VarList names;
  for (int a = 1; a <= n; ++a) names.push_back(n == 1 ? "z" : "z" + std::to_string(a));
  for (int a = 1; a <= n; ++a) names.push_back(n == 1 ? "zbar" : "zbar" + std::to_string(a));
  return make_vars(names);
}

bool is_real_potential(const PolyJet& K, int n) {
  std::vector<int> swap(static_cast<size_t>(2 * n));
  for (int a = 0; a < n; ++a) {
    swap[static_cast<size_t>(a)] = n + a;
    swap[static_cast<size_t>(n + a)] = a;
  }
  return K.remapped(K.vars(), swap).conj() == K;
}

namespace {

PolyJet third_derivative(const PolyJet& K, int i, int j, int k) {
  return K.derivative(i).derivative(j).derivative(k);
}

}  // namespace

KahlerChart kahler_chart(const PolyJet& K, int xcap, bool freeze_omega) {
  if (!K.vars() || K.nvars() % 2 != 0) throw Error("potential needs coordinates z..., zbar...");
  KahlerChart kc;
  kc.n = K.nvars() / 2;
  int n = kc.n;
  int d = 2 * n;
  kc.K = K;
  if (!is_real_potential(K, n)) throw Error("potential is not real");

  ScalarMatrix mixed(n);
  ScalarMatrix w(d);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      PolyJet kab = K.derivative(a).derivative(n + b);
      if (!kab.is_constant()) kc.omega_frozen = true;
      mixed(a, b) = kab.constant_term();
      w(a, n + b) = Scalar::i() * mixed(a, b);
      w(n + b, a) = -w(a, n + b);
    }
  }
  if (kc.omega_frozen && !freeze_omega)
    throw Error("i d dbar K is not constant; normalize the quadratic part or freeze omega at the origin");
  try {
    (void)mixed.inverse();
  } catch (const Error&) {
    throw Error("potential is degenerate at the origin");
  }
  FiberPtr space = std::make_shared<const FiberSpace>(K.vars(), std::move(w));

  std::vector<GammaEntry> entries;
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      for (int k = j; k < d; ++k) {
        int barred = (i >= n) + (j >= n) + (k >= n);
        if (barred == 0 || barred == 3) continue;
        Scalar s = barred == 1 ? -Scalar::i() : Scalar::i();
        PolyJet c = third_derivative(K, i, j, k).scaled(s).truncated(xcap);
        if (!c.is_zero() || c.capped()) entries.push_back({{i, j, k}, c});
      }
    }
  }
  kc.chart = std::make_shared<const ChartGeometry>(ChartGeometry::from_orbits(space, entries, xcap));
  return kc;
}

CheckReport check_holomorphic_star(const KahlerChart& kc, const PolyJet& f, const PolyJet& g, int order) {
  if (order < 1) throw Error("order must be at least 1");
  int n = kc.n;
  for (const PolyJet* h : {&f, &g}) {
    for (int a = 0; a < n; ++a) {
      if (!h->derivative(n + a).is_zero()) throw Error("function is not holomorphic: " + print_canonical(*h));
    }
  }
  const ChartGeometry& chart = *kc.chart;
  FedosovData fd = build_r(chart, std::max(3, 2 * order));
  CheckReport rep;
  auto vanishes = [](const PolyJet& c) {
    if (c.is_zero()) return std::string();
    return (c.capped() ? "cap " + std::to_string(c.cap()) + ": " : std::string()) + print_canonical(c);
  };

  StarResult fg = star(fd, f, g);
  for (int k = 1; k <= order; ++k) {
    std::string bad = vanishes(fg.coeff(k));
    rep.add("c_" + std::to_string(k) + "(f, g) = 0", bad.empty(), bad);
  }

  const ScalarMatrix& winv = chart.space()->omega_inv();
  FlatSection fs = quantize(fd, f);
  for (int a = 0; a < n; ++a) {
    PolyJet dK = kc.K.derivative(a);
    StarResult st = star_sections(fs, quantize(fd, dK));
    PolyJet pb(chart.coords());
    for (int mu = 0; mu < 2 * n; ++mu)
      for (int nu = 0; nu < 2 * n; ++nu)
        if (!winv(mu, nu).is_zero()) pb += (f.derivative(mu) * dK.derivative(nu)).scaled(winv(mu, nu));
    std::string bad;
    for (int k = 1; k <= order && bad.empty(); ++k) {
      PolyJet c = st.coeff(k);
      if (k == 1) c -= pb.scaled(Scalar(Rational(0), Rational(1, 2)));
      bad = vanishes(c);
      if (!bad.empty()) bad = "hbar^" + std::to_string(k) + " " + bad;
    }
    std::string name = "f * d" + (*chart.coords())[static_cast<size_t>(a)] + "K = f d K + (i hbar/2){f, d K}";
    rep.add(name, bad.empty(), bad);
  }
  return rep;
}

}  // namespace fedq
