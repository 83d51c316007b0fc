#include "fedq/cotangent.hpp"

#include "fedq/expr.hpp"
#include "fedq/metaplectic.hpp"

#include <algorithm>
#include <array>
#include <tuple>

namespace fedq {

namespace {

std::string idx_str(std::initializer_list<int> idx, int n) {
  std::string s = "(";
  bool first = true;
  for (int i : idx) {
    if (!first) s += ",";
    first = false;
    s += i < n ? std::to_string(i) : std::to_string(i - n) + "'";
  }
  return s + ")";
}

int half_dim(const FiberSpace& s) {
  if (!s.is_standard_darboux()) throw Error("cotangent checks need a Darboux chart");
  return s.dim() / 2;
}

}  // namespace

CheckReport check_compatibility(const ChartGeometry& chart, int dcap) {
  CheckReport rep;
  int n = half_dim(*chart.space());
  int d = 2 * n;

  {
    std::string bad;
    for (int k = n; k < d && bad.empty(); ++k)
      for (int l = n; l < d && bad.empty(); ++l)
        for (int mu = 0; mu < d && bad.empty(); ++mu)
          if (!chart.gamma()(k, l, mu).is_zero()) bad = "Gamma" + idx_str({k, l, mu}, n);
    rep.add("gamma-two-barred", bad.empty(), bad);
  }
  {
    // Symmetrize R_{abc kbar} over (a, b, c) for two or more barred slots.
    std::string bad;
    const JetTensor& R = chart.curvature();
    for (int a = 0; a < d && bad.empty(); ++a)
      for (int b = a; b < d && bad.empty(); ++b)
        for (int c = b; c < d && bad.empty(); ++c) {
          if ((a >= n) + (b >= n) + (c >= n) < 2) continue;
          for (int k = n; k < d && bad.empty(); ++k) {
            std::array<int, 3> p{a, b, c};
            PolyJet s(chart.coords());
            do {
              s += R(p[0], p[1], p[2], k);
            } while (std::next_permutation(p.begin(), p.end()));
            if (!s.is_zero()) bad = "R" + idx_str({a, b, c, k}, n);
          }
        }
    rep.add("curvature-symmetrized", bad.empty(), bad);
  }
  {
    std::string bad;
    for (int i = 0; i < n && bad.empty(); ++i)
      for (int nu = 0; nu < d && bad.empty(); ++nu)
        for (int k = n; k < d && bad.empty(); ++k)
          if (!chart.gamma_up()(i, nu, k).is_zero()) bad = "Gamma^" + idx_str({i, nu, k}, n);
    rep.add("parallel-polarization", bad.empty(), bad);
  }
  {
    std::string bad;
    const JetTensor& R = chart.curvature_up();
    for (int mu = 0; mu < d && bad.empty(); ++mu)
      for (int k = n; k < d && bad.empty(); ++k)
        for (int i = n; i < d && bad.empty(); ++i)
          for (int j = n; j < d && bad.empty(); ++j)
            if (!R(mu, k, i, j).is_zero()) bad = "R^" + idx_str({mu, k, i, j}, n);
    rep.add("curvature-on-polarization", bad.empty(), bad);
  }

  if (dcap >= 3) {
    FedosovData fd = build_r(chart, dcap);
    WeylForm A = connection_form(fd);
    RepConfig cfg{RepKind::kSchrodingerMomentum, chart.space()};
    VarsPtr wv = cfg.wave_vars();
    PolyWave one = PolyWave::constant(wv, Scalar(1));
    std::string bad;
    for (int k = n; k < d && bad.empty(); ++k) {
      WeylForm ak = contract(A, k);
      using Slot = std::tuple<int, int, Mono>;
      std::map<Slot, PolyJet> acc;
      for (const auto& [key, c] : ak.terms()) {
        WeylForm unit(chart.space());
        unit.add(WeylKey{0, key.sym, 0}, PolyJet::constant(chart.coords(), Scalar(1)));
        PolyWave w = rep_apply(cfg, unit, one);
        for (const auto& [h, poly] : w.parts()) {
          for (const auto& [m, s] : poly.terms()) {
            Slot slot{key.doubled_degree(), h + key.hpow, m};
            auto [it, fresh] = acc.try_emplace(slot, c.scaled(s));
            if (!fresh) it->second += c.scaled(s);
          }
        }
      }
      for (const auto& [slot, c] : acc) {
        if (c.is_zero()) continue;
        bad = "D=" + std::to_string(std::get<0>(slot)) + " hbar^" + std::to_string(std::get<1>(slot)) +
              " along dp" + std::to_string(k - n);
        break;
      }
    }
    rep.add("vacuum-annihilated", bad.empty(), bad.empty() ? "through dcap " + std::to_string(dcap) : bad);
  }
  return rep;
}

CheckReport check_qgrad(const FedosovData& fd, const std::vector<PolyJet>& functions) {
  CheckReport rep;
  int n = half_dim(*fd.space());
  WeylForm W = connection_form(fd);
  auto show = [](const std::optional<int>& q) { return q ? std::to_string(*q) : std::string("none"); };

  auto qw = q_degree(W, n);
  rep.add("q(W) >= 0", !qw || *qw >= 0, "min " + show(qw));

  WeylForm rest = fd.chart->connection_generator().truncated(fd.dcap) + fd.r;
  auto qr = q_degree(rest, n);
  bool flat = fd.chart->is_flat();
  rep.add("q(W - omega y dx) > 0", flat ? rest.is_zero() : (!qr || *qr > 0), "min " + show(qr));

  {
    std::map<int, WeylForm> by_d;
    for (const auto& [k, c] : fd.r.terms()) {
      auto [it, fresh] = by_d.try_emplace(k.doubled_degree(), WeylForm(fd.space()));
      it->second.add(k, c);
    }
    std::string bad;
    for (int k = 2; k < fd.dcap && bad.empty(); ++k) {
      std::optional<int> m;
      for (const auto& [D, part] : by_d) {
        if (D <= k) continue;
        auto q = q_degree(part, n);
        if (q && (!m || *q < *m)) m = q;
      }
      if (m && *m <= k - 1) bad = "k=" + std::to_string(k) + " min " + std::to_string(*m);
    }
    rep.add("q(r above k) > k - 1", bad.empty(), bad);
  }

  for (const auto& f : functions) {
    int N = p_degree(f, n);
    FlatSection s = quantize(fd, f);
    std::string bad;
    for (int k = 0; k < fd.dcap && bad.empty(); ++k) {
      WeylForm tail(fd.space());
      for (const auto& [key, c] : s.lifted.terms()) {
        if (key.doubled_degree() > k) tail.add(key, c);
      }
      auto q = q_degree(tail, n);
      if (q && *q <= k - 2 * N) bad = "k=" + std::to_string(k) + " min " + std::to_string(*q);
    }
    rep.add("q(fhat tail) for " + print_canonical(f), bad.empty(), bad);
  }
  return rep;
}

}  // namespace fedq
