#include "fedq/cotangent.hpp"

#include "fedq/expr.hpp"
#include "fedq/metaplectic.hpp"

#include <algorithm>
#include <numeric>

namespace fedq {

namespace {

using JetMatrix = std::vector<std::vector<PolyJet>>;

PolyJet determinant(const JetMatrix& m, const VarsPtr& vars) {
  size_t n = m.size();
  if (n == 0) return PolyJet::constant(vars, Scalar(1));
  if (n == 1) return m[0][0];
  PolyJet det(vars);
  for (size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    JetMatrix minor;
    for (size_t r = 1; r < n; ++r) {
      std::vector<PolyJet> row;
      for (size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(m[r][k]);
      }
      minor.push_back(std::move(row));
    }
    PolyJet term = m[0][c] * determinant(minor, vars);
    if (c % 2) {
      det -= term;
    } else {
      det += term;
    }
  }
  return det;
}

JetMatrix adjugate(const JetMatrix& m, const VarsPtr& vars) {
  size_t n = m.size();
  JetMatrix adj(n, std::vector<PolyJet>(n, PolyJet(vars)));
  if (n == 1) {
    adj[0][0] = PolyJet::constant(vars, Scalar(1));
    return adj;
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      JetMatrix minor;
      for (size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<PolyJet> row;
        for (size_t k = 0; k < n; ++k) {
          if (k != i) row.push_back(m[r][k]);
        }
        minor.push_back(std::move(row));
      }
      PolyJet d = determinant(minor, vars);
      adj[i][j] = (i + j) % 2 ? -d : d;
    }
  }
  return adj;
}

}  // namespace

BaseMetric::BaseMetric(VarsPtr coords, std::vector<std::vector<PolyJet>> g, int jet_order)
    : n_(static_cast<int>(g.size())), coords_(std::move(coords)), jet_order_(jet_order), g_(std::move(g)) {
  if (!coords_ || static_cast<int>(coords_->size()) != n_) throw Error("metric size does not match coordinates");
  if (n_ == 0 || 2 * n_ > mono::kMaxVars) throw Error("base dimension must be between 1 and 4");
  if (jet_order < 0) throw Error("jet_order must be non-negative");
  ScalarMatrix g0(n_);
  for (int i = 0; i < n_; ++i) {
    if (static_cast<int>(g_[i].size()) != n_) throw Error("metric must be a square matrix");
    for (int j = 0; j < n_; ++j) {
      PolyJet& c = g_[i][j];
      if (!c.vars()) c = PolyJet(coords_);
      if (!same_vars(c.vars(), coords_)) throw Error("metric entry uses foreign coordinates");
      g0(i, j) = c.constant_term();
    }
  }
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (!(g_[i][j] == g_[j][i])) throw Error("metric is not symmetric");
    }
  }
  try {
    (void)g0.inverse();
  } catch (const Error&) {
    throw Error("metric is degenerate at the origin");
  }

  det_ = determinant(g_, coords_);
  JetMatrix adj = adjugate(g_, coords_);
  PolyJet det_inv;
  if (det_.is_constant()) {
    inverse_exact_ = true;
    det_inv = PolyJet::constant(coords_, Scalar(1) / det_.constant_term());
  } else {
    det_inv = jet_inverse(det_, jet_order_);
  }
  ginv_.assign(static_cast<size_t>(n_), std::vector<PolyJet>(static_cast<size_t>(n_), PolyJet(coords_)));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) ginv_[i][j] = adj[i][j] * det_inv;
  }

  christoffel_ = JetTensor(3, n_, coords_);
  for (int k = 0; k < n_; ++k) {
    for (int i = 0; i < n_; ++i) {
      for (int j = i; j < n_; ++j) {
        PolyJet v(coords_);
        for (int l = 0; l < n_; ++l) {
          PolyJet s = g_[l][j].derivative(i) + g_[l][i].derivative(j) - g_[i][j].derivative(l);
          if (!s.is_zero()) v += ginv_[k][l] * s;
        }
        v = v.scaled(Scalar(make_rational(1, 2)));
        christoffel_(k, j, i) = v;
        christoffel_(k, i, j) = std::move(v);
      }
    }
  }
  curvature_ = curvature_from_connection(christoffel_);
  scalar_ = PolyJet(coords_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      for (int l = 0; l < n_; ++l) scalar_ += ginv_[j][l] * curvature_(i, j, i, l);
    }
  }
}

VarsPtr cotangent_vars(const VarsPtr& base) {
  VarList names = *base;
  for (const auto& b : *base) names.push_back("p" + b);
  return make_vars(names);
}

PolyJet pull_back(const PolyJet& f, const VarsPtr& lifted) {
  std::vector<int> idx(f.vars() ? f.vars()->size() : 0);
  std::iota(idx.begin(), idx.end(), 0);
  if (!f.vars()) return PolyJet(lifted, f.cap());
  return f.remapped(lifted, idx);
}

ChartGeometry lift_connection(const BaseMetric& base) { return lift_connection(base.coords(), base.christoffel()); }

ChartGeometry lift_connection(const VarsPtr& base, const JetTensor& christoffel) {
  int n = static_cast<int>(base->size());
  if (christoffel.rank() != 3 || christoffel.dim() != n) throw Error("connection does not match the base");
  VarsPtr lifted = cotangent_vars(base);
  FiberPtr space = FiberSpace::darboux(lifted);
  JetTensor t(3, 2 * n, lifted);
  std::vector<PolyJet> gam(static_cast<size_t>(n * n * n));
  auto G = [&](int a, int i, int j) -> const PolyJet& {
    return gam[static_cast<size_t>((a * n + i) * n + j)];
  };
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        gam[static_cast<size_t>((a * n + i) * n + j)] = pull_back(christoffel(a, i, j), lifted);

  // One barred index: Gamma_{kbar i j} = Gamma~^k_{ij}.
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const PolyJet& c = G(k, i, j);
        t(n + k, i, j) = c;
        t(i, n + k, j) = c;
        t(i, j, n + k) = c;
      }
    }
  }
  // No barred index: Gamma_{kij} = -Gamma^{kbar}_{ij}
  //   = -(p_a/3)(2 G^a_{jl} G^l_{ki} - d_j G^a_{ki} + cyclic(ijk)).
  auto cyc = [&](int a, int i, int j, int k) {
    PolyJet v = -G(a, k, i).derivative(j);
    for (int l = 0; l < n; ++l) v += (G(a, j, l) * G(l, k, i)).scaled(Scalar(2));
    return v;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        PolyJet v(lifted);
        for (int a = 0; a < n; ++a) {
          PolyJet s = cyc(a, i, j, k) + cyc(a, j, k, i) + cyc(a, k, i, j);
          if (!s.is_zero()) v += s * PolyJet::variable(lifted, n + a);
        }
        t(k, i, j) = v.scaled(Scalar(make_rational(-1, 3)));
      }
    }
  }
  return ChartGeometry(space, std::move(t));
}

int key_q_degree(const WeylKey& key, int n) {
  int q = 0;
  for (int v = 0; v < 2 * n; ++v) {
    int e = mono::exp(key.sym, v) + ((key.form >> v) & 1);
    q += v < n ? e : -e;
  }
  return q;
}

std::optional<int> q_degree(const WeylForm& a, int n) {
  std::optional<int> m;
  for (const auto& [k, c] : a.terms()) {
    int q = key_q_degree(k, n);
    if (!m || q < *m) m = q;
  }
  return m;
}

int p_degree(const PolyJet& f, int n) {
  int best = -1;
  for (const auto& [m, c] : f.terms()) {
    int d = 0;
    for (int v = n; v < 2 * n; ++v) d += mono::exp(m, v);
    best = std::max(best, d);
  }
  return best;
}

bool CheckReport::all_pass() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& c) { return c.pass; });
}

void CheckReport::add(std::string name, bool pass, std::string detail) {
  items.push_back({std::move(name), pass, std::move(detail)});
}

std::string CheckReport::str() const {
  std::string out;
  for (const auto& c : items) {
    out += (c.pass ? "PASS " : "FAIL ") + c.name;
    if (!c.detail.empty()) out += "  (" + c.detail + ")";
    out += "\n";
  }
  return out;
}

WeylForm connection_form(const FedosovData& fd) {
  const FiberPtr& s = fd.space();
  int d = s->dim();
  WeylForm w(s, fd.dcap);
  for (int mu = 0; mu < d; ++mu) {
    for (int nu = 0; nu < d; ++nu) {
      if (s->omega()(mu, nu).is_zero()) continue;
      w.add(WeylKey{0, mono::unit(nu), static_cast<std::uint16_t>(1u << mu)},
            PolyJet::constant(s->coords(), s->omega()(mu, nu)));
    }
  }
  w += fd.chart->connection_generator().truncated(fd.dcap);
  w += fd.r;
  return w;
}

}  // namespace fedq
