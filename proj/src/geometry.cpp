#include "fedq/geometry.hpp"

#include <algorithm>

namespace fedq {

JetTensor::JetTensor(int rank, int dim, const VarsPtr& vars, int cap) : rank_(rank), dim_(dim) {
  size_t n = 1;
  for (int r = 0; r < rank; ++r) n *= static_cast<size_t>(dim);
  data_.assign(n, PolyJet(vars, cap));
}

size_t JetTensor::offset(std::initializer_list<int> idx) const {
  size_t off = 0;
  for (int v : idx) off = off * static_cast<size_t>(dim_) + static_cast<size_t>(v);
  return off;
}

bool JetTensor::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const PolyJet& p) { return p.is_zero(); });
}

JetTensor raise_first(const FiberSpace& space, const JetTensor& t) {
  int n = space.dim();
  JetTensor out(3, n, space.coords());
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      const Scalar& w = space.omega_inv()(l, i);
      if (w.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) out(l, j, k) += t(i, j, k).scaled(w);
      }
    }
  }
  return out;
}

JetTensor lower_first(const FiberSpace& space, const JetTensor& t) {
  int n = space.dim();
  JetTensor out(4, n, space.coords());
  for (int i = 0; i < n; ++i) {
    for (int m = 0; m < n; ++m) {
      const Scalar& w = space.omega()(i, m);
      if (w.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          for (int l = 0; l < n; ++l) out(i, j, k, l) += t(m, j, k, l).scaled(w);
        }
      }
    }
  }
  return out;
}

JetTensor curvature_from_connection(const JetTensor& g) {
  int n = g.dim();
  JetTensor r(4, n, g(0, 0, 0).vars());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = k + 1; l < n; ++l) {
          PolyJet v = g(i, l, j).derivative(k) - g(i, k, j).derivative(l);
          for (int m = 0; m < n; ++m) {
            v += g(i, k, m) * g(m, l, j);
            v -= g(i, l, m) * g(m, k, j);
          }
          r(i, j, l, k) = -v;
          r(i, j, k, l) = std::move(v);
        }
      }
    }
  }
  return r;
}

ChartGeometry::ChartGeometry(FiberPtr space, JetTensor gamma_lower, int xcap)
    : space_(std::move(space)), xcap_(xcap), gamma_(std::move(gamma_lower)) {
  int n = space_->dim();
  if (gamma_.rank() != 3 || gamma_.dim() != n) throw Error("connection table has the wrong shape");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        PolyJet& c = gamma_(i, j, k);
        if (!same_vars(c.vars(), space_->coords()) && !c.is_zero()) {
          throw Error("connection coefficient uses foreign coordinates");
        }
        c = c.vars() ? c.truncated(xcap_) : PolyJet(space_->coords(), xcap_);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const PolyJet& c = gamma_(i, j, k);
        if (!(c == gamma_(j, i, k)) || !(c == gamma_(i, k, j))) {
          throw Error("connection coefficients are not symmetric in all indices at (" +
                      space_->name(i) + "," + space_->name(j) + "," + space_->name(k) + ")");
        }
      }
    }
  }
  gamma_up_ = raise_first(*space_, gamma_);
  curv_up_ = curvature_from_connection(gamma_up_);
  curv_ = lower_first(*space_, curv_up_);

  generator_ = WeylForm(space_);
  generator_.limit_xcap_at(2, xcap_);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Scalar w(make_rational(i == j ? -1 : -2, 2));
      for (int k = 0; k < n; ++k) {
        const PolyJet& c = gamma_(i, j, k);
        if (c.is_zero() && !c.capped()) continue;
        generator_.add(WeylKey{0, mono::unit(i) + mono::unit(j), static_cast<std::uint16_t>(1u << k)},
                       c.scaled(w));
      }
    }
  }
}

ChartGeometry ChartGeometry::from_orbits(FiberPtr space, const std::vector<GammaEntry>& entries,
                                         int xcap) {
  int n = space->dim();
  JetTensor t(3, n, space->coords(), xcap);
  std::vector<bool> seen(static_cast<size_t>(n * n * n), false);
  for (const auto& e : entries) {
    std::array<int, 3> idx = e.indices;
    for (int v : idx) {
      if (v < 0 || v >= n) throw Error("connection index out of range");
    }
    std::sort(idx.begin(), idx.end());
    size_t key = static_cast<size_t>((idx[0] * n + idx[1]) * n + idx[2]);
    if (seen[key]) {
      throw Error("connection orbit (" + space->name(idx[0]) + "," + space->name(idx[1]) + "," +
                  space->name(idx[2]) + ") listed twice");
    }
    seen[key] = true;
    do {
      t(idx[0], idx[1], idx[2]) = e.coeff;
    } while (std::next_permutation(idx.begin(), idx.end()));
  }
  return ChartGeometry(std::move(space), std::move(t), xcap);
}

ChartGeometry ChartGeometry::flat(FiberPtr space, int xcap) {
  int n = space->dim();
  VarsPtr vars = space->coords();
  return ChartGeometry(std::move(space), JetTensor(3, n, vars, xcap), xcap);
}

std::vector<GammaEntry> ChartGeometry::orbit_entries() const {
  std::vector<GammaEntry> out;
  int n = dim();
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int k = j; k < n; ++k) {
        if (!gamma_(i, j, k).is_zero()) out.push_back({{i, j, k}, gamma_(i, j, k)});
      }
    }
  }
  return out;
}

WeylForm ChartGeometry::connection_generator() const { return generator_; }

WeylForm ChartGeometry::rhat(int dcap) const {
  int n = dim();
  int cap = xcap_ < PolyJet::kNoCap ? xcap_ - 1 : xcap_;
  WeylForm out(space_, dcap);
  out.limit_xcap_at(2, cap);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      // -1/4 * (2 if i != j) * 2 (the k<l and l>k halves)
      Scalar w(make_rational(i == j ? -1 : -2, 2));
      for (int k = 0; k < n; ++k) {
        for (int l = k + 1; l < n; ++l) {
          const PolyJet& c = curv_(i, j, k, l);
          if (c.is_zero() && !c.capped()) continue;
          out.add(WeylKey{0, mono::unit(i) + mono::unit(j),
                          static_cast<std::uint16_t>((1u << k) | (1u << l))},
                  c.scaled(w));
        }
      }
    }
  }
  return out;
}

WeylForm nabla(const ChartGeometry& g, const WeylForm& a) {
  WeylForm out = exterior_d(a);
  if (!g.is_flat()) out += adjoint_action(g.connection_generator(), a);
  return out;
}

bool in_sp(const FiberSpace& space, const ScalarMatrix& a) {
  if (a.size() != space.dim()) return false;
  return (space.omega() * a).is_symmetric();
}

WeylForm dU_of(const FiberPtr& space, const ScalarMatrix& a) {
  if (!in_sp(*space, a)) throw Error("matrix is not in the symplectic Lie algebra");
  ScalarMatrix s = space->omega() * a;
  int n = space->dim();
  WeylForm out(space);
  for (int i = 0; i < n; ++i) {
    for (int k = i; k < n; ++k) {
      if (s(i, k).is_zero()) continue;
      Scalar w(Rational(0), make_rational(i == k ? -1 : -2, 2));
      out.add(WeylKey{-1, mono::unit(i) + mono::unit(k), 0},
              PolyJet::constant(space->coords(), w * s(i, k)));
    }
  }
  return out;
}

}  // namespace fedq
