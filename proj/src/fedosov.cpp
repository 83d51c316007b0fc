#include "fedq/fedosov.hpp"

#include <algorithm>

namespace fedq {

namespace {

std::vector<WeylForm> split_by_degree(const WeylForm& a, int dcap) {
  std::vector<WeylForm> parts(static_cast<size_t>(std::max(dcap, 0) + 1), WeylForm(a.space(), dcap));
  for (int d = 0; d <= dcap; ++d) parts[static_cast<size_t>(d)].limit_xcap_at(d, a.xcap_at(d));
  for (const auto& [k, c] : a.terms()) {
    int d = k.doubled_degree();
    if (d < 0) throw std::logic_error("negative doubled degree in a section");
    parts[static_cast<size_t>(d)].add(k, c);
  }
  return parts;
}

WeylForm half_self_action(const WeylForm& r) {
  // (i/hbar) r o r = 1/2 (i/hbar)[r, r] for a 1-form r.
  return adjoint_action(r, r).scaled(Scalar(make_rational(1, 2)));
}

}  // namespace

FedosovData build_r(const ChartGeometry& chart, int dcap, IterationScheme scheme) {
  if (dcap < 3) throw Error("dcap must be at least 3 for the Fedosov connection");
  FedosovData fd;
  fd.chart = std::make_shared<const ChartGeometry>(chart);
  fd.dcap = dcap;
  fd.rhat = chart.rhat(dcap);
  const FiberPtr& s = chart.space();

  if (scheme == IterationScheme::kFixedPoint) {
    WeylForm r(s, dcap);
    for (;;) {
      WeylForm source = fd.rhat + nabla(chart, r) + half_self_action(r);
      WeylForm next = delta_inv(source.truncated(dcap));
      ++fd.iterations;
      if (next == r) break;
      r = std::move(next);
      if (fd.iterations > dcap + 2) throw std::logic_error("Fedosov iteration did not settle");
    }
    fd.r = std::move(r);
    return fd;
  }

  // r_D = delta^{-1}(Rhat_{D-1} + nabla r_{D-1} + 1/2 sum_{a+b=D+1} ad(r_a) r_b).
  std::vector<WeylForm> parts(static_cast<size_t>(dcap + 1), WeylForm(s, dcap));
  for (int d = 3; d <= dcap; ++d) {
    WeylForm source(s, dcap);
    if (d == 3) source += fd.rhat;
    source += nabla(chart, parts[static_cast<size_t>(d - 1)]);
    WeylForm quad(s, dcap);
    for (int a = 3; a <= d - 2; ++a) {
      int b = d + 1 - a;
      const WeylForm& ra = parts[static_cast<size_t>(a)];
      const WeylForm& rb = parts[static_cast<size_t>(b)];
      if (ra.is_zero() || rb.is_zero()) continue;
      quad += adjoint_action(ra, rb);
    }
    source += quad.scaled(Scalar(make_rational(1, 2)));
    parts[static_cast<size_t>(d)] = delta_inv(source);
    ++fd.iterations;
  }
  fd.r = WeylForm(s, dcap);
  for (const auto& p : parts) fd.r += p;
  return fd;
}

WeylForm check_flatness(const FedosovData& fd) {
  const WeylForm& r = fd.r;
  WeylForm res = delta(r) - fd.rhat - nabla(*fd.chart, r) - half_self_action(r);
  return res.truncated(fd.dcap - 1);
}

WeylForm fedosov_connection(const FedosovData& fd, const WeylForm& a) {
  return nabla(*fd.chart, a) - delta(a) + adjoint_action(fd.r, a);
}

FlatSection quantize(const FedosovData& fd, const PolyJet& f, IterationScheme scheme) {
  const FiberPtr& s = fd.space();
  int dcap = fd.dcap;
  FlatSection out{f, WeylForm(s, dcap), dcap};
  if (!f.is_zero() && !same_vars(f.vars(), s->coords())) {
    throw Error("function is not expressed in the chart coordinates");
  }
  WeylForm base = WeylForm::scalar(s, f.vars() ? f : PolyJet(s->coords()), dcap);

  if (scheme == IterationScheme::kFixedPoint) {
    WeylForm fh = base;
    for (int it = 0;; ++it) {
      WeylForm next = base + delta_inv(nabla(*fd.chart, fh) + adjoint_action(fd.r, fh));
      if (next == fh) break;
      fh = std::move(next);
      if (it > dcap + 2) throw std::logic_error("flat-section iteration did not settle");
    }
    out.lifted = std::move(fh);
    return out;
  }

  std::vector<WeylForm> rparts = split_by_degree(fd.r, dcap);
  std::vector<WeylForm> parts(static_cast<size_t>(dcap + 1), WeylForm(s, dcap));
  parts[0] = base;
  for (int d = 1; d <= dcap; ++d) {
    WeylForm source = nabla(*fd.chart, parts[static_cast<size_t>(d - 1)]);
    for (int a = 3; a <= std::min(d + 1, dcap); ++a) {
      int b = d + 1 - a;
      const WeylForm& ra = rparts[static_cast<size_t>(a)];
      const WeylForm& fb = parts[static_cast<size_t>(b)];
      if (ra.is_zero() || fb.is_zero()) continue;
      source += adjoint_action(ra, fb);
    }
    parts[static_cast<size_t>(d)] = delta_inv(source);
  }
  for (const auto& p : parts) out.lifted += p;
  return out;
}

WeylForm check_flat_section(const FedosovData& fd, const FlatSection& s) {
  return fedosov_connection(fd, s.lifted).truncated(fd.dcap - 1);
}

PolyJet StarResult::coeff(int k) const {
  if (k < 0 || k > valid_order) throw Error("star coefficient order beyond the valid range");
  return coeffs[static_cast<size_t>(k)];
}

StarResult star_sections(const FlatSection& f, const FlatSection& g) {
  int dcap = std::min(f.dcap, g.dcap);
  const FiberPtr& s = f.lifted.space();
  WeylForm prod = product_sym0(f.lifted, g.lifted, dcap);
  StarResult res;
  res.valid_order = dcap / 2;
  for (int k = 0; k <= res.valid_order; ++k) res.coeffs.emplace_back(s->coords(), prod.xcap_at(2 * k));
  for (const auto& [k, c] : prod.terms()) {
    if (k.form != 0 || k.sym != 0) continue;
    if (k.hpow <= res.valid_order) res.coeffs[static_cast<size_t>(k.hpow)] += c;
  }
  return res;
}

StarResult star(const FedosovData& fd, const PolyJet& f, const PolyJet& g) {
  return star_sections(quantize(fd, f), quantize(fd, g));
}

}  // namespace fedq
