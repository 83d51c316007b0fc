#include "fedq/cotangent.hpp"

#include "fedq/expr.hpp"

#include <algorithm>

namespace fedq {

SigmaEngine::SigmaEngine(const BaseMetric& base, int dcap)
    : SigmaEngine(base.coords(), base.christoffel(), dcap) {}

SigmaEngine::SigmaEngine(const VarsPtr& base, const JetTensor& christoffel, int dcap)
    : base_(base),
      christoffel_(christoffel),
      n_(static_cast<int>(base->size())),
      lifted_(cotangent_vars(base)),
      chart_(std::make_shared<const ChartGeometry>(lift_connection(base, christoffel))),
      dcap_(dcap),
      auto_dcap_(dcap == 0) {
  if (dcap < 0) throw Error("dcap must be non-negative");
}

void SigmaEngine::ensure_fedosov(int needed) {
  needed = std::max(needed, 3);
  if (fd_ && fd_->dcap >= needed) return;
  int target = dcap_;
  if (auto_dcap_) {
    target = std::max(dcap_, needed + 4);
  } else if (dcap_ < needed) {
    throw Error("dcap " + std::to_string(dcap_) + " is below the required " + std::to_string(needed));
  }
  dcap_ = target;
  fd_ = std::make_unique<FedosovData>(build_r(*chart_, dcap_));
  sections_.clear();
}

const FlatSection& SigmaEngine::section(const PolyJet& f) {
  std::string key = print_canonical(f);
  auto it = sections_.find(key);
  if (it == sections_.end()) it = sections_.emplace(key, quantize(*fd_, f)).first;
  return it->second;
}

StarResult SigmaEngine::star(const PolyJet& f, const PolyJet& g) {
  int n = n_;
  ensure_fedosov(2 * (std::max(p_degree(f, n), 0) + std::max(p_degree(g, n), 0)));
  return star_sections(section(f), section(g));
}

bool SigmaEngine::stable_under_increase(const PolyJet& f) {
  DiffOperator a = sigma(f);
  SigmaEngine wider(base_, christoffel_, dcap_ + 2);
  DiffOperator b = wider.sigma(f);
  int cap = std::min(a.cap(), b.cap());
  return a.truncated(cap) == b.truncated(cap);
}

DiffOperator SigmaEngine::sigma(const PolyJet& f, int pmax) {
  int n = n_;
  if (pmax < 0) pmax = std::max(p_degree(f, n), 0);
  ensure_fedosov(2 * pmax);
  // Group by the momentum part of each monomial.
  Mono qmask = 0;
  for (int v = 0; v < n; ++v) qmask |= Mono{0xff} << (8 * (7 - v));
  std::map<Mono, std::vector<PolyJet::Term>> groups;
  for (const auto& [m, c] : f.terms()) groups[m & ~qmask].emplace_back(m & qmask, c);
  DiffOperator out(base_);
  // A total-degree cap on f leaves the q-coefficient of p^m valid to cap - |m|.
  auto coeff_cap = [&](Mono pm) { return f.capped() ? f.cap() - mono::degree(pm) : f.cap(); };
  for (auto& [pm, terms] : groups) {
    int cap = coeff_cap(pm);
    if (cap < 0) throw Error("symbol jet is too short for its momentum degree");
    out += sigma_monomial(PolyJet::from_terms(lifted_, std::move(terms), cap), pm);
  }
  if (!f.capped()) return out;
  // Momentum monomials absent from a jet are only known to vanish up to
  // its cap; a constant probe with that cap bounds what they contribute.
  std::vector<int> e(static_cast<size_t>(2 * n), 0);
  for (;;) {
    int deg = 0;
    for (int v = n; v < 2 * n; ++v) deg += e[static_cast<size_t>(v)];
    Mono pm = mono::from_exponents(e);
    if (deg <= pmax && !groups.contains(pm)) {
      int cap = coeff_cap(pm);
      if (cap < 0) {
        out.limit_cap(-1);
      } else {
        out.limit_cap(sigma_monomial(PolyJet::constant(lifted_, Scalar(1), cap), pm).cap());
      }
    }
    int v = n;
    while (v < 2 * n && ++e[static_cast<size_t>(v)] > pmax) e[static_cast<size_t>(v++)] = 0;
    if (v == 2 * n) break;
  }
  return out;
}

DiffOperator SigmaEngine::sigma_monomial(const PolyJet& h_of_q, Mono p_part) {
  int n = n_;
  std::vector<int> to_base(static_cast<size_t>(2 * n), -1);
  for (int v = 0; v < n; ++v) to_base[static_cast<size_t>(v)] = v;
  if (p_part == 0) return DiffOperator::multiplication(h_of_q.remapped(base_, to_base));

  std::string key = print_canonical(h_of_q) + "|" + std::to_string(p_part) + "|" + std::to_string(h_of_q.cap());
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  int N = mono::degree(p_part);
  int j = n;
  while (mono::exp(p_part, j) == 0) ++j;
  // h p^m = (h p^{m - e_j}) * p_j - sum_k hbar^k c_k(h p^{m - e_j}, p_j).
  PolyJet head = h_of_q.shifted(p_part - mono::unit(j), Scalar(1));
  PolyJet pj = PolyJet::variable(lifted_, j);
  DiffOperator out = sigma(head) * DiffOperator::derivative(base_, mono::unit(j - n), -Scalar::i(), 1);
  StarResult st = star(head, pj);
  for (int k = 1; k <= N; ++k) {
    PolyJet c = st.coeff(k);
    if (c.is_zero() && !c.capped()) continue;
    if (p_degree(c, n) > N - k) throw std::logic_error("star coefficient does not lower the momentum degree");
    out -= sigma(c, N - k).hbar_shifted(k);
  }
  memo_.emplace(key, out);
  return out;
}

}  // namespace fedq
