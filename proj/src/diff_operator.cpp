#include "fedq/diff_operator.hpp"

#include "fedq/expr.hpp"

#include <algorithm>

namespace fedq {

DiffOperator DiffOperator::multiplication(const PolyJet& a, int hpow) {
  DiffOperator d(a.vars());
  d.add(Key{0, hpow}, a);
  return d;
}

DiffOperator DiffOperator::derivative(VarsPtr vars, Mono beta, const Scalar& c, int hpow) {
  DiffOperator d(vars);
  d.add(Key{beta, hpow}, PolyJet::constant(vars, c));
  return d;
}

PolyJet DiffOperator::coeff(Mono deriv, int hpow) const {
  auto it = terms_.find(Key{deriv, hpow});
  return it == terms_.end() ? PolyJet(vars_) : it->second;
}

void DiffOperator::add(const Key& k, const PolyJet& a) {
  if (a.capped() && a.cap() < cap_) limit_cap(a.cap());
  if (a.is_zero()) return;
  if (!vars_) vars_ = a.vars();
  auto [it, fresh] = terms_.try_emplace(k, a.truncated(cap_));
  if (!fresh) it->second += a;
  if (it->second.is_zero()) terms_.erase(it);
}

void DiffOperator::limit_cap(int cap) {
  if (cap >= cap_) return;
  cap_ = cap;
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second = it->second.truncated(cap);
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
  if (!vars_) vars_ = o.vars_;
  limit_cap(o.cap_);
  for (const auto& [k, a] : o.terms_) add(k, a);
  return *this;
}

DiffOperator& DiffOperator::operator-=(const DiffOperator& o) { return *this += o.scaled(Scalar(-1)); }

namespace {

Rational binomial(int n, int k) {
  Rational r(1);
  for (int t = 0; t < k; ++t) r = r * (n - t) / (t + 1);
  return r;
}

}  // namespace

DiffOperator operator*(const DiffOperator& a, const DiffOperator& b) {
  // Up to `order` derivatives of a land on the coefficients of b.
  int order = 0;
  for (const auto& [ka, ca] : a.terms_) order = std::max(order, mono::degree(ka.deriv));
  int cap = std::min(a.cap_, b.cap_ < PolyJet::kNoCap ? b.cap_ - order : b.cap_);
  DiffOperator out(a.vars_ ? a.vars_ : b.vars_, cap);
  int n = out.vars_ ? static_cast<int>(out.vars_->size()) : 0;
  for (const auto& [ka, ca] : a.terms_) {
    std::vector<int> beta = mono::exponents(ka.deriv, n);
    for (const auto& [kb, cb] : b.terms_) {
      // Enumerate delta <= beta.
      std::vector<int> delta(static_cast<size_t>(n), 0);
      for (;;) {
        Rational w(1);
        PolyJet db = cb;
        for (int v = 0; v < n; ++v) {
          w *= binomial(beta[v], delta[v]);
          for (int t = 0; t < delta[v]; ++t) db = db.derivative(v);
        }
        if (!db.is_zero()) {
          Mono rest = ka.deriv - mono::from_exponents(delta) + kb.deriv;
          out.add(DiffOperator::Key{rest, ka.hpow + kb.hpow}, (ca * db).scaled(Scalar(w)));
        }
        int pos = 0;
        while (pos < n && ++delta[pos] > beta[pos]) delta[pos++] = 0;
        if (pos == n) break;
      }
    }
  }
  return out;
}

DiffOperator DiffOperator::scaled(const Scalar& s) const {
  DiffOperator d(vars_, cap_);
  for (const auto& [k, a] : terms_) d.add(k, a.scaled(s));
  return d;
}

DiffOperator DiffOperator::hbar_shifted(int k) const {
  DiffOperator d(vars_, cap_);
  for (const auto& [key, a] : terms_) d.add(Key{key.deriv, key.hpow + k}, a);
  return d;
}

DiffOperator DiffOperator::truncated(int cap) const {
  DiffOperator d(vars_, std::min(cap, cap_));
  for (const auto& [k, a] : terms_) d.add(k, a.truncated(cap));
  return d;
}

DiffOperator DiffOperator::at_origin() const {
  if (cap_ < 0) throw Error("operator coefficients are unknown at the origin");
  DiffOperator d(vars_);
  for (const auto& [k, a] : terms_) d.add(k, PolyJet::constant(vars_, a.constant_term()));
  return d;
}

std::map<int, PolyJet> DiffOperator::apply(const PolyJet& f) const {
  std::map<int, PolyJet> out;
  int n = vars_ ? static_cast<int>(vars_->size()) : 0;
  for (const auto& [k, a] : terms_) {
    PolyJet df = f;
    for (int v = 0; v < n; ++v) {
      for (int t = 0; t < mono::exp(k.deriv, v); ++t) df = df.derivative(v);
    }
    PolyJet term = a * df;
    auto [it, fresh] = out.try_emplace(k.hpow, term);
    if (!fresh) it->second += term;
  }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  }
  return out;
}

std::string DiffOperator::str() const {
  if (terms_.empty()) return "0\n";
  std::vector<std::pair<Key, const PolyJet*>> order;
  for (const auto& [k, a] : terms_) order.emplace_back(k, &a);
  // Highest derivative order first, then ascending hbar power.
  std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
    int dx = mono::degree(x.first.deriv);
    int dy = mono::degree(y.first.deriv);
    if (dx != dy) return dx > dy;
    if (x.first.deriv != y.first.deriv) return x.first.deriv > y.first.deriv;
    return x.first.hpow < y.first.hpow;
  });
  std::string out;
  for (const auto& [k, a] : order) {
    std::string head;
    if (k.hpow != 0) head = "hbar^" + std::to_string(k.hpow);
    if (k.deriv != 0) {
      if (!head.empty()) head += ' ';
      head += "d[" + print_monomial(k.deriv, *vars_) + "]";
    }
    if (head.empty()) head = "1";
    out += head + " : " + print_canonical(*a) + "\n";
  }
  return out;
}

DiffOperator conjugate(const DiffOperator& d, const PolyJet& u, int order) {
  int cap = u.capped() ? u.cap() : order;
  PolyJet inv = jet_inverse(u, cap);
  if (!u.capped()) {
    // Keep the inverse exact when the truncated series already is one.
    PolyJet exact = PolyJet::from_terms(inv.vars(), inv.terms());
    if (exact * u == PolyJet::constant(u.vars(), Scalar(1))) inv = exact;
  }
  return DiffOperator::multiplication(inv) * d * DiffOperator::multiplication(u);
}

}  // namespace fedq
