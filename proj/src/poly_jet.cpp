#include "fedq/poly_jet.hpp"

#include <algorithm>
#include <unordered_map>

namespace fedq {

VarsPtr make_vars(std::vector<std::string> names) {
  if (names.size() > static_cast<size_t>(mono::kMaxVars)) {
    throw Error("at most " + std::to_string(mono::kMaxVars) + " variables are supported");
  }
  for (size_t a = 0; a < names.size(); ++a) {
    for (size_t b = a + 1; b < names.size(); ++b) {
      if (names[a] == names[b]) throw Error("duplicate variable name '" + names[a] + "'");
    }
  }
  return std::make_shared<const VarList>(std::move(names));
}

bool same_vars(const VarsPtr& a, const VarsPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

namespace mono {

Mono from_exponents(std::span<const int> e) {
  if (e.size() > static_cast<size_t>(kMaxVars)) throw Error("too many exponents");
  Mono m = 0;
  for (size_t v = 0; v < e.size(); ++v) {
    if (e[v] < 0 || e[v] > 255) throw Error("exponent out of range");
    m |= static_cast<Mono>(e[v]) << (8 * (7 - v));
  }
  return m;
}

std::vector<int> exponents(Mono m, int nvars) {
  std::vector<int> e(static_cast<size_t>(nvars));
  for (int v = 0; v < nvars; ++v) e[static_cast<size_t>(v)] = exp(m, v);
  return e;
}

bool divides(Mono small, Mono big) {
  for (int v = 0; v < kMaxVars; ++v) {
    if (exp(small, v) > exp(big, v)) return false;
  }
  return true;
}

}  // namespace mono

namespace {

bool term_less(const PolyJet::Term& a, const PolyJet::Term& b) {
  return mono::canonical_less(a.first, b.first);
}

}  // namespace

PolyJet PolyJet::constant(VarsPtr vars, const Scalar& c, int cap) {
  return monomial(std::move(vars), 0, c, cap);
}

PolyJet PolyJet::variable(VarsPtr vars, int v, int cap) {
  if (v < 0 || v >= static_cast<int>(vars->size())) throw Error("variable index out of range");
  return monomial(std::move(vars), mono::unit(v), Scalar(1), cap);
}

PolyJet PolyJet::monomial(VarsPtr vars, Mono m, const Scalar& c, int cap) {
  PolyJet p(std::move(vars), cap);
  if (!c.is_zero() && mono::degree(m) <= cap) p.terms_.emplace_back(m, c);
  return p;
}

PolyJet PolyJet::from_terms(VarsPtr vars, std::vector<Term> terms, int cap) {
  PolyJet p(std::move(vars), cap);
  std::sort(terms.begin(), terms.end(), term_less);
  for (auto& t : terms) {
    if (mono::degree(t.first) > cap) continue;
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
    } else if (!t.second.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool PolyJet::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().first == 0);
}

int PolyJet::degree() const {
  if (terms_.empty()) return -1;
  return mono::degree(terms_.back().first);
}

Scalar PolyJet::coeff(Mono m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{m, Scalar()}, term_less);
  if (it != terms_.end() && it->first == m) return it->second;
  return {};
}

void PolyJet::check_compatible(const PolyJet& o) const {
  if (vars_ && o.vars_ && !same_vars(vars_, o.vars_)) {
    throw Error("polynomial variable sets differ");
  }
}

void PolyJet::adopt(const PolyJet& o) {
  if (!vars_) vars_ = o.vars_;
}

PolyJet& PolyJet::operator+=(const PolyJet& o) {
  check_compatible(o);
  adopt(o);
  int cap = std::min(cap_, o.cap_);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && mono::canonical_less(a->first, b->first))) {
      if (mono::degree(a->first) <= cap) out.push_back(std::move(*a));
      ++a;
    } else if (a == terms_.end() || mono::canonical_less(b->first, a->first)) {
      if (mono::degree(b->first) <= cap) out.push_back(*b);
      ++b;
    } else {
      Scalar s = a->second + b->second;
      if (!s.is_zero() && mono::degree(a->first) <= cap) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  cap_ = cap;
  return *this;
}

PolyJet& PolyJet::operator-=(const PolyJet& o) { return *this += -o; }

PolyJet PolyJet::operator-() const {
  PolyJet r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

PolyJet operator*(const PolyJet& a, const PolyJet& b) {
  a.check_compatible(b);
  int cap = std::min(a.cap_, b.cap_);
  PolyJet r(a.vars_ ? a.vars_ : b.vars_, cap);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (a.terms_.size() == 1) {
    r = b.shifted(a.terms_[0].first, a.terms_[0].second);
    return r.truncated(cap);
  }
  if (b.terms_.size() == 1) {
    r = a.shifted(b.terms_[0].first, b.terms_[0].second);
    return r.truncated(cap);
  }
  std::unordered_map<Mono, Scalar> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_) {
    int da = mono::degree(ma);
    for (const auto& [mb, cb] : b.terms_) {
      if (da + mono::degree(mb) > cap) continue;
      auto [it, fresh] = acc.try_emplace(ma + mb, ca);
      if (fresh) {
        it->second *= cb;
      } else {
        it->second += ca * cb;
      }
    }
  }
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (!c.is_zero()) r.terms_.emplace_back(m, std::move(c));
  }
  std::sort(r.terms_.begin(), r.terms_.end(), term_less);
  return r;
}

PolyJet PolyJet::scaled(const Scalar& s) const {
  PolyJet r(vars_, cap_);
  if (s.is_zero()) return r;
  r.terms_ = terms_;
  if (!s.is_one()) {
    for (auto& t : r.terms_) t.second *= s;
  }
  return r;
}

PolyJet PolyJet::shifted(Mono m, const Scalar& s) const {
  PolyJet r(vars_, cap_);
  if (s.is_zero()) return r;
  int dm = mono::degree(m);
  r.terms_.reserve(terms_.size());
  for (const auto& [mt, c] : terms_) {
    if (mono::degree(mt) + dm > cap_) break;
    r.terms_.emplace_back(mt + m, c * s);
  }
  return r;
}

PolyJet PolyJet::derivative(int v) const {
  PolyJet r(vars_, capped() ? cap_ - 1 : cap_);
  for (const auto& [m, c] : terms_) {
    int e = mono::exp(m, v);
    if (e == 0) continue;
    r.terms_.emplace_back(m - mono::unit(v), c * Scalar(e));
  }
  return r;
}

PolyJet PolyJet::truncated(int cap) const {
  PolyJet r(vars_, std::min(cap, cap_));
  for (const auto& t : terms_) {
    if (mono::degree(t.first) > r.cap_) break;
    r.terms_.push_back(t);
  }
  return r;
}

PolyJet PolyJet::conj() const {
  PolyJet r = *this;
  for (auto& t : r.terms_) t.second = t.second.conj();
  return r;
}

PolyJet PolyJet::at_zero(int v) const {
  PolyJet r(vars_, cap_);
  for (const auto& t : terms_) {
    if (mono::exp(t.first, v) == 0) r.terms_.push_back(t);
  }
  return r;
}

PolyJet PolyJet::remapped(const VarsPtr& target, std::span<const int> index_map) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  int nt = static_cast<int>(target->size());
  for (const auto& [m, c] : terms_) {
    std::vector<int> e(static_cast<size_t>(nt), 0);
    for (int v = 0; v < nvars(); ++v) {
      int k = mono::exp(m, v);
      if (k == 0) continue;
      int dst = index_map[static_cast<size_t>(v)];
      if (dst < 0 || dst >= nt) throw Error("variable has no image under remapping");
      e[static_cast<size_t>(dst)] += k;
    }
    out.emplace_back(mono::from_exponents(e), c);
  }
  return from_terms(target, std::move(out), cap_);
}

PolyJet jet_power(const PolyJet& u, const Rational& e, int order) {
  if (!u.constant_term().is_one()) throw Error("jet_power needs a unit constant term");
  int cap = std::min(order, u.cap());
  PolyJet v = (u - PolyJet::constant(u.vars(), Scalar(1))).truncated(cap);
  PolyJet result = PolyJet::constant(u.vars(), Scalar(1), cap);
  PolyJet vpow = result;
  Rational binom(1);
  for (int m = 1; m <= cap; ++m) {
    vpow = vpow * v;
    if (vpow.is_zero()) break;
    binom *= (e - (m - 1));
    binom /= m;
    result += vpow.scaled(Scalar(binom));
  }
  return result;
}

PolyJet jet_inverse(const PolyJet& u, int order) {
  Scalar c = u.constant_term();
  if (c.is_zero()) throw Error("jet is not invertible: zero constant term");
  Scalar inv_c = Scalar(1) / c;
  return jet_power(u.scaled(inv_c), Rational(-1), order).scaled(inv_c);
}

}  // namespace fedq
