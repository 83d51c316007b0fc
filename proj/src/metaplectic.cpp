#include "fedq/metaplectic.hpp"

#include "fedq/expr.hpp"

#include <algorithm>

namespace fedq {

PolyWave PolyWave::constant(VarsPtr vars, const Scalar& c) { return monomial(std::move(vars), 0, c); }

PolyWave PolyWave::monomial(VarsPtr vars, Mono m, const Scalar& c, int hpow) {
  PolyWave w(vars);
  w.add(hpow, PolyJet::monomial(vars, m, c));
  return w;
}

void PolyWave::add(int hpow, const PolyJet& p) {
  if (p.is_zero()) return;
  auto it = parts_.find(hpow);
  if (it == parts_.end()) {
    parts_.emplace(hpow, p);
    return;
  }
  it->second += p;
  if (it->second.is_zero()) parts_.erase(it);
}

PolyWave& PolyWave::operator+=(const PolyWave& o) {
  if (!vars_) vars_ = o.vars_;
  for (const auto& [h, p] : o.parts_) add(h, p);
  return *this;
}

PolyWave& PolyWave::operator-=(const PolyWave& o) { return *this += o.scaled(Scalar(-1)); }

PolyWave PolyWave::scaled(const Scalar& s) const {
  PolyWave w(vars_);
  for (const auto& [h, p] : parts_) w.add(h, p.scaled(s));
  return w;
}

PolyWave PolyWave::hbar_shifted(int k) const {
  PolyWave w(vars_);
  for (const auto& [h, p] : parts_) w.parts_.emplace(h + k, p);
  return w;
}

PolyWave PolyWave::times_var(int v) const {
  PolyWave w(vars_);
  for (const auto& [h, p] : parts_) w.add(h, p.shifted(mono::unit(v), Scalar(1)));
  return w;
}

PolyWave PolyWave::derivative(int v) const {
  PolyWave w(vars_);
  for (const auto& [h, p] : parts_) w.add(h, p.derivative(v));
  return w;
}

std::string PolyWave::str() const {
  if (parts_.empty()) return "0";
  std::string out;
  for (const auto& [h, p] : parts_) {
    if (!out.empty()) out += " + ";
    out += "hbar^" + std::to_string(h) + "*(" + print_canonical(p) + ")";
  }
  return out;
}

VarsPtr RepConfig::wave_vars() const {
  int k = n();
  VarList names;
  int offset = kind == RepKind::kSchrodingerMomentum ? k : 0;
  for (int j = 0; j < k; ++j) names.push_back(space->name(offset + j));
  return make_vars(names);
}

PolyWave apply_generator(const RepConfig& cfg, int mu, const PolyWave& psi) {
  int n = cfg.n();
  bool first = mu < n;
  int j = first ? mu : mu - n;
  switch (cfg.kind) {
    case RepKind::kSchrodingerPosition:
      // q multiplies, p acts as (hbar/i) d_q.
      if (first) return psi.times_var(j);
      return psi.derivative(j).hbar_shifted(1).scaled(-Scalar::i());
    case RepKind::kSchrodingerMomentum:
      // p multiplies, q acts as i hbar d_p.
      if (!first) return psi.times_var(j);
      return psi.derivative(j).hbar_shifted(1).scaled(Scalar::i());
    case RepKind::kFock:
      // z multiplies, zbar acts as hbar d_z.
      if (first) return psi.times_var(j);
      return psi.derivative(j).hbar_shifted(1);
  }
  throw Error("unknown representation");
}

PolyWave rep_apply(const RepConfig& cfg, const WeylForm& a, const PolyWave& psi) {
  PolyWave out(psi.vars());
  for (const auto& [k, c] : a.terms()) {
    if (k.form != 0) throw Error("representation needs a form-degree-0 element");
    if (!c.is_constant()) throw Error("representation needs constant fiber coefficients");
    std::vector<int> word;
    for (int mu = 0; mu < cfg.space->dim(); ++mu) {
      for (int e = 0; e < mono::exp(k.sym, mu); ++e) word.push_back(mu);
    }
    PolyWave sum(psi.vars());
    long count = 0;
    do {
      PolyWave w = psi;
      for (auto it = word.rbegin(); it != word.rend(); ++it) w = apply_generator(cfg, *it, w);
      sum += w;
      ++count;
    } while (std::next_permutation(word.begin(), word.end()));
    out += sum.scaled(c.constant_term() / Scalar(count)).hbar_shifted(k.hpow);
  }
  return out;
}

void WaveOperator::add(const Key& k, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(k, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

PolyWave WaveOperator::apply(const PolyWave& psi) const {
  PolyWave out(vars_);
  int n = static_cast<int>(vars_->size());
  for (const auto& [k, c] : terms_) {
    PolyWave w = psi;
    for (int v = 0; v < n; ++v) {
      for (int e = 0; e < mono::exp(k.deriv, v); ++e) w = w.derivative(v);
    }
    for (int v = 0; v < n; ++v) {
      for (int e = 0; e < mono::exp(k.mult, v); ++e) w = w.times_var(v);
    }
    out += w.scaled(c).hbar_shifted(k.hpow);
  }
  return out;
}

std::string WaveOperator::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += c.str();
    if (k.hpow != 0) out += "*hbar^" + std::to_string(k.hpow);
    if (k.mult != 0) out += "*" + print_monomial(k.mult, *vars_);
    if (k.deriv != 0) out += "*d[" + print_monomial(k.deriv, *vars_) + "]";
  }
  return out;
}

WaveOperator metaplectic_operator(const RepConfig& cfg, const ScalarMatrix& x) {
  if (!in_sp(*cfg.space, x)) throw Error("matrix is not in the symplectic Lie algebra");
  int n = cfg.n();
  auto blk = [&](int r0, int c0, int r, int c) { return x(r0 + r, c0 + c); };
  auto A = [&](int r, int c) { return blk(0, 0, r, c); };
  auto B = [&](int r, int c) { return blk(0, n, r, c); };
  auto C = [&](int r, int c) { return blk(n, 0, r, c); };
  Scalar tr;
  for (int j = 0; j < n; ++j) tr += A(j, j);
  const Scalar half(make_rational(1, 2));
  const Scalar half_i(Rational(0), Rational(1, 2));

  WaveOperator op(cfg.wave_vars());
  using K = WaveOperator::Key;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      Mono two = mono::unit(j) + mono::unit(k);
      switch (cfg.kind) {
        case RepKind::kSchrodingerPosition:
          op.add(K{1, 0, two}, half_i * B(j, k));
          op.add(K{0, mono::unit(j), mono::unit(k)}, -A(k, j));
          op.add(K{-1, two, 0}, half_i * C(j, k));
          break;
        case RepKind::kSchrodingerMomentum:
          op.add(K{1, 0, two}, -half_i * C(j, k));
          op.add(K{0, mono::unit(j), mono::unit(k)}, A(j, k));
          op.add(K{-1, two, 0}, -half_i * B(j, k));
          break;
        case RepKind::kFock:
          op.add(K{1, 0, two}, -half * B(j, k));
          op.add(K{0, mono::unit(k), mono::unit(j)}, -A(j, k));
          op.add(K{-1, two, 0}, half * C(j, k));
          break;
      }
    }
  }
  Scalar constant = cfg.kind == RepKind::kSchrodingerMomentum ? half * tr : -half * tr;
  op.add(K{0, 0, 0}, constant);
  return op;
}

}  // namespace fedq
