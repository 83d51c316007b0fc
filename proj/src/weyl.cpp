#include "fedq/weyl.hpp"

#include "fedq/expr.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace fedq {

// ---------------------------------------------------------------------------
// FiberSpace

FiberSpace::FiberSpace(VarsPtr coords, ScalarMatrix omega)
    : dim_(omega.size()), coords_(std::move(coords)), omega_(std::move(omega)) {
  if (!coords_ || static_cast<int>(coords_->size()) != dim_) {
    throw Error("coordinate count does not match the symplectic form");
  }
  if (dim_ % 2 != 0 || dim_ == 0) throw Error("chart dimension must be even and positive");
  if (dim_ > mono::kMaxVars) throw Error("chart dimension too large");
  if (!omega_.is_antisymmetric()) throw Error("omega must be antisymmetric");
  omega_inv_ = omega_.inverse();
  for (int mu = 0; mu < dim_; ++mu) {
    for (int nu = 0; nu < dim_; ++nu) {
      if (!omega_inv_(mu, nu).is_zero()) pairs_.push_back({mu, nu, omega_inv_(mu, nu)});
    }
  }
}

std::shared_ptr<const FiberSpace> FiberSpace::darboux(VarsPtr coords) {
  int dim = static_cast<int>(coords->size());
  int n = dim / 2;
  ScalarMatrix w(dim);
  // omega = dp_j ^ dq^j:  omega_{p_j q^j} = 1, omega_{q^j p_j} = -1.
  for (int j = 0; j < n; ++j) {
    w(n + j, j) = Scalar(1);
    w(j, n + j) = Scalar(-1);
  }
  return std::make_shared<const FiberSpace>(std::move(coords), std::move(w));
}

std::shared_ptr<const FiberSpace> FiberSpace::complex_standard(VarsPtr coords) {
  int dim = static_cast<int>(coords->size());
  int n = dim / 2;
  ScalarMatrix w(dim);
  // omega = i dz^j ^ dzbar^j.
  for (int j = 0; j < n; ++j) {
    w(j, n + j) = Scalar::i();
    w(n + j, j) = -Scalar::i();
  }
  return std::make_shared<const FiberSpace>(std::move(coords), std::move(w));
}

bool FiberSpace::is_standard_darboux() const {
  int n = dim_ / 2;
  for (int a = 0; a < dim_; ++a) {
    for (int b = 0; b < dim_; ++b) {
      Scalar expect;
      if (a >= n && b == a - n) expect = Scalar(1);
      if (b >= n && a == b - n) expect = Scalar(-1);
      if (!(omega_(a, b) == expect)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Keys

bool form_less(std::uint16_t a, std::uint16_t b) {
  while (a && b) {
    int la = __builtin_ctz(a);
    int lb = __builtin_ctz(b);
    if (la != lb) return la < lb;
    a = static_cast<std::uint16_t>(a & (a - 1));
    b = static_cast<std::uint16_t>(b & (b - 1));
  }
  return a == 0 && b != 0;
}

bool operator<(const WeylKey& a, const WeylKey& b) {
  int da = a.doubled_degree();
  int db = b.doubled_degree();
  if (da != db) return da < db;
  if (a.hpow != b.hpow) return a.hpow < b.hpow;
  if (a.sym != b.sym) return mono::canonical_less(a.sym, b.sym);
  return form_less(a.form, b.form);
}

namespace {

int bit_count_below(std::uint16_t f, int k) {
  return __builtin_popcount(static_cast<unsigned>(f) & ((1u << k) - 1u));
}

/// Sign of dx^F ^ dx^G relative to the sorted wedge, 0 when they overlap.
int wedge_sign(std::uint16_t f, std::uint16_t g) {
  if (f & g) return 0;
  int swaps = 0;
  for (std::uint16_t rest = g; rest; rest = static_cast<std::uint16_t>(rest & (rest - 1))) {
    int k = __builtin_ctz(rest);
    swaps += __builtin_popcount(static_cast<unsigned>(f) >> (k + 1));
  }
  return (swaps & 1) ? -1 : 1;
}

}  // namespace

// ---------------------------------------------------------------------------
// WeylForm

WeylForm::WeylForm(FiberPtr space, int dcap, int xcap)
    : space_(std::move(space)), dcap_(dcap), xcap_(xcap) {
  if (!space_) throw Error("WeylForm needs a fiber space");
}

WeylForm WeylForm::scalar(FiberPtr space, const PolyJet& f, int dcap) {
  return term(std::move(space), WeylKey{}, f, dcap);
}

WeylForm WeylForm::generator(FiberPtr space, int mu, int dcap) {
  VarsPtr vars = space->coords();
  return constant_term(std::move(space), WeylKey{0, mono::unit(mu), 0}, Scalar(1), dcap);
}

WeylForm WeylForm::term(FiberPtr space, const WeylKey& key, const PolyJet& coeff, int dcap) {
  WeylForm w(std::move(space), dcap);
  w.add(key, coeff);
  return w;
}

WeylForm WeylForm::constant_term(FiberPtr space, const WeylKey& key, const Scalar& c, int dcap) {
  VarsPtr vars = space->coords();
  return term(std::move(space), key, PolyJet::constant(vars, c), dcap);
}

PolyJet WeylForm::coeff(const WeylKey& key) const {
  auto it = terms_.find(key);
  if (it == terms_.end()) return PolyJet(space_->coords(), xcap_at(key.doubled_degree()));
  return it->second;
}

int WeylForm::xcap() const {
  int c = xcap_;
  for (const auto& [d, v] : degree_caps_) c = std::min(c, v);
  return c;
}

int WeylForm::xcap_at(int D) const {
  auto it = degree_caps_.find(D);
  return it == degree_caps_.end() ? xcap_ : it->second;
}

void WeylForm::limit_xcap(int cap) {
  if (cap >= xcap_ && std::all_of(degree_caps_.begin(), degree_caps_.end(),
                                  [&](const auto& e) { return cap >= e.second; })) {
    return;
  }
  xcap_ = std::min(xcap_, cap);
  for (auto& [d, v] : degree_caps_) v = std::min(v, cap);
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.cap() > cap) it->second = it->second.truncated(cap);
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
}

void WeylForm::limit_xcap_at(int D, int xcap) {
  if (D > dcap_ || xcap >= xcap_at(D)) return;
  degree_caps_[D] = xcap;
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.doubled_degree() == D && it->second.cap() > xcap) {
      it->second = it->second.truncated(xcap);
      if (it->second.is_zero()) {
        it = terms_.erase(it);
        continue;
      }
    }
    ++it;
  }
}

WeylForm WeylForm::empty_like(int shift, int lower) const {
  auto low = [&](int c) { return c < PolyJet::kNoCap ? c - lower : c; };
  WeylForm r(space_, dcap_, low(xcap_));
  for (const auto& [d, v] : degree_caps_) {
    if (d + shift <= dcap_) r.degree_caps_[d + shift] = low(v);
  }
  return r;
}

void WeylForm::add(const WeylKey& key, const PolyJet& c) {
  int D = key.doubled_degree();
  if (D > dcap_) return;
  int cap = xcap_at(D);
  if (c.cap() < cap) {
    limit_xcap_at(D, c.cap());
    cap = c.cap();
  }
  if (c.is_zero()) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    PolyJet v = c.capped() || cap < PolyJet::kNoCap ? c.truncated(cap) : c;
    if (!v.is_zero()) terms_.emplace(key, std::move(v));
    return;
  }
  it->second += c;
  if (cap < it->second.cap()) it->second = it->second.truncated(cap);
  if (it->second.is_zero()) terms_.erase(it);
}

std::optional<int> WeylForm::min_hpow() const {
  std::optional<int> m;
  for (const auto& [k, c] : terms_) {
    if (!m || k.hpow < *m) m = k.hpow;
  }
  return m;
}

std::optional<int> WeylForm::max_doubled_degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first.doubled_degree();
}

std::optional<int> WeylForm::form_degree() const {
  std::optional<int> p;
  for (const auto& [k, c] : terms_) {
    if (p && *p != k.form_degree()) return std::nullopt;
    p = k.form_degree();
  }
  return p.value_or(0);
}

void WeylForm::check_space(const WeylForm& o) const {
  if (space_ == o.space_) return;
  if (!space_ || !o.space_ || !same_vars(space_->coords(), o.space_->coords()) ||
      !(space_->omega() == o.space_->omega())) {
    throw Error("Weyl forms live on different charts");
  }
}

WeylForm& WeylForm::operator+=(const WeylForm& o) {
  check_space(o);
  dcap_ = std::min(dcap_, o.dcap_);
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.doubled_degree() > dcap_) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  // Degrees with their own entry on either side, then the shared floor.
  std::map<int, int> caps;
  for (const auto& [d, v] : degree_caps_) caps[d] = std::min(v, o.xcap_at(d));
  for (const auto& [d, v] : o.degree_caps_) caps[d] = std::min(v, xcap_at(d));
  xcap_ = std::min(xcap_, o.xcap_);
  std::erase_if(caps, [&](const auto& e) { return e.first > dcap_; });
  degree_caps_ = std::move(caps);
  for (auto it = terms_.begin(); it != terms_.end();) {
    int c = xcap_at(it->first.doubled_degree());
    if (it->second.cap() > c) it->second = it->second.truncated(c);
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

WeylForm& WeylForm::operator-=(const WeylForm& o) { return *this += -o; }

WeylForm WeylForm::operator-() const {
  WeylForm r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

WeylForm WeylForm::scaled(const Scalar& s) const {
  if (s.is_zero()) return empty_like();
  WeylForm r = *this;
  for (auto& [k, c] : r.terms_) c = c.scaled(s);
  return r;
}

WeylForm WeylForm::times(const PolyJet& f) const {
  WeylForm r = empty_like();
  r.limit_xcap(f.cap());
  for (const auto& [k, c] : terms_) r.add(k, c * f);
  return r;
}

WeylForm WeylForm::truncated(int dcap) const {
  WeylForm r = empty_like();
  r.dcap_ = std::min(dcap, dcap_);
  std::erase_if(r.degree_caps_, [&](const auto& e) { return e.first > r.dcap_; });
  for (const auto& [k, c] : terms_) {
    if (k.doubled_degree() <= r.dcap_) r.terms_.emplace(k, c);
  }
  return r;
}

WeylForm WeylForm::hbar_shifted(int k) const {
  WeylForm r = empty_like(2 * k);
  for (const auto& [key, c] : terms_) {
    WeylKey nk = key;
    nk.hpow += k;
    r.add(nk, c);
  }
  return r;
}

std::string WeylForm::key_str(const WeylKey& key) const {
  std::string out;
  if (key.hpow != 0) out += "hbar^" + std::to_string(key.hpow);
  if (key.sym != 0) {
    if (!out.empty()) out += ' ';
    out += "y[";
    bool first = true;
    for (int mu = 0; mu < space_->dim(); ++mu) {
      for (int e = 0; e < mono::exp(key.sym, mu); ++e) {
        if (!first) out += ',';
        out += space_->name(mu);
        first = false;
      }
    }
    out += ']';
  }
  if (key.form != 0) {
    if (!out.empty()) out += ' ';
    out += "dx[";
    bool first = true;
    for (int mu = 0; mu < space_->dim(); ++mu) {
      if (!(key.form & (1u << mu))) continue;
      if (!first) out += ',';
      out += space_->name(mu);
      first = false;
    }
    out += ']';
  }
  return out.empty() ? "1" : out;
}

std::string WeylForm::str() const {
  if (terms_.empty()) return "0\n";
  std::string out;
  for (const auto& [k, c] : terms_) out += key_str(k) + " : " + print_canonical(c) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Product kernel

namespace {

enum class KernelMode { kAll, kOdd, kFull };

struct KernelTerm {
  Mono sym;
  int k;
  Scalar coef;  // includes (i/2)^k; hbar^k is carried by k
};

Scalar falling(int e, int m) {
  long v = 1;
  for (int t = 0; t < m; ++t) v *= (e - t);
  return Scalar(v);
}

/// y^a o y^b = exp((i hbar/2) omega^{mu nu} d_mu (x) d_nu) applied to the
/// symmetric monomials, factorised over the nonzero entries of omega^{-1}.
void expand_kernel(const FiberSpace& space, Mono a, Mono b, KernelMode mode,
                   std::vector<KernelTerm>& out) {
  const auto& pairs = space.inverse_pairs();
  static const Scalar kHalfI(Rational(0), Rational(1, 2));
  struct Frame {
    Mono a;
    Mono b;
    int k;
    Scalar coef;
  };
  std::vector<Frame> frontier{{a, b, 0, Scalar(1)}};
  std::vector<Frame> next;
  for (const auto& pr : pairs) {
    next.clear();
    for (auto& fr : frontier) {
      int ea = mono::exp(fr.a, pr.mu);
      int eb = mono::exp(fr.b, pr.nu);
      int mmax = std::min(ea, eb);
      Scalar wpow(1);
      Rational inv_fact(1);
      for (int m = 0; m <= mmax; ++m) {
        if (m > 0) {
          wpow *= pr.value;
          inv_fact /= m;
        }
        Scalar c = fr.coef * wpow * Scalar(inv_fact) * falling(ea, m) * falling(eb, m);
        next.push_back({fr.a - static_cast<Mono>(m) * mono::unit(pr.mu),
                        fr.b - static_cast<Mono>(m) * mono::unit(pr.nu), fr.k + m, std::move(c)});
      }
    }
    std::swap(frontier, next);
  }
  for (auto& fr : frontier) {
    if (mode == KernelMode::kOdd && fr.k % 2 == 0) continue;
    if (mode == KernelMode::kFull && (fr.a != 0 || fr.b != 0)) continue;
    Scalar c = fr.coef * pow(kHalfI, static_cast<unsigned>(fr.k));
    if (mode == KernelMode::kOdd) c *= Scalar(2);
    if (c.is_zero()) continue;
    out.push_back({fr.a + fr.b, fr.k, std::move(c)});
  }
}

// Degrees present in a form: its terms plus the degrees with a cap of
// their own (zero there only up to that cap).
std::set<int> live_degrees(const WeylForm& a) {
  std::set<int> out;
  for (const auto& [k, c] : a.terms()) out.insert(k.doubled_degree());
  for (const auto& [d, v] : a.degree_caps()) out.insert(d);
  return out;
}

// Every product term has doubled degree Da + Db; its coefficient is known
// as far as both factors are.
void product_caps(const WeylForm& a, const WeylForm& b, WeylForm& out) {
  std::set<int> da = live_degrees(a);
  std::set<int> db = live_degrees(b);
  for (int x : da) {
    for (int y : db) {
      if (x + y > out.dcap()) continue;
      int c = std::min(a.xcap_at(x), b.xcap_at(y));
      if (c < out.xcap_at(x + y)) out.limit_xcap_at(x + y, c);
    }
  }
}

struct PairHash {
  size_t operator()(const std::pair<Mono, Mono>& p) const {
    return std::hash<Mono>()(p.first * 0x9E3779B97F4A7C15ull ^ (p.second + 0x632BE59BD9B4E019ull));
  }
};

WeylForm generic_product(const WeylForm& a, const WeylForm& b, int dcap, KernelMode mode) {
  if (a.space() != b.space()) {
    if (!same_vars(a.space()->coords(), b.space()->coords()) ||
        !(a.space()->omega() == b.space()->omega())) {
      throw Error("Weyl forms live on different charts");
    }
  }
  WeylForm out(a.space(), dcap, std::min(a.base_xcap(), b.base_xcap()));
  product_caps(a, b, out);
  std::unordered_map<std::pair<Mono, Mono>, std::vector<KernelTerm>, PairHash> cache;
  const FiberSpace& space = *a.space();
  for (const auto& [ka, ca] : a.terms()) {
    int da = ka.doubled_degree();
    for (const auto& [kb, cb] : b.terms()) {
      if (da + kb.doubled_degree() > dcap) continue;
      if (mode == KernelMode::kFull && ka.sym_degree() != kb.sym_degree()) continue;
      int sign = wedge_sign(ka.form, kb.form);
      if (sign == 0) continue;
      auto [it, fresh] = cache.try_emplace({ka.sym, kb.sym});
      if (fresh) expand_kernel(space, ka.sym, kb.sym, mode, it->second);
      if (it->second.empty()) continue;
      PolyJet cc = ca * cb;
      if (cc.is_zero()) continue;
      std::uint16_t form = static_cast<std::uint16_t>(ka.form | kb.form);
      for (const auto& kt : it->second) {
        WeylKey key{ka.hpow + kb.hpow + kt.k, kt.sym, form};
        out.add(key, cc.scaled(sign < 0 ? -kt.coef : kt.coef));
      }
    }
  }
  return out;
}

}  // namespace

WeylForm product(const WeylForm& a, const WeylForm& b, int dcap) {
  return generic_product(a, b, dcap, KernelMode::kAll);
}

WeylForm weyl_product(const WeylForm& a, const WeylForm& b) {
  return product(a, b, std::min(a.dcap(), b.dcap()));
}

WeylForm commutator(const WeylForm& a, const WeylForm& b, int dcap) {
  // s o t - (-1)^{pq} t o s = (y^a o y^b - y^b o y^a) dx^F ^ dx^G, and the
  // swapped fiber product flips the sign of every odd contraction order.
  return generic_product(a, b, dcap, KernelMode::kOdd);
}

WeylForm graded_commutator(const WeylForm& a, const WeylForm& b) {
  return commutator(a, b, std::min(a.dcap(), b.dcap()));
}

WeylForm product_sym0(const WeylForm& a, const WeylForm& b, int dcap) {
  return generic_product(a, b, dcap, KernelMode::kFull);
}

WeylForm times_i_over_hbar(const WeylForm& a) {
  WeylForm r = a.empty_like(-2);
  for (const auto& [k, c] : a.terms()) {
    WeylKey nk = k;
    nk.hpow -= 1;
    r.add(nk, c.scaled(Scalar::i()));
  }
  return r;
}

WeylForm adjoint_action(const WeylForm& gen, const WeylForm& a) {
  WeylForm c = commutator(gen, a, a.dcap() >= WeylForm::kNoDcap ? a.dcap() : a.dcap() + 2);
  if (!gen.is_zero() && !a.is_zero()) {
    int floor = *gen.min_hpow() + *a.min_hpow() + 1;
    for (const auto& [k, v] : c.terms()) {
      if (k.hpow < floor) throw std::logic_error("inexact hbar division in adjoint action");
    }
  }
  return times_i_over_hbar(c).truncated(a.dcap());
}

// ---------------------------------------------------------------------------
// delta, delta*, delta^{-1}, d, contraction

WeylForm delta(const WeylForm& a) {
  WeylForm r = a.empty_like(-1);
  int dim = a.space()->dim();
  for (const auto& [k, c] : a.terms()) {
    for (int mu = 0; mu < dim; ++mu) {
      int e = mono::exp(k.sym, mu);
      if (e == 0 || (k.form & (1u << mu))) continue;
      int sign = (bit_count_below(k.form, mu) & 1) ? -1 : 1;
      WeylKey nk{k.hpow, k.sym - mono::unit(mu), static_cast<std::uint16_t>(k.form | (1u << mu))};
      r.add(nk, c.scaled(Scalar(sign * e)));
    }
  }
  return r;
}

WeylForm delta_star(const WeylForm& a) {
  WeylForm r = a.empty_like(1);
  for (const auto& [k, c] : a.terms()) {
    int pos = 0;
    for (std::uint16_t rest = k.form; rest; rest = static_cast<std::uint16_t>(rest & (rest - 1)), ++pos) {
      int mu = __builtin_ctz(rest);
      WeylKey nk{k.hpow, k.sym + mono::unit(mu), static_cast<std::uint16_t>(k.form & ~(1u << mu))};
      r.add(nk, (pos & 1) ? -c : c);
    }
  }
  return r;
}

WeylForm delta_inv(const WeylForm& a) {
  WeylForm r = a.empty_like(1);
  for (const auto& [k, c] : a.terms()) {
    int lp = k.sym_degree() + k.form_degree();
    if (lp == 0) continue;
    Scalar w(make_rational(1, lp));
    int pos = 0;
    for (std::uint16_t rest = k.form; rest; rest = static_cast<std::uint16_t>(rest & (rest - 1)), ++pos) {
      int mu = __builtin_ctz(rest);
      WeylKey nk{k.hpow, k.sym + mono::unit(mu), static_cast<std::uint16_t>(k.form & ~(1u << mu))};
      r.add(nk, c.scaled((pos & 1) ? -w : w));
    }
  }
  return r;
}

WeylForm exterior_d(const WeylForm& a) {
  WeylForm r = a.empty_like(0, 1);
  int dim = a.space()->dim();
  for (const auto& [k, c] : a.terms()) {
    for (int mu = 0; mu < dim; ++mu) {
      if (k.form & (1u << mu)) continue;
      PolyJet dc = c.derivative(mu);
      if (dc.is_zero()) continue;
      int sign = (bit_count_below(k.form, mu) & 1) ? -1 : 1;
      WeylKey nk{k.hpow, k.sym, static_cast<std::uint16_t>(k.form | (1u << mu))};
      r.add(nk, sign < 0 ? -dc : dc);
    }
  }
  return r;
}

WeylForm contract(const WeylForm& a, int mu) {
  WeylForm r = a.empty_like();
  for (const auto& [k, c] : a.terms()) {
    if (!(k.form & (1u << mu))) continue;
    int sign = (bit_count_below(k.form, mu) & 1) ? -1 : 1;
    WeylKey nk{k.hpow, k.sym, static_cast<std::uint16_t>(k.form & ~(1u << mu))};
    r.add(nk, sign < 0 ? -c : c);
  }
  return r;
}

WeylForm project(const WeylForm& a, GradingSelector which) {
  WeylForm r = a.empty_like();
  for (const auto& [k, c] : a.terms()) {
    bool keep = false;
    switch (which.kind) {
      case GradingSelector::Kind::kHbarDegree: keep = k.doubled_degree() == which.value; break;
      case GradingSelector::Kind::kSymDegree: keep = k.sym_degree() == which.value; break;
      case GradingSelector::Kind::kSym0: keep = k.sym == 0; break;
      case GradingSelector::Kind::kScalar00: keep = k.sym == 0 && k.form == 0; break;
    }
    if (keep) r.add(k, c);
  }
  return r;
}

GradingReport grading_report(const WeylForm& a) {
  GradingReport rep;
  for (const auto& [k, c] : a.terms()) {
    rep.by_doubled_degree[k.doubled_degree()].push_back(a.key_str(k) + " : " + print_canonical(c));
  }
  return rep;
}

}  // namespace fedq
