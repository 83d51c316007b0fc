#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <string>

namespace fedq {

/// Exact rational number, always reduced with a positive denominator.
/// Values whose numerator and denominator fit in 63 bits live inline;
/// larger ones fall back to GMP.
class Rational {
public:
  Rational() = default;
  Rational(long v) : num_(v) {  // NOLINT(google-explicit-constructor)
    if (v == INT64_MIN) set_big(mpq_class(v));
  }
  Rational(int v) : num_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(const std::string& s);
  explicit Rational(const mpq_class& q) { set_big(q); }

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  /// Kept for call sites written against mpq_class; values are always reduced.
  void canonicalize() {}

  bool is_small() const { return !big_; }
  mpq_class to_mpq() const;
  std::string get_str() const;
  int sign() const { return big_ ? sgn(*big_) : (num_ > 0) - (num_ < 0); }

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);
  Rational operator-() const;

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // a reduced value has one representation
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
  void set_big(mpq_class q);
  void set_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

inline int sgn(const Rational& q) { return q.sign(); }

}  // namespace fedq
