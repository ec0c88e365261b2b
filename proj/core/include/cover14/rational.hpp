#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

namespace cover14 {

// Exact arbitrary-precision rational. Always held in lowest terms with a
// positive denominator; arithmetic never rounds. This is the scalar of every
// geometric and LP computation in the pipeline.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(int n) : q_(n) {}          // NOLINT: implicit by design, 0/1 literals
  Rational(long n) : q_(static_cast<signed long>(n)) {}
  Rational(long long n) { set_ll(n); }
  Rational(long num, long den);
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  // Accepts "n" or "n/d" with optional sign; canonicalizes. Empty on garbage.
  static std::optional<Rational> parse(std::string_view s);
  // Accepts only the exact serialized form "n/d": lowest terms, d > 0.
  // This is what certificate files must contain.
  static std::optional<Rational> parse_canonical(std::string_view s);

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
  friend Rational operator/(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ / b.q_)); }
  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) { q_ /= o.q_; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t());
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  int sign() const { return mpq_sgn(q_.get_mpq_t()); }
  bool is_zero() const { return sign() == 0; }
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  double to_double() const { return q_.get_d(); }
  // floor(value) for grid-index computations; the values involved are tiny.
  long floor_long() const;

  std::string str() const;        // "n" when integral, else "n/d"
  std::string str_slash() const;  // always "n/d", the on-disk field form

  const mpq_class& mpq() const { return q_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  void set_ll(long long n);
  mpq_class q_;
};

inline Rational rat(long num, long den) { return Rational(num, den); }

}  // namespace cover14
