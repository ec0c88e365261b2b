#include "cover14/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace cover14 {

Rational::Rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

void Rational::set_ll(long long n) { q_ = mpq_class(std::to_string(n)); }

namespace {

bool valid_integer_token(std::string_view s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

std::optional<Rational> Rational::parse(std::string_view s) {
  const auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!valid_integer_token(num) || !valid_integer_token(den)) return std::nullopt;
  mpz_class n(std::string(num), 10), d(std::string(den), 10);
  if (d == 0) return std::nullopt;
  mpq_class q;
  mpq_set_num(q.get_mpq_t(), n.get_mpz_t());
  mpq_set_den(q.get_mpq_t(), d.get_mpz_t());
  q.canonicalize();
  return Rational(std::move(q));
}

std::optional<Rational> Rational::parse_canonical(std::string_view s) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  auto r = parse(s);
  if (!r) return std::nullopt;
  // Round-tripping through the canonical printer enforces lowest terms and d > 0.
  if (r->str_slash() != s) return std::nullopt;
  return r;
}

long Rational::floor_long() const {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  if (!f.fits_slong_p()) throw std::overflow_error("Rational::floor_long overflow");
  return f.get_si();
}

std::string Rational::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::str_slash() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

}  // namespace cover14
