#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>

#include "cover14/rational.hpp"

namespace cover14::util {

// Seeded generator with hand-rolled range reduction, so identical seeds give
// identical streams regardless of standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool coin() { return next() & 1u; }

  // Uniform k/den with 0 <= k <= den.
  Rational unit_rational(long den) { return Rational(range(0, den), den); }
  // Uniform k/den with lo <= k/den <= hi for dyadic-ish sampling in tests.
  Rational rational_in(const Rational& lo, const Rational& hi, long den) {
    return lo + unit_rational(den) * (hi - lo);
  }

 private:
  std::mt19937_64 eng_;
};

// Worker count: flag > environment (COVER14_WORKERS) > hardware concurrency.
unsigned resolve_workers(unsigned requested);

// Runs fn(i) for i in [0, n) on `workers` threads, dynamic chunking.
// Exceptions propagate to the caller (first one wins).
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn);

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  double ms() const { return seconds() * 1e3; }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace cover14::util
