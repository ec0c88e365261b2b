#include <doctest.h>

#include "cover14/oracles.hpp"
#include "cover14/simplex.hpp"
#include "cover14/util.hpp"

using namespace cover14;
using lp::LinearSystem;

namespace {

// {x >= 0, x <= 1} as A x <= b
LinearSystem unit_interval() {
  LinearSystem s(2, 1);
  s.at(0, 0) = -1;
  s.rhs(0) = 0;
  s.at(1, 0) = 1;
  s.rhs(1) = 1;
  return s;
}

LinearSystem empty_interval() {
  LinearSystem s(2, 1);
  s.at(0, 0) = -1;
  s.rhs(0) = -1;  // x >= 1
  s.at(1, 0) = 1;
  s.rhs(1) = 0;  // x <= 0
  return s;
}

}  // namespace

TEST_CASE("feasible_exact on trivial systems") {
  const auto a = lp::feasible_exact(unit_interval());
  CHECK(a.feasible);
  REQUIRE(a.witness.size() == 1);
  CHECK(a.witness[0] >= 0);
  CHECK(a.witness[0] <= 1);
  CHECK(a.margin == Rational(1, 2));  // deepest point of [0,1]

  const auto b = lp::feasible_exact(empty_interval());
  CHECK_FALSE(b.feasible);
  CHECK(b.margin == Rational(-1, 2));
}

TEST_CASE("maximize on trivial systems") {
  std::vector<Rational> obj{1};
  const auto a = lp::maximize(unit_interval(), obj);
  REQUIRE(a.status == lp::MaximizeResult::Status::Optimal);
  CHECK(a.value == 1);
  CHECK(a.point[0] == 1);

  LinearSystem half(1, 1);  // x >= 0 only
  half.at(0, 0) = -1;
  half.rhs(0) = 0;
  CHECK(lp::maximize(half, obj).status == lp::MaximizeResult::Status::Unbounded);

  CHECK(lp::maximize(empty_interval(), obj).status == lp::MaximizeResult::Status::Infeasible);
}

TEST_CASE("check_witness is pure substitution") {
  LinearSystem s(2, 1);  // x <= 0 and -x <= 0
  s.at(0, 0) = 1;
  s.rhs(0) = 0;
  s.at(1, 0) = -1;
  s.rhs(1) = 0;
  CHECK(lp::check_witness(s, {Rational(0)}));
  CHECK_FALSE(lp::check_witness(s, {Rational(1, 1000000)}));
  CHECK_THROWS_AS(lp::check_witness(s, {Rational(0), Rational(0)}), DimensionMismatch);
}

TEST_CASE("witness perturbed beyond its slack fails") {
  const auto rep = lp::feasible_exact(unit_interval());
  REQUIRE(rep.feasible);
  // slack of row 1 (x <= 1) is 1 - w; push past it
  lp::Witness w = rep.witness;
  w[0] += (Rational(1) - w[0]) + Rational(1, 1000000);
  CHECK_FALSE(lp::check_witness(unit_interval(), w));
}

TEST_CASE("classical cycling instance terminates with Bland's rule") {
  // Beale's example in standard equality form with slack columns.
  // min -3/4 y1 + 150 y2 - 1/50 y3 + 6 y4
  const std::size_t rows = 3, cols = 7;
  std::vector<Rational> lhs(rows * cols), rhs(rows), cost(cols);
  auto set = [&](std::size_t r, std::size_t c, Rational v) { lhs[r * cols + c] = v; };
  set(0, 0, Rational(1, 4));
  set(0, 1, -60);
  set(0, 2, Rational(-1, 25));
  set(0, 3, 9);
  set(0, 4, 1);
  set(1, 0, Rational(1, 2));
  set(1, 1, -90);
  set(1, 2, Rational(-1, 50));
  set(1, 3, 3);
  set(1, 5, 1);
  set(2, 2, 1);
  set(2, 6, 1);
  rhs[2] = 1;
  cost[0] = Rational(-3, 4);
  cost[1] = 150;
  cost[2] = Rational(-1, 50);
  cost[3] = 6;
  const auto res = lp::detail::solve_standard_form(rows, cols, lhs, rhs, cost);
  REQUIRE(res.status == lp::detail::StandardFormResult::Status::Optimal);
  CHECK(res.objective == Rational(-1, 20));
  CHECK(res.pivots > 0);
}

TEST_CASE("degenerate cone objectives terminate") {
  // many planes through the origin plus a box: heavy pivot degeneracy
  util::Rng rng(3);
  LinearSystem s(14, 3);
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t c = 0; c < 3; ++c) s.at(r, c) = rng.range(-2, 2);
    s.rhs(r) = 0;
  }
  for (int axis = 0; axis < 3; ++axis) {
    s.at(8 + 2 * static_cast<std::size_t>(axis), static_cast<std::size_t>(axis)) = 1;
    s.rhs(8 + 2 * static_cast<std::size_t>(axis)) = 1;
    s.at(9 + 2 * static_cast<std::size_t>(axis), static_cast<std::size_t>(axis)) = -1;
    s.rhs(9 + 2 * static_cast<std::size_t>(axis)) = 1;
  }
  std::vector<Rational> obj{1, 1, 1};
  const auto m = lp::maximize(s, obj);
  CHECK(m.status == lp::MaximizeResult::Status::Optimal);
  const auto f = lp::feasible_exact(s);
  CHECK(f.feasible);  // the origin
}

TEST_CASE("determinism: identical systems give identical witnesses") {
  util::Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + rng.below(4), m = 1 + rng.below(8);
    LinearSystem s(m, n);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < n; ++c) s.at(r, c) = rng.range(-3, 3);
      s.rhs(r) = rng.range(-3, 3);
    }
    const auto a = lp::feasible_exact(s);
    const auto b = lp::feasible_exact(s);
    CHECK(a.feasible == b.feasible);
    CHECK(a.pivots == b.pivots);
    if (a.feasible) CHECK(a.witness == b.witness);
  }
}

TEST_CASE("agreement with Fourier-Motzkin on random small systems") {
  util::Rng rng(99);
  int feasible_count = 0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng.below(4), m = 1 + rng.below(8);
    LinearSystem s(m, n);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < n; ++c) s.at(r, c) = rng.range(-3, 3);
      s.rhs(r) = rng.range(-3, 3);
    }
    const auto rep = lp::feasible_exact(s);
    CHECK(rep.feasible == oracles::fourier_motzkin_feasible(s));
    if (rep.feasible) {
      ++feasible_count;
      CHECK(lp::check_witness(s, rep.witness));
    }
  }
  CHECK(feasible_count > 0);
  CHECK(feasible_count < 300);
}

TEST_CASE("float prescreen matches trivial systems and clear margins") {
  CHECK(lp::feasible_float(unit_interval()) == lp::FloatVerdict::Feasible);
  CHECK(lp::feasible_float(empty_interval()) == lp::FloatVerdict::Infeasible);

  util::Rng rng(5);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng.below(4), m = 1 + rng.below(8);
    LinearSystem s(m, n);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < n; ++c) s.at(r, c) = rng.range(-3, 3);
      s.rhs(r) = rng.range(-3, 3);
    }
    const auto exact = lp::feasible_exact(s);
    // decisive margins (>= 1e-3 in absolute value) must screen correctly
    if (exact.margin.abs() >= Rational(1, 1000)) {
      ++checked;
      const auto fl = lp::feasible_float(s);
      CHECK(fl == (exact.feasible ? lp::FloatVerdict::Feasible : lp::FloatVerdict::Infeasible));
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("maximize value equals the vertex maximum on a polytope") {
  // unit cube as a system; support in a skew direction
  LinearSystem s(6, 3);
  for (int axis = 0; axis < 3; ++axis) {
    s.at(2 * static_cast<std::size_t>(axis), static_cast<std::size_t>(axis)) = 1;
    s.rhs(2 * static_cast<std::size_t>(axis)) = 1;
    s.at(2 * static_cast<std::size_t>(axis) + 1, static_cast<std::size_t>(axis)) = -1;
    s.rhs(2 * static_cast<std::size_t>(axis) + 1) = 0;
  }
  std::vector<Rational> obj{Rational(1, 2), -2, Rational(1, 3)};
  const auto m = lp::maximize(s, obj);
  REQUIRE(m.status == lp::MaximizeResult::Status::Optimal);
  CHECK(m.value == Rational(1, 2) + Rational(1, 3));  // at (1, 0, 1)
}
