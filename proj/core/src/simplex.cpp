#include "cover14/simplex.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace cover14::lp {

namespace detail {

namespace {

// Full-tableau simplex state for min cost.y, M y = d, y >= 0.
// Columns 0..m-1 are structural, m..m+k-1 the artificial identity.
struct Tableau {
  std::size_t k, m;                // equality rows, structural columns
  std::vector<Rational> t;         // k x (m + k), row-major
  std::vector<Rational> rhs;       // k, kept >= 0 throughout
  std::vector<Rational> z;         // reduced costs, m + k
  Rational obj;                    // current objective value
  std::vector<std::size_t> basis;  // k, column basic in each row
  long pivots = 0;

  std::size_t width() const { return m + k; }
  Rational& at(std::size_t r, std::size_t c) { return t[r * width() + c]; }

  void pivot(std::size_t pr, std::size_t pc) {
    const Rational piv = at(pr, pc);
    assert(!piv.is_zero());
    for (std::size_t j = 0; j < width(); ++j) at(pr, j) /= piv;
    rhs[pr] /= piv;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == pr) continue;
      const Rational f = at(r, pc);
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < width(); ++j) {
        if (!at(pr, j).is_zero()) at(r, j) -= f * at(pr, j);
      }
      rhs[r] -= f * rhs[pr];
    }
    const Rational zf = z[pc];
    if (!zf.is_zero()) {
      for (std::size_t j = 0; j < width(); ++j) {
        if (!at(pr, j).is_zero()) z[j] -= zf * at(pr, j);
      }
      obj += zf * rhs[pr];
    }
    basis[pr] = pc;
    ++pivots;
  }

  // z and obj from scratch for the given cost vector (cost covers all columns).
  void reset_costs(const std::vector<Rational>& cost) {
    z.assign(width(), Rational());
    obj = Rational();
    for (std::size_t j = 0; j < width(); ++j) z[j] = cost[j];
    for (std::size_t r = 0; r < k; ++r) {
      const Rational cb = cost[basis[r]];
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j < width(); ++j) {
        if (!at(r, j).is_zero()) z[j] -= cb * at(r, j);
      }
      obj += cb * rhs[r];
    }
  }

  // Bland: entering = least structural index with negative reduced cost.
  std::optional<std::size_t> entering() const {
    for (std::size_t j = 0; j < m; ++j)
      if (z[j].sign() < 0) return j;
    return std::nullopt;
  }

  // Bland: among minimum-ratio rows, the one whose basic variable has the
  // least index. Returns nullopt when the column is unbounded.
  std::optional<std::size_t> leaving(std::size_t pc) {
    std::optional<std::size_t> best;
    Rational best_ratio;
    for (std::size_t r = 0; r < k; ++r) {
      const Rational& a = t[r * width() + pc];
      if (a.sign() <= 0) continue;
      const Rational ratio = rhs[r] / a;
      if (!best || ratio < best_ratio ||
          (ratio == best_ratio && basis[r] < basis[*best])) {
        best = r;
        best_ratio = ratio;
      }
    }
    return best;
  }
};

}  // namespace

StandardFormResult solve_standard_form(std::size_t rows, std::size_t cols,
                                       const std::vector<Rational>& eq_lhs,
                                       const std::vector<Rational>& eq_rhs,
                                       const std::vector<Rational>& cost) {
  assert(eq_lhs.size() == rows * cols && eq_rhs.size() == rows && cost.size() == cols);
  Tableau tb;
  tb.k = rows;
  tb.m = cols;
  tb.t.assign(rows * (cols + rows), Rational());
  tb.rhs.assign(rows, Rational());
  tb.basis.resize(rows);

  std::vector<int> row_sign(rows, 1);
  for (std::size_t r = 0; r < rows; ++r) {
    const int s = eq_rhs[r].sign() < 0 ? -1 : 1;
    row_sign[r] = s;
    for (std::size_t j = 0; j < cols; ++j) {
      const Rational& v = eq_lhs[r * cols + j];
      if (!v.is_zero()) tb.at(r, j) = s < 0 ? -v : v;
    }
    tb.at(r, cols + r) = 1;
    tb.rhs[r] = s < 0 ? -eq_rhs[r] : eq_rhs[r];
    tb.basis[r] = cols + r;
  }

  // Phase I: minimize the sum of artificials.
  {
    std::vector<Rational> phase1(cols + rows, Rational());
    for (std::size_t r = 0; r < rows; ++r) phase1[cols + r] = 1;
    tb.reset_costs(phase1);
    while (auto pc = tb.entering()) {
      auto pr = tb.leaving(*pc);
      if (!pr) throw std::logic_error("simplex: phase I unbounded");
      tb.pivot(*pr, *pc);
    }
    if (tb.obj.sign() > 0) {
      StandardFormResult res;
      res.status = StandardFormResult::Status::Infeasible;
      res.pivots = tb.pivots;
      return res;
    }
  }

  // Drive artificials out of the basis; rows that cannot release one are
  // redundant equalities and stay inert (all-zero structural part, rhs 0).
  for (std::size_t r = 0; r < rows; ++r) {
    if (tb.basis[r] < cols) continue;
    assert(tb.rhs[r].is_zero());
    for (std::size_t j = 0; j < cols; ++j) {
      if (!tb.at(r, j).is_zero()) {
        tb.pivot(r, j);
        break;
      }
    }
  }

  // Phase II.
  {
    std::vector<Rational> phase2(cols + rows, Rational());
    for (std::size_t j = 0; j < cols; ++j) phase2[j] = cost[j];
    tb.reset_costs(phase2);
    while (auto pc = tb.entering()) {
      auto pr = tb.leaving(*pc);
      if (!pr) {
        StandardFormResult res;
        res.status = StandardFormResult::Status::Unbounded;
        res.pivots = tb.pivots;
        return res;
      }
      tb.pivot(*pr, *pc);
    }

    StandardFormResult res;
    res.status = StandardFormResult::Status::Optimal;
    res.objective = tb.obj;
    res.pivots = tb.pivots;
    res.multipliers.assign(rows, Rational());
    // pi = c_B B^{-1}; column cols+i of the tableau holds B^{-1} e_i.
    for (std::size_t i = 0; i < rows; ++i) {
      Rational pi;
      for (std::size_t r = 0; r < rows; ++r) {
        if (tb.basis[r] >= cols) continue;  // inert artificial, cost 0
        const Rational& cb = phase2[tb.basis[r]];
        if (cb.is_zero()) continue;
        const Rational& a = tb.at(r, cols + i);
        if (!a.is_zero()) pi += cb * a;
      }
      res.multipliers[i] = row_sign[i] < 0 ? -pi : pi;
    }
    return res;
  }
}

}  // namespace detail

namespace {

// Dual of max{obj.x : A x <= rhs}: min rhs.y s.t. A^T y = obj, y >= 0.
// The multipliers of its optimal basis are the attaining primal point.
detail::StandardFormResult solve_dual(const LinearSystem& s, std::span<const Rational> objective) {
  const std::size_t m = s.rows(), n = s.cols();
  std::vector<Rational> lhs(n * m);
  std::vector<Rational> rhs(n);
  std::vector<Rational> cost(m);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) lhs[j * m + i] = s.at(i, j);
    rhs[j] = objective[j];
  }
  for (std::size_t i = 0; i < m; ++i) cost[i] = s.rhs(i);
  return detail::solve_standard_form(n, m, lhs, rhs, cost);
}

void verify_point(const LinearSystem& s, const Witness& x) {
  for (std::size_t i = 0; i < s.rows(); ++i) {
    Rational lhs;
    for (std::size_t j = 0; j < s.cols(); ++j) {
      const Rational& a = s.at(i, j);
      if (!a.is_zero()) lhs += a * x[j];
    }
    if (lhs > s.rhs(i)) throw std::logic_error("simplex: returned point violates a row");
  }
}

LinearSystem with_margin_column(const LinearSystem& s) {
  LinearSystem m(s.rows() + 1, s.cols() + 1);
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = 0; j < s.cols(); ++j) m.at(i, j) = s.at(i, j);
    m.at(i, s.cols()) = 1;
    m.rhs(i) = s.rhs(i);
  }
  m.at(s.rows(), s.cols()) = 1;  // t <= 1 keeps the margin objective bounded
  m.rhs(s.rows()) = 1;
  return m;
}

}  // namespace

MaximizeResult maximize(const LinearSystem& s, std::span<const Rational> objective) {
  if (objective.size() != s.cols()) throw DimensionMismatch("maximize: objective length");
  auto dual = solve_dual(s, objective);
  MaximizeResult res;
  res.pivots = dual.pivots;
  switch (dual.status) {
    case detail::StandardFormResult::Status::Unbounded:
      res.status = MaximizeResult::Status::Infeasible;
      return res;
    case detail::StandardFormResult::Status::Infeasible: {
      // Dual infeasible: the primal is unbounded or infeasible.
      auto feas = feasible_exact(s);
      res.pivots += feas.pivots;
      res.status = feas.feasible ? MaximizeResult::Status::Unbounded
                                 : MaximizeResult::Status::Infeasible;
      return res;
    }
    case detail::StandardFormResult::Status::Optimal:
      break;
  }
  res.status = MaximizeResult::Status::Optimal;
  res.value = dual.objective;
  res.point = std::move(dual.multipliers);
  verify_point(s, res.point);
  Rational attained;
  for (std::size_t j = 0; j < s.cols(); ++j)
    if (!objective[j].is_zero()) attained += objective[j] * res.point[j];
  if (attained != res.value) throw std::logic_error("simplex: objective mismatch at optimum");
  return res;
}

FeasReport feasible_exact(const LinearSystem& s) {
  const LinearSystem m = with_margin_column(s);
  std::vector<Rational> obj(m.cols());
  obj.back() = 1;
  auto dual = solve_dual(m, obj);
  if (dual.status != detail::StandardFormResult::Status::Optimal)
    throw std::logic_error("simplex: margin program must have an optimum");

  FeasReport rep;
  rep.mode = SolveMode::Exact;
  rep.pivots = dual.pivots;
  rep.margin = dual.objective;
  rep.feasible = rep.margin.sign() >= 0;
  if (rep.feasible) {
    rep.witness.assign(dual.multipliers.begin(), dual.multipliers.end() - 1);
    if (!check_witness(s, rep.witness))
      throw std::logic_error("simplex: feasibility witness fails substitution");
  }
  return rep;
}

bool check_witness(const LinearSystem& s, const Witness& w) {
  if (w.size() != s.cols()) throw DimensionMismatch("check_witness: witness length");
  for (std::size_t i = 0; i < s.rows(); ++i) {
    Rational lhs;
    for (std::size_t j = 0; j < s.cols(); ++j) {
      const Rational& a = s.at(i, j);
      if (!a.is_zero()) lhs += a * w[j];
    }
    if (lhs > s.rhs(i)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Floating-point prescreen: the same dual construction in doubles, Dantzig
// pricing, and an iteration cap. Anything suspicious is reported as Failure
// so the caller falls back to the exact path.

namespace {

constexpr double kFeasTol = 1e-9;    // feasibility / reduced-cost tolerance
constexpr double kPivotTol = 1e-7;   // smallest acceptable pivot element
constexpr int kRefreshEvery = 64;    // pivots between cost-row recomputations

struct FloatTableau {
  std::size_t k, m;
  std::vector<double> t, rhs, z;
  double obj = 0;
  std::vector<std::size_t> basis;

  std::size_t width() const { return m + k; }
  double& at(std::size_t r, std::size_t c) { return t[r * width() + c]; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double piv = at(pr, pc);
    for (std::size_t j = 0; j < width(); ++j) at(pr, j) /= piv;
    at(pr, pc) = 1.0;
    rhs[pr] /= piv;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0) continue;
      for (std::size_t j = 0; j < width(); ++j) at(r, j) -= f * at(pr, j);
      at(r, pc) = 0;
      rhs[r] -= f * rhs[pr];
      if (rhs[r] < 0) rhs[r] = rhs[r] > -1e-9 ? 0 : rhs[r];
    }
    const double zf = z[pc];
    if (zf != 0) {
      for (std::size_t j = 0; j < width(); ++j) z[j] -= zf * at(pr, j);
      z[pc] = 0;
      obj += zf * rhs[pr];
    }
    basis[pr] = pc;
  }

  void reset_costs(const std::vector<double>& cost) {
    z = cost;
    obj = 0;
    for (std::size_t r = 0; r < k; ++r) {
      const double cb = cost[basis[r]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < width(); ++j) z[j] -= cb * at(r, j);
      obj += cb * rhs[r];
    }
    for (std::size_t r = 0; r < k; ++r) z[basis[r]] = 0;
  }

  std::optional<std::size_t> entering() const {
    std::optional<std::size_t> best;
    double most = -kFeasTol;
    for (std::size_t j = 0; j < m; ++j) {
      if (z[j] < most) {
        most = z[j];
        best = j;
      }
    }
    return best;
  }

  // Two-pass ratio test: first the tightest ratio with a feasibility slack,
  // then the row with the largest pivot element among those within it.
  std::optional<std::size_t> leaving(std::size_t pc) {
    double limit = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < k; ++r) {
      const double a = t[r * width() + pc];
      if (a <= kPivotTol) continue;
      limit = std::min(limit, (std::max(rhs[r], 0.0) + kFeasTol) / a);
    }
    if (!std::isfinite(limit)) return std::nullopt;
    std::optional<std::size_t> best;
    double best_piv = 0;
    for (std::size_t r = 0; r < k; ++r) {
      const double a = t[r * width() + pc];
      if (a <= kPivotTol) continue;
      if (std::max(rhs[r], 0.0) / a <= limit && a > best_piv) {
        best = r;
        best_piv = a;
      }
    }
    return best;
  }

  // Runs one simplex phase to (verified) optimality; false on iteration cap
  // or numeric trouble. The cost row is refreshed periodically and claimed
  // optimality is re-checked against freshly computed reduced costs.
  bool minimize(const std::vector<double>& cost, long cap) {
    reset_costs(cost);
    long iters = 0;
    int fresh_retries = 0;
    for (;;) {
      auto pc = entering();
      if (!pc) {
        reset_costs(cost);
        pc = entering();
        if (!pc) return true;
        if (++fresh_retries > 8) return false;
      }
      auto pr = leaving(*pc);
      if (!pr) return false;  // our duals are never unbounded; treat as failure
      pivot(*pr, *pc);
      if (++iters > cap) return false;
      if (iters % kRefreshEvery == 0) reset_costs(cost);
    }
  }
};

}  // namespace

FloatVerdict feasible_float(const LinearSystem& s) {
  const std::size_t mrows = s.rows() + 1, ncols = s.cols() + 1;
  FloatTableau tb;
  tb.k = ncols;
  tb.m = mrows;
  tb.t.assign(tb.k * (tb.m + tb.k), 0.0);
  tb.rhs.assign(tb.k, 0.0);
  tb.basis.resize(tb.k);

  // Dual of the margin program, in doubles. Row j of the equality system is
  // column j of [A | 1; 0 1]; the rhs is the margin objective e_t.
  std::vector<double> cost(tb.m + tb.k, 0.0);
  for (std::size_t j = 0; j < tb.k; ++j) {
    const double d = (j + 1 == ncols) ? 1.0 : 0.0;
    for (std::size_t i = 0; i < mrows; ++i) {
      double v;
      if (i < s.rows())
        v = (j < s.cols()) ? s.at(i, j).to_double() : 1.0;
      else
        v = (j < s.cols()) ? 0.0 : 1.0;
      tb.at(j, i) = v;
    }
    tb.at(j, tb.m + j) = 1.0;
    tb.rhs[j] = d;
    tb.basis[j] = tb.m + j;
  }
  for (std::size_t i = 0; i < mrows; ++i)
    cost[i] = (i < s.rows()) ? s.rhs(i).to_double() : 1.0;

  const long cap = 100 * static_cast<long>(tb.k + tb.m) + 2000;

  std::vector<double> phase1(tb.m + tb.k, 0.0);
  for (std::size_t r = 0; r < tb.k; ++r) phase1[tb.m + r] = 1.0;
  if (!tb.minimize(phase1, cap)) return FloatVerdict::Failure;
  if (tb.obj > 1e-7) return FloatVerdict::Failure;  // dual of the margin LP is always feasible

  for (std::size_t r = 0; r < tb.k; ++r) {
    if (tb.basis[r] < tb.m) continue;
    for (std::size_t j = 0; j < tb.m; ++j) {
      if (std::abs(tb.at(r, j)) > kPivotTol) {
        tb.pivot(r, j);
        break;
      }
    }
  }

  if (!tb.minimize(cost, cap)) return FloatVerdict::Failure;
  if (!std::isfinite(tb.obj)) return FloatVerdict::Failure;
  return tb.obj >= -kFeasTol ? FloatVerdict::Feasible : FloatVerdict::Infeasible;
}

}  // namespace cover14::lp
