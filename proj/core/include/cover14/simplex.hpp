#pragma once

#include <optional>
#include <span>

#include "cover14/linear_system.hpp"

namespace cover14::lp {

enum class SolveMode { FloatPrescreen, Exact };

struct FeasReport {
  bool feasible = false;
  Witness witness;        // satisfies every row exactly when feasible
  Rational margin;        // max t with A x + t*1 <= rhs, t <= 1; >= 0 iff feasible
  long pivots = 0;
  SolveMode mode = SolveMode::Exact;
};

// Exact feasibility of {x : A x <= rhs} over free variables. Decided by
// maximizing the uniform slack margin, so feasible systems come back with the
// most robust witness the system admits. Terminates on every input (Bland).
FeasReport feasible_exact(const LinearSystem& s);

enum class FloatVerdict { Feasible, Infeasible, Failure };

// Double-precision screen over the same row data, feasibility tolerance 1e-9.
// Advisory only: Feasible means "confirm exactly", Infeasible means "assume
// so". Certificate soundness never depends on this path.
FloatVerdict feasible_float(const LinearSystem& s);

// Substitution check: true iff w satisfies every row with exact arithmetic.
// Deliberately shares no code with the simplex. Throws DimensionMismatch.
bool check_witness(const LinearSystem& s, const Witness& w);

struct MaximizeResult {
  enum class Status { Optimal, Infeasible, Unbounded } status;
  Rational value;   // exact optimum when Optimal
  Witness point;    // attaining point when Optimal
  long pivots = 0;
};

// Exact max{objective.x : A x <= rhs} over free variables.
MaximizeResult maximize(const LinearSystem& s, std::span<const Rational> objective);

namespace detail {

// Two-phase primal simplex for min cost.y s.t. eq_lhs y = eq_rhs, y >= 0,
// with Bland's least-index rule in both phases. The public entry points above
// run it on the LP dual of their input, whose row count equals the input's
// variable count; the input's witness is recovered from the simplex
// multipliers of the optimal basis.
struct StandardFormResult {
  enum class Status { Optimal, Infeasible, Unbounded } status;
  Rational objective;
  std::vector<Rational> multipliers;  // one per equality row; zeros for rows found redundant
  long pivots = 0;
};
StandardFormResult solve_standard_form(std::size_t rows, std::size_t cols,
                                       const std::vector<Rational>& eq_lhs,
                                       const std::vector<Rational>& eq_rhs,
                                       const std::vector<Rational>& cost);

}  // namespace detail

}  // namespace cover14::lp
