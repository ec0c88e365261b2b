#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cover14/errors.hpp"
#include "cover14/rational.hpp"

namespace cover14::lp {

// Dense rational system A x <= rhs, one relation per row. Column labels are
// optional and carried only for diagnostics.
class LinearSystem {
 public:
  LinearSystem(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols), rhs_(rows) {
    if (rows == 0 || cols == 0) throw DimensionMismatch("LinearSystem: empty shape");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  std::span<const Rational> row(std::size_t r) const { return {a_.data() + r * cols_, cols_}; }

  Rational& rhs(std::size_t r) { return rhs_[r]; }
  const Rational& rhs(std::size_t r) const { return rhs_[r]; }

  std::vector<std::string> names;  // size cols() or empty

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> a_;
  std::vector<Rational> rhs_;
};

using Witness = std::vector<Rational>;

}  // namespace cover14::lp
