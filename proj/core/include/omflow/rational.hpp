#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace omflow {

using Int = mpz_class;
using Rat = mpq_class;

// Dense matrix of exact rationals, row-major.  Small and unoptimized on
// purpose: dimensions in this project stay in the tens.
class RationalMatrix {
 public:
  RationalMatrix() : rows_(0), cols_(0) {}
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const Rat& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  // Columns selected by ascending index list.
  RationalMatrix columns(const std::vector<int>& idx) const;

 private:
  int rows_, cols_;
  std::vector<Rat> a_;
};

// Exact rank.  Denominators are cleared per row, then fraction-free
// (Bareiss) elimination runs over the integers.
int rational_rank(const RationalMatrix& m);

// One nonzero vector x with m * x = 0, for a matrix whose columns have rank
// exactly cols-1.  Throws InvariantError if the null space is not 1-dimensional
// or the vector has a zero coordinate (callers rely on full support).
std::vector<Rat> full_support_null_vector(const RationalMatrix& m);

// One solution y (length m.rows()) of  y^T * m = rhs^T, for a consistent
// system whose selected columns are linearly independent.
// Throws InvariantError if the system is inconsistent.
std::vector<Rat> solve_left(const RationalMatrix& m, const std::vector<Rat>& rhs);

}  // namespace omflow
