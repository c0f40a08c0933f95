#include "omflow/rational.hpp"

#include "omflow/errors.hpp"

namespace omflow {

RationalMatrix RationalMatrix::columns(const std::vector<int>& idx) const {
  RationalMatrix out(rows_, static_cast<int>(idx.size()));
  for (int r = 0; r < rows_; ++r)
    for (size_t j = 0; j < idx.size(); ++j) out.at(r, static_cast<int>(j)) = at(r, idx[j]);
  return out;
}

namespace {

// Clears denominators row by row; the result has the same rank.
std::vector<std::vector<Int>> integerize(const RationalMatrix& m) {
  std::vector<std::vector<Int>> a(m.rows(), std::vector<Int>(m.cols()));
  for (int r = 0; r < m.rows(); ++r) {
    Int lcm = 1;
    for (int c = 0; c < m.cols(); ++c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m.at(r, c).get_den_mpz_t());
    for (int c = 0; c < m.cols(); ++c) {
      Int num(m.at(r, c).get_num()), den(m.at(r, c).get_den());
      a[r][c] = num * (lcm / den);
    }
  }
  return a;
}

}  // namespace

int rational_rank(const RationalMatrix& m) {
  std::vector<std::vector<Int>> a = integerize(m);
  int rows = m.rows(), cols = m.cols();
  int rank = 0;
  Int prev = 1;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    // Bareiss step: exact division by the previous pivot keeps entries small.
    for (int r = rank + 1; r < rows; ++r) {
      for (int c = col + 1; c < cols; ++c) {
        Int t = a[r][c] * a[rank][col] - a[r][col] * a[rank][c];
        mpz_divexact(a[r][c].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[r][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

std::vector<Rat> full_support_null_vector(const RationalMatrix& m) {
  int rows = m.rows(), k = m.cols();
  // Gaussian elimination with column pivoting over Q, tracking pivot columns.
  RationalMatrix a = m;
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < k && row < rows; ++col) {
    int p = -1;
    for (int r = row; r < rows; ++r)
      if (a.at(r, col) != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int c = 0; c < k; ++c) std::swap(a.at(row, c), a.at(p, c));
    Rat inv = a.at(row, col);
    for (int c = 0; c < k; ++c) a.at(row, c) /= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == row || a.at(r, col) == 0) continue;
      Rat f = a.at(r, col);
      for (int c = 0; c < k; ++c) a.at(r, c) -= f * a.at(row, c);
    }
    pivot_col.push_back(col);
    ++row;
  }
  invariant(static_cast<int>(pivot_col.size()) == k - 1, "null space is not 1-dimensional");
  int free_col = 0;
  for (int c = 0; c < k; ++c) {
    bool is_pivot = false;
    for (int pc : pivot_col) is_pivot |= (pc == c);
    if (!is_pivot) free_col = c;
  }
  std::vector<Rat> x(k, Rat(0));
  x[free_col] = 1;
  for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = -a.at(static_cast<int>(i), free_col);
  for (const Rat& v : x) invariant(v != 0, "null vector lost support");
  return x;
}

std::vector<Rat> solve_left(const RationalMatrix& m, const std::vector<Rat>& rhs) {
  // Solve A^T y = rhs by eliminating on the transpose augmented with rhs.
  int n = m.rows(), k = m.cols();
  RationalMatrix a(k, n + 1);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < n; ++c) a.at(r, c) = m.at(c, r);
    a.at(r, n) = rhs[r];
  }
  int row = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < n && row < k; ++col) {
    int p = -1;
    for (int r = row; r < k; ++r)
      if (a.at(r, col) != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int c = 0; c <= n; ++c) std::swap(a.at(row, c), a.at(p, c));
    Rat inv = a.at(row, col);
    for (int c = 0; c <= n; ++c) a.at(row, c) /= inv;
    for (int r = 0; r < k; ++r) {
      if (r == row || a.at(r, col) == 0) continue;
      Rat f = a.at(r, col);
      for (int c = 0; c <= n; ++c) a.at(r, c) -= f * a.at(row, c);
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (int r = row; r < k; ++r) invariant(a.at(r, n) == 0, "left system inconsistent");
  std::vector<Rat> y(n, Rat(0));
  for (int r = 0; r < row; ++r) y[pivot_col[r]] = a.at(r, n);
  return y;
}

}  // namespace omflow
