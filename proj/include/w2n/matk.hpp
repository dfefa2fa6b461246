#pragma once

#include <optional>
#include <vector>

#include "w2n/ratk.hpp"

namespace w2n {

// Dense matrix over Q(k), row-major.
class MatK {
public:
  MatK() : rows_(0), cols_(0) {}
  MatK(int rows, int cols) : rows_(rows), cols_(cols), entries_(static_cast<size_t>(rows) * cols) {
    if (rows <= 0 || cols <= 0) fail(errc::invalid_argument, "matrix dimensions must be positive");
  }
  static MatK identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  RatK& at(int r, int c) { return entries_[static_cast<size_t>(r) * cols_ + c]; }
  const RatK& at(int r, int c) const { return entries_[static_cast<size_t>(r) * cols_ + c]; }

  friend bool operator==(const MatK& a, const MatK& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  MatK transposed() const;
  friend MatK operator*(const MatK& a, const MatK& b);
  std::vector<RatK> apply(const std::vector<RatK>& v) const;

private:
  int rows_, cols_;
  std::vector<RatK> entries_;
};

RatK mat_det(const MatK& m);       // throws on non-square
MatK mat_inverse(const MatK& m);   // throws errc::singular_matrix when det = 0

struct LinearSolution {
  enum class kind { unique, none, underdetermined } tag;
  std::vector<RatK> x;                          // a particular solution (unique/underdetermined)
  std::vector<std::vector<RatK>> nullspace;     // basis (underdetermined only)
};

// Exact Gaussian elimination; inconsistency is a return variant, not an error.
LinearSolution linear_solve(const MatK& m, const std::vector<RatK>& rhs);

} // namespace w2n
