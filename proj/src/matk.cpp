#include "w2n/matk.hpp"

namespace w2n {

MatK MatK::identity(int n) {
  MatK m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = RatK::one();
  return m;
}

MatK MatK::transposed() const {
  MatK t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

MatK operator*(const MatK& a, const MatK& b) {
  if (a.cols() != b.rows()) fail(errc::invalid_argument, "matrix product shape mismatch");
  MatK r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      RatK acc;
      for (int t = 0; t < a.cols(); ++t) acc += a.at(i, t) * b.at(t, j);
      r.at(i, j) = acc;
    }
  return r;
}

std::vector<RatK> MatK::apply(const std::vector<RatK>& v) const {
  if (static_cast<int>(v.size()) != cols_) fail(errc::invalid_argument, "matrix-vector shape mismatch");
  std::vector<RatK> r(rows_);
  for (int i = 0; i < rows_; ++i) {
    RatK acc;
    for (int j = 0; j < cols_; ++j) acc += at(i, j) * v[j];
    r[i] = acc;
  }
  return r;
}

RatK mat_det(const MatK& m) {
  if (m.rows() != m.cols()) fail(errc::invalid_argument, "determinant of non-square matrix");
  int n = m.rows();
  MatK a = m;
  RatK det = RatK::one();
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (!a.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) return RatK::zero();
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(a.at(pivot, c), a.at(col, c));
      det = -det;
    }
    det *= a.at(col, col);
    RatK inv = a.at(col, col).inverse();
    for (int r = col + 1; r < n; ++r) {
      if (a.at(r, col).is_zero()) continue;
      RatK f = a.at(r, col) * inv;
      for (int c = col; c < n; ++c) a.at(r, c) -= f * a.at(col, c);
    }
  }
  return det;
}

MatK mat_inverse(const MatK& m) {
  if (m.rows() != m.cols()) fail(errc::invalid_argument, "inverse of non-square matrix");
  int n = m.rows();
  MatK a = m;
  MatK inv = MatK::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (!a.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) fail(errc::singular_matrix, "matrix is singular over Q(k)");
    if (pivot != col)
      for (int c = 0; c < n; ++c) {
        std::swap(a.at(pivot, c), a.at(col, c));
        std::swap(inv.at(pivot, c), inv.at(col, c));
      }
    RatK p = a.at(col, col).inverse();
    for (int c = 0; c < n; ++c) {
      a.at(col, c) *= p;
      inv.at(col, c) *= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a.at(r, col).is_zero()) continue;
      RatK f = a.at(r, col);
      for (int c = 0; c < n; ++c) {
        a.at(r, c) -= f * a.at(col, c);
        inv.at(r, c) -= f * inv.at(col, c);
      }
    }
  }
  return inv;
}

LinearSolution linear_solve(const MatK& m, const std::vector<RatK>& rhs) {
  if (static_cast<int>(rhs.size()) != m.rows()) fail(errc::invalid_argument, "rhs length mismatch");
  int nr = m.rows(), nc = m.cols();
  MatK a = m;
  std::vector<RatK> b = rhs;

  std::vector<int> pivot_col_of_row;
  int row = 0;
  for (int col = 0; col < nc && row < nr; ++col) {
    int pivot = -1;
    for (int r = row; r < nr; ++r)
      if (!a.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != row) {
      for (int c = 0; c < nc; ++c) std::swap(a.at(pivot, c), a.at(row, c));
      std::swap(b[pivot], b[row]);
    }
    RatK p = a.at(row, col).inverse();
    for (int c = col; c < nc; ++c) a.at(row, c) *= p;
    b[row] *= p;
    for (int r = 0; r < nr; ++r) {
      if (r == row || a.at(r, col).is_zero()) continue;
      RatK f = a.at(r, col);
      for (int c = col; c < nc; ++c) a.at(r, c) -= f * a.at(row, c);
      b[r] -= f * b[row];
    }
    pivot_col_of_row.push_back(col);
    ++row;
  }

  for (int r = row; r < nr; ++r)
    if (!b[r].is_zero()) return {LinearSolution::kind::none, {}, {}};

  std::vector<bool> is_pivot(nc, false);
  for (int c : pivot_col_of_row) is_pivot[c] = true;

  std::vector<RatK> x(nc);
  for (int r = 0; r < static_cast<int>(pivot_col_of_row.size()); ++r) x[pivot_col_of_row[r]] = b[r];

  LinearSolution sol;
  sol.x = std::move(x);
  if (row == nc) {
    sol.tag = LinearSolution::kind::unique;
    return sol;
  }
  sol.tag = LinearSolution::kind::underdetermined;
  for (int c = 0; c < nc; ++c) {
    if (is_pivot[c]) continue;
    std::vector<RatK> v(nc);
    v[c] = RatK::one();
    for (int r = 0; r < static_cast<int>(pivot_col_of_row.size()); ++r) v[pivot_col_of_row[r]] = -a.at(r, c);
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

} // namespace w2n
