#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dfred/error.hpp"
#include "dfred/poly.hpp"

namespace dfred {

template <class F>
using Vec = std::vector<F>;
template <class F>
using Matrix = std::vector<std::vector<F>>;

template <class F>
Matrix<F> zero_matrix(std::size_t rows, std::size_t cols) {
  return Matrix<F>(rows, Vec<F>(cols, F(0)));
}

template <class F>
Matrix<F> identity_matrix(std::size_t n) {
  Matrix<F> m = zero_matrix<F>(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = F(1);
  return m;
}

template <class F>
Matrix<F> operator*(const Matrix<F>& a, const Matrix<F>& b) {
  const std::size_t inner = b.size();
  const std::size_t cols = inner ? b[0].size() : 0;
  Matrix<F> r = zero_matrix<F>(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (detail::coeff_is_zero(a[i][k])) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        F t = a[i][k] * b[k][j];
        r[i][j] += t;
      }
    }
  return r;
}

// Row vector times matrix.
template <class F>
Vec<F> operator*(const Vec<F>& v, const Matrix<F>& m) {
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  Vec<F> r(cols, F(0));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (detail::coeff_is_zero(v[i])) continue;
    for (std::size_t j = 0; j < cols; ++j) {
      F t = v[i] * m[i][j];
      r[j] += t;
    }
  }
  return r;
}

template <class F>
Vec<F> operator+(const Vec<F>& a, const Vec<F>& b) {
  Vec<F> r = a;
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

template <class F>
Vec<F> operator-(const Vec<F>& a, const Vec<F>& b) {
  Vec<F> r = a;
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return r;
}

template <class F>
Vec<F> scaled(const Vec<F>& v, const F& c) {
  Vec<F> r = v;
  for (auto& x : r) x *= c;
  return r;
}

template <class F>
bool is_zero_vector(const Vec<F>& v) {
  for (const auto& c : v)
    if (!detail::coeff_is_zero(c)) return false;
  return true;
}

// In-place reduced row echelon form; returns pivot columns in row order.
template <class F>
std::vector<std::size_t> rref(Matrix<F>& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && detail::coeff_is_zero(a[p][c])) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const F inv = F(1) / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || detail::coeff_is_zero(a[i][c])) continue;
      const F f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (detail::coeff_is_zero(a[r][j])) continue;
        F t = f * a[r][j];
        a[i][j] -= t;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
std::size_t rank(Matrix<F> a) {
  return rref(a).size();
}

// Basis of {y : A y = 0}.
template <class F>
std::vector<Vec<F>> kernel_basis(Matrix<F> a, std::size_t cols) {
  auto pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec<F>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec<F> y(cols, F(0));
    y[free] = F(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) y[pivots[r]] = -a[r][free];
    basis.push_back(std::move(y));
  }
  return basis;
}

template <class F>
std::vector<Vec<F>> kernel_basis(const Matrix<F>& a) {
  return kernel_basis(a, a.empty() ? 0 : a[0].size());
}

template <class F>
struct LinearSolution {
  Vec<F> particular;
  std::vector<Vec<F>> kernel;
  bool unique() const { return kernel.empty(); }
};

// Solves A y = b. An inconsistent system throws kInconsistentSystem, which
// is distinct from a zero solution.
template <class F>
LinearSolution<F> linear_solve(const Matrix<F>& a, const Vec<F>& b, std::size_t cols) {
  if (a.size() != b.size()) fail(ErrorCode::kPrecondition, "linear_solve: dimension mismatch");
  Matrix<F> aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) {
    aug[i].resize(cols, F(0));
    aug[i].push_back(b[i]);
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == cols) fail(ErrorCode::kInconsistentSystem, "linear system has no solution");
  LinearSolution<F> sol;
  sol.particular.assign(cols, F(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) sol.particular[pivots[r]] = aug[r][cols];
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec<F> y(cols, F(0));
    y[free] = F(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) y[pivots[r]] = -aug[r][free];
    sol.kernel.push_back(std::move(y));
  }
  return sol;
}

template <class F>
LinearSolution<F> linear_solve(const Matrix<F>& a, const Vec<F>& b) {
  return linear_solve(a, b, a.empty() ? 0 : a[0].size());
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
  const std::size_t n = a.size();
  Matrix<F> aug = a;
  for (std::size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n, F(0));
    aug[i][n + i] = F(1);
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<F> inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i].assign(aug[i].begin() + static_cast<std::ptrdiff_t>(n), aug[i].end());
  return inv;
}

template <class F>
Matrix<F> transpose(const Matrix<F>& a) {
  if (a.empty()) return {};
  Matrix<F> t = zero_matrix<F>(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

}  // namespace dfred
