#pragma once

#include <cstddef>
#include <vector>

namespace kslice::detail {

/// Division-free Berkowitz recurrence over any commutative ring T.
///
/// `at(i, j)` returns entry (i, j) of an n x n matrix. The result holds the
/// coefficients of det(tI - A) in descending degree, result[0] == 1.
///
/// Q_{r+1} = T_r * Q_r, with T_r the lower-triangular Toeplitz matrix whose
/// first column is (1, -a, -R C, -R A_r C, ..., -R A_r^{r-1} C), where A_r is
/// the leading r x r block, R/C the border row/column and a the new diagonal.
template <typename T, typename At>
std::vector<T> berkowitz(std::size_t n, At&& at) {
  std::vector<T> q{T(1)};
  if (n == 0) return q;
  q.push_back(-at(0, 0));
  for (std::size_t r = 1; r < n; ++r) {
    std::vector<T> col(r + 2);
    col[0] = T(1);
    col[1] = -at(r, r);
    // v = C, then repeatedly v = A_r v; entry = -R v.
    std::vector<T> v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = at(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      T acc(0);
      for (std::size_t j = 0; j < r; ++j) acc += at(r, j) * v[j];
      col[k + 2] = -acc;
      if (k + 1 == r) break;
      std::vector<T> w(r, T(0));
      for (std::size_t i = 0; i < r; ++i) {
        T s(0);
        for (std::size_t j = 0; j < r; ++j) s += at(i, j) * v[j];
        w[i] = s;
      }
      v = std::move(w);
    }
    std::vector<T> next(r + 2, T(0));
    for (std::size_t i = 0; i < r + 2; ++i) {
      T s(0);
      for (std::size_t j = 0; j <= i && j < q.size(); ++j) s += col[i - j] * q[j];
      next[i] = s;
    }
    q = std::move(next);
  }
  return q;
}

}  // namespace kslice::detail
