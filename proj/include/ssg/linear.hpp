// Copyright 2026 The SSG Solver Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <utility>
#include <vector>

#include "ssg/error.hpp"
#include "ssg/rational.hpp"

namespace ssg {

// Square system matrix * x = rhs over the rationals.
struct LinearSystem {
  std::vector<std::vector<Rational>> matrix;
  std::vector<Rational> rhs;

  std::size_t dim() const { return rhs.size(); }
};

/// Exact Gauss-Jordan elimination. Pivots on the first nonzero entry of each
/// column; zero entries are skipped, which keeps the sparse absorbing-chain
/// systems cheap. Throws on a singular matrix.
inline std::vector<Rational> solve(LinearSystem sys) {
  const std::size_t n = sys.dim();
  auto& a = sys.matrix;
  auto& b = sys.rhs;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && is_zero(a[piv][col])) ++piv;
    if (piv == n) throw Error(ErrorKind::Internal, "singular linear system");
    if (piv != col) {
      std::swap(a[piv], a[col]);
      std::swap(b[piv], b[col]);
    }
    const Rational inv = 1 / a[col][col];
    for (std::size_t j = col; j < n; ++j)
      if (!is_zero(a[col][j])) a[col][j] *= inv;
    b[col] *= inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || is_zero(a[row][col])) continue;
      const Rational f = a[row][col];
      for (std::size_t j = col; j < n; ++j)
        if (!is_zero(a[col][j])) a[row][j] -= f * a[col][j];
      b[row] -= f * b[col];
    }
  }
  return b;
}

/// matrix * x - rhs, exactly.
inline std::vector<Rational> residual(const LinearSystem& sys, const std::vector<Rational>& x) {
  std::vector<Rational> r(sys.dim());
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    Rational acc(0);
    for (std::size_t j = 0; j < sys.dim(); ++j)
      if (!is_zero(sys.matrix[i][j])) acc += sys.matrix[i][j] * x[j];
    r[i] = acc - sys.rhs[i];
  }
  return r;
}

}  // namespace ssg
