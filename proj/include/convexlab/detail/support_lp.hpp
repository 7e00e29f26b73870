// Copyright 2026 The convexlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <limits>
#include <vector>

#include "convexlab/types.hpp"

namespace convexlab::detail {

/// max <d, x> subject to A x <= b, for a symmetric constraint system:
/// antipode[i] is the index of the row equal to -A.row(i), b > 0 and the
/// rows span R^n. Solved as the dual  min b'y  s.t. A'y = d, y >= 0  with
/// a revised simplex on an n x n basis. Returns the maximiser x.
template <typename Scalar>
Vector<Scalar> support_point_lp(const Matrix<Scalar>& A, const Vector<Scalar>& b,
                                const std::vector<int>& antipode, const Vector<Scalar>& d) {
  const int n = static_cast<int>(A.cols());
  const int m = static_cast<int>(A.rows());

  // Starting basis: n independent rows, flipped to their antipodes where the
  // coefficient of d would be negative.
  std::vector<int> basis;
  {
    Matrix<Scalar> picked(n, 0);
    for (int i = 0; i < m && static_cast<int>(basis.size()) < n; ++i) {
      Matrix<Scalar> trial(n, picked.cols() + 1);
      trial << picked, A.row(i).transpose();
      Eigen::FullPivLU<Matrix<Scalar>> lu(trial);
      lu.setThreshold(Scalar(1e-8));
      if (lu.rank() == trial.cols()) {
        picked = trial;
        basis.push_back(i);
      }
    }
    if (static_cast<int>(basis.size()) < n) throw GeometryError("support: normals do not span");
    const Vector<Scalar> coef = picked.partialPivLu().solve(d);
    for (int j = 0; j < n; ++j)
      if (coef(j) < 0) basis[j] = antipode[basis[j]];
  }

  Matrix<Scalar> B(n, n);
  Vector<Scalar> cb(n);
  const Scalar eps = Scalar(1e-12);
  for (int iter = 0; iter < 50 * m + 100; ++iter) {
    for (int j = 0; j < n; ++j) {
      B.col(j) = A.row(basis[j]).transpose();
      cb(j) = b(basis[j]);
    }
    Eigen::PartialPivLU<Matrix<Scalar>> lu(B);
    const Vector<Scalar> xb = lu.solve(d);
    const Vector<Scalar> pi = lu.transpose().solve(cb);
    // Bland's rule: first improving column.
    const Vector<Scalar> reduced = b - A * pi;
    int enter = -1;
    for (int i = 0; i < m; ++i) {
      if (reduced(i) < -eps * (1 + std::abs(b(i)))) {
        enter = i;
        break;
      }
    }
    if (enter < 0) return pi;
    const Vector<Scalar> w = lu.solve(A.row(enter).transpose());
    int leave = -1;
    Scalar best = std::numeric_limits<Scalar>::infinity();
    for (int j = 0; j < n; ++j) {
      if (w(j) > eps) {
        const Scalar ratio = std::max(Scalar(0), xb(j)) / w(j);
        if (ratio < best - eps || (ratio <= best + eps && leave >= 0 && basis[j] < basis[leave])) {
          best = ratio;
          leave = j;
        }
      }
    }
    if (leave < 0) throw GeometryError("support: unbounded body");
    basis[leave] = enter;
  }
  throw ConvergenceError("support: simplex iteration limit");
}

}  // namespace convexlab::detail
