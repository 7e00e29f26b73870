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

#include "convexlab/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace convexlab {

namespace {

VectorXd gaussian(int n, std::mt19937_64& g) {
  std::normal_distribution<double> z;
  VectorXd x(n);
  for (int i = 0; i < n; ++i) x(i) = z(g);
  return x;
}

VectorXd sphere_point(int n, std::mt19937_64& g) {
  VectorXd x;
  do x = gaussian(n, g);
  while (x.norm() < 1e-12);
  return x.normalized();
}

MatrixXd with_negatives(const MatrixXd& half) {
  MatrixXd P(half.rows(), 2 * half.cols());
  P << half, -half;
  return P;
}

}  // namespace

VPolytope random_symmetric_polytope(int n, int verts, std::uint64_t seed) {
  require_dim(n);
  if (verts % 2 || verts < 2 * n) throw GeometryError("vertex count must be even and at least 2n");
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> radius(0.5, 1.0);
  MatrixXd half(n, verts / 2);
  for (int k = 0; k < verts / 2; ++k) {
    const VectorXd s = sphere_point(n, g);
    half.col(k) = radius(g) * s;
  }
  return VPolytope(with_negatives(half));
}

VPolytope cube(int n, double half_side) {
  require_dim(n);
  const int m = 1 << n;
  MatrixXd V(n, m);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < n; ++i) V(i, k) = (k >> i & 1) ? half_side : -half_side;
  const MatrixXd I = MatrixXd::Identity(n, n) / half_side;
  return VPolytope::from_dual_pair(V, with_negatives(I).transpose());
}

VPolytope cross_polytope(int n, double radius) {
  require_dim(n);
  const VPolytope c = cube(n, 1 / radius);
  return polar(c);
}

VPolytope ball_approx(int n, int verts, std::uint64_t seed) {
  require_dim(n);
  if (verts % 2 || verts < 2 * n) throw GeometryError("vertex count must be even and at least 2n");
  const int m = verts / 2;
  MatrixXd half(n, m);
  if (n == 2) {
    for (int k = 0; k < m; ++k) {
      const double a = std::numbers::pi * k / m;
      half.col(k) << std::cos(a), std::sin(a);
    }
  } else if (n == 3) {
    const double golden = std::numbers::pi * (3 - std::sqrt(5.0));
    for (int k = 0; k < m; ++k) {
      const double z = 1 - (k + 0.5) / m;
      const double r = std::sqrt(1 - z * z);
      half.col(k) << r * std::cos(golden * k), r * std::sin(golden * k), z;
    }
  } else {
    std::mt19937_64 g(seed);
    for (int k = 0; k < m; ++k) half.col(k) = sphere_point(n, g);
  }
  return VPolytope(with_negatives(half));
}

Map random_linear_map(int n, std::uint64_t seed, double max_cond) {
  require_dim(n);
  std::mt19937_64 g(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    MatrixXd T(n, n);
    for (int j = 0; j < n; ++j) T.col(j) = gaussian(n, g);
    const Eigen::JacobiSVD<MatrixXd> svd(T);
    const auto& s = svd.singularValues();
    if (s(n - 1) > 0 && s(0) / s(n - 1) < max_cond) return Map(T);
  }
  throw ConvergenceError("random_linear_map: no well conditioned draw");
}

EllipsoidD random_ellipsoid(int n, std::uint64_t seed) {
  return apply_map(random_linear_map(n, seed), EllipsoidD::ball(n));
}

VectorXd random_direction(int n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  return sphere_point(n, g);
}

}  // namespace convexlab
