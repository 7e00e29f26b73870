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

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace convexlab {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXd = Vector<double>;
using MatrixXd = Matrix<double>;

inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 4;

/// Invalid or degenerate geometric input (bad body, singular map, ...).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative procedure (root finding, optimisation) failed to converge.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tolerances used by the geometry core; tied to double precision headroom.
template <typename Scalar>
struct Tolerance {
  static constexpr Scalar symmetry = Scalar(1e-12);
  static constexpr Scalar dedup = Scalar(1e-10);
  static constexpr Scalar feasibility = Scalar(1e-10);
  static constexpr Scalar tight = Scalar(1e-9);
  static constexpr Scalar singular = Scalar(1e-12);
};

/// Volume of the Euclidean unit ball in R^n.
template <typename Scalar = double>
Scalar unit_ball_volume(int n) {
  using std::pow;
  using std::tgamma;
  const Scalar pi = std::numbers::pi_v<Scalar>;
  return pow(pi, Scalar(n) / 2) / tgamma(Scalar(n) / 2 + 1);
}

inline void require_dim(int n) {
  if (n < kMinDim || n > kMaxDim)
    throw GeometryError("dimension " + std::to_string(n) + " outside supported range [2, 4]");
}

}  // namespace convexlab
