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

// Yao-Yao equipartitions of even weighted sample clouds, centered at the
// origin and based on u-perp, plus the shear and cone-to-orthant maps.

#include <cstdint>
#include <vector>

#include "convexlab/geometry.hpp"
#include "convexlab/sampling.hpp"

namespace convexlab {

inline constexpr std::int64_t kDefaultYaoYaoSamples = 200'000;
inline constexpr double kDefaultMassTol = 5e-3;

struct YaoYaoPartition {
  VectorXd u;
  VectorXd v;
  std::vector<Cone> cones;  // cones[k + 2^{n-1}] = -cones[k]
  VectorXd masses;
  double total{};
  double mass_tol{};
  VectorXd center;
  int iterations{};
  double residual{};  // max_k |masses_k / total - 2^{-n}| / 2^{-n}

  int dim() const { return static_cast<int>(u.size()); }
};

/// mass_tol is relative to the target share 2^{-n}.
YaoYaoPartition yao_yao_equipartition(const MeasureSamples& mu, const VectorXd& u,
                                      double mass_tol = kDefaultMassTol, int max_iter = 200);

/// Image partition {T A}, based on T^{-t} u. Masses are rescaled to the
/// pushforward measure <T^{-1} y, u>^2 / |T^{-t} u|^2 dy.
YaoYaoPartition apply_map(const Map& t, const YaoYaoPartition& p);

/// Index of the cone containing x: the one whose smallest generator
/// coordinate is largest.
int locate(const std::vector<Cone>& cones, const VectorXd& x);
std::vector<int> cone_owners(const std::vector<Cone>& cones, const MatrixXd& points);
VectorXd cone_masses(const std::vector<Cone>& cones, const MatrixXd& points, const VectorXd& weights);

struct CoverReport {
  std::int64_t directions{};
  std::int64_t uncovered{};
  std::int64_t multiply_covered{};  // inside two cones while clear of every boundary
  bool passed() const { return uncovered == 0 && multiply_covered == 0; }
};

/// Random unit directions; a direction within tol of a cone boundary may lie
/// in several cones.
CoverReport cover_test(const std::vector<Cone>& cones, std::int64_t directions, std::uint64_t seed,
                       double tol = 1e-9);

/// Dual cones, checked by a sampled cover test; throws if the test fails.
std::vector<Cone> dual_partition(const YaoYaoPartition& p, std::int64_t directions = 100'000,
                                 std::uint64_t seed = 0);

/// T v = <u, v> u, T z = z on u-perp, det T = 1.
Map shear_to_axis(const VectorXd& u, const VectorXd& v);

/// S u = u, S maps the other generators to orthogonal vectors of u-perp, |det S| = 1.
Map cone_to_orthant(const Cone& a, const VectorXd& u);

/// Orthonormal basis with first column u.
MatrixXd orthonormal_completion(const VectorXd& u);

}  // namespace convexlab
