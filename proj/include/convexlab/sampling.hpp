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

// Rejection sampling in the bounding box, Monte Carlo volumes and moments, and
// the even weighted cloud for d mu = <x, u>^2 1_K dx.
//
// Proposals are drawn in chunks of kChunkSize; chunk c of a call with seed s
// uses its own engine seeded from (s, stream, c), so results do not depend on
// the worker count.

#include <cstdint>
#include <vector>

#include "convexlab/geometry.hpp"
#include "convexlab/moments.hpp"

namespace convexlab {

inline constexpr std::int64_t kChunkSize = 1 << 16;
inline constexpr double kMinAcceptance = 1e-4;

/// Batched membership test for a body. Planar polytopes with many edges use
/// an angular lookup instead of testing every facet.
class MembershipOracle {
 public:
  explicit MembershipOracle(const Body& body);

  int dim() const { return dim_; }
  bool contains(const VectorXd& x, double tol = 0) const;
  /// inside[j] = column j of X lies in the body.
  void test(const MatrixXd& X, std::vector<char>& inside, double tol = 0) const;

 private:
  enum class Kind { halfspaces, angular, quadratic };
  Kind kind_;
  int dim_;
  MatrixXd A_;
  VectorXd b_;
  MatrixXd Q_;
  std::vector<double> angles_;
  MatrixXd edge_normals_;
};

struct VolumeEstimate {
  double value{};
  double stderr_value{};
  std::int64_t samples{};
  std::uint64_t seed{};
};

/// Uniform proposals in [-h, h] with h the bounding half-widths; `samples`
/// counts proposals.
MomentMatrix mc_second_moment(const Body& body, std::int64_t samples, std::uint64_t seed, int workers = 1);
VolumeEstimate mc_volume(const Body& body, std::int64_t samples, std::uint64_t seed, int workers = 1);

/// Exactly `count` independent uniform points of the body (columns).
MatrixXd sample_uniform(const Body& body, std::int64_t count, std::uint64_t seed, int workers = 1,
                        std::uint64_t stream = 0);

struct MeasureSamples {
  MatrixXd points;   // n x N, columns 2k and 2k + 1 are x and -x
  VectorXd weights;  // <x, u>^2
  VectorXd direction;
  double total{};
  std::uint64_t seed{};

  int dim() const { return static_cast<int>(points.rows()); }
  std::int64_t size() const { return points.cols(); }
};

MeasureSamples sample_measure(const Body& body, const VectorXd& u, std::int64_t count, std::uint64_t seed,
                              int workers = 1);

/// Points T x with direction T^{-t} u normalized; weights are recomputed.
MeasureSamples apply_map(const Map& t, const MeasureSamples& mu);

/// Mean and batch-means standard error of f over contiguous batches.
struct BatchMean {
  double mean{};
  double stderr_value{};
};
BatchMean batch_mean(const VectorXd& values, int batches = 16);

}  // namespace convexlab
