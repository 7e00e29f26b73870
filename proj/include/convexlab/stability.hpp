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

// Homothetic distances, best-fit ellipsoids, the bump family K_t with
// h_t = 1 + t phi, and the scaling sweep over t.

#include <cstdint>
#include <vector>

#include "convexlab/geometry.hpp"
#include "convexlab/sampling.hpp"

namespace convexlab {

inline constexpr std::int64_t kMaxFitSamples = 2'000'000;

/// {x : |<x, u>| <= half_width}.
struct Strip {
  VectorXd direction;
  double half_width{};

  Strip(VectorXd u, double aleph);
  bool contains(const VectorXd& x) const { return std::abs(direction.dot(x)) <= half_width; }
};

/// |alpha K  symmetric-difference  beta C| with alpha = |K|^{-1/n}, beta = |C|^{-1/n},
/// from uniform points of alpha K.
VolumeEstimate homothetic_distance(const Body& k, const Body& c, std::int64_t samples, std::uint64_t seed,
                                   int workers = 1);

struct EllipsoidFit {
  EllipsoidD ellipsoid = EllipsoidD::ball(2);  // |E| = |K|
  double distance{};
  double stderr_value{};
  int iterations{};
  bool converged{};
  bool warning{};  // optimizer hit max_iter; best iterate returned
};

/// Local minimizer of the homothetic distance over o-symmetric ellipsoids,
/// started at the moment ellipsoid. Nelder-Mead over the traceless symmetric
/// log of the shape on a fixed cloud of min(samples, kMaxFitSamples) points;
/// the returned distance uses all `samples` points.
EllipsoidFit best_fit_ellipsoid(const Body& k, std::int64_t samples, std::uint64_t seed, int workers = 1,
                                int max_iter = 500);

/// C^2 quintic bridge: 1 on [0, 1/8], 0 on [1/4, inf).
double bump_profile(double r);
/// phi(u) = chi(|u - u0|) + chi(|u + u0|), u0 = (1, ..., 1) / sqrt(n).
double kt_bump(const VectorXd& u);

/// Largest t > 0 for which 1 + t phi is a support function (Hessian test on
/// the sphere); -kt_min_t(n) bounds negative t the same way.
double kt_max_t(int n);
double kt_min_t(int n);

/// {x : <x, u_i> <= lambda_t h_t(u_i)} on a symmetric grid of grid_size
/// directions, with lambda_t such that the volume is omega_n. A nonzero
/// seed_grid rotates the grid. Throws if t is outside [kt_min_t, kt_max_t].
HPolytope kt_family(int n, double t, int grid_size, std::uint64_t seed_grid = 0);

int kt_default_grid(int n);

struct StabilityRecord {
  double t{};
  double vol_k{};
  double vol_polar{};
  double deficit_santalo{};
  double deficit_ball{};
  double a_dist{};
  double ratio{};  // deficit_santalo / a_dist^2
  std::int64_t samples{};
  std::uint64_t seed{};
  bool fit_warning{};
};

struct LogLogFit {
  double slope{};
  double intercept{};
};
/// Least squares log y = slope log x + intercept; needs positive data.
LogLogFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

struct SweepResult {
  std::vector<StabilityRecord> records;
  LogLogFit santalo;
  LogLogFit a_dist;
  double ratio_spread{};  // max ratio / min ratio
};

/// Planar sweep: exact Santalo and Ball deficits, Monte Carlo distance to the
/// best-fit ellipsoid. Record k uses seed + k.
SweepResult kt_sweep(int n, const std::vector<double>& ts, std::int64_t samples, std::uint64_t seed,
                     int workers = 1, int grid_size = 0);

/// |((K symmetric-difference E) cap A) \ strip| by uniform proposals in a common box.
VolumeEstimate strip_restricted_diff(const Body& k, const EllipsoidD& e, const Cone& a, const Strip& strip,
                                     std::int64_t samples, std::uint64_t seed, int workers = 1);

}  // namespace convexlab
