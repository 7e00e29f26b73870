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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "convexlab/generators.hpp"
#include "convexlab/moments.hpp"
#include "convexlab/sampling.hpp"

using namespace convexlab;
using std::numbers::pi;

namespace {

double rel_diff(const MatrixXd& a, const MatrixXd& b) { return (a - b).norm() / b.norm(); }

}  // namespace

TEST_CASE("unit triangle second moment") {
  MatrixXd T(2, 3);
  T << 0, 1, 0, 0, 0, 1;
  const MomentMatrix m = simplex_second_moment(T);
  // Midpoint rule for int_0^1 int_0^{1-x} x^2 dy dx = int_0^1 x^2 (1 - x) dx.
  const int steps = 200000;
  double iterated = 0;
  for (int i = 0; i < steps; ++i) {
    const double x = (i + 0.5) / steps;
    iterated += x * x * (1 - x) / steps;
  }
  CHECK(m.matrix(0, 0) == doctest::Approx(iterated).epsilon(1e-9));
  CHECK(m.matrix(0, 0) == doctest::Approx(1.0 / 12).epsilon(1e-14));
  CHECK(m.volume == doctest::Approx(0.5));
  CHECK(rel_diff(simplex_second_moment(MatrixXd(-T)).matrix, m.matrix) < 1e-15);
  CHECK_THROWS_AS(simplex_second_moment(MatrixXd(MatrixXd::Zero(2, 3))), GeometryError);
}

TEST_CASE("random 3-simplex against rejection sampling") {
  std::mt19937_64 g(31);
  std::uniform_real_distribution<double> u(-1, 1);
  MatrixXd S(3, 4);
  for (Eigen::Index j = 0; j < S.size(); ++j) S(j) = u(g);
  const MomentMatrix exact = simplex_second_moment(S);

  const Eigen::Vector3d lo = S.rowwise().minCoeff(), hi = S.rowwise().maxCoeff();
  Eigen::Matrix3d D;
  for (int j = 0; j < 3; ++j) D.col(j) = S.col(j + 1) - S.col(0);
  const Eigen::Matrix3d Dinv = D.inverse();
  const std::int64_t N = 10'000'000;
  std::uniform_real_distribution<double> w(0, 1);
  Eigen::Matrix3d s1 = Eigen::Matrix3d::Zero(), s2 = Eigen::Matrix3d::Zero();
  for (std::int64_t k = 0; k < N; ++k) {
    Eigen::Vector3d x;
    for (int i = 0; i < 3; ++i) x(i) = lo(i) + (hi(i) - lo(i)) * w(g);
    const Eigen::Vector3d bary = Dinv * (x - S.col(0));
    if (bary.minCoeff() < 0 || bary.sum() > 1) continue;
    const Eigen::Matrix3d xx = x * x.transpose();
    s1 += xx;
    s2 += xx.cwiseAbs2();
  }
  const double box = (hi - lo).prod();
  const Eigen::Matrix3d mean = s1 / N;
  const Eigen::Matrix3d se = box * ((s2 / N - mean.cwiseAbs2()) / N).cwiseSqrt();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(std::abs(box * mean(i, j) - exact.matrix(i, j)) <= 3 * se(i, j));
}

TEST_CASE("reference bodies") {
  const MomentMatrix disk = second_moment_matrix(Body(EllipsoidD::ball(2)));
  CHECK(rel_diff(disk.matrix, MatrixXd::Identity(2, 2) * pi / 4) < 1e-15);
  CHECK(disk.volume == doctest::Approx(pi));
  CHECK(rel_diff(second_moment_matrix(cube(2)).matrix, MatrixXd::Identity(2, 2) * 4 / 3) < 1e-14);
  CHECK(rel_diff(second_moment_matrix(cross_polytope(2)).matrix, MatrixXd::Identity(2, 2) / 3) < 1e-14);
  CHECK(rel_diff(second_moment_matrix(cube(3)).matrix, MatrixXd::Identity(3, 3) * 8 / 3) < 1e-14);
}

TEST_CASE("ball functional values") {
  CHECK(std::abs(ball_functional(Body(EllipsoidD::ball(2))) - pi * pi / 8) < 1e-12);
  CHECK(ball_functional(Body(cube(2))) == doctest::Approx(8.0 / 9).epsilon(1e-14));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Body t = apply_map(random_linear_map(2, seed), Body(cube(2)));
    CHECK(std::abs(ball_functional(t) - 8.0 / 9) < 1e-9);
  }
}

TEST_CASE("reference ball moment") {
  CHECK(reference_ball_moment(2) == doctest::Approx(pi / 4).epsilon(1e-15));
  CHECK(reference_ball_moment(3) == doctest::Approx(4 * pi / 15).epsilon(1e-15));
  const MomentMatrix mc = mc_second_moment(Body(EllipsoidD::ball(2)), 1'000'000, 7);
  CHECK(std::abs(mc.matrix(0, 0) - pi / 4) <= 3 * (*mc.stderr_matrix)(0, 0));
  const MomentMatrix mc3 = mc_second_moment(Body(EllipsoidD::ball(3)), 1'000'000, 7);
  CHECK(std::abs(mc3.matrix(0, 0) - 4 * pi / 15) <= 3 * (*mc3.stderr_matrix)(0, 0));
}

TEST_CASE("exact moments agree with Monte Carlo") {
  for (int n : {2, 3}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const Body k = random_symmetric_polytope(n, 4 * n + 4, seed);
      const MomentMatrix exact = second_moment_matrix(k);
      const MomentMatrix mc = mc_second_moment(k, 1'000'000, 1000 + seed);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) CHECK(std::abs(mc.matrix(i, j) - exact.matrix(i, j)) <= 4 * (*mc.stderr_matrix)(i, j));
      const VolumeEstimate v = mc_volume(k, 1'000'000, seed);
      CHECK(std::abs(v.value - exact.volume) <= 4 * v.stderr_value);
    }
  }
}

TEST_CASE("covariance law and linear invariance") {
  for (int n : {2, 3, 4}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const Body k = random_symmetric_polytope(n, 2 * n + 6, seed);
      const Map T = random_linear_map(n, 50 + seed);
      const MomentMatrix m = second_moment_matrix(k);
      const MomentMatrix mt = second_moment_matrix(apply_map(T, k));
      const MatrixXd expect = std::abs(T.determinant()) * T.matrix() * m.matrix * T.matrix().transpose();
      CHECK(rel_diff(mt.matrix, expect) < 1e-9);
      const double b = ball_functional(k);
      CHECK(std::abs(ball_functional(apply_map(T, k)) - b) < 1e-8 * b);
      CHECK(b <= ball_functional_bound(n) + 1e-12);
    }
  }
}

TEST_CASE("second-moment lower bound") {
  auto lower = [](int n, double vol) {
    return double(n) / (n + 2) * std::pow(unit_ball_volume(n), -2.0 / n) * std::pow(vol, double(n + 2) / n);
  };
  for (int n : {2, 3, 4}) {
    const Body ball = EllipsoidD::ball(n, 1.7);
    const MomentMatrix mb = second_moment_matrix(ball);
    CHECK(std::abs(mb.matrix.trace() - lower(n, mb.volume)) < 1e-9 * mb.matrix.trace());
    const MomentMatrix me = second_moment_matrix(Body(random_ellipsoid(n, 3)));
    CHECK(me.matrix.trace() > lower(n, me.volume) * (1 + 1e-6));
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const MomentMatrix mp = second_moment_matrix(Body(random_symmetric_polytope(n, 2 * n + 4, seed)));
      CHECK(mp.matrix.trace() > lower(n, mp.volume));
    }
  }
}

TEST_CASE("Monte Carlo determinism and worker independence") {
  const Body k = random_symmetric_polytope(3, 12, 4);
  const MomentMatrix a = mc_second_moment(k, 300'000, 11, 1);
  const MomentMatrix b = mc_second_moment(k, 300'000, 11, 3);
  CHECK((a.matrix - b.matrix).norm() == 0);
  CHECK(a.volume == b.volume);
  CHECK((sample_uniform(k, 5000, 2, 1) - sample_uniform(k, 5000, 2, 4)).norm() == 0);
}

TEST_CASE("degenerate bodies are rejected by the sampler") {
  MatrixXd Q = MatrixXd::Identity(4, 4);
  Q(0, 0) = Q(1, 1) = 1e6;
  Q(2, 2) = 1e6;
  // Rotated needle: the bounding box is far larger than the body.
  const Map R = random_linear_map(4, 3);
  const EllipsoidD thin = apply_map(R, EllipsoidD(Q));
  CHECK_THROWS_WITH_AS(mc_second_moment(Body(thin), 100'000, 1), doctest::Contains("degenerate body"), GeometryError);
}

TEST_CASE("measure samples") {
  const Body disk = EllipsoidD::ball(2);
  const VectorXd u = VectorXd::Unit(2, 0);
  const MeasureSamples mu = sample_measure(disk, u, 1'000'000, 7);
  const BatchMean bm = batch_mean(mu.weights);
  CHECK(std::abs(mu.total / mu.size() - 0.25) <= 3 * bm.stderr_value);
  VectorXd paired = VectorXd::Zero(2);
  for (Eigen::Index k = 0; k < mu.size(); k += 2)
    paired += mu.weights(k) * mu.points.col(k) + mu.weights(k + 1) * mu.points.col(k + 1);
  CHECK(paired.norm() == 0);
  CHECK(mu.weights.minCoeff() >= 0);
  MembershipOracle in(disk);
  std::vector<char> inside;
  in.test(mu.points, inside, 1e-12);
  CHECK(std::count(inside.begin(), inside.end(), 1) == mu.size());
  CHECK_THROWS_AS(sample_measure(disk, u, 999, 7), GeometryError);
}

TEST_CASE("angular membership matches facet test") {
  const VPolytope k = ball_approx(2, 64, 0);
  const HPolytope h(k.facet_normals(), VectorXd::Ones(k.facet_normals().rows()));
  const MembershipOracle fast((Body(k)));
  const MembershipOracle dense((Body(h)));
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> w(-1.01, 1.01);
  for (int s = 0; s < 20000; ++s) {
    const VectorXd x = Eigen::Vector2d(w(g), w(g));
    CHECK(fast.contains(x) == contains(k, x));
    CHECK(dense.contains(x) == contains(k, x));
  }
}
