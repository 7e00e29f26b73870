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

#include "convexlab/generators.hpp"
#include "convexlab/isotropic.hpp"

using namespace convexlab;

namespace {

// Distance of A from the nearest scalar multiple of the identity, relative.
double non_scalar(const MatrixXd& A) {
  const double s = A.trace() / A.rows();
  return (A - s * MatrixXd::Identity(A.rows(), A.cols())).norm() / std::abs(s);
}

}  // namespace

TEST_CASE("ball is already isotropic") {
  for (int n : {2, 3, 4}) {
    const auto r = isotropize(Body(EllipsoidD::ball(n)), Normalization::none, IsotropicTarget::self);
    CHECK(non_scalar(r.map.matrix()) < 1e-14);
    CHECK(r.certificate.off_diag_rel < 1e-14);
  }
}

TEST_CASE("axis-aligned ellipse is corrected diagonally") {
  MatrixXd D(2, 2);
  D << 2, 0, 0, 0.5;
  const Body e = apply_map(Map(D), Body(EllipsoidD::ball(2)));
  for (auto target : {IsotropicTarget::self, IsotropicTarget::polar}) {
    const auto r = isotropize(e, Normalization::volume, target);
    MatrixXd expect(2, 2);
    expect << 0.5, 0, 0, 2;
    CHECK((r.map.matrix() - expect).norm() < 1e-12);
    CHECK((std::get<EllipsoidD>(r.body).shape() - MatrixXd::Identity(2, 2)).norm() < 1e-12);
  }
}

TEST_CASE("random polytopes: certificate, idempotence, directional equality") {
  for (int n : {2, 3, 4}) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      const Body k = apply_map(random_linear_map(n, seed), Body(random_symmetric_polytope(n, 2 * n + 8, seed)));
      for (auto target : {IsotropicTarget::self, IsotropicTarget::polar}) {
        for (auto norm : {Normalization::none, Normalization::volume}) {
          const auto r = isotropize(k, norm, target);
          CHECK(r.certificate.off_diag_rel < 1e-9);
          CHECK(r.certificate.diag_spread_rel < 1e-9);
          if (norm == Normalization::volume)
            CHECK(r.certificate.volume_after == doctest::Approx(unit_ball_volume(n)).epsilon(1e-12));
          else
            CHECK(std::abs(r.map.determinant()) == doctest::Approx(1).epsilon(1e-12));
          const auto again = isotropize(r.body, norm, target);
          CHECK(non_scalar(again.map.matrix()) < 1e-8);

          const MomentMatrix m = second_moment_matrix(target == IsotropicTarget::self ? r.body : polar(r.body));
          for (std::uint64_t s = 0; s < 20; ++s) {
            const VectorXd u = random_direction(n, 1000 * seed + s);
            CHECK(std::abs(m.directional(u) - m.matrix.trace() / n) / m.matrix.trace() < 1e-9);
          }
        }
      }
    }
  }
}

TEST_CASE("polar target makes the polar isotropic") {
  const Body k = apply_map(random_linear_map(3, 4), Body(random_symmetric_polytope(3, 16, 4)));
  const auto r = isotropize(k, Normalization::volume, IsotropicTarget::polar);
  const MomentMatrix mp = second_moment_matrix(polar(r.body));
  CHECK(non_scalar(mp.matrix) < 1e-9);
  CHECK(mp.volume == doctest::Approx(unit_ball_volume(3)).epsilon(1e-12));
}

TEST_CASE("moment product inequality") {
  for (int n : {2, 3}) {
    const double bound = std::pow(n * unit_ball_volume(n) / (n + 2), 2);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const Body k = random_symmetric_polytope(n, 2 * n + 2 * static_cast<int>(seed % 5), seed);
      const auto r = isotropize(k, Normalization::volume, IsotropicTarget::polar);
      const double lhs = second_moment_matrix(r.body).matrix.trace() * second_moment_matrix(polar(r.body)).matrix.trace();
      CHECK(lhs <= bound * (1 + 1e-12));
    }
  }
}

TEST_CASE("sandwich radii") {
  for (int n : {2, 3}) {
    const auto b = kls_sandwich_check(Body(EllipsoidD::ball(n)));
    CHECK(b.r_in == doctest::Approx(1));
    CHECK(b.r_out == doctest::Approx(1));
    CHECK(b.holds);
  }
  const auto sq = isotropize(Body(cube(2)), Normalization::volume, IsotropicTarget::self);
  const auto s = kls_sandwich_check(sq.body);
  CHECK(s.r_out / s.r_in == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(s.r_in == doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-12));

  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Body k = apply_map(random_linear_map(3, seed), Body(random_symmetric_polytope(3, 6 + 2 * static_cast<int>(seed % 8), seed)));
    const auto r = kls_sandwich_check(isotropize(k, Normalization::volume, IsotropicTarget::self).body);
    CHECK(r.holds);
    CHECK(r.r_in >= 1.0 / 3);
    CHECK(r.r_out <= 3);
  }
  CHECK_THROWS_AS(kls_sandwich_check(Body(cube(2))), GeometryError);
  MatrixXd D(2, 2);
  D << 2, 0, 0, 1;
  CHECK_THROWS_AS(kls_sandwich_check(apply_map(Map(D), Body(EllipsoidD::ball(2)))), GeometryError);
}

TEST_CASE("degenerate bodies are refused") {
  MatrixXd D = MatrixXd::Identity(2, 2);
  D(1, 1) = 1e-7;
  CHECK_THROWS_WITH_AS(isotropize(apply_map(Map(D), Body(cube(2))), Normalization::none, IsotropicTarget::self),
                       doctest::Contains("numerically degenerate"), GeometryError);
}
