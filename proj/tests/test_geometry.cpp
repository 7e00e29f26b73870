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
#include "convexlab/geometry.hpp"

using namespace convexlab;

namespace {

double directed_hausdorff(const MatrixXd& A, const MatrixXd& B) {
  double worst = 0;
  for (Eigen::Index i = 0; i < A.cols(); ++i)
    worst = std::max(worst, (B.colwise() - A.col(i)).colwise().norm().minCoeff());
  return worst;
}

double vertex_distance(const MatrixXd& A, const MatrixXd& B) {
  return std::max(directed_hausdorff(A, B), directed_hausdorff(B, A));
}

// Vertices of {y : <v_k, y> <= 1} from every pair of constraints.
MatrixXd planar_halfspace_oracle(const MatrixXd& V) {
  std::vector<Eigen::Vector2d> pts;
  for (Eigen::Index i = 0; i < V.cols(); ++i) {
    for (Eigen::Index j = i + 1; j < V.cols(); ++j) {
      Eigen::Matrix2d M;
      M << V.col(i).transpose(), V.col(j).transpose();
      if (std::abs(M.determinant()) < 1e-12) continue;
      const Eigen::Vector2d y = M.inverse() * Eigen::Vector2d::Ones();
      if ((V.transpose() * y).maxCoeff() > 1 + 1e-12) continue;
      bool dup = false;
      for (const auto& p : pts) dup = dup || (p - y).norm() < 1e-10;
      if (!dup) pts.push_back(y);
    }
  }
  MatrixXd out(2, pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) out.col(k) = pts[k];
  return out;
}

double shoelace(const MatrixXd& V) {
  std::vector<int> order(V.cols());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return std::atan2(V(1, a), V(0, a)) < std::atan2(V(1, b), V(0, b)); });
  double s = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto p = V.col(order[k]);
    const auto q = V.col(order[(k + 1) % order.size()]);
    s += p(0) * q(1) - p(1) * q(0);
  }
  return s / 2;
}

VectorXd point_in(const VPolytope& k, std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(0, 1);
  VectorXd w(k.vertices().cols());
  for (Eigen::Index j = 0; j < w.size(); ++j) w(j) = -std::log(u(g) + 1e-300);
  return k.vertices() * (w / w.sum());
}

}  // namespace

TEST_CASE("square and cross-polytope are polar") {
  const VPolytope sq = cube(2);
  const VPolytope p = polar(sq);
  MatrixXd cross(2, 4);
  cross << 1, -1, 0, 0, 0, 0, 1, -1;
  CHECK(vertex_distance(p.vertices(), cross) < 1e-12);
  CHECK(vertex_distance(polar(cross_polytope(3, 2.0)).vertices(), cube(3, 0.5).vertices()) < 1e-12);
}

TEST_CASE("polar of random hexagon matches halfspace oracle") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const VPolytope k = random_symmetric_polytope(2, 6, seed);
    const MatrixXd oracle = planar_halfspace_oracle(k.vertices());
    CHECK(vertex_distance(polar(k).vertices(), oracle) < 1e-9);
  }
}

TEST_CASE("polar constructor on raw points equals trusted polar") {
  const VPolytope k = random_symmetric_polytope(3, 16, 5);
  const VPolytope raw(k.vertices());
  CHECK(vertex_distance(raw.facet_normals().transpose(), k.facet_normals().transpose()) < 1e-12);
}

TEST_CASE("construction rejects bad input") {
  MatrixXd flat(2, 4);
  flat << 1, -1, 2, -2, 0, 0, 0, 0;
  CHECK_THROWS_WITH_AS(VPolytope{flat}, doctest::Contains("unbounded polar"), GeometryError);
  MatrixXd skew(2, 4);
  skew << 1, -1, 0, 0, 0, 0, 1, -0.5;
  CHECK_THROWS_AS(VPolytope{skew}, GeometryError);
  CHECK_THROWS_AS(VPolytope{MatrixXd::Identity(2, 2)}, GeometryError);
  CHECK_THROWS_AS(Map(MatrixXd::Zero(2, 2)), GeometryError);
  MatrixXd q(2, 2);
  q << 1, 0, 0, -1;
  CHECK_THROWS_AS(EllipsoidD{q}, GeometryError);
  MatrixXd half(2, 2);
  half << 1, 0, 0, 1;
  CHECK_THROWS_AS(HPolytope(half, VectorXd::Ones(2)), GeometryError);
}

TEST_CASE("non-extreme points are pruned") {
  MatrixXd P(2, 6);
  P << 1, -1, 1, -1, 0.2, -0.2, 1, -1, -1, 1, 0.1, -0.1;
  const VPolytope k(P);
  CHECK(k.vertices().cols() == 4);
}

TEST_CASE("vertex enumeration") {
  MatrixXd N(4, 2);
  N << 1, 0, -1, 0, 0, 1, 0, -1;
  const VPolytope sq = vertex_enumeration(HPolytope(N, VectorXd::Ones(4)));
  CHECK(sq.vertices().cols() == 4);
  CHECK(vertex_distance(sq.vertices(), cube(2).vertices()) < 1e-12);

  for (int m : {3, 5, 8}) {
    const int k = 2 * m;
    MatrixXd normals(k, 2), expect(2, k);
    for (int i = 0; i < k; ++i) {
      const double a = 2 * std::numbers::pi * i / k;
      normals.row(i) << std::cos(a), std::sin(a);
      const double b = a + std::numbers::pi / k;
      expect.col(i) << std::cos(b), std::sin(b);
    }
    const VectorXd offsets = VectorXd::Constant(k, std::cos(std::numbers::pi / k));
    const VPolytope p = vertex_enumeration(HPolytope(normals, offsets));
    CHECK(p.vertices().cols() == k);
    CHECK(vertex_distance(p.vertices(), expect) < 1e-12);
  }

  // Does not depend on the planar fast path.
  MatrixXd N3(6, 3);
  N3 << MatrixXd::Identity(3, 3), -MatrixXd::Identity(3, 3);
  const VPolytope c3 = vertex_enumeration(HPolytope(N3, VectorXd::Constant(6, 2)));
  CHECK(vertex_distance(c3.vertices(), cube(3, 2).vertices()) < 1e-12);
  CHECK(c3.facets().size() == 6);
}

TEST_CASE("linear images") {
  const VPolytope sq = cube(2);
  CHECK(vertex_distance(apply_map(Map::identity(2), sq).vertices(), sq.vertices()) < 1e-15);
  MatrixXd D(2, 2);
  D << 2, 0, 0, 0.5;
  const VPolytope r = apply_map(Map(D), sq);
  CHECK(support(r, VectorXd(VectorXd::Unit(2, 0))) == doctest::Approx(2));
  CHECK(support(r, VectorXd(VectorXd::Unit(2, 1))) == doctest::Approx(0.5));

  MatrixXd N(4, 2);
  N << 1, 0, -1, 0, 0, 1, 0, -1;
  const HPolytope h = apply_map(Map(D), HPolytope(N, VectorXd::Ones(4)));
  CHECK(vertex_distance(vertex_enumeration(h).vertices(), r.vertices()) < 1e-12);

  const EllipsoidD e = apply_map(Map(D), EllipsoidD::ball(2));
  CHECK(support(e, VectorXd(VectorXd::Unit(2, 0))) == doctest::Approx(2));
}

TEST_CASE("polar-map covariance") {
  for (int n : {2, 3}) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const VPolytope k = random_symmetric_polytope(n, 4 * n + 2, seed);
      const Map T = random_linear_map(n, 100 + seed);
      // Both sides recomputed from raw points so the check does not reuse the trusted swap.
      const VPolytope lhs(polar(VPolytope(T.matrix() * k.vertices())).vertices());
      const VPolytope rhs(T.inverse_transpose().matrix() * polar(k).vertices());
      CHECK(vertex_distance(lhs.vertices(), rhs.vertices()) < 1e-9);
    }
  }
}

TEST_CASE("bipolar and containment duality") {
  std::mt19937_64 g(99);
  for (int n : {2, 3}) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const VPolytope k = random_symmetric_polytope(n, 2 * n + 2 * static_cast<int>(seed % 7), seed);
      const VPolytope p(polar(k).vertices());
      const VPolytope pp(polar(p).vertices());
      CHECK(vertex_distance(pp.vertices(), k.vertices()) < 1e-9);
      for (int s = 0; s < 5; ++s) CHECK(point_in(k, g).dot(point_in(p, g)) <= 1 + 1e-9);
    }
  }
}

TEST_CASE("support, radial and membership agree across representations") {
  const VPolytope k = random_symmetric_polytope(3, 14, 3);
  const HPolytope h(k.facet_normals(), VectorXd::Ones(k.facet_normals().rows()));
  for (std::uint64_t s = 0; s < 20; ++s) {
    const VectorXd u = random_direction(3, s);
    CHECK(support(h, u) == doctest::Approx(support(k, u)).epsilon(1e-10));
    CHECK(radial(h, u) == doctest::Approx(radial(k, u)).epsilon(1e-10));
    CHECK(contains(k, VectorXd(0.999 * radial(k, u) * u)));
    CHECK_FALSE(contains(k, VectorXd(1.001 * radial(k, u) * u)));
  }
  const EllipsoidD e = random_ellipsoid(3, 4);
  const VectorXd u = random_direction(3, 8);
  const EllipsoidD ep = polar(e);
  CHECK(support(e, u) * radial(ep, u) == doctest::Approx(1));
}

TEST_CASE("star triangulation") {
  const auto sq = star_triangulation(cube(2));
  CHECK(sq.size() == 4);
  for (const auto& s : sq) CHECK(simplex_volume(s) == doctest::Approx(1));
  const auto cr = star_triangulation(cross_polytope(3));
  CHECK(cr.size() == 8);
  for (const auto& s : cr) CHECK(simplex_volume(s) == doctest::Approx(1.0 / 6));
  CHECK(volume(cube(3)) == doctest::Approx(8).epsilon(1e-12));
  CHECK(volume(cube(4)) == doctest::Approx(16).epsilon(1e-12));

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const VPolytope oct = random_symmetric_polytope(2, 8, seed);
    CHECK(std::abs(volume(oct) - shoelace(oct.vertices())) < 1e-10 * shoelace(oct.vertices()));
  }
}

TEST_CASE("dual cones") {
  const Cone orthant(MatrixXd::Identity(3, 3));
  CHECK((dual_cone(orthant).generators() - MatrixXd::Identity(3, 3)).norm() < 1e-15);

  MatrixXd G(2, 2);
  G << 1, 1, 0, 1;
  const Cone a(G);
  const Cone d = dual_cone(a);
  MatrixXd expect(2, 2);
  expect << 1, 0, -1, 1;
  CHECK((d.generators() - expect).norm() < 1e-15);
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> w(0, 1);
  for (int s = 0; s < 1000; ++s) {
    const VectorXd x = G * Eigen::Vector2d(w(g), w(g));
    const VectorXd y = d.generators() * Eigen::Vector2d(w(g), w(g));
    CHECK(x.dot(y) >= -1e-14);
  }
  CHECK((dual_cone(d).generators() - G).norm() < 1e-14);

  const double c = std::cos(0.3), s = std::sin(0.3);
  MatrixXd R(2, 2);
  R << c, -s, s, c;
  CHECK((dual_cone(Cone(R)).generators() - R).norm() < 1e-14);
}

TEST_CASE("halfspace polytope triangulation") {
  // Cube cut by the positive orthant.
  MatrixXd A(6, 3);
  A << MatrixXd::Identity(3, 3), -MatrixXd::Identity(3, 3);
  VectorXd b(6);
  b << 1, 1, 1, 0, 0, 0;
  const auto p = halfspace_polytope(A, b);
  double v = 0;
  for (const auto& s : triangulate(p)) v += simplex_volume(s);
  CHECK(v == doctest::Approx(1).epsilon(1e-12));
}
