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

// Exact second-moment matrices M(K) = int_K x x' dx and the Ball functional
// tr(M(K) M(K°)).

#include <cstdint>
#include <optional>

#include "convexlab/geometry.hpp"

namespace convexlab {

template <typename Scalar>
struct MomentMatrixT {
  Matrix<Scalar> matrix;
  Scalar volume{};
  std::optional<Matrix<Scalar>> stderr_matrix;
  std::optional<std::int64_t> samples;
  std::optional<std::uint64_t> seed;

  int dim() const { return static_cast<int>(matrix.rows()); }
  Scalar directional(const Vector<Scalar>& u) const { return u.dot(matrix * u); }
};
using MomentMatrix = MomentMatrixT<double>;

/// Second moment of the simplex with vertex columns v_0..v_n.
template <typename Scalar>
MomentMatrixT<Scalar> simplex_second_moment(const Matrix<Scalar>& simplex) {
  const int n = static_cast<int>(simplex.rows());
  if (simplex.cols() != n + 1) throw GeometryError("simplex needs n + 1 vertices");
  const Scalar vol = simplex_volume(simplex);
  const Scalar scale = std::max(Scalar(1), simplex.cwiseAbs().maxCoeff());
  if (vol <= Tolerance<Scalar>::singular * std::pow(scale, n)) throw GeometryError("degenerate simplex");
  const Vector<Scalar> s = simplex.rowwise().sum();
  MomentMatrixT<Scalar> m;
  m.matrix = vol / ((n + 1) * (n + 2)) * (simplex * simplex.transpose() + s * s.transpose());
  m.volume = vol;
  return m;
}

template <typename Scalar>
MomentMatrixT<Scalar> second_moment_matrix(const SymmetricVPolytope<Scalar>& k) {
  const int n = k.dim();
  MomentMatrixT<Scalar> m{Matrix<Scalar>::Zero(n, n), 0, {}, {}, {}};
  for (const auto& s : star_triangulation(k)) {
    const auto piece = simplex_second_moment(s);
    m.matrix += piece.matrix;
    m.volume += piece.volume;
  }
  m.matrix = (m.matrix + m.matrix.transpose()) / 2;
  return m;
}

template <typename Scalar>
MomentMatrixT<Scalar> second_moment_matrix(const SymmetricHPolytope<Scalar>& h) {
  return second_moment_matrix(vertex_enumeration(h));
}

template <typename Scalar>
MomentMatrixT<Scalar> second_moment_matrix(const Ellipsoid<Scalar>& e) {
  MomentMatrixT<Scalar> m;
  m.volume = volume(e);
  m.matrix = m.volume / (e.dim() + 2) * e.shape().inverse();
  m.matrix = (m.matrix + m.matrix.transpose()) / 2;
  return m;
}

template <typename Scalar>
MomentMatrixT<Scalar> second_moment_matrix(const BodyT<Scalar>& body) {
  return std::visit([](const auto& b) { return second_moment_matrix(b); }, body);
}

/// int_{B_2^n} <x, e_1>^2 dx.
template <typename Scalar = double>
Scalar reference_ball_moment(int n) {
  require_dim(n);
  return unit_ball_volume<Scalar>(n) / (n + 2);
}

/// Largest value of the Ball functional, attained by ellipsoids.
template <typename Scalar = double>
Scalar ball_functional_bound(int n) {
  const Scalar r = reference_ball_moment<Scalar>(n);
  return n * r * r;
}

template <typename Scalar>
Scalar ball_functional(const MomentMatrixT<Scalar>& mk, const MomentMatrixT<Scalar>& mpolar) {
  return (mk.matrix * mpolar.matrix).trace();
}

template <typename Scalar>
Scalar ball_functional(const BodyT<Scalar>& body) {
  return ball_functional(second_moment_matrix(body), second_moment_matrix(polar(body)));
}

}  // namespace convexlab
