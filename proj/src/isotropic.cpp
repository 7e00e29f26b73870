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

#include "convexlab/isotropic.hpp"

#include <cmath>
#include <type_traits>

namespace convexlab {

namespace {

constexpr double kMaxEigenRatio = 1e12;

}  // namespace

void certify(const MomentMatrix& m, IsotropicCertificate& cert) {
  const int n = m.dim();
  const double m11 = m.matrix(0, 0);
  double off = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) off = std::max(off, std::abs(m.matrix(i, j)));
  const VectorXd d = m.matrix.diagonal();
  cert.off_diag_rel = off / m11;
  cert.diag_spread_rel = (d.maxCoeff() - d.minCoeff()) / m11;
  cert.volume_after = m.volume;
}

IsotropicResult isotropize(const Body& k, Normalization normalize, IsotropicTarget target) {
  const int n = dim(k);
  const Body tgt = target == IsotropicTarget::self ? k : polar(k);
  const MomentMatrix m = second_moment_matrix(tgt);

  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m.matrix);
  const VectorXd lambda = es.eigenvalues();
  if (!(lambda.minCoeff() > 0) || lambda.maxCoeff() / lambda.minCoeff() > kMaxEigenRatio)
    throw GeometryError("numerically degenerate body");
  const MatrixXd inv_root = es.eigenvectors() * lambda.cwiseInverse().cwiseSqrt().asDiagonal() *
                            es.eigenvectors().transpose();
  const double det_inv_root = lambda.cwiseInverse().cwiseSqrt().prod();

  // |det(c R)| = c^n det R.
  double c = 0;
  if (normalize == Normalization::none) {
    c = std::pow(det_inv_root, -1.0 / n);
  } else {
    c = std::pow(unit_ball_volume(n) / (m.volume * det_inv_root), 1.0 / n);
  }
  MatrixXd S = c * inv_root;
  S = (S + S.transpose()) / 2;
  const Map s_map(S);
  const Map t_map = target == IsotropicTarget::self ? s_map : s_map.inverse_transpose();

  IsotropicResult r{t_map, apply_map(t_map, k), {}};
  r.certificate.map = t_map;
  r.certificate.target = target;
  r.certificate.normalization = normalize;
  const Body after = target == IsotropicTarget::self ? r.body : polar(r.body);
  certify(second_moment_matrix(after), r.certificate);
  return r;
}

double inradius(const Body& k) {
  return std::visit(
      [](const auto& b) -> double {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, VPolytope>) {
          return convexlab::inradius(b);
        } else if constexpr (std::is_same_v<T, HPolytope>) {
          return b.offsets().minCoeff();
        } else {
          return 1 / std::sqrt(Eigen::SelfAdjointEigenSolver<MatrixXd>(b.shape()).eigenvalues().maxCoeff());
        }
      },
      k);
}

double circumradius(const Body& k) {
  return std::visit(
      [](const auto& b) -> double {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, VPolytope>) {
          return convexlab::circumradius(b);
        } else if constexpr (std::is_same_v<T, HPolytope>) {
          return convexlab::circumradius(vertex_enumeration(b));
        } else {
          return 1 / std::sqrt(Eigen::SelfAdjointEigenSolver<MatrixXd>(b.shape()).eigenvalues().minCoeff());
        }
      },
      k);
}

SandwichRadii kls_sandwich_check(const Body& l, double iso_tol, double volume_tol) {
  const int n = dim(l);
  const MomentMatrix m = second_moment_matrix(l);
  IsotropicCertificate cert;
  certify(m, cert);
  if (cert.off_diag_rel > iso_tol || cert.diag_spread_rel > iso_tol)
    throw GeometryError("kls_sandwich_check: body is not isotropic");
  const double omega = unit_ball_volume(n);
  if (std::abs(m.volume - omega) > volume_tol * omega)
    throw GeometryError("kls_sandwich_check: volume differs from omega_n");
  SandwichRadii r{inradius(l), circumradius(l), false};
  r.holds = r.r_in >= 1.0 / n && r.r_out <= n;
  return r;
}

}  // namespace convexlab
