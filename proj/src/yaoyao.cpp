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

#include "convexlab/yaoyao.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "convexlab/detail/parallel.hpp"
#include "convexlab/detail/roots.hpp"

namespace convexlab {

namespace {

constexpr double kAxisTol = 1e-9;
constexpr double kBracketTol = 1e-13;

// Smallest z_k whose cumulative weight in sorted order reaches half the total.
double weighted_median(const Eigen::Ref<const Eigen::RowVectorXd>& z, const VectorXd& w) {
  std::vector<Eigen::Index> idx(z.size());
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  auto less = [&](Eigen::Index a, Eigen::Index b) { return z(a) < z(b); };
  const double half = w.sum() / 2;
  std::size_t lo = 0, hi = idx.size();
  double left = 0;
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    std::nth_element(idx.begin() + lo, idx.begin() + mid, idx.begin() + hi, less);
    double s = left;
    for (std::size_t k = lo; k < mid; ++k) s += w(idx[k]);
    if (s >= half) {
      hi = mid;
    } else if (s + w(idx[mid]) >= half) {
      return z(idx[mid]);
    } else {
      left = s + w(idx[mid]);
      lo = mid + 1;
    }
  }
  return z(idx[lo < idx.size() ? lo : idx.size() - 1]);
}

struct Side {
  MatrixXd rest;            // coordinates 2..d
  Eigen::RowVectorXd lift;  // first coordinate minus the split value
  VectorXd w;

  MatrixXd project(const VectorXd& beta) const { return rest - beta * lift; }
};

Side take(const MatrixXd& Z, const VectorXd& w, const std::vector<Eigen::Index>& idx, double split) {
  const Eigen::Index d = Z.rows();
  Side s{MatrixXd(d - 1, idx.size()), Eigen::RowVectorXd(idx.size()), VectorXd(idx.size())};
  for (std::size_t k = 0; k < idx.size(); ++k) {
    s.rest.col(k) = Z.col(idx[k]).tail(d - 1);
    s.lift(k) = Z(0, idx[k]) - split;
    s.w(k) = w(idx[k]);
  }
  return s;
}

// Generators of the cones A + R_+ (sign, beta), A a child cone with generators G.
MatrixXd lift_cone(const MatrixXd& G, const VectorXd& beta, double sign) {
  const Eigen::Index d = G.rows() + 1;
  MatrixXd M = MatrixXd::Zero(d, d);
  M.bottomLeftCorner(d - 1, d - 1) = G;
  M(0, d - 1) = sign;
  M.col(d - 1).tail(d - 1) = sign * beta;
  return M;
}

struct FreePartition {
  VectorXd center;
  std::vector<MatrixXd> generators;
};

struct Settings {
  int max_iter;
  double fd_step;
  double inner_tol;
};

FreePartition free_yao_yao(const MatrixXd& Z, const VectorXd& w, const Settings& cfg);

VectorXd center_gap(const Side& up, const Side& low, const VectorXd& beta, const Settings& cfg) {
  return free_yao_yao(up.project(beta), up.w, cfg).center - free_yao_yao(low.project(beta), low.w, cfg).center;
}

// Yao-Yao equipartition of the cloud, free center; based on {z_1 = median}.
FreePartition free_yao_yao(const MatrixXd& Z, const VectorXd& w, const Settings& cfg) {
  const Eigen::Index d = Z.rows();
  if (d == 1) {
    FreePartition p;
    p.center = VectorXd::Constant(1, weighted_median(Z.row(0), w));
    p.generators = {MatrixXd::Constant(1, 1, 1.0), MatrixXd::Constant(1, 1, -1.0)};
    return p;
  }
  const double a = weighted_median(Z.row(0), w);
  std::vector<Eigen::Index> iu, il;
  for (Eigen::Index k = 0; k < Z.cols(); ++k) (Z(0, k) > a ? iu : il).push_back(k);
  if (iu.empty() || il.empty()) throw ConvergenceError("yao-yao: empty half in recursion");
  const Side up = take(Z, w, iu, a), low = take(Z, w, il, a);

  VectorXd beta = VectorXd::Zero(d - 1);
  detail::RootReport rep;
  if (d - 1 == 1) {
    const double b = detail::decreasing_root(
        [&](double x) { return center_gap(up, low, VectorXd::Constant(1, x), cfg)(0); }, 0.0, kBracketTol,
        cfg.max_iter, rep);
    beta(0) = b;
  } else {
    const double scale = 1 + Z.cwiseAbs().maxCoeff();
    beta = detail::broyden([&](const VectorXd& x) { return center_gap(up, low, x, cfg); }, beta, cfg.max_iter,
                           cfg.fd_step, rep,
                           [&](const VectorXd&, const VectorXd& f) { return f.norm() <= cfg.inner_tol * scale; });
  }
  const FreePartition pu = free_yao_yao(up.project(beta), up.w, cfg);
  const FreePartition pl = free_yao_yao(low.project(beta), low.w, cfg);
  FreePartition p;
  p.center.resize(d);
  p.center(0) = a;
  p.center.tail(d - 1) = (pu.center + pl.center) / 2;
  for (const auto& G : pu.generators) p.generators.push_back(lift_cone(G, beta, 1));
  for (const auto& G : pl.generators) p.generators.push_back(lift_cone(G, beta, -1));
  return p;
}

std::vector<Cone> global_cones(const MatrixXd& B, const FreePartition& upper, const VectorXd& beta) {
  std::vector<Cone> cones;
  std::vector<MatrixXd> up;
  for (const auto& G : upper.generators) up.push_back(B * lift_cone(G, beta, 1));
  for (const auto& G : up) cones.emplace_back(G);
  for (const auto& G : up) cones.emplace_back(-G);
  return cones;
}

double mass_deviation(const VectorXd& masses, double total) {
  const double share = 1.0 / static_cast<double>(masses.size());
  return ((masses / total).array() - share).abs().maxCoeff() / share;
}

}  // namespace

MatrixXd orthonormal_completion(const VectorXd& u) {
  const Eigen::Index n = u.size();
  const VectorXd e = u.normalized();
  Eigen::HouseholderQR<MatrixXd> qr(e);
  MatrixXd Q = qr.householderQ() * MatrixXd::Identity(n, n);
  Q.col(0) = e;
  for (Eigen::Index j = 1; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) Q.col(j) -= Q.col(i).dot(Q.col(j)) * Q.col(i);
    Q.col(j).normalize();
  }
  return Q;
}

int locate(const std::vector<Cone>& cones, const VectorXd& x) {
  int best = 0;
  double score = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < cones.size(); ++k) {
    const double m = cones[k].coordinates(x).minCoeff();
    if (m > score) {
      score = m;
      best = static_cast<int>(k);
    }
  }
  return best;
}

std::vector<int> cone_owners(const std::vector<Cone>& cones, const MatrixXd& points) {
  const Eigen::Index N = points.cols();
  Eigen::RowVectorXd best = Eigen::RowVectorXd::Constant(N, -std::numeric_limits<double>::infinity());
  std::vector<int> owner(N, 0);
  for (std::size_t k = 0; k < cones.size(); ++k) {
    const Eigen::RowVectorXd m = cones[k].coordinates(points).colwise().minCoeff();
    for (Eigen::Index j = 0; j < N; ++j) {
      if (m(j) > best(j)) {
        best(j) = m(j);
        owner[j] = static_cast<int>(k);
      }
    }
  }
  return owner;
}

VectorXd cone_masses(const std::vector<Cone>& cones, const MatrixXd& points, const VectorXd& weights) {
  const std::vector<int> owner = cone_owners(cones, points);
  VectorXd masses = VectorXd::Zero(cones.size());
  for (Eigen::Index j = 0; j < points.cols(); ++j) masses(owner[j]) += weights(j);
  return masses;
}

YaoYaoPartition apply_map(const Map& t, const YaoYaoPartition& p) {
  YaoYaoPartition q = p;
  const VectorXd normal = t.inverse_transpose().matrix() * p.u;
  const double scale = 1 / normal.squaredNorm();
  q.u = normal.normalized();
  q.v = (t.matrix() * p.v).normalized();
  for (auto& c : q.cones) c = Cone(t.matrix() * c.generators());
  q.masses = scale * p.masses;
  q.total = scale * p.total;
  q.center = t.matrix() * p.center;
  return q;
}

YaoYaoPartition yao_yao_equipartition(const MeasureSamples& mu, const VectorXd& u_in, double mass_tol,
                                      int max_iter) {
  const int n = mu.dim();
  require_dim(n);
  if (u_in.size() != n || !(u_in.norm() > 0)) throw GeometryError("yao-yao: bad base direction");
  if (!(mass_tol > 0)) throw GeometryError("yao-yao: mass_tol must be positive");
  const VectorXd u = u_in.normalized();
  const MatrixXd B = orthonormal_completion(u);
  const MatrixXd Y = B.transpose() * mu.points;

  std::vector<Eigen::Index> iu;
  for (Eigen::Index k = 0; k < Y.cols(); ++k)
    if (Y(0, k) > 0) iu.push_back(k);
  if (iu.empty()) throw GeometryError("yao-yao: measure has no mass off u-perp");
  const Side up = take(Y, mu.weights, iu, 0.0);

  const Settings cfg{max_iter, 1e-4, 1e-10};
  auto upper_at = [&](const VectorXd& beta) { return free_yao_yao(up.project(beta), up.w, cfg); };
  auto deviation_at = [&](const VectorXd& beta, const FreePartition& p) {
    return mass_deviation(cone_masses(global_cones(B, p, beta), mu.points, mu.weights), mu.total);
  };
  const double stop = mass_tol / 4;

  VectorXd beta = VectorXd::Zero(n - 1);
  detail::RootReport rep;
  if (n - 1 == 1) {
    const double b = detail::decreasing_root(
        [&](double x) { return upper_at(VectorXd::Constant(1, x)).center(0); }, 0.0, kBracketTol, max_iter, rep);
    beta(0) = b;
  } else {
    beta = detail::broyden([&](const VectorXd& x) { return upper_at(x).center; }, beta, max_iter, cfg.fd_step, rep,
                           [&](const VectorXd& x, const VectorXd&) { return deviation_at(x, upper_at(x)) <= stop; });
  }

  const FreePartition upper = upper_at(beta);
  YaoYaoPartition p;
  p.u = u;
  VectorXd axis(n);
  axis(0) = 1;
  axis.tail(n - 1) = beta;
  p.v = (B * axis).normalized();
  p.cones = global_cones(B, upper, beta);
  p.masses = cone_masses(p.cones, mu.points, mu.weights);
  p.total = mu.total;
  p.mass_tol = mass_tol;
  p.center = VectorXd::Zero(n);
  p.iterations = rep.iterations;
  p.residual = mass_deviation(p.masses, p.total);
  if (p.residual > mass_tol)
    throw ConvergenceError("not an equipartition: max relative mass deviation " + std::to_string(p.residual));
  return p;
}

CoverReport cover_test(const std::vector<Cone>& cones, std::int64_t directions, std::uint64_t seed, double tol) {
  if (cones.empty()) throw GeometryError("cover test: no cones");
  const int n = cones.front().dim();
  std::vector<MatrixXd> unit_inverse;
  for (const auto& c : cones) unit_inverse.push_back(c.generators().colwise().normalized().inverse());
  std::mt19937_64 g(seed);
  std::normal_distribution<double> z;
  CoverReport r{directions, 0, 0};
  for (std::int64_t s = 0; s < directions; ++s) {
    VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = z(g);
    x.normalize();
    int inside = 0, boundary = 0;
    for (const auto& inv : unit_inverse) {
      const double m = (inv * x).minCoeff();
      if (m > tol) ++inside;
      else if (m >= -tol) ++boundary;
    }
    if (inside + boundary == 0) ++r.uncovered;
    else if (inside > 1) ++r.multiply_covered;
  }
  return r;
}

std::vector<Cone> dual_partition(const YaoYaoPartition& p, std::int64_t directions, std::uint64_t seed) {
  if (p.center.size() && p.center.norm() > 0) throw GeometryError("dual partition needs center o");
  std::vector<Cone> duals;
  for (const auto& c : p.cones) duals.push_back(dual_cone(c));
  const CoverReport r = cover_test(duals, directions, seed);
  if (!r.passed())
    throw GeometryError("dual cones fail the cover test: " + std::to_string(r.uncovered) + " uncovered, " +
                        std::to_string(r.multiply_covered) + " multiply covered");
  return duals;
}

Map shear_to_axis(const VectorXd& u_in, const VectorXd& v_in) {
  if (u_in.size() != v_in.size() || !(u_in.norm() > 0) || !(v_in.norm() > 0))
    throw GeometryError("shear: bad directions");
  const VectorXd u = u_in.normalized(), v = v_in.normalized();
  const double uv = u.dot(v);
  if (uv <= kAxisTol) throw GeometryError("shear: <u, v> must be positive");
  const Eigen::Index n = u.size();
  return Map(MatrixXd::Identity(n, n) - (v - uv * u) * u.transpose() / uv);
}

Map cone_to_orthant(const Cone& a, const VectorXd& u_in) {
  const int n = a.dim();
  const VectorXd u = u_in.normalized();
  const MatrixXd& G = a.generators();
  int axis = -1;
  for (int j = 0; j < n; ++j) {
    const VectorXd g = G.col(j).normalized();
    if ((g - u).norm() <= 1e-9) axis = j;
  }
  if (axis < 0) throw GeometryError("cone_to_orthant: u is not a generator");
  MatrixXd V(n, n - 1);
  for (int j = 0, k = 0; j < n; ++j) {
    if (j == axis) continue;
    if (std::abs(G.col(j).normalized().dot(u)) > 1e-9) throw GeometryError("cone_to_orthant: generator not in u-perp");
    V.col(k++) = G.col(j);
  }
  MatrixXd W = V;
  for (int j = 0; j < n - 1; ++j) {
    for (int i = 0; i < j; ++i) W.col(j) -= W.col(i).dot(W.col(j)) * W.col(i);
    W.col(j).normalize();
  }
  MatrixXd src(n, n), dst(n, n);
  src << u, V;
  dst << u, W;
  const double c = std::pow(std::abs(src.determinant() / dst.determinant()), 1.0 / (n - 1));
  dst.rightCols(n - 1) *= c;
  return Map(dst * src.inverse());
}

}  // namespace convexlab
