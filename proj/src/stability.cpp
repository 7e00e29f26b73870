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

#include "convexlab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <type_traits>

#include "convexlab/detail/parallel.hpp"
#include "convexlab/moments.hpp"

namespace convexlab {

namespace {

constexpr double kInner = 0.125;
constexpr double kOuter = 0.25;
constexpr double kTCap = 0.15;
constexpr int kProfileScan = 200'000;
constexpr std::int64_t kQuadraturePoints = 200'000;

// chi and its first two derivatives in r.
struct Profile {
  double f, d1, d2;
};

Profile profile(double r) {
  const double w = kOuter - kInner;
  const double s = std::clamp((r - kInner) / w, 0.0, 1.0);
  const double s2 = s * s, s3 = s2 * s;
  return {1 - (6 * s3 * s2 - 15 * s2 * s2 + 10 * s3), -(30 * s2 * s2 - 60 * s3 + 30 * s2) / w,
          -(120 * s3 - 180 * s2 + 60 * s) / (w * w)};
}

// Extremes over the sphere of the eigenvalues of Hess phi + phi I; phi is
// zonal around u0 with angle a, r = 2 sin(a / 2).
std::pair<double, double> hessian_range(int n) {
  const double a0 = 2 * std::asin(kInner / 2), a1 = 2 * std::asin(kOuter / 2);
  double lo = 0, hi = 1;
  for (int k = 0; k <= kProfileScan; ++k) {
    const double a = a0 + (a1 - a0) * k / kProfileScan;
    const Profile p = profile(2 * std::sin(a / 2));
    const double c = std::cos(a / 2), s = std::sin(a / 2);
    const double f1 = p.d1 * c;
    const double f2 = p.d2 * c * c - p.d1 * s / 2;
    const double radial = p.f + f2;
    lo = std::min(lo, radial);
    hi = std::max(hi, radial);
    if (n >= 3 && a > 0) {
      const double tangential = p.f + f1 / std::tan(a);
      lo = std::min(lo, tangential);
      hi = std::max(hi, tangential);
    }
  }
  return {lo, hi};
}

MatrixXd random_rotation(int n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> z;
  MatrixXd A(n, n);
  for (Eigen::Index j = 0; j < A.size(); ++j) A(j) = z(g);
  Eigen::HouseholderQR<MatrixXd> qr(A);
  MatrixXd Q = qr.householderQ();
  const VectorXd d = qr.matrixQR().diagonal();
  for (int j = 0; j < n; ++j)
    if (d(j) < 0) Q.col(j) = -Q.col(j);
  return Q;
}

// Rows are unit directions, row k + m/2 = -row k.
MatrixXd direction_grid(int n, int m, std::uint64_t seed_grid) {
  const int half = m / 2;
  MatrixXd U(m, n);
  if (n == 2) {
    double offset = std::numbers::pi / m;
    if (seed_grid != 0) {
      std::mt19937_64 g(seed_grid);
      offset += std::uniform_real_distribution<double>(0, 2 * std::numbers::pi / m)(g);
    }
    for (int k = 0; k < half; ++k) {
      const double th = 2 * std::numbers::pi * k / m + offset;
      U(k, 0) = std::cos(th);
      U(k, 1) = std::sin(th);
    }
  } else {
    const double golden = std::numbers::pi * (3 - std::sqrt(5.0));
    for (int k = 0; k < half; ++k) {
      const double z = 1 - (k + 0.5) / half;
      const double r = std::sqrt(1 - z * z);
      U(k, 0) = r * std::cos(golden * k);
      U(k, 1) = r * std::sin(golden * k);
      U(k, 2) = z;
    }
    if (seed_grid != 0) U.topRows(half) = U.topRows(half) * random_rotation(n, seed_grid).transpose();
  }
  U.bottomRows(half) = -U.topRows(half);
  return U;
}

// (1/n) int_{S^{n-1}} rho^n on a spherical Fibonacci set.
double radial_volume_3d(const HPolytope& h) {
  const double golden = std::numbers::pi * (3 - std::sqrt(5.0));
  const std::int64_t Q = kQuadraturePoints;
  const std::int64_t block = 128;
  double acc = 0;
  for (std::int64_t b0 = 0; b0 < Q; b0 += block) {
    const std::int64_t len = std::min(block, Q - b0);
    MatrixXd D(3, len);
    for (std::int64_t j = 0; j < len; ++j) {
      const std::int64_t k = b0 + j;
      const double z = 1 - (2 * k + 1.0) / Q;
      const double r = std::sqrt(1 - z * z);
      D.col(j) << r * std::cos(golden * k), r * std::sin(golden * k), z;
    }
    const MatrixXd P = h.normals() * D;
    for (std::int64_t j = 0; j < len; ++j) {
      double rho = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < P.rows(); ++i)
        if (P(i, j) > 0) rho = std::min(rho, h.offsets()(i) / P(i, j));
      acc += rho * rho * rho;
    }
  }
  return 4 * std::numbers::pi / Q * acc / 3;
}

constexpr Eigen::Index kQuadratureFacets = 200;

double body_volume(const Body& k) {
  if (const auto* h = std::get_if<HPolytope>(&k); h && h->dim() == 3 && h->normals().rows() > kQuadratureFacets)
    return radial_volume_3d(*h);
  return volume(k);
}

MatrixXd exp_symmetric(const MatrixXd& S) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(S);
  return es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() * es.eigenvectors().transpose();
}

// Traceless symmetric matrix from n(n+1)/2 - 1 parameters.
MatrixXd traceless(const VectorXd& p, int n) {
  MatrixXd S = MatrixXd::Zero(n, n);
  int k = 0;
  for (int i = 0; i + 1 < n; ++i) {
    S(i, i) = p(k);
    S(n - 1, n - 1) -= p(k++);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) S(i, j) = S(j, i) = p(k++);
  return S;
}

double outside_fraction(const MatrixXd& Z, const MatrixXd& C) {
  const Eigen::ArrayXd q = (Z.array() * (C * Z).array()).colwise().sum().transpose();
  return static_cast<double>((q > 1).count()) / static_cast<double>(Z.cols());
}

struct NelderMead {
  VectorXd x;
  double f{};
  int iterations{};
  bool converged{};
};

template <typename F>
NelderMead nelder_mead(F&& f, const VectorXd& x0, double step, int max_iter, double ftol, double xtol) {
  const Eigen::Index d = x0.size();
  std::vector<VectorXd> pts(d + 1, x0);
  for (Eigen::Index i = 0; i < d; ++i) pts[i + 1](i) += step;
  std::vector<double> val(d + 1);
  for (Eigen::Index i = 0; i <= d; ++i) val[i] = f(pts[i]);
  std::vector<int> order(d + 1);
  NelderMead out;
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return val[a] < val[b]; });
    const int best = order.front(), worst = order.back(), second = order[d - 1];
    double diam = 0;
    for (Eigen::Index i = 0; i <= d; ++i) diam = std::max(diam, (pts[i] - pts[best]).norm());
    if (diam <= xtol || (val[worst] - val[best] <= ftol && diam <= 100 * xtol)) {
      out.converged = true;
      break;
    }
    if (out.iterations >= max_iter) break;
    ++out.iterations;
    VectorXd centroid = VectorXd::Zero(d);
    for (int i : order)
      if (i != worst) centroid += pts[i];
    centroid /= static_cast<double>(d);
    const VectorXd xr = centroid + (centroid - pts[worst]);
    const double fr = f(xr);
    if (fr < val[best]) {
      const VectorXd xe = centroid + 2 * (centroid - pts[worst]);
      const double fe = f(xe);
      if (fe < fr) {
        pts[worst] = xe, val[worst] = fe;
      } else {
        pts[worst] = xr, val[worst] = fr;
      }
      continue;
    }
    if (fr < val[second]) {
      pts[worst] = xr, val[worst] = fr;
      continue;
    }
    const bool outside = fr < val[worst];
    const VectorXd xc = outside ? VectorXd(centroid + 0.5 * (xr - centroid))
                                : VectorXd(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = f(xc);
    if (fc < (outside ? fr : val[worst])) {
      pts[worst] = xc, val[worst] = fc;
      continue;
    }
    for (Eigen::Index i = 0; i <= d; ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      val[i] = f(pts[i]);
    }
  }
  const auto it = std::min_element(val.begin(), val.end());
  out.x = pts[it - val.begin()];
  out.f = *it;
  return out;
}

MatrixXd moment_for_fit(const Body& k, const MatrixXd& cloud) {
  if (const auto* h = std::get_if<HPolytope>(&k); h && h->dim() == 3 && h->normals().rows() > kQuadratureFacets)
    return cloud * cloud.transpose() / static_cast<double>(cloud.cols());
  return second_moment_matrix(k).matrix;
}

}  // namespace

Strip::Strip(VectorXd u, double aleph) : half_width(aleph) {
  if (!(aleph > 0)) throw GeometryError("strip half-width must be positive");
  if (!(u.norm() > 0)) throw GeometryError("strip direction must be nonzero");
  direction = u.normalized();
}

VolumeEstimate homothetic_distance(const Body& k, const Body& c, std::int64_t samples, std::uint64_t seed,
                                   int workers) {
  const int n = dim(k);
  if (dim(c) != n) throw GeometryError("homothetic_distance: dimension mismatch");
  const double ratio = std::pow(body_volume(c) / body_volume(k), 1.0 / n);  // alpha / beta
  const MatrixXd X = ratio * sample_uniform(k, samples, seed, workers, 7);
  const MembershipOracle in(c);
  std::vector<char> inside;
  in.test(X, inside);
  const double p = static_cast<double>(std::count(inside.begin(), inside.end(), 0)) / static_cast<double>(samples);
  return {2 * p, 2 * std::sqrt(p * (1 - p) / static_cast<double>(samples)), samples, seed};
}

EllipsoidFit best_fit_ellipsoid(const Body& k, std::int64_t samples, std::uint64_t seed, int workers, int max_iter) {
  const int n = dim(k);
  const double vol = body_volume(k);
  const double alpha = std::pow(vol, -1.0 / n);
  const MatrixXd Y = alpha * sample_uniform(k, samples, seed, workers, 8);

  const double omega = unit_ball_volume(n);
  const MatrixXd minv = (std::pow(alpha, n + 2) * moment_for_fit(k, Y / alpha)).inverse();
  const MatrixXd Q0 = std::pow(omega * omega / minv.determinant(), 1.0 / n) * minv;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(Q0);
  const MatrixXd R = es.operatorSqrt();
  const std::int64_t fit_n = std::min(samples, kMaxFitSamples);
  const MatrixXd Z = R * Y.leftCols(fit_n);

  auto objective = [&](const VectorXd& p) { return 2 * outside_fraction(Z, exp_symmetric(traceless(p, n))); };
  const int params = n * (n + 1) / 2 - 1;
  const NelderMead nm = nelder_mead(objective, VectorXd::Zero(params), 0.1, max_iter,
                                    1.0 / static_cast<double>(fit_n), 1e-5);

  const MatrixXd C = exp_symmetric(traceless(nm.x, n));
  const MatrixXd Q = R * C * R;
  EllipsoidFit fit;
  const double p = outside_fraction(Y, Q);
  fit.distance = 2 * p;
  fit.stderr_value = 2 * std::sqrt(p * (1 - p) / static_cast<double>(samples));
  fit.ellipsoid = EllipsoidD(MatrixXd((alpha * alpha * Q + (alpha * alpha * Q).transpose()) / 2));
  fit.iterations = nm.iterations;
  fit.converged = nm.converged;
  fit.warning = !nm.converged;
  return fit;
}

double bump_profile(double r) { return profile(r).f; }

double kt_bump(const VectorXd& u) {
  const VectorXd u0 = VectorXd::Ones(u.size()) / std::sqrt(static_cast<double>(u.size()));
  return bump_profile((u - u0).norm()) + bump_profile((u + u0).norm());
}

double kt_max_t(int n) {
  const double lo = hessian_range(n).first;
  return lo < 0 ? -1 / lo : std::numeric_limits<double>::infinity();
}

double kt_min_t(int n) {
  const double hi = hessian_range(n).second;
  return hi > 0 ? -1 / hi : -std::numeric_limits<double>::infinity();
}

int kt_default_grid(int n) { return n == 2 ? 4096 : 2048; }

HPolytope kt_family(int n, double t, int grid_size, std::uint64_t seed_grid) {
  if (n != 2 && n != 3) throw GeometryError("kt_family: dimension must be 2 or 3");
  const int min_grid = n == 2 ? 256 : 2048;
  if (grid_size < min_grid || grid_size % 2) throw GeometryError("kt_family: grid too small or odd");
  if (!(std::abs(t) <= kTCap)) throw GeometryError("kt_family: |t| exceeds 0.15");
  if (!(t < kt_max_t(n)) || !(t > kt_min_t(n)))
    throw GeometryError("kt_family: 1 + t phi is not a support function for t = " + std::to_string(t));
  const MatrixXd U = direction_grid(n, grid_size, seed_grid);
  VectorXd h(grid_size);
  for (int k = 0; k < grid_size; ++k) h(k) = 1 + t * kt_bump(U.row(k).transpose());
  const double lambda = std::pow(unit_ball_volume(n) / body_volume(Body(HPolytope(U, h))), 1.0 / n);
  return HPolytope(U, lambda * h);
}

LogLogFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw GeometryError("loglog_fit: need two or more points");
  const auto m = static_cast<Eigen::Index>(x.size());
  MatrixXd A(m, 2);
  VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw GeometryError("loglog_fit: data must be positive");
    A(i, 0) = std::log(x[i]);
    A(i, 1) = 1;
    b(i) = std::log(y[i]);
  }
  const VectorXd c = A.colPivHouseholderQr().solve(b);
  return {c(0), c(1)};
}

SweepResult kt_sweep(int n, const std::vector<double>& ts, std::int64_t samples, std::uint64_t seed, int workers,
                     int grid_size) {
  if (n != 2) throw GeometryError("kt_sweep: exact deficits need n = 2");
  if (ts.empty()) throw GeometryError("kt_sweep: empty t list");
  for (double t : ts)
    if (!(t > 0 && t <= 0.12)) throw GeometryError("kt_sweep: t must lie in (0, 0.12]");
  const int grid = grid_size > 0 ? grid_size : kt_default_grid(n);
  const double omega = unit_ball_volume(n);
  SweepResult out;
  std::vector<double> ds, as, ratios;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const HPolytope kt = kt_family(n, ts[k], grid);
    const Body body(kt);
    const VPolytope kp = polar(kt);
    StabilityRecord r;
    r.t = ts[k];
    r.vol_k = volume(kt);
    r.vol_polar = volume(kp);
    r.deficit_santalo = omega * omega - r.vol_k * r.vol_polar;
    r.deficit_ball = ball_functional_bound(n) - ball_functional(body);
    r.seed = seed + k;
    r.samples = samples;
    const EllipsoidFit fit = best_fit_ellipsoid(body, samples, r.seed, workers);
    r.a_dist = fit.distance;
    r.fit_warning = fit.warning;
    r.ratio = r.deficit_santalo / (r.a_dist * r.a_dist);
    out.records.push_back(r);
    ds.push_back(r.deficit_santalo);
    as.push_back(r.a_dist);
    ratios.push_back(r.ratio);
  }
  if (ts.size() >= 2) {
    out.santalo = loglog_fit(ts, ds);
    out.a_dist = loglog_fit(ts, as);
  }
  out.ratio_spread = *std::max_element(ratios.begin(), ratios.end()) / *std::min_element(ratios.begin(), ratios.end());
  return out;
}

VolumeEstimate strip_restricted_diff(const Body& k, const EllipsoidD& e, const Cone& a, const Strip& strip,
                                     std::int64_t samples, std::uint64_t seed, int workers) {
  const int n = dim(k);
  if (e.dim() != n || a.dim() != n || strip.direction.size() != n)
    throw GeometryError("strip_restricted_diff: dimension mismatch");
  if (samples <= 0) throw GeometryError("sample count must be positive");
  const VectorXd half = bounding_half_widths(k).cwiseMax(bounding_half_widths(Body(e)));
  const MembershipOracle in_k(k), in_e{Body(e)};
  const std::int64_t chunks = (samples + kChunkSize - 1) / kChunkSize;
  auto counts = detail::map_chunks<std::int64_t>(chunks, workers, [&](std::int64_t c) {
    auto g = detail::chunk_engine(seed, 6, static_cast<std::uint64_t>(c));
    MatrixXd X(n, std::min(kChunkSize, samples - c * kChunkSize));
    for (Eigen::Index j = 0; j < X.cols(); ++j)
      for (int i = 0; i < n; ++i) X(i, j) = (2 * detail::unit_uniform(g) - 1) * half(i);
    std::vector<char> ik, ie;
    in_k.test(X, ik);
    in_e.test(X, ie);
    const MatrixXd coords = a.coordinates(X);
    std::int64_t hits = 0;
    for (Eigen::Index j = 0; j < X.cols(); ++j)
      hits += ik[j] != ie[j] && coords.col(j).minCoeff() >= 0 && !strip.contains(X.col(j));
    return hits;
  });
  const std::int64_t hits = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
  const double N = static_cast<double>(samples);
  const double p = static_cast<double>(hits) / N;
  const double box = (2 * half).prod();
  return {box * p, box * std::sqrt(p * (1 - p) / N), samples, seed};
}

}  // namespace convexlab
