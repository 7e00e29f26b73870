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

#include "convexlab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "convexlab/moments.hpp"

namespace convexlab {

namespace {

constexpr double kPairTol = 1e-9;

double product_stderr(double a, double sa, double b, double sb) { return std::hypot(sa * b, a * sb); }

double directional_moment(const Body& k, const VectorXd& u) { return second_moment_matrix(k).directional(u); }

MatrixXd orthant_samples(const Body& body, std::int64_t count, std::uint64_t seed, int workers,
                         std::uint64_t stream) {
  const int n = dim(body);
  MatrixXd out(n, count);
  std::int64_t have = 0;
  for (std::uint64_t round = 0; have < count; ++round) {
    const std::int64_t draw = std::max<std::int64_t>(1024, (count - have) * (std::int64_t{1} << n) * 5 / 4);
    const MatrixXd X = sample_uniform(body, draw, seed, workers, stream + 2 * round);
    for (Eigen::Index j = 0; j < X.cols() && have < count; ++j)
      if (X.col(j).minCoeff() > 0) out.col(have++) = X.col(j);
    if (round > 64) throw GeometryError("orthant piece has negligible volume");
  }
  return out;
}

bool unconditional(const EllipsoidD& e) {
  const MatrixXd& Q = e.shape();
  const MatrixXd off = Q - MatrixXd(Q.diagonal().asDiagonal());
  return off.cwiseAbs().maxCoeff() <= Tolerance<double>::symmetry * Q.cwiseAbs().maxCoeff();
}

double polytope_orthant_moment(MatrixXd A, VectorXd b, int i) {
  const int n = static_cast<int>(A.cols());
  const Eigen::Index m = A.rows();
  A.conservativeResize(m + n, n);
  b.conservativeResize(m + n);
  A.bottomRows(n) = -MatrixXd::Identity(n, n);
  b.tail(n).setZero();
  double s = 0;
  for (const auto& simplex : triangulate(halfspace_polytope(A, b))) s += simplex_second_moment(simplex).matrix(i, i);
  return s;
}

}  // namespace

const char* method_name(Method m) { return m == Method::exact ? "exact" : "mc"; }
const char* relation_name(Relation r) { return r == Relation::le ? "le" : "eq"; }

DeficitReport make_report(std::string name, double lhs, double rhs, double tolerance, Method method) {
  DeficitReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.deficit = rhs - lhs;
  r.tolerance = tolerance;
  r.method = method;
  return r;
}

DeficitReport santalo_deficit(const Body& k) {
  const double omega = unit_ball_volume(dim(k));
  return make_report("santalo", volume(k) * volume(polar(k)), omega * omega, kExactTolerance, Method::exact);
}

DeficitReport santalo_deficit_mc(const Body& k, std::int64_t samples, std::uint64_t seed, int workers) {
  const double omega = unit_ball_volume(dim(k));
  const VolumeEstimate a = mc_volume(k, samples, seed, workers);
  const VolumeEstimate b = mc_volume(polar(k), samples, seed + 1, workers);
  const double sigma = product_stderr(a.value, a.stderr_value, b.value, b.stderr_value);
  DeficitReport r = make_report("santalo", a.value * b.value, omega * omega, kMcSigmas * sigma, Method::mc);
  r.seed = seed;
  r.samples = samples;
  return r;
}

DeficitReport ball_deficit(const Body& k) {
  return make_report("ball", ball_functional(k), ball_functional_bound(dim(k)), kExactTolerance, Method::exact);
}

DeficitReport ball_deficit_mc(const Body& k, std::int64_t samples, std::uint64_t seed, int workers) {
  const int n = dim(k);
  const MomentMatrix a = mc_second_moment(k, samples, seed, workers);
  const MomentMatrix b = mc_second_moment(polar(k), samples, seed + 1, workers);
  double var = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double c = i == j ? 1 : 2;
      var += std::pow(c * (*a.stderr_matrix)(i, j) * b.matrix(i, j), 2) +
             std::pow(c * a.matrix(i, j) * (*b.stderr_matrix)(i, j), 2);
    }
  DeficitReport r =
      make_report("ball", ball_functional(a, b), ball_functional_bound(n), kMcSigmas * std::sqrt(var), Method::mc);
  r.seed = seed;
  r.samples = samples;
  return r;
}

DeficitReport directional_deficit(const Body& k, const VectorXd& u, const IsotropicCertificate* cert,
                                  double iso_tol) {
  if (cert == nullptr) throw GeometryError("directional_deficit: isotropic certificate missing");
  const int n = dim(k);
  if (u.size() != n || !(u.norm() > 0)) throw GeometryError("directional_deficit: bad direction");
  const VectorXd dir = u.normalized();
  const MomentMatrix mk = second_moment_matrix(k);
  const MomentMatrix mp = second_moment_matrix(polar(k));
  IsotropicCertificate check;
  certify(cert->target == IsotropicTarget::self ? mk : mp, check);
  if (check.off_diag_rel > iso_tol || check.diag_spread_rel > iso_tol)
    throw GeometryError("directional_deficit: certified body is not isotropic");
  const double r = reference_ball_moment(n);
  return make_report("directional", mk.directional(dir) * mp.directional(dir), r * r, kExactTolerance,
                     Method::exact);
}

DeficitReport cone_restricted_deficit(const Body& k, const VectorXd& u, const Cone& a, std::int64_t samples,
                                      std::uint64_t seed, int workers) {
  const int n = dim(k);
  if (u.size() != n || !(u.norm() > 0)) throw GeometryError("cone_restricted_deficit: bad direction");
  const VectorXd dir = u.normalized();
  const MatrixXd G = a.generators().colwise().normalized();
  if ((dir.transpose() * G).cwiseAbs().maxCoeff() < 1 - 1e-9)
    throw GeometryError("cone_restricted_deficit: u does not span a generator of the cone");
  const Cone dual = dual_cone(a);
  const Body kp = polar(k);

  auto restricted = [&](const Body& body, const Cone& cone, std::uint64_t stream) {
    const MatrixXd X = sample_uniform(body, samples, seed, workers, stream);
    const double vol = volume(body);
    const MatrixXd coords = cone.coordinates(X);
    VectorXd values(X.cols());
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      const double t = dir.dot(X.col(j));
      values(j) = coords.col(j).minCoeff() >= 0 ? vol * t * t : 0;
    }
    return batch_mean(values);
  };
  const BatchMean I = restricted(k, a, 10);
  const BatchMean J = restricted(kp, dual, 11);
  const double r = reference_ball_moment(n) * std::ldexp(1.0, -n);
  DeficitReport rep = make_report("cone", I.mean * J.mean, r * r,
                                  kMcSigmas * product_stderr(I.mean, I.stderr_value, J.mean, J.stderr_value),
                                  Method::mc);
  rep.seed = seed;
  rep.samples = samples;
  return rep;
}

ConeCheck cone_restricted_check(const Body& k, const MeasureSamples& mu, const YaoYaoPartition& p,
                                std::int64_t polar_samples, std::uint64_t seed, int workers) {
  const int n = dim(k);
  if (mu.dim() != n || p.dim() != n) throw GeometryError("cone_restricted_check: dimension mismatch");
  if (p.u.dot(p.v) < 1 - 1e-9) throw GeometryError("cone_restricted_check: partition axis differs from u");
  const VectorXd& u = p.u;
  const std::size_t cones = p.cones.size();
  std::vector<Cone> duals;
  for (const auto& c : p.cones) duals.push_back(dual_cone(c));

  const Body kp = polar(k);
  const double vol = volume(k);
  const double vol_p = volume(kp);
  const MatrixXd Y = sample_uniform(kp, polar_samples, seed, workers, 12);
  const std::vector<int> own_x = cone_owners(p.cones, mu.points);
  const std::vector<int> own_y = cone_owners(duals, Y);
  const VectorXd wy = (u.transpose() * Y).transpose().array().square();

  const Eigen::Index N = mu.size();
  MatrixXd fx = MatrixXd::Zero(N, cones), gy = MatrixXd::Zero(Y.cols(), cones);
  for (Eigen::Index j = 0; j < N; ++j) fx(j, own_x[j]) = vol * mu.weights(j);
  for (Eigen::Index j = 0; j < Y.cols(); ++j) gy(j, own_y[j]) = vol_p * wy(j);

  ConeCheck out;
  out.primal.resize(cones);
  out.dual.resize(cones);
  VectorXd sI(cones), sJ(cones);
  for (std::size_t c = 0; c < cones; ++c) {
    const BatchMean I = batch_mean(fx.col(c)), J = batch_mean(gy.col(c));
    out.primal(c) = I.mean;
    out.dual(c) = J.mean;
    sI(c) = I.stderr_value;
    sJ(c) = J.stderr_value;
  }
  const double r = reference_ball_moment(n) * std::ldexp(1.0, -n);
  for (std::size_t c = 0; c < cones; ++c) {
    DeficitReport rep = make_report("cone_" + std::to_string(c), out.primal(c) * out.dual(c), r * r,
                                    kMcSigmas * product_stderr(out.primal(c), sI(c), out.dual(c), sJ(c)),
                                    Method::mc);
    rep.seed = seed;
    rep.samples = polar_samples;
    out.cones.push_back(rep);
  }

  const double scale = std::ldexp(1.0, n);
  const double recon = scale * out.primal.dot(out.dual);
  const double exact = second_moment_matrix(k).directional(u) * second_moment_matrix(kp).directional(u);
  const BatchMean rx = batch_mean(scale * fx * out.dual);
  const BatchMean sy = batch_mean(scale * gy * out.primal);
  const double sigma = std::hypot(rx.stderr_value, sy.stderr_value);
  DeficitReport d = make_report("decomposition", recon, exact, kMcSigmas * sigma + p.mass_tol * exact, Method::mc);
  d.relation = Relation::eq;
  d.seed = seed;
  d.samples = polar_samples;
  out.decomposition = d;
  return out;
}

double orthant_moment(const Body& k, int i) {
  const int n = dim(k);
  if (i < 0 || i >= n) throw GeometryError("orthant_moment: coordinate out of range");
  return std::visit(
      [&](const auto& b) -> double {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, VPolytope>) {
          return polytope_orthant_moment(b.facet_normals(), VectorXd::Ones(b.facet_normals().rows()), i);
        } else if constexpr (std::is_same_v<T, HPolytope>) {
          return polytope_orthant_moment(b.normals(), b.offsets(), i);
        } else {
          if (!unconditional(b)) throw GeometryError("orthant_moment: ellipsoid is not unconditional");
          return second_moment_matrix(b).matrix(i, i) * std::ldexp(1.0, -n);
        }
      },
      k);
}

PlCheck pl_triple_check(const Body& x_body, const Body& y_body, int i, std::int64_t pairs, std::uint64_t seed,
                        int workers) {
  const int n = dim(x_body);
  if (dim(y_body) != n) throw GeometryError("pl_triple_check: dimension mismatch");
  if (i < 0 || i >= n) throw GeometryError("pl_triple_check: coordinate out of range");
  if (pairs < 16) throw GeometryError("pl_triple_check: too few pairs");
  const MatrixXd X = orthant_samples(x_body, pairs, seed, workers, 0);
  const MatrixXd Y = orthant_samples(y_body, pairs, seed, workers, 1);

  PlCheck out;
  out.pairs = pairs;
  out.min_midpoint_margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < pairs; ++j) {
    const double ip = X.col(j).dot(Y.col(j));
    if (ip > 1 + kPairTol) throw GeometryError("pl_triple_check: sampled pair with <x, y> > 1");
    const VectorXd s = X.col(j).array().log(), t = Y.col(j).array().log();
    const VectorXd m = (s + t) / 2;
    const VectorXd z = m.array().exp();
    out.max_mean_norm = std::max(out.max_mean_norm, z.norm());
    const double root_fg = std::exp(s(i) + t(i) + (s.sum() + t.sum()) / 2);
    const double h = z.squaredNorm() <= 1 + kPairTol ? std::exp(2 * m(i) + m.sum()) : 0;
    out.min_midpoint_margin = std::min(out.min_midpoint_margin, (h - root_fg) / root_fg);
  }
  out.hypothesis_holds = out.min_midpoint_margin >= -kPairTol;
  out.containment_holds = out.max_mean_norm <= 1 + kPairTol;

  const double int_h = reference_ball_moment(n) * std::ldexp(1.0, -n);
  out.deficit = make_report("pl", orthant_moment(x_body, i) * orthant_moment(y_body, i), int_h * int_h,
                            kExactTolerance, Method::exact);
  out.deficit.seed = seed;
  out.deficit.samples = pairs;
  return out;
}

ChainCheck chain_check(const Body& k, double iso_tol) {
  const int n = dim(k);
  const MomentMatrix mk = second_moment_matrix(k);
  const MomentMatrix mp = second_moment_matrix(polar(k));
  IsotropicCertificate cert;
  certify(mk, cert);
  if (cert.off_diag_rel > iso_tol || cert.diag_spread_rel > iso_tol)
    throw GeometryError("chain_check: body is not isotropic");
  const double gamma = (n + 2) * std::pow(unit_ball_volume(n), 2.0 / n) / n;
  const double traces = mk.matrix.trace() * mp.matrix.trace();
  const double lhs = std::pow(mk.volume * mp.volume, double(n + 2) / n);
  const double rhs = gamma * gamma * traces;
  ChainCheck out;
  out.inequality = make_report("chain", lhs, rhs, kExactTolerance * rhs, Method::exact);
  const double nb = n * ball_functional(mk, mp);
  out.identity_rel_error = std::abs(traces - nb) / nb;
  return out;
}

DeficitReport shear_monotonicity(const Body& k, const VectorXd& u, const VectorXd& v) {
  const VectorXd dir = u.normalized();
  const Map t = shear_to_axis(dir, v.normalized());
  const Body tk = apply_map(t, k);
  const double before = directional_moment(k, dir) * directional_moment(polar(k), dir);
  const double after = directional_moment(tk, dir) * directional_moment(polar(tk), dir);
  return make_report("shear", before, after, kExactTolerance * after, Method::exact);
}

}  // namespace convexlab
