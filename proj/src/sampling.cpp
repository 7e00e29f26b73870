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

#include "convexlab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "convexlab/detail/parallel.hpp"

namespace convexlab {

namespace {

constexpr std::size_t kAngularThreshold = 16;
constexpr Eigen::Index kSlackEntries = 1 << 16;

MatrixXd polygon_vertices(const Body& body) {
  if (const auto* v = std::get_if<VPolytope>(&body)) return v->vertices();
  return vertex_enumeration(std::get<HPolytope>(body)).vertices();
}

std::int64_t facet_count(const Body& body) {
  if (const auto* v = std::get_if<VPolytope>(&body)) return v->facet_normals().rows();
  if (const auto* h = std::get_if<HPolytope>(&body)) return h->normals().rows();
  return 0;
}

void fill_proposals(std::mt19937_64& g, const VectorXd& half, MatrixXd& X) {
  for (Eigen::Index j = 0; j < X.cols(); ++j)
    for (Eigen::Index i = 0; i < X.rows(); ++i) X(i, j) = (2 * detail::unit_uniform(g) - 1) * half(i);
}

double box_volume(const VectorXd& half) { return (2 * half).prod(); }

std::int64_t chunk_length(std::int64_t total, std::int64_t c) {
  return std::min(kChunkSize, total - c * kChunkSize);
}

void check_acceptance(std::int64_t accepted, std::int64_t proposed) {
  if (proposed > 0 && static_cast<double>(accepted) < kMinAcceptance * static_cast<double>(proposed))
    throw GeometryError("degenerate body: rejection acceptance below 1e-4");
}

struct MomentPartial {
  std::int64_t accepted = 0;
  MatrixXd s1, s2;
};

}  // namespace

MembershipOracle::MembershipOracle(const Body& body) : dim_(convexlab::dim(body)) {
  if (const auto* e = std::get_if<EllipsoidD>(&body)) {
    kind_ = Kind::quadratic;
    Q_ = e->shape();
    return;
  }
  if (dim_ == 2 && static_cast<std::size_t>(facet_count(body)) > kAngularThreshold) {
    kind_ = Kind::angular;
    MatrixXd V = polygon_vertices(body);
    std::vector<int> order(V.cols());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> theta(V.cols());
    for (Eigen::Index k = 0; k < V.cols(); ++k) theta[k] = std::atan2(V(1, k), V(0, k));
    std::sort(order.begin(), order.end(), [&](int a, int b) { return theta[a] < theta[b]; });
    const auto m = static_cast<Eigen::Index>(order.size());
    angles_.resize(m);
    edge_normals_.resize(2, m);
    for (Eigen::Index k = 0; k < m; ++k) {
      angles_[k] = theta[order[k]];
      Eigen::Matrix2d E;
      E.row(0) = V.col(order[k]).transpose();
      E.row(1) = V.col(order[(k + 1) % m]).transpose();
      edge_normals_.col(k) = E.partialPivLu().solve(Eigen::Vector2d::Ones());
    }
    return;
  }
  kind_ = Kind::halfspaces;
  if (const auto* v = std::get_if<VPolytope>(&body)) {
    A_ = v->facet_normals();
    b_ = VectorXd::Ones(A_.rows());
  } else {
    const auto& h = std::get<HPolytope>(body);
    A_ = h.normals();
    b_ = h.offsets();
  }
}

bool MembershipOracle::contains(const VectorXd& x, double tol) const {
  std::vector<char> in;
  test(x, in, tol);
  return in[0] != 0;
}

void MembershipOracle::test(const MatrixXd& X, std::vector<char>& inside, double tol) const {
  inside.assign(X.cols(), 0);
  switch (kind_) {
    case Kind::quadratic: {
      const Eigen::ArrayXd q = (X.array() * (Q_ * X).array()).colwise().sum().transpose();
      for (Eigen::Index j = 0; j < X.cols(); ++j) inside[j] = q(j) <= 1 + tol;
      break;
    }
    case Kind::halfspaces: {
      const Eigen::Index block = std::max<Eigen::Index>(64, kSlackEntries / A_.rows());
      for (Eigen::Index j0 = 0; j0 < X.cols(); j0 += block) {
        const Eigen::Index len = std::min(block, X.cols() - j0);
        const MatrixXd slack = (A_ * X.middleCols(j0, len)).colwise() - b_;
        for (Eigen::Index j = 0; j < len; ++j) inside[j0 + j] = slack.col(j).maxCoeff() <= tol;
      }
      break;
    }
    case Kind::angular: {
      const auto m = static_cast<std::ptrdiff_t>(angles_.size());
      for (Eigen::Index j = 0; j < X.cols(); ++j) {
        const double th = std::atan2(X(1, j), X(0, j));
        std::ptrdiff_t k = std::upper_bound(angles_.begin(), angles_.end(), th) - angles_.begin() - 1;
        if (k < 0) k = m - 1;
        inside[j] = edge_normals_(0, k) * X(0, j) + edge_normals_(1, k) * X(1, j) <= 1 + tol;
      }
      break;
    }
  }
}

MomentMatrix mc_second_moment(const Body& body, std::int64_t samples, std::uint64_t seed, int workers) {
  if (samples <= 0) throw GeometryError("sample count must be positive");
  const int n = dim(body);
  const MembershipOracle oracle(body);
  const VectorXd half = bounding_half_widths(body);
  const std::int64_t chunks = (samples + kChunkSize - 1) / kChunkSize;

  auto partials = detail::map_chunks<MomentPartial>(chunks, workers, [&](std::int64_t c) {
    auto g = detail::chunk_engine(seed, 1, static_cast<std::uint64_t>(c));
    MatrixXd X(n, chunk_length(samples, c));
    fill_proposals(g, half, X);
    std::vector<char> in;
    oracle.test(X, in);
    MatrixXd acc(n, std::count(in.begin(), in.end(), 1));
    for (Eigen::Index j = 0, k = 0; j < X.cols(); ++j)
      if (in[j]) acc.col(k++) = X.col(j);
    const MatrixXd sq = acc.cwiseAbs2();
    return MomentPartial{acc.cols(), acc * acc.transpose(), sq * sq.transpose()};
  });
  const auto total = detail::pairwise_reduce(std::move(partials), [](const MomentPartial& a, const MomentPartial& b) {
    return MomentPartial{a.accepted + b.accepted, a.s1 + b.s1, a.s2 + b.s2};
  });
  check_acceptance(total.accepted, samples);

  const double N = static_cast<double>(samples);
  const double vbox = box_volume(half);
  const MatrixXd mean = total.s1 / N;
  const MatrixXd var = (total.s2 / N - mean.cwiseAbs2()).cwiseMax(0.0);
  MomentMatrix m;
  m.matrix = vbox * mean;
  m.volume = vbox * static_cast<double>(total.accepted) / N;
  m.stderr_matrix = (vbox * (var / N).cwiseSqrt()).eval();
  m.samples = samples;
  m.seed = seed;
  return m;
}

VolumeEstimate mc_volume(const Body& body, std::int64_t samples, std::uint64_t seed, int workers) {
  if (samples <= 0) throw GeometryError("sample count must be positive");
  const int n = dim(body);
  const MembershipOracle oracle(body);
  const VectorXd half = bounding_half_widths(body);
  const std::int64_t chunks = (samples + kChunkSize - 1) / kChunkSize;
  auto counts = detail::map_chunks<std::int64_t>(chunks, workers, [&](std::int64_t c) {
    auto g = detail::chunk_engine(seed, 2, static_cast<std::uint64_t>(c));
    MatrixXd X(n, chunk_length(samples, c));
    fill_proposals(g, half, X);
    std::vector<char> in;
    oracle.test(X, in);
    return static_cast<std::int64_t>(std::count(in.begin(), in.end(), 1));
  });
  const std::int64_t accepted = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
  check_acceptance(accepted, samples);
  const double N = static_cast<double>(samples);
  const double p = static_cast<double>(accepted) / N;
  const double vbox = box_volume(half);
  return {vbox * p, vbox * std::sqrt(p * (1 - p) / N), samples, seed};
}

MatrixXd sample_uniform(const Body& body, std::int64_t count, std::uint64_t seed, int workers,
                        std::uint64_t stream) {
  if (count <= 0) throw GeometryError("sample count must be positive");
  const int n = dim(body);
  const MembershipOracle oracle(body);
  const VectorXd half = bounding_half_widths(body);

  MatrixXd out(n, count);
  std::int64_t have = 0, proposed = 0, next_chunk = 0;
  while (have < count) {
    const double rate = proposed > 0 ? std::max(static_cast<double>(have) / proposed, kMinAcceptance) : 0.5;
    const auto want = static_cast<std::int64_t>(std::ceil((count - have) / (rate * kChunkSize)));
    const std::int64_t batch = std::max<std::int64_t>(std::min<std::int64_t>(want, 64), workers);
    auto pieces = detail::map_chunks<MatrixXd>(batch, workers, [&](std::int64_t c) {
      auto g = detail::chunk_engine(seed, 3 + 16 * stream, static_cast<std::uint64_t>(next_chunk + c));
      MatrixXd X(n, kChunkSize);
      fill_proposals(g, half, X);
      std::vector<char> in;
      oracle.test(X, in);
      MatrixXd acc(n, std::count(in.begin(), in.end(), 1));
      for (Eigen::Index j = 0, k = 0; j < X.cols(); ++j)
        if (in[j]) acc.col(k++) = X.col(j);
      return acc;
    });
    for (const auto& p : pieces) {
      const std::int64_t take = std::min<std::int64_t>(p.cols(), count - have);
      out.middleCols(have, take) = p.leftCols(take);
      have += take;
      proposed += kChunkSize;
      if (have == count) break;
    }
    next_chunk += batch;
    if (proposed >= 16 * kChunkSize) check_acceptance(have, proposed);
  }
  return out;
}

MeasureSamples sample_measure(const Body& body, const VectorXd& u, std::int64_t count, std::uint64_t seed,
                              int workers) {
  if (count < 10000 || count % 2) throw GeometryError("measure sample count must be even and at least 1e4");
  if (u.size() != dim(body) || !(u.norm() > 0)) throw GeometryError("direction must be a nonzero vector of the body dimension");
  const VectorXd dir = u.normalized();
  const MatrixXd half = sample_uniform(body, count / 2, seed, workers);
  MeasureSamples mu;
  mu.points.resize(half.rows(), count);
  for (Eigen::Index k = 0; k < half.cols(); ++k) {
    mu.points.col(2 * k) = half.col(k);
    mu.points.col(2 * k + 1) = -half.col(k);
  }
  mu.weights = (dir.transpose() * mu.points).transpose().array().square();
  mu.direction = dir;
  mu.total = mu.weights.sum();
  mu.seed = seed;
  return mu;
}

MeasureSamples apply_map(const Map& t, const MeasureSamples& mu) {
  MeasureSamples out;
  out.points = t.matrix() * mu.points;
  out.direction = (t.inverse_transpose().matrix() * mu.direction).normalized();
  out.weights = (out.direction.transpose() * out.points).transpose().array().square();
  out.total = out.weights.sum();
  out.seed = mu.seed;
  return out;
}

BatchMean batch_mean(const VectorXd& values, int batches) {
  const Eigen::Index N = values.size();
  if (N < batches || batches < 2) throw GeometryError("batch_mean: too few values");
  VectorXd means(batches);
  for (int b = 0; b < batches; ++b) {
    const Eigen::Index lo = N * b / batches, hi = N * (b + 1) / batches;
    means(b) = values.segment(lo, hi - lo).mean();
  }
  const double mean = values.mean();
  const double var = (means.array() - means.mean()).square().sum() / (batches - 1);
  return {mean, std::sqrt(var / batches)};
}

}  // namespace convexlab
