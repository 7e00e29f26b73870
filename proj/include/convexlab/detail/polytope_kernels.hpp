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

// Low level polytope kernels: vertex enumeration of {x : A x <= b}, the planar
// convex hull used as the fast path in two dimensions, face lattice helpers and
// the pulling triangulation.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <vector>

#include "convexlab/types.hpp"

namespace convexlab::detail {

inline double binomial(int m, int k) {
  if (k < 0 || k > m) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (m - k + i) / i;
  return r;
}

/// Affine dimension of the columns of V selected by idx.
template <typename Scalar>
int affine_dim(const Matrix<Scalar>& V, const std::vector<int>& idx) {
  if (idx.size() <= 1) return 0;
  Matrix<Scalar> D(V.rows(), static_cast<Eigen::Index>(idx.size() - 1));
  for (std::size_t k = 1; k < idx.size(); ++k) D.col(k - 1) = V.col(idx[k]) - V.col(idx[0]);
  Eigen::FullPivLU<Matrix<Scalar>> lu(D);
  const Scalar scale = std::max(Scalar(1), D.cwiseAbs().maxCoeff());
  lu.setThreshold(Scalar(1e-9) / scale);
  return static_cast<int>(lu.rank());
}

/// Andrew's monotone chain. Returns column indices of the strict hull vertices
/// of the 2 x m point matrix P in counter-clockwise order.
template <typename Scalar>
std::vector<int> hull2d(const Matrix<Scalar>& P) {
  const int m = static_cast<int>(P.cols());
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (P(0, a) != P(0, b)) return P(0, a) < P(0, b);
    return P(1, a) < P(1, b);
  });
  const Scalar scale = std::max(Scalar(1), P.cwiseAbs().maxCoeff());
  const Scalar eps = Scalar(1e-14) * scale * scale;
  auto cross = [&](int o, int a, int b) {
    return (P(0, a) - P(0, o)) * (P(1, b) - P(1, o)) - (P(1, a) - P(1, o)) * (P(0, b) - P(0, o));
  };
  std::vector<int> hull(2 * m);
  int k = 0;
  for (int i = 0; i < m; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], order[i]) <= eps) --k;
    hull[k++] = order[i];
  }
  for (int i = m - 2, t = k + 1; i >= 0; --i) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], order[i]) <= eps) --k;
    hull[k++] = order[i];
  }
  hull.resize(std::max(0, k - 1));
  return hull;
}

/// Calls f(j0, A * V.middleCols(j0, w)) over column blocks of V, keeping the
/// product buffer small.
template <typename Scalar, typename F>
void blocked_product(const Matrix<Scalar>& A, const Matrix<Scalar>& V, F&& f) {
  constexpr Eigen::Index kEntries = Eigen::Index(1) << 18;
  const Eigen::Index w = std::max<Eigen::Index>(1, kEntries / std::max<Eigen::Index>(1, A.rows()));
  Matrix<Scalar> block;
  for (Eigen::Index j0 = 0; j0 < V.cols(); j0 += w) {
    const Eigen::Index cols = std::min(w, V.cols() - j0);
    block.noalias() = A * V.middleCols(j0, cols);
    f(j0, static_cast<const Matrix<Scalar>&>(block));
  }
}

/// Constraint indices i with a_i x >= b_i - tol for every column x of V.
template <typename Scalar>
std::vector<std::vector<int>> tight_sets(const Matrix<Scalar>& A, const Vector<Scalar>& b,
                                         const Matrix<Scalar>& V) {
  std::vector<std::vector<int>> sets(V.cols());
  const Vector<Scalar> lim = b.array() - Tolerance<Scalar>::tight * (1 + b.array().abs());
  blocked_product(A, V, [&](Eigen::Index j0, const Matrix<Scalar>& AV) {
    for (Eigen::Index j = 0; j < AV.cols(); ++j)
      for (Eigen::Index i = 0; i < AV.rows(); ++i)
        if (AV(i, j) >= lim(i)) sets[j0 + j].push_back(static_cast<int>(i));
  });
  return sets;
}

/// Sorted by the first coordinate for windowed inf-norm lookups.
template <typename Scalar>
class PointIndex {
 public:
  void insert(const Vector<Scalar>& x, int id) { map_.emplace(x(0), Entry{x, id}); }
  /// Some inserted id within inf-distance tol of x, or -1.
  int find(const Vector<Scalar>& x, Scalar tol) const {
    for (auto it = map_.lower_bound(x(0) - tol); it != map_.end() && it->first <= x(0) + tol; ++it)
      if ((it->second.x - x).template lpNorm<Eigen::Infinity>() <= tol) return it->second.id;
    return -1;
  }

 private:
  struct Entry {
    Vector<Scalar> x;
    int id;
  };
  std::multimap<Scalar, Entry> map_;
};

/// Vertices of {x : A x <= b} by solving every n-subset of constraints.
/// The rows of A must be unit vectors. The region must be bounded.
template <typename Scalar>
Matrix<Scalar> enumerate_vertices_bruteforce(const Matrix<Scalar>& A, const Vector<Scalar>& b) {
  const int n = static_cast<int>(A.cols());
  const int m = static_cast<int>(A.rows());
  if (binomial(m, n) * m > 4e9)
    throw GeometryError("vertex enumeration: " + std::to_string(m) +
                        " constraints is beyond the brute-force budget in dimension " +
                        std::to_string(n));
  std::vector<Vector<Scalar>> found;
  PointIndex<Scalar> index;
  std::vector<int> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  Matrix<Scalar> sub(n, n);
  Vector<Scalar> rhs(n);
  while (true) {
    for (int r = 0; r < n; ++r) {
      sub.row(r) = A.row(pick[r]);
      rhs(r) = b(pick[r]);
    }
    Eigen::PartialPivLU<Matrix<Scalar>> lu(sub);
    if (std::abs(lu.determinant()) > Tolerance<Scalar>::singular) {
      const Vector<Scalar> x = lu.solve(rhs);
      const Scalar tol = Tolerance<Scalar>::feasibility * (1 + x.template lpNorm<Eigen::Infinity>());
      if (((A * x) - b).maxCoeff() <= tol) {
        const Scalar dtol = Tolerance<Scalar>::dedup * (1 + x.template lpNorm<Eigen::Infinity>());
        if (index.find(x, dtol) < 0) {
          index.insert(x, static_cast<int>(found.size()));
          found.push_back(x);
        }
      }
    }
    int i = n - 1;
    while (i >= 0 && pick[i] == m - n + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  Matrix<Scalar> V(n, static_cast<Eigen::Index>(found.size()));
  for (std::size_t k = 0; k < found.size(); ++k) V.col(k) = found[k];
  return V;
}

/// Vertices of {x : A x <= b}; unit rows, bounded region. In the plane with
/// the origin interior (all b > 0) the vertices come from the hull of the
/// dual points a_i / b_i, otherwise every n-subset is tried.
template <typename Scalar>
Matrix<Scalar> enumerate_vertices(const Matrix<Scalar>& A, const Vector<Scalar>& b) {
  if (A.cols() == 2 && b.minCoeff() > 0) {
    Matrix<Scalar> dual(2, A.rows());
    for (Eigen::Index i = 0; i < A.rows(); ++i) dual.col(i) = A.row(i).transpose() / b(i);
    const std::vector<int> h = hull2d(dual);
    if (h.size() < 3) throw GeometryError("vertex enumeration: unbounded region");
    // The origin must be strictly inside the dual hull, otherwise the primal is unbounded.
    for (std::size_t k = 0; k < h.size(); ++k) {
      const auto p = dual.col(h[k]);
      const auto q = dual.col(h[(k + 1) % h.size()]);
      if (p(0) * q(1) - p(1) * q(0) <= Scalar(1e-14)) throw GeometryError("vertex enumeration: unbounded region");
    }
    Matrix<Scalar> V(2, static_cast<Eigen::Index>(h.size()));
    for (std::size_t k = 0; k < h.size(); ++k) {
      Eigen::Matrix<Scalar, 2, 2> M;
      M.row(0) = dual.col(h[k]).transpose();
      M.row(1) = dual.col(h[(k + 1) % h.size()]).transpose();
      V.col(k) = M.partialPivLu().solve(Eigen::Matrix<Scalar, 2, 1>::Ones());
    }
    return V;
  }
  return enumerate_vertices_bruteforce(A, b);
}

/// Facets as vertex index sets: constraint-wise tight sets of affine
/// dimension n - 1, deduplicated.
template <typename Scalar>
std::vector<std::vector<int>> facet_sets(const Matrix<Scalar>& A, const Vector<Scalar>& b,
                                         const Matrix<Scalar>& V) {
  const int n = static_cast<int>(V.rows());
  const auto tight = tight_sets(A, b, V);
  std::vector<std::vector<int>> by_constraint(A.rows());
  for (std::size_t j = 0; j < tight.size(); ++j)
    for (int i : tight[j]) by_constraint[i].push_back(static_cast<int>(j));
  std::vector<std::vector<int>> facets;
  std::map<std::vector<int>, int> seen;
  for (auto& f : by_constraint) {
    if (static_cast<int>(f.size()) < n || seen.count(f) || affine_dim(V, f) != n - 1) continue;
    seen.emplace(f, 0);
    facets.push_back(std::move(f));
  }
  return facets;
}

inline std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Pulling triangulation of the face `face` (sorted vertex indices, affine
/// dimension d). Faces of lower dimension are intersections with `facets`.
/// Appends simplices (d + 1 vertex indices each) to `out`.
template <typename Scalar>
void pull_triangulate(const Matrix<Scalar>& V, const std::vector<int>& face, int d,
                      const std::vector<std::vector<int>>& facets,
                      std::vector<std::vector<int>>& out) {
  if (static_cast<int>(face.size()) == d + 1 || d == 0) {
    out.push_back(face);
    return;
  }
  const int apex = face.front();
  std::vector<std::vector<int>> subfaces;
  for (const auto& g : facets) {
    auto r = sorted_intersection(face, g);
    if (static_cast<int>(r.size()) < d || std::binary_search(r.begin(), r.end(), apex)) continue;
    if (affine_dim(V, r) != d - 1) continue;
    if (std::find(subfaces.begin(), subfaces.end(), r) == subfaces.end()) subfaces.push_back(std::move(r));
  }
  if (subfaces.empty()) throw GeometryError("triangulation: degenerate face");
  for (const auto& r : subfaces) {
    std::vector<std::vector<int>> sub;
    pull_triangulate(V, r, d - 1, facets, sub);
    for (auto& s : sub) {
      s.insert(s.begin(), apex);
      out.push_back(std::move(s));
    }
  }
}

}  // namespace convexlab::detail
