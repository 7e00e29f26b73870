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

// Symmetric convex bodies (vertex polytopes, halfspace polytopes, ellipsoids),
// linear maps, simplicial cones and the operations between them: polarity,
// linear images, support and radial functions, triangulation.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "convexlab/detail/polytope_kernels.hpp"
#include "convexlab/detail/support_lp.hpp"
#include "convexlab/types.hpp"

namespace convexlab {

template <typename Scalar>
class LinearMap {
 public:
  explicit LinearMap(Matrix<Scalar> matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols()) throw GeometryError("linear map must be square");
    if (!matrix_.allFinite()) throw GeometryError("linear map has non-finite entries");
    det_ = matrix_.determinant();
    if (std::abs(det_) <= Tolerance<Scalar>::singular) throw GeometryError("singular linear map");
  }

  static LinearMap identity(int n) { return LinearMap(Matrix<Scalar>::Identity(n, n)); }

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix<Scalar>& matrix() const { return matrix_; }
  Scalar determinant() const { return det_; }

  LinearMap inverse() const { return LinearMap(matrix_.inverse()); }
  LinearMap inverse_transpose() const { return LinearMap(matrix_.inverse().transpose()); }
  LinearMap transpose() const { return LinearMap(matrix_.transpose()); }

  template <typename Derived>
  auto operator()(const Eigen::MatrixBase<Derived>& x) const {
    return (matrix_ * x).eval();
  }

  friend LinearMap operator*(const LinearMap& a, const LinearMap& b) {
    return LinearMap(a.matrix_ * b.matrix_);
  }

 private:
  Matrix<Scalar> matrix_;
  Scalar det_{};
};

/// A centrally symmetric polytope given by its vertices (columns). The facet
/// normals w (rows, <w, x> <= 1 on the body) are the vertices of the polar and
/// are computed on construction; non-extreme input points are discarded.
template <typename Scalar>
class SymmetricVPolytope {
 public:
  explicit SymmetricVPolytope(const Matrix<Scalar>& points) {
    const int n = static_cast<int>(points.rows());
    require_dim(n);
    if (!points.allFinite()) throw GeometryError("polytope has non-finite coordinates");
    if (points.cols() < 2 * n)
      throw GeometryError("symmetric polytope needs at least " + std::to_string(2 * n) + " vertices");
    check_symmetric(points);

    std::vector<int> nonzero;
    for (Eigen::Index k = 0; k < points.cols(); ++k)
      if (points.col(k).norm() > Tolerance<Scalar>::singular) nonzero.push_back(static_cast<int>(k));
    Matrix<Scalar> P(n, static_cast<Eigen::Index>(nonzero.size()));
    for (std::size_t k = 0; k < nonzero.size(); ++k) P.col(k) = points.col(nonzero[k]);
    {
      Eigen::FullPivLU<Matrix<Scalar>> lu(P);
      lu.setThreshold(Scalar(1e-10));
      if (lu.rank() < n) throw GeometryError("unbounded polar: origin is not interior to the hull");
    }

    Matrix<Scalar> A(P.cols(), n);
    Vector<Scalar> b(P.cols());
    for (Eigen::Index k = 0; k < P.cols(); ++k) {
      const Scalar r = P.col(k).norm();
      A.row(k) = P.col(k).transpose() / r;
      b(k) = 1 / r;
    }
    const Matrix<Scalar> W = detail::enumerate_vertices(A, b);
    normals_ = W.transpose();

    // Keep points that are tight on n independent facets, drop duplicates.
    std::vector<std::vector<int>> tight(P.cols());
    detail::blocked_product(normals_, P, [&](Eigen::Index k0, const Matrix<Scalar>& WP) {
      for (Eigen::Index k = 0; k < WP.cols(); ++k)
        for (Eigen::Index j = 0; j < WP.rows(); ++j)
          if (WP(j, k) >= 1 - Tolerance<Scalar>::tight) tight[k0 + k].push_back(static_cast<int>(j));
    });
    std::vector<int> keep;
    detail::PointIndex<Scalar> kept;
    for (Eigen::Index k = 0; k < P.cols(); ++k) {
      const std::vector<int>& on = tight[k];
      if (static_cast<int>(on.size()) < n) continue;
      Matrix<Scalar> Wt(n, static_cast<Eigen::Index>(on.size()));
      for (std::size_t j = 0; j < on.size(); ++j) Wt.col(j) = normals_.row(on[j]).transpose();
      Eigen::FullPivLU<Matrix<Scalar>> lu(Wt);
      lu.setThreshold(Scalar(1e-9));
      if (lu.rank() < n) continue;
      const Vector<Scalar> x = P.col(k);
      if (kept.find(x, Tolerance<Scalar>::dedup * (1 + x.template lpNorm<Eigen::Infinity>())) >= 0) continue;
      kept.insert(x, static_cast<int>(k));
      keep.push_back(static_cast<int>(k));
    }
    vertices_.resize(n, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) vertices_.col(k) = P.col(keep[k]);
    build_facets();
  }

  /// Trusted constructor from a known vertex / facet-normal pair.
  static SymmetricVPolytope from_dual_pair(Matrix<Scalar> vertices, Matrix<Scalar> facet_normals) {
    SymmetricVPolytope p;
    p.vertices_ = std::move(vertices);
    p.normals_ = std::move(facet_normals);
    p.build_facets();
    return p;
  }

  int dim() const { return static_cast<int>(vertices_.rows()); }
  const Matrix<Scalar>& vertices() const { return vertices_; }
  const Matrix<Scalar>& facet_normals() const { return normals_; }
  const std::vector<std::vector<int>>& facets() const { return facets_; }

 private:
  SymmetricVPolytope() = default;

  static void check_symmetric(const Matrix<Scalar>& P) {
    const Scalar scale = std::max(Scalar(1), P.cwiseAbs().maxCoeff());
    detail::PointIndex<Scalar> index;
    for (Eigen::Index k = 0; k < P.cols(); ++k) index.insert(P.col(k), static_cast<int>(k));
    for (Eigen::Index k = 0; k < P.cols(); ++k) {
      if (index.find(-P.col(k), Tolerance<Scalar>::symmetry * scale) < 0) throw GeometryError("polytope is not centrally symmetric (vertex " + std::to_string(k) + ")");
    }
  }

  void build_facets() {
    const int n = dim();
    facets_.assign(normals_.rows(), {});
    detail::blocked_product(normals_, vertices_, [&](Eigen::Index k0, const Matrix<Scalar>& WV) {
      for (Eigen::Index k = 0; k < WV.cols(); ++k)
        for (Eigen::Index j = 0; j < WV.rows(); ++j)
          if (WV(j, k) >= 1 - Tolerance<Scalar>::tight) facets_[j].push_back(static_cast<int>(k0 + k));
    });
    for (Eigen::Index j = 0; j < normals_.rows(); ++j) {
      if (static_cast<int>(facets_[j].size()) < n || detail::affine_dim(vertices_, facets_[j]) != n - 1)
        throw GeometryError("degenerate facet " + std::to_string(j));
    }
  }

  Matrix<Scalar> vertices_;
  Matrix<Scalar> normals_;
  std::vector<std::vector<int>> facets_;
};

/// A centrally symmetric polytope {x : <u_i, x> <= c_i}, unit normals as rows.
template <typename Scalar>
class SymmetricHPolytope {
 public:
  SymmetricHPolytope(const Matrix<Scalar>& normals, const Vector<Scalar>& offsets) {
    const int n = static_cast<int>(normals.cols());
    require_dim(n);
    if (normals.rows() != offsets.size()) throw GeometryError("normals and offsets differ in length");
    if (!normals.allFinite() || !offsets.allFinite()) throw GeometryError("non-finite halfspace data");
    normals_ = normals;
    offsets_ = offsets;
    for (Eigen::Index i = 0; i < normals_.rows(); ++i) {
      const Scalar r = normals_.row(i).norm();
      if (r <= Tolerance<Scalar>::singular) throw GeometryError("zero halfspace normal");
      normals_.row(i) /= r;
      offsets_(i) /= r;
      if (!(offsets_(i) > 0)) throw GeometryError("halfspace offsets must be positive");
    }
    antipode_.assign(normals_.rows(), -1);
    std::multimap<Scalar, int> by_first;
    for (Eigen::Index j = 0; j < normals_.rows(); ++j) by_first.emplace(normals_(j, 0), static_cast<int>(j));
    const Scalar tol = Tolerance<Scalar>::symmetry;
    for (Eigen::Index i = 0; i < normals_.rows(); ++i) {
      for (auto it = by_first.lower_bound(-normals_(i, 0) - tol);
           it != by_first.end() && it->first <= -normals_(i, 0) + tol; ++it) {
        const int j = it->second;
        if ((normals_.row(i) + normals_.row(j)).template lpNorm<Eigen::Infinity>() <= tol &&
            std::abs(offsets_(i) - offsets_(j)) <= tol * std::max(Scalar(1), offsets_(i))) {
          antipode_[i] = j;
          break;
        }
      }
      if (antipode_[i] < 0) throw GeometryError("halfspace set is not closed under negation");
    }
    Eigen::FullPivLU<Matrix<Scalar>> lu(normals_);
    lu.setThreshold(Scalar(1e-10));
    if (lu.rank() < n) throw GeometryError("unbounded halfspace polytope: normals do not span");
  }

  int dim() const { return static_cast<int>(normals_.cols()); }
  const Matrix<Scalar>& normals() const { return normals_; }
  const Vector<Scalar>& offsets() const { return offsets_; }
  const std::vector<int>& antipodes() const { return antipode_; }

 private:
  Matrix<Scalar> normals_;
  Vector<Scalar> offsets_;
  std::vector<int> antipode_;
};

/// Origin symmetric ellipsoid {x : x' Q x <= 1}.
template <typename Scalar>
class Ellipsoid {
 public:
  explicit Ellipsoid(Matrix<Scalar> shape) : shape_(std::move(shape)) {
    require_dim(static_cast<int>(shape_.rows()));
    if (shape_.rows() != shape_.cols()) throw GeometryError("ellipsoid shape must be square");
    if (!shape_.allFinite()) throw GeometryError("ellipsoid shape has non-finite entries");
    const Scalar scale = shape_.cwiseAbs().maxCoeff();
    if ((shape_ - shape_.transpose()).cwiseAbs().maxCoeff() > Tolerance<Scalar>::symmetry * scale)
      throw GeometryError("ellipsoid shape is not symmetric");
    shape_ = (shape_ + shape_.transpose()) / 2;
    Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(shape_);
    if (!(es.eigenvalues().minCoeff() > 0)) throw GeometryError("ellipsoid shape is not positive definite");
  }

  static Ellipsoid ball(int n, Scalar radius = 1) {
    return Ellipsoid(Matrix<Scalar>::Identity(n, n) / (radius * radius));
  }

  int dim() const { return static_cast<int>(shape_.rows()); }
  const Matrix<Scalar>& shape() const { return shape_; }

 private:
  Matrix<Scalar> shape_;
};

/// pos{g_1, ..., g_n} with apex at the origin; generators are columns.
template <typename Scalar>
class SimplicialCone {
 public:
  explicit SimplicialCone(Matrix<Scalar> generators) : generators_(std::move(generators)) {
    if (generators_.rows() != generators_.cols()) throw GeometryError("cone needs n generators in R^n");
    Matrix<Scalar> unit = generators_;
    for (Eigen::Index j = 0; j < unit.cols(); ++j) {
      const Scalar r = unit.col(j).norm();
      if (r <= Tolerance<Scalar>::singular) throw GeometryError("zero cone generator");
      unit.col(j) /= r;
    }
    if (std::abs(unit.determinant()) <= Tolerance<Scalar>::singular)
      throw GeometryError("cone generators are linearly dependent");
    inverse_ = generators_.inverse();
  }

  int dim() const { return static_cast<int>(generators_.rows()); }
  const Matrix<Scalar>& generators() const { return generators_; }

  /// Coordinates of x in the generator basis.
  template <typename Derived>
  auto coordinates(const Eigen::MatrixBase<Derived>& x) const {
    return (inverse_ * x).eval();
  }

  bool contains(const Vector<Scalar>& x, Scalar tol = 0) const {
    return coordinates(x).minCoeff() >= -tol;
  }

 private:
  Matrix<Scalar> generators_;
  Matrix<Scalar> inverse_;
};

template <typename Scalar>
using BodyT = std::variant<SymmetricVPolytope<Scalar>, SymmetricHPolytope<Scalar>, Ellipsoid<Scalar>>;
using Body = BodyT<double>;
using VPolytope = SymmetricVPolytope<double>;
using HPolytope = SymmetricHPolytope<double>;
using EllipsoidD = Ellipsoid<double>;
using Cone = SimplicialCone<double>;
using Map = LinearMap<double>;

// ---------------------------------------------------------------------------
// Polarity, vertex enumeration, linear images

template <typename Scalar>
SymmetricVPolytope<Scalar> polar(const SymmetricVPolytope<Scalar>& k) {
  return SymmetricVPolytope<Scalar>::from_dual_pair(k.facet_normals().transpose(), k.vertices().transpose());
}

template <typename Scalar>
SymmetricVPolytope<Scalar> polar(const SymmetricHPolytope<Scalar>& h) {
  Matrix<Scalar> pts = h.normals().transpose();
  for (Eigen::Index i = 0; i < pts.cols(); ++i) pts.col(i) /= h.offsets()(i);
  return SymmetricVPolytope<Scalar>(pts);
}

template <typename Scalar>
Ellipsoid<Scalar> polar(const Ellipsoid<Scalar>& e) {
  return Ellipsoid<Scalar>(e.shape().inverse());
}

template <typename Scalar>
BodyT<Scalar> polar(const BodyT<Scalar>& body) {
  return std::visit([](const auto& b) -> BodyT<Scalar> { return polar(b); }, body);
}

/// Exact vertex set of a symmetric H-polytope.
template <typename Scalar>
SymmetricVPolytope<Scalar> vertex_enumeration(const SymmetricHPolytope<Scalar>& h) {
  const Matrix<Scalar>& A = h.normals();
  const Vector<Scalar>& b = h.offsets();
  const Matrix<Scalar> V = detail::enumerate_vertices(A, b);
  const auto facets = detail::facet_sets(A, b, V);
  // One facet normal per distinct facet: the constraint whose tight set it is.
  const auto tight = detail::tight_sets(A, b, V);
  std::vector<std::vector<int>> by_constraint(A.rows());
  for (std::size_t j = 0; j < tight.size(); ++j)
    for (int i : tight[j]) by_constraint[i].push_back(static_cast<int>(j));
  std::map<std::vector<int>, Eigen::Index> first;
  for (Eigen::Index i = A.rows() - 1; i >= 0; --i) first[by_constraint[i]] = i;
  Matrix<Scalar> W(static_cast<Eigen::Index>(facets.size()), A.cols());
  for (std::size_t f = 0; f < facets.size(); ++f) {
    const Eigen::Index i = first.at(facets[f]);
    W.row(f) = A.row(i) / b(i);
  }
  return SymmetricVPolytope<Scalar>::from_dual_pair(V, W);
}

template <typename Scalar>
SymmetricVPolytope<Scalar> apply_map(const LinearMap<Scalar>& t, const SymmetricVPolytope<Scalar>& k) {
  if (t.dim() != k.dim()) throw GeometryError("map and body dimensions differ");
  return SymmetricVPolytope<Scalar>::from_dual_pair(t.matrix() * k.vertices(),
                                                    k.facet_normals() * t.matrix().inverse());
}

template <typename Scalar>
SymmetricHPolytope<Scalar> apply_map(const LinearMap<Scalar>& t, const SymmetricHPolytope<Scalar>& h) {
  if (t.dim() != h.dim()) throw GeometryError("map and body dimensions differ");
  // <u, T^{-1} x> <= c   <=>   <T^{-t} u, x> <= c ; the constructor renormalises.
  return SymmetricHPolytope<Scalar>(h.normals() * t.matrix().inverse(), h.offsets());
}

template <typename Scalar>
Ellipsoid<Scalar> apply_map(const LinearMap<Scalar>& t, const Ellipsoid<Scalar>& e) {
  if (t.dim() != e.dim()) throw GeometryError("map and body dimensions differ");
  const Matrix<Scalar> inv = t.matrix().inverse();
  return Ellipsoid<Scalar>(inv.transpose() * e.shape() * inv);
}

template <typename Scalar>
BodyT<Scalar> apply_map(const LinearMap<Scalar>& t, const BodyT<Scalar>& body) {
  return std::visit([&](const auto& b) -> BodyT<Scalar> { return apply_map(t, b); }, body);
}

// ---------------------------------------------------------------------------
// Support, radial function, membership

template <typename Scalar>
int dim(const BodyT<Scalar>& body) {
  return std::visit([](const auto& b) { return b.dim(); }, body);
}

inline const char* kind_name(const Body& body) {
  switch (body.index()) {
    case 0: return "v-polytope";
    case 1: return "h-polytope";
    default: return "ellipsoid";
  }
}

template <typename Scalar>
Scalar support(const SymmetricVPolytope<Scalar>& k, const Vector<Scalar>& u) {
  return (k.vertices().transpose() * u).maxCoeff();
}

template <typename Scalar>
Scalar support(const SymmetricHPolytope<Scalar>& h, const Vector<Scalar>& u) {
  return u.dot(detail::support_point_lp(h.normals(), h.offsets(), h.antipodes(), u));
}

template <typename Scalar>
Scalar support(const Ellipsoid<Scalar>& e, const Vector<Scalar>& u) {
  return std::sqrt(u.dot(e.shape().ldlt().solve(u)));
}

template <typename Scalar>
Scalar support(const BodyT<Scalar>& body, const Vector<Scalar>& u) {
  return std::visit([&](const auto& b) { return support(b, u); }, body);
}

/// sup{s >= 0 : s u in K}.
template <typename Scalar>
Scalar radial(const SymmetricVPolytope<Scalar>& k, const Vector<Scalar>& u) {
  return 1 / (k.facet_normals() * u).maxCoeff();
}

template <typename Scalar>
Scalar radial(const SymmetricHPolytope<Scalar>& h, const Vector<Scalar>& u) {
  const Vector<Scalar> proj = h.normals() * u;
  Scalar r = std::numeric_limits<Scalar>::infinity();
  for (Eigen::Index i = 0; i < proj.size(); ++i)
    if (proj(i) > 0) r = std::min(r, h.offsets()(i) / proj(i));
  return r;
}

template <typename Scalar>
Scalar radial(const Ellipsoid<Scalar>& e, const Vector<Scalar>& u) {
  return 1 / std::sqrt(u.dot(e.shape() * u));
}

template <typename Scalar>
Scalar radial(const BodyT<Scalar>& body, const Vector<Scalar>& u) {
  return std::visit([&](const auto& b) { return radial(b, u); }, body);
}

template <typename Scalar>
bool contains(const SymmetricVPolytope<Scalar>& k, const Vector<Scalar>& x, Scalar tol = 0) {
  return (k.facet_normals() * x).maxCoeff() <= 1 + tol;
}

template <typename Scalar>
bool contains(const SymmetricHPolytope<Scalar>& h, const Vector<Scalar>& x, Scalar tol = 0) {
  return (h.normals() * x - h.offsets()).maxCoeff() <= tol;
}

template <typename Scalar>
bool contains(const Ellipsoid<Scalar>& e, const Vector<Scalar>& x, Scalar tol = 0) {
  return x.dot(e.shape() * x) <= 1 + tol;
}

template <typename Scalar>
bool contains(const BodyT<Scalar>& body, const Vector<Scalar>& x, Scalar tol = 0) {
  return std::visit([&](const auto& b) { return contains(b, x, tol); }, body);
}

/// Half-widths h_K(e_j) of the symmetric bounding box.
template <typename Scalar>
Vector<Scalar> bounding_half_widths(const BodyT<Scalar>& body) {
  const int n = dim(body);
  Vector<Scalar> h(n);
  for (int j = 0; j < n; ++j) h(j) = support(body, Vector<Scalar>(Vector<Scalar>::Unit(n, j)));
  return h;
}

template <typename Scalar>
Scalar circumradius(const SymmetricVPolytope<Scalar>& k) {
  return k.vertices().colwise().norm().maxCoeff();
}

template <typename Scalar>
Scalar inradius(const SymmetricVPolytope<Scalar>& k) {
  return 1 / k.facet_normals().rowwise().norm().maxCoeff();
}

// ---------------------------------------------------------------------------
// Triangulation and volume

/// Simplices {o, facet simplex} tiling K; each is n x (n + 1) with column 0 = o.
template <typename Scalar>
std::vector<Matrix<Scalar>> star_triangulation(const SymmetricVPolytope<Scalar>& k) {
  const int n = k.dim();
  std::vector<Matrix<Scalar>> out;
  for (const auto& facet : k.facets()) {
    if (detail::affine_dim(k.vertices(), facet) != n - 1) throw GeometryError("degenerate facet");
    std::vector<std::vector<int>> pieces;
    detail::pull_triangulate(k.vertices(), facet, n - 1, k.facets(), pieces);
    for (const auto& s : pieces) {
      Matrix<Scalar> simplex = Matrix<Scalar>::Zero(n, n + 1);
      for (int j = 0; j < n; ++j) simplex.col(j + 1) = k.vertices().col(s[j]);
      out.push_back(std::move(simplex));
    }
  }
  return out;
}

/// Volume of the simplex with vertex columns v_0..v_n.
template <typename Scalar>
Scalar simplex_volume(const Matrix<Scalar>& simplex) {
  const int n = static_cast<int>(simplex.rows());
  Matrix<Scalar> D(n, n);
  for (int j = 0; j < n; ++j) D.col(j) = simplex.col(j + 1) - simplex.col(0);
  Scalar fact = 1;
  for (int j = 2; j <= n; ++j) fact *= j;
  return std::abs(D.determinant()) / fact;
}

template <typename Scalar>
Scalar volume(const SymmetricVPolytope<Scalar>& k) {
  Scalar v = 0;
  for (const auto& s : star_triangulation(k)) v += simplex_volume(s);
  return v;
}

template <typename Scalar>
Scalar volume(const SymmetricHPolytope<Scalar>& h) {
  return volume(vertex_enumeration(h));
}

template <typename Scalar>
Scalar volume(const Ellipsoid<Scalar>& e) {
  return unit_ball_volume<Scalar>(e.dim()) / std::sqrt(e.shape().determinant());
}

template <typename Scalar>
Scalar volume(const BodyT<Scalar>& body) {
  return std::visit([](const auto& b) { return volume(b); }, body);
}

// ---------------------------------------------------------------------------
// Cones

/// A* = {y : <x, y> >= 0 for all x in A}: the dual basis.
template <typename Scalar>
SimplicialCone<Scalar> dual_cone(const SimplicialCone<Scalar>& a) {
  return SimplicialCone<Scalar>(a.generators().inverse().transpose());
}

/// Convex polytope {x : A x <= b} (not necessarily symmetric) with its
/// vertices and facets, used for pieces such as K cut by an orthant.
template <typename Scalar>
struct ConvexPolytope {
  Matrix<Scalar> vertices;
  std::vector<std::vector<int>> facets;
};

template <typename Scalar>
ConvexPolytope<Scalar> halfspace_polytope(Matrix<Scalar> A, Vector<Scalar> b) {
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    const Scalar r = A.row(i).norm();
    A.row(i) /= r;
    b(i) /= r;
  }
  ConvexPolytope<Scalar> p;
  p.vertices = detail::enumerate_vertices_bruteforce(A, b);
  if (p.vertices.cols() < A.cols() + 1) throw GeometryError("halfspace polytope is lower dimensional");
  p.facets = detail::facet_sets(A, b, p.vertices);
  return p;
}

/// Pulling triangulation; each simplex is n x (n + 1).
template <typename Scalar>
std::vector<Matrix<Scalar>> triangulate(const ConvexPolytope<Scalar>& p) {
  const int n = static_cast<int>(p.vertices.rows());
  std::vector<int> all(p.vertices.cols());
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::vector<int>> pieces;
  detail::pull_triangulate(p.vertices, all, n, p.facets, pieces);
  std::vector<Matrix<Scalar>> out;
  for (const auto& s : pieces) {
    Matrix<Scalar> simplex(n, n + 1);
    for (int j = 0; j <= n; ++j) simplex.col(j) = p.vertices.col(s[j]);
    out.push_back(std::move(simplex));
  }
  return out;
}

}  // namespace convexlab
