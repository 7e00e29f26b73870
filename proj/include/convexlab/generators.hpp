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

#include <cstdint>

#include "convexlab/geometry.hpp"

namespace convexlab {

/// conv(±{p_k}), p_k = r_k s_k with s_k uniform on the sphere and r_k ~ U(0.5, 1);
/// `verts` counts both signs.
VPolytope random_symmetric_polytope(int n, int verts, std::uint64_t seed);

VPolytope cube(int n, double half_side = 1);
VPolytope cross_polytope(int n, double radius = 1);

/// Inscribed polytope of the unit ball: regular polygon in the plane,
/// otherwise ± a spherical Fibonacci (n = 3) or random (n = 4) point set.
VPolytope ball_approx(int n, int verts, std::uint64_t seed);

/// Gaussian matrix with condition number below max_cond.
Map random_linear_map(int n, std::uint64_t seed, double max_cond = 20);

/// Image T B_2^n of the unit ball under random_linear_map.
EllipsoidD random_ellipsoid(int n, std::uint64_t seed);

/// Uniform point on S^{n-1}.
VectorXd random_direction(int n, std::uint64_t seed);

}  // namespace convexlab
