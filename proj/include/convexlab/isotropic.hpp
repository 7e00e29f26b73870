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

#include "convexlab/geometry.hpp"
#include "convexlab/moments.hpp"

namespace convexlab {

enum class Normalization { none, volume };
enum class IsotropicTarget { self, polar };

struct IsotropicCertificate {
  Map map = Map::identity(2);
  double off_diag_rel{};    // max_{i != j} |M_ij| / M_11 after the map
  double diag_spread_rel{};  // (max_i M_ii - min_i M_ii) / M_11
  double volume_after{};
  IsotropicTarget target = IsotropicTarget::self;
  Normalization normalization = Normalization::none;
};

struct IsotropicResult {
  Map map = Map::identity(2);  // applied to K
  Body body;                   // T K
  IsotropicCertificate certificate;
};

/// With M the moment matrix of the target (K or K°), S = c M^{-1/2} makes the
/// target isotropic. For target = self T = S; for target = polar T = S^{-t},
/// so that (T K)° = S K°. normalize = none fixes det S = 1, volume fixes
/// |S target| = omega_n.
IsotropicResult isotropize(const Body& k, Normalization normalize, IsotropicTarget target);

/// Certificate entries for a moment matrix.
void certify(const MomentMatrix& m, IsotropicCertificate& cert);

struct SandwichRadii {
  double r_in{};
  double r_out{};
  bool holds{};  // 1/n <= r_in and r_out <= n
};

/// Inscribed and circumscribed centered-ball radii of an isotropic body of
/// volume omega_n; throws if the body is not in that position.
SandwichRadii kls_sandwich_check(const Body& l, double iso_tol = 1e-8, double volume_tol = 1e-6);

double inradius(const Body& k);
double circumradius(const Body& k);

}  // namespace convexlab
