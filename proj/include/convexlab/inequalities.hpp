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

// Deficits rhs - lhs for the Santalo, Ball, directional, cone-restricted and
// Prekopa-Leindler inequalities, plus the identities tying them together.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "convexlab/geometry.hpp"
#include "convexlab/isotropic.hpp"
#include "convexlab/sampling.hpp"
#include "convexlab/yaoyao.hpp"

namespace convexlab {

inline constexpr double kExactTolerance = 1e-8;
inline constexpr double kMcSigmas = 4;

enum class Method { exact, mc };
/// le: lhs <= rhs is asserted; eq: lhs = rhs is asserted.
enum class Relation { le, eq };

struct DeficitReport {
  std::string name;
  double lhs{};
  double rhs{};
  double deficit{};  // rhs - lhs
  double tolerance{};
  Method method = Method::exact;
  Relation relation = Relation::le;
  std::uint64_t seed{};
  std::int64_t samples{};

  bool passed() const {
    return relation == Relation::le ? deficit >= -tolerance : std::abs(deficit) <= tolerance;
  }
};

const char* method_name(Method m);
const char* relation_name(Relation r);

DeficitReport make_report(std::string name, double lhs, double rhs, double tolerance, Method method);

/// omega_n^2 - |K| |K°|.
DeficitReport santalo_deficit(const Body& k);
DeficitReport santalo_deficit_mc(const Body& k, std::int64_t samples, std::uint64_t seed, int workers = 1);

/// n (omega_n / (n + 2))^2 - tr M(K) M(K°).
DeficitReport ball_deficit(const Body& k);
DeficitReport ball_deficit_mc(const Body& k, std::int64_t samples, std::uint64_t seed, int workers = 1);

/// (omega_n / (n + 2))^2 - u'M(K)u u'M(K°)u. Requires a certificate showing
/// that K or K° is isotropic; the claim is re-checked on exact moments.
DeficitReport directional_deficit(const Body& k, const VectorXd& u, const IsotropicCertificate* cert,
                                  double iso_tol = 1e-8);

/// 2^{-2n} (omega_n / (n + 2))^2 - int_{A cap K} <x,u>^2 int_{A* cap K°} <x,u>^2
/// by uniform sampling of K and K°; u must span a generator of A.
DeficitReport cone_restricted_deficit(const Body& k, const VectorXd& u, const Cone& a, std::int64_t samples,
                                      std::uint64_t seed, int workers = 1);

struct ConeCheck {
  std::vector<DeficitReport> cones;  // one per cone of the partition
  DeficitReport decomposition;       // 2^n sum_B I_B J_{B*} against the exact product
  VectorXd primal;                   // I_B
  VectorXd dual;                     // J_{B*}
};

/// Partition of k based on p.u with p.v = p.u (the sheared frame), mu the
/// measure cloud the partition was built from. The primal integrals come from
/// mu, the polar ones from polar_samples fresh points of k°.
ConeCheck cone_restricted_check(const Body& k, const MeasureSamples& mu, const YaoYaoPartition& p,
                                std::int64_t polar_samples, std::uint64_t seed, int workers = 1);

struct PlCheck {
  DeficitReport deficit;  // (int h)^2 - int f int g
  std::int64_t pairs{};
  double min_midpoint_margin{};  // min h((s+t)/2) - sqrt(f(s) g(t)), relative
  double max_mean_norm{};        // max |(x * y)^{1/2}|
  bool hypothesis_holds{};
  bool containment_holds{};

  bool passed() const { return deficit.passed() && hypothesis_holds && containment_holds; }
};

/// X = R^n_+ cap x_body and Y = R^n_+ cap y_body with <x, y> <= 1; i is the
/// coordinate. Throws if a sampled pair violates <x, y> <= 1 by more than 1e-9.
PlCheck pl_triple_check(const Body& x_body, const Body& y_body, int i, std::int64_t pairs, std::uint64_t seed,
                        int workers = 1);

/// int_{R^n_+ cap K} x_i^2 dx, exact for polytopes and unconditional ellipsoids.
double orthant_moment(const Body& k, int i);

struct ChainCheck {
  DeficitReport inequality;  // (|K||K°|)^{(n+2)/n} <= gamma_n^2 tr M(K) tr M(K°)
  double identity_rel_error{};  // |tr M(K) tr M(K°) - n B(K)| / (n B(K))
};

/// For isotropic K; throws otherwise.
ChainCheck chain_check(const Body& k, double iso_tol = 1e-8);

/// u'M(K)u u'M(K°)u against the same product for T K, T the shear taking v to
/// the u axis; K° must be isotropic.
DeficitReport shear_monotonicity(const Body& k, const VectorXd& u, const VectorXd& v);

}  // namespace convexlab
