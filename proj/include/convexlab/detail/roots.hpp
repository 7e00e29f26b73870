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

#include <cmath>
#include <functional>
#include <string>

#include "convexlab/types.hpp"

namespace convexlab::detail {

struct RootReport {
  int iterations = 0;
  double residual = 0;
  bool converged = false;
};

/// Root of a continuous non-increasing g, bracketed by expansion from x0 and
/// refined by the Illinois variant of regula falsi. Stops when done(x) holds,
/// g(x) == 0, or the bracket is narrower than xtol.
inline double decreasing_root(const std::function<double(double)>& g, double x0, double xtol, int max_iter,
                              RootReport& report, const std::function<bool(double)>& done = {}) {
  report = {};
  double lo = x0, hi = x0;
  double glo = g(x0), ghi = glo;
  ++report.iterations;
  if (glo == 0 || (done && done(x0))) {
    report.converged = true;
    return x0;
  }
  double step = 1;
  if (glo > 0) {
    while (ghi > 0) {
      lo = hi, glo = ghi;
      hi = x0 + step;
      ghi = g(hi);
      step *= 2;
      if (++report.iterations > max_iter || step > 1e8) throw ConvergenceError("root bracket not found");
    }
  } else {
    while (glo < 0) {
      hi = lo, ghi = glo;
      lo = x0 - step;
      glo = g(lo);
      step *= 2;
      if (++report.iterations > max_iter || step > 1e8) throw ConvergenceError("root bracket not found");
    }
  }
  // glo >= 0 >= ghi
  int side = 0;
  double x = lo;
  while (report.iterations < max_iter) {
    if (glo == 0) { x = lo; break; }
    if (ghi == 0) { x = hi; break; }
    if (hi - lo <= xtol * (1 + std::abs(lo))) { x = 0.5 * (lo + hi); break; }
    x = (lo * ghi - hi * glo) / (ghi - glo);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    const double gx = g(x);
    ++report.iterations;
    if (gx == 0 || (done && done(x))) break;
    if (gx > 0) {
      lo = x, glo = gx;
      if (side == -1) ghi /= 2;
      side = -1;
    } else {
      hi = x, ghi = gx;
      if (side == 1) glo /= 2;
      side = 1;
    }
  }
  report.converged = report.iterations < max_iter;
  if (!report.converged) throw ConvergenceError("scalar root: iteration limit " + std::to_string(max_iter));
  return x;
}

/// Damped Broyden iteration for f(x) = 0, Jacobian initialised by forward
/// differences and refreshed when the line search stalls.
inline VectorXd broyden(const std::function<VectorXd(const VectorXd&)>& f, VectorXd x, int max_iter,
                        double fd_step, RootReport& report,
                        const std::function<bool(const VectorXd&, const VectorXd&)>& done) {
  report = {};
  const Eigen::Index d = x.size();
  VectorXd fx = f(x);
  auto jacobian = [&](const VectorXd& at, const VectorXd& fat) {
    MatrixXd J(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
      VectorXd xp = at;
      xp(j) += fd_step;
      J.col(j) = (f(xp) - fat) / fd_step;
    }
    return J;
  };
  MatrixXd J = jacobian(x, fx);
  bool fresh = true;
  while (report.iterations < max_iter) {
    report.residual = fx.norm();
    if (done(x, fx)) {
      report.converged = true;
      return x;
    }
    ++report.iterations;
    Eigen::FullPivLU<MatrixXd> lu(J);
    if (lu.rank() < d) {
      if (fresh) break;
      J = jacobian(x, fx);
      fresh = true;
      continue;
    }
    const VectorXd dx = -lu.solve(fx);
    double lambda = 1;
    VectorXd xn, fn;
    bool improved = false;
    for (int k = 0; k < 7; ++k, lambda /= 2) {
      xn = x + lambda * dx;
      fn = f(xn);
      if (fn.norm() < (1 - 1e-4 * lambda) * fx.norm()) {
        improved = true;
        break;
      }
    }
    if (!improved) {
      if (fresh) break;
      J = jacobian(x, fx);
      fresh = true;
      continue;
    }
    const VectorXd s = xn - x;
    J += ((fn - fx) - J * s) * s.transpose() / s.squaredNorm();
    fresh = false;
    x = xn;
    fx = fn;
  }
  report.residual = fx.norm();
  if (done(x, fx)) {
    report.converged = true;
    return x;
  }
  throw ConvergenceError("broyden: no convergence after " + std::to_string(report.iterations) +
                         " iterations, residual " + std::to_string(report.residual));
}

}  // namespace convexlab::detail
