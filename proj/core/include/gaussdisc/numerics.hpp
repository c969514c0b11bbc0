// Copyright 2026 The gaussdisc Authors
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

#include <functional>

namespace gaussdisc::numerics {

inline constexpr double kPi = 3.14159265358979323846;

/// Complementary error function, relative error below 1e-13 on |x| <= 10.
double erfc(double x);

/// Tolerances and subdivision budget for the adaptive integrators.
struct QuadratureSpec {
  double relative_tolerance = 1e-10;
  double absolute_tolerance = 1e-12;
  int max_subdivisions = 2000;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_bound = 0.0;
  int subdivisions = 0;
};

using Function1d = std::function<double(double)>;
using Density2d = std::function<double(double, double)>;

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
/// Throws ConvergenceError with the best estimate if the subdivision budget
/// runs out before the tolerance is met.
QuadratureResult integrate_1d(const Function1d& f, double a, double b,
                              const QuadratureSpec& spec = {});

/// Probability mass of `pdf` inside the wedge |atan2(p, x)| < half_angle.
///
/// The integral runs in polar coordinates: θ over (-half_angle, half_angle)
/// and r over [0, radial_cutoff]. Callers pick the cutoff as
/// |mean| + 10 standard deviations of the wider marginal, see
/// wedge_radial_cutoff().
QuadratureResult integrate_2d_wedge(const Density2d& pdf, double half_angle,
                                    double radial_cutoff,
                                    const QuadratureSpec& spec = {});

double wedge_radial_cutoff(double mean_x, double mean_p, double sigma_x,
                           double sigma_p);

/// Bisection on a sign-changing bracket; stops once the bracket is below tol.
double find_root(const Function1d& f, double lo, double hi, double tol);

/// Golden-section search for the maximizer of a unimodal f on [lo, hi].
double maximize_golden(const Function1d& f, double lo, double hi, double tol);

}  // namespace gaussdisc::numerics
