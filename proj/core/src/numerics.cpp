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

#include "gaussdisc/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gaussdisc/errors.hpp"

namespace gaussdisc::numerics {
namespace {

constexpr double kSqrtPi = 1.77245385090551602730;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// e^{-x^2} without the rounding error of forming x*x directly.
double exp_neg_square(double x) {
  const double hi = std::trunc(x * 16.0) / 16.0;
  const double lo = x - hi;
  return std::exp(-hi * hi) * std::exp(-lo * (x + hi));
}

// erf by the positive-term series 2x/sqrt(pi) e^{-x^2} sum (2x^2)^n/(2n+1)!!.
double erf_series(double x) {
  const double two_x2 = 2.0 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < 200; ++n) {
    term *= two_x2 / (2.0 * n + 1.0);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return 2.0 * x / kSqrtPi * exp_neg_square(x) * sum;
}

// erfc for x >= 1.5 from the Laplace continued fraction, modified Lentz.
double erfc_continued_fraction(double x) {
  constexpr double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int n = 1; n < 5000; ++n) {
    const double a = 0.5 * n;
    d = x + a * d;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    c = x + a / c;
    if (std::abs(c) < tiny) c = tiny;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 0.5 * kEps) break;
  }
  return exp_neg_square(x) / (kSqrtPi * f);
}

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights at kKronrodNodes[1], [3], [5] and [7].
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
};

Segment gauss_kronrod(const Function1d& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

bool by_error(const Segment& lhs, const Segment& rhs) {
  return lhs.error < rhs.error;
}

}  // namespace

double erfc(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::abs(x);
  double upper;  // erfc(|x|)
  if (ax < 1.5) {
    const double e = erf_series(ax);
    return x >= 0.0 ? 1.0 - e : 1.0 + e;
  }
  upper = ax > 27.3 ? 0.0 : erfc_continued_fraction(ax);
  return x >= 0.0 ? upper : 2.0 - upper;
}

void QuadratureSpec::validate() const {
  if (!(relative_tolerance > 0.0) || !(absolute_tolerance > 0.0)) {
    throw ArgumentError("quadrature tolerances must be positive");
  }
  if (max_subdivisions < 1) {
    throw ArgumentError("max_subdivisions must be at least 1");
  }
}

QuadratureResult integrate_1d(const Function1d& f, double a, double b,
                              const QuadratureSpec& spec) {
  spec.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw ArgumentError("integration limits must be finite");
  }
  if (a == b) return {0.0, 0.0, 0};

  std::vector<Segment> heap;
  heap.reserve(static_cast<std::size_t>(spec.max_subdivisions) + 1);
  heap.push_back(gauss_kronrod(f, a, b));
  double total = heap.front().value;
  double error = heap.front().error;
  int subdivisions = 1;

  auto converged = [&] {
    return error <= std::max(spec.absolute_tolerance,
                             spec.relative_tolerance * std::abs(total));
  };

  while (!converged()) {
    if (subdivisions >= spec.max_subdivisions) {
      throw ConvergenceError("integrate_1d: subdivision budget of " +
                                 std::to_string(spec.max_subdivisions) +
                                 " exhausted",
                             total, error);
    }
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Segment worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      // Interval cannot be split further in double precision.
      throw ConvergenceError("integrate_1d: interval underflow", total, error);
    }
    const Segment left = gauss_kronrod(f, worst.a, mid);
    const Segment right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
    ++subdivisions;

    // The running sums drift; resum exactly once the estimate looks done.
    if (converged()) {
      total = 0.0;
      error = 0.0;
      for (const auto& s : heap) {
        total += s.value;
        error += s.error;
      }
    }
  }
  return {total, error, subdivisions};
}

double wedge_radial_cutoff(double mean_x, double mean_p, double sigma_x,
                           double sigma_p) {
  return std::hypot(mean_x, mean_p) + 10.0 * std::max(sigma_x, sigma_p);
}

QuadratureResult integrate_2d_wedge(const Density2d& pdf, double half_angle,
                                    double radial_cutoff,
                                    const QuadratureSpec& spec) {
  spec.validate();
  if (!(half_angle > 0.0) || half_angle > kPi) {
    throw ArgumentError("wedge half_angle must lie in (0, pi]");
  }
  if (!(radial_cutoff > 0.0) || !std::isfinite(radial_cutoff)) {
    throw ArgumentError("wedge radial cutoff must be positive and finite");
  }

  QuadratureSpec inner_spec = spec;
  inner_spec.absolute_tolerance = spec.absolute_tolerance * 0.1;
  double inner_error = 0.0;
  auto radial = [&](double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const auto inner = integrate_1d(
        [&](double r) { return pdf(r * c, r * s) * r; }, 0.0, radial_cutoff,
        inner_spec);
    inner_error = std::max(inner_error, inner.error_bound);
    return inner.value;
  };
  auto outer = integrate_1d(radial, -half_angle, half_angle, spec);
  outer.error_bound += inner_error * 2.0 * half_angle;
  return outer;
}

double find_root(const Function1d& f, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw ArgumentError("find_root: tol must be positive");
  if (lo > hi) std::swap(lo, hi);
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw ArgumentError("find_root: no sign change on [" + std::to_string(lo) +
                        ", " + std::to_string(hi) + "]");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double maximize_golden(const Function1d& f, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw ArgumentError("maximize_golden: tol must be positive");
  if (lo > hi) std::swap(lo, hi);
  const double inv_phi = 0.6180339887498948482;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace gaussdisc::numerics
