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

#include "gaussdisc/multiformat.hpp"

#include <cmath>
#include <limits>

#include "gaussdisc/errors.hpp"

namespace gaussdisc {
namespace {

using numerics::kPi;

constexpr double kSqrt2 = 1.41421356237309504880;

void require_budget(double n_mean, double gamma) {
  EnergyBudget{n_mean, gamma}.validate();
}

// Squared erfc argument of the ASK-3 boundary error, α²(1-L)/(2w).
double ask3_argument_sq(const ExperimentParams& p, const EnergyBudget& budget) {
  ExperimentParams q = p;
  const double v2 = p.visibility * p.visibility;
  q.r = std::asinh(std::sqrt(budget.gamma * budget.n_mean * v2));
  const double alpha_sq = 1.5 * signal_power(q, budget.n_mean);
  return alpha_sq * (1.0 - p.loss) / (2.0 * received_variance(q));
}

}  // namespace

DualHomodyneDistribution DualHomodyneDistribution::ideal(
    const EnergyBudget& budget) {
  budget.validate();
  const double beta = amplitude_from_budget(budget);
  const double r = budget.squeezing();
  return {beta / kSqrt2, (1.0 + std::exp(-2.0 * r)) / 8.0,
          (1.0 + std::exp(2.0 * r)) / 8.0};
}

DualHomodyneDistribution DualHomodyneDistribution::through_channel(
    const ExperimentParams& p, const EnergyBudget& budget) {
  p.validate();
  const ExperimentParams q = params_for_budget(p, budget);
  const double w_x = received_variance(q);
  ExperimentParams anti = q;
  anti.r = -q.r;
  const double w_p = received_variance(anti);
  return {q.beta * std::sqrt(1.0 - p.loss) / kSqrt2, (w_x + 1.0) / 8.0,
          (w_p + 1.0) / 8.0};
}

double DualHomodyneDistribution::pdf(double x, double p) const {
  const double dx = x - mu_x;
  return std::exp(-0.5 * (dx * dx / sigma2_x + p * p / sigma2_p)) /
         (2.0 * kPi * std::sqrt(sigma2_x * sigma2_p));
}

double DualHomodyneDistribution::radial_cutoff() const {
  return numerics::wedge_radial_cutoff(mu_x, 0.0, std::sqrt(sigma2_x),
                                       std::sqrt(sigma2_p));
}

double ask3_error(double n_mean, double gamma) {
  require_budget(n_mean, gamma);
  const double r = std::asinh(std::sqrt(gamma * n_mean));
  const double alpha = std::sqrt(1.5 * (1.0 - gamma) * n_mean);
  return 2.0 / 3.0 * numerics::erfc(std::exp(r) * alpha / kSqrt2);
}

double ask3_error_channel(const ExperimentParams& p, const EnergyBudget& budget) {
  p.validate();
  budget.validate();
  // Throws on an infeasible budget.
  params_for_budget(p, budget);
  return 2.0 / 3.0 * numerics::erfc(std::sqrt(ask3_argument_sq(p, budget)));
}

double ask3_optimal_gamma(double n_mean, const ExperimentParams& p) {
  p.validate();
  if (!(n_mean > 0.0)) {
    throw ArgumentError("ask3_optimal_gamma: n_mean must be > 0");
  }
  auto objective = [&](double gamma) {
    return ask3_argument_sq(p, {n_mean, gamma});
  };
  constexpr int kGrid = 400;
  constexpr double kTop = 1.0 - 1e-9;
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    const double value = objective(kTop * i / kGrid);
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  const double lo = kTop * std::max(0, best - 1) / kGrid;
  const double hi = kTop * std::min(kGrid, best + 1) / kGrid;
  const double gamma = numerics::maximize_golden(objective, lo, hi, 1e-9);
  if (best == 0 && objective(0.0) >= objective(gamma)) return 0.0;
  return gamma;
}

double mpsk_error_quadrature(const DualHomodyneDistribution& d, int symbols,
                             const numerics::QuadratureSpec& spec) {
  if (symbols < 2) throw ArgumentError("mpsk_error_quadrature: need >= 2 symbols");
  const auto mass = numerics::integrate_2d_wedge(
      [&d](double x, double p) { return d.pdf(x, p); }, kPi / symbols,
      d.radial_cutoff(), spec);
  return 1.0 - mass.value;
}

double psk3_error_quadrature(double n_mean, double gamma,
                             const numerics::QuadratureSpec& spec) {
  return mpsk_error_quadrature(
      DualHomodyneDistribution::ideal({n_mean, gamma}), 3, spec);
}

double psk3_phase_density(double theta, const DualHomodyneDistribution& d) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double a = c * c / (2.0 * d.sigma2_x) + s * s / (2.0 * d.sigma2_p);
  const double b = d.mu_x * c / d.sigma2_x;
  const double z = b / (2.0 * std::sqrt(a));
  const double offset = d.mu_x * d.mu_x / (2.0 * d.sigma2_x);
  // z² <= offset, so e^{z² - offset} never overflows.
  const double prefactor = 1.0 / (4.0 * kPi * std::sqrt(d.sigma2_x * d.sigma2_p) * a);
  const double tail = std::sqrt(kPi) * z * std::exp(z * z - offset) *
                      numerics::erfc(-z);
  return prefactor * (tail + std::exp(-offset));
}

double psk3_error_phase(const DualHomodyneDistribution& d,
                        const numerics::QuadratureSpec& spec) {
  const auto mass = numerics::integrate_1d(
      [&d](double theta) { return psk3_phase_density(theta, d); }, -kPi / 3.0,
      kPi / 3.0, spec);
  return 1.0 - mass.value;
}

double psk3_error_phase(double n_mean, double gamma,
                        const numerics::QuadratureSpec& spec) {
  return psk3_error_phase(DualHomodyneDistribution::ideal({n_mean, gamma}),
                          spec);
}

double psk4_snr(double n_mean, double gamma) {
  if (!(n_mean >= 0.0)) throw ArgumentError("psk4_snr: n_mean must be >= 0");
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw ArgumentError("psk4_snr: gamma must lie in [0, 1]");
  }
  return n_mean * (1.0 - gamma) / (n_mean * gamma + 1.0);
}

double psk4_variance(double r) {
  return (std::exp(2.0 * r) + std::exp(-2.0 * r)) / 8.0;
}

double psk4_error_quadrature(double n_mean, double gamma,
                             const numerics::QuadratureSpec& spec) {
  return mpsk_error_quadrature(
      DualHomodyneDistribution::ideal({n_mean, gamma}), 4, spec);
}

}  // namespace gaussdisc
