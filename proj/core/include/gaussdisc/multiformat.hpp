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

#include "gaussdisc/channel_model.hpp"
#include "gaussdisc/gaussian_state.hpp"
#include "gaussdisc/numerics.hpp"

namespace gaussdisc {

/// Dual-homodyne outcome density of the k = 0 PSK state, a product of
/// normals in x and p. Units follow X = (a + a†)/2, so a coherent state has
/// quadrature variance 1/4 before the 50:50 split.
struct DualHomodyneDistribution {
  double mu_x = 0.0;
  double sigma2_x = 0.25;
  double sigma2_p = 0.25;

  /// Ideal displaced squeezed state: μ_x = β/√2, σ²_x = (1+e^{-2r})/8,
  /// σ²_p = (1+e^{2r})/8.
  static DualHomodyneDistribution ideal(const EnergyBudget& budget);

  /// Same, after loss and receiver noise: each arm sees (w + 1)/8 with w the
  /// received single-quadrature variance in vacuum units.
  static DualHomodyneDistribution through_channel(const ExperimentParams& p,
                                                  const EnergyBudget& budget);

  double pdf(double x, double p) const;
  double radial_cutoff() const;
};

/// ASK-3 error (2/3) erfc(e^r α / √2) with α = √(3/2 (1-γ) n̄).
double ask3_error(double n_mean, double gamma);

/// ASK-3 error through an imperfect channel; thresholds sit halfway between
/// the received means. Equals ask3_error for ideal params.
double ask3_error_channel(const ExperimentParams& p, const EnergyBudget& budget);

/// γ minimizing ask3_error_channel at fixed n̄.
double ask3_optimal_gamma(double n_mean, const ExperimentParams& p = {});

/// 1 - (mass of the k = 0 density inside |θ| < π/M).
double mpsk_error_quadrature(const DualHomodyneDistribution& d, int symbols,
                             const numerics::QuadratureSpec& spec = {});

double psk3_error_quadrature(double n_mean, double gamma,
                             const numerics::QuadratureSpec& spec = {});

/// Phase-angle marginal of the dual-homodyne density (Aalo form).
double psk3_phase_density(double theta, const DualHomodyneDistribution& d);

/// 1 - ∫_{-π/3}^{π/3} P(θ) dθ.
double psk3_error_phase(double n_mean, double gamma,
                        const numerics::QuadratureSpec& spec = {});
double psk3_error_phase(const DualHomodyneDistribution& d,
                        const numerics::QuadratureSpec& spec = {});

/// n̄(1-γ)/(n̄γ + 1).
double psk4_snr(double n_mean, double gamma);

/// (e^{2r} + e^{-2r})/8.
double psk4_variance(double r);

double psk4_error_quadrature(double n_mean, double gamma,
                             const numerics::QuadratureSpec& spec = {});

}  // namespace gaussdisc
