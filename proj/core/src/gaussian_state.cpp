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

#include "gaussdisc/gaussian_state.hpp"

#include <cmath>

#include "gaussdisc/errors.hpp"

namespace gaussdisc {

void GaussianState::validate() const {
  if (!std::isfinite(displacement) || !std::isfinite(squeezing) ||
      !std::isfinite(squeezing_angle) || !std::isfinite(thermal_occupation)) {
    throw ArgumentError("GaussianState: all fields must be finite");
  }
  if (thermal_occupation < 0.0) {
    throw ArgumentError("GaussianState: thermal occupation must be >= 0");
  }
}

void EnergyBudget::validate() const {
  if (!(n_mean >= 0.0) || !std::isfinite(n_mean)) {
    throw ArgumentError("EnergyBudget: n_mean must be finite and >= 0");
  }
  // γ < 1/2 is only needed for the fixed-α comparison; [0, 1) is the domain.
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw ArgumentError("EnergyBudget: gamma must lie in [0, 1)");
  }
}

double EnergyBudget::squeezing() const {
  return std::asinh(std::sqrt(squeezing_photons()));
}

double mean_photon_number(const GaussianState& state) {
  state.validate();
  const double s = std::sinh(state.squeezing);
  return state.displacement * state.displacement + state.thermal_occupation +
         (2.0 * state.thermal_occupation + 1.0) * s * s;
}

double snr_general(const GaussianState& state) {
  state.validate();
  const double c = std::cos(state.squeezing_angle);
  const double s = std::sin(state.squeezing_angle);
  const double r = state.squeezing;
  const double noise = (2.0 * state.thermal_occupation + 1.0) *
                       (std::exp(-2.0 * r) * c * c + std::exp(2.0 * r) * s * s);
  return 4.0 * state.displacement * state.displacement / noise;
}

double snr_bpsk(const EnergyBudget& budget) {
  budget.validate();
  const double ns = budget.squeezing_photons();
  const double gain = std::sqrt(ns) + std::sqrt(ns + 1.0);
  return 4.0 * (budget.n_mean - ns) * gain * gain;
}

double optimal_gamma(double n_mean) {
  if (!(n_mean >= 0.0)) throw ArgumentError("optimal_gamma: n_mean must be >= 0");
  return n_mean / (2.0 * n_mean + 1.0);
}

double snr_rotated(double alpha, double r, double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return 4.0 * alpha * alpha * c * c /
         (std::exp(-2.0 * r) * c * c + std::exp(2.0 * r) * s * s);
}

double amplitude_from_budget(const EnergyBudget& budget) {
  if (!(budget.gamma < 1.0)) {
    throw ArgumentError("amplitude_from_budget: gamma must be < 1");
  }
  budget.validate();
  return std::sqrt((1.0 - budget.gamma) * budget.n_mean);
}

GaussianState bpsk_state(const EnergyBudget& budget) {
  return {amplitude_from_budget(budget), budget.squeezing(), 0.0, 0.0};
}

}  // namespace gaussdisc
