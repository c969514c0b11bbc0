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

namespace gaussdisc {

/// Single-mode Gaussian state D(α)R(θ)S(r)ρ_th in shot-noise units, with the
/// vacuum quadrature variance normalized to 1 (X = a + a†).
struct GaussianState {
  double displacement = 0.0;        // α, real
  double squeezing = 0.0;           // r > 0 squeezes the amplitude quadrature
  double squeezing_angle = 0.0;     // θ, radians
  double thermal_occupation = 0.0;  // n_th

  /// Throws ArgumentError on non-finite fields or n_th < 0.
  void validate() const;
  bool is_coherent() const noexcept {
    return squeezing == 0.0 && thermal_occupation == 0.0;
  }
};

/// Mean photon number n̄ split between squeezing (γ n̄) and displacement.
struct EnergyBudget {
  double n_mean = 0.0;
  double gamma = 0.0;

  void validate() const;
  double squeezing_photons() const noexcept { return gamma * n_mean; }
  /// r with sinh²(r) = γ n̄.
  double squeezing() const;
};

/// Exact energy α² + n_th + (2 n_th + 1) sinh²(r).
double mean_photon_number(const GaussianState& state);

/// Amplitude-quadrature homodyne SNR 4α² / ((2n_th+1)(e^{-2r}cos²θ + e^{2r}sin²θ)).
double snr_general(const GaussianState& state);

/// SNR of the displaced-squeezed BPSK state for a given budget:
/// 4 (n̄ - n̄_s)(√n̄_s + √(n̄_s + 1))² with n̄_s = γ n̄.
double snr_bpsk(const EnergyBudget& budget);

/// γ = n̄ / (2n̄ + 1), the allocation maximizing snr_bpsk.
double optimal_gamma(double n_mean);

/// SNR after the received state is rotated by phi before homodyne detection.
double snr_rotated(double alpha, double r, double phi);

/// β = √((1 - γ) n̄). Throws ArgumentError for γ >= 1.
double amplitude_from_budget(const EnergyBudget& budget);

/// The ideal BPSK state D(β)S(r)|0⟩ realizing the budget.
GaussianState bpsk_state(const EnergyBudget& budget);

}  // namespace gaussdisc
