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

#include "gaussdisc/gaussian_state.hpp"

namespace gaussdisc {

/// Measured (or assumed) imperfections of the transmitter, channel and
/// homodyne receiver. Noise terms are normalized to shot noise.
struct ExperimentParams {
  double beta = 0.0;        // displacement amplitude
  double r = 0.0;           // squeezing parameter
  double v_th = 1.0;        // anti-squeezing impurity factor, >= 1
  double v_en = 0.0;        // electronic noise, >= 0
  double visibility = 1.0;  // (0, 1]
  double loss = 0.0;        // [0, 1]

  void validate() const;
  bool is_ideal() const noexcept {
    return v_th == 1.0 && v_en == 0.0 && visibility == 1.0 && loss == 0.0;
  }
};

double squeezing_from_db(double db);
double db_from_squeezing(double r);

enum class EnergyMode {
  kPublished,  // (β² + sinh²r + (v_th-1)/2) / V², as used on measured data
  kExact,      // adds the thermal-squeezing cross term (v_th - 1) sinh²r
};

/// Mean photon number implied by measured parameters.
double mean_photon_estimate(const ExperimentParams& p,
                            EnergyMode mode = EnergyMode::kPublished);

/// n̄V² - sinh²r - (v_th-1)/2: the power left for the displacement.
double signal_power(const ExperimentParams& p, double n_mean);

/// e^{-2r} v_th (1-L) + L + v_en.
double received_variance(const ExperimentParams& p);

/// Homodyne error of the imperfect lossless link,
/// ½ erfc(√(2 P_s / (e^{-2r} v_th + v_en))). p.loss is ignored.
/// Throws InfeasibleBudget when P_s < 0.
double predicted_error(const ExperimentParams& p, double n_mean);

/// As predicted_error with channel loss p.loss applied.
double predicted_error_lossy(const ExperimentParams& p, double n_mean);

/// The squared erfc argument of predicted_error_lossy, allowed to go
/// negative for infeasible budgets.
double lossy_erfc_argument_sq(const ExperimentParams& p, double n_mean);

/// Copy of p whose squeezing spends γ of the detected budget:
/// sinh²r = γ n̄ V², and β² = signal_power.
ExperimentParams params_for_budget(const ExperimentParams& p,
                                   const EnergyBudget& budget);

/// γ ∈ [0, 1) minimizing predicted_error_lossy at fixed n̄, with
/// sinh²r = γ n̄ V². Resolved to 1e-7 in γ.
double optimal_gamma_lossy(double n_mean, const ExperimentParams& p);

}  // namespace gaussdisc
