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

/// The four BPSK limits at one mean photon number.
struct BoundSet {
  double n_mean = 0.0;
  double p_sql = 0.5;                // coherent states, homodyne
  double p_helstrom_coherent = 0.5;  // coherent states, optimal receiver
  double p_gaussian_limit = 0.5;     // optimal squeezing, homodyne
  double p_helstrom_squeezed = 0.5;  // optimal squeezing, optimal receiver
};

/// ½ erfc(√(SNR/2)).
double homodyne_error(double snr);

/// ½ (1 - √(1 - e^{-SNR})), the pure-state Helstrom bound for an overlap of
/// e^{-SNR}.
double helstrom_error(double snr);

BoundSet bound_set(double n_mean);

/// The n̄ at which the Gaussian limit meets the coherent Helstrom bound.
/// Bisection on [0.1, 2] to 1e-6.
double crossover_photon_number();

/// p_gaussian_limit(n̄) - p_helstrom_coherent(n̄).
double crossover_gap(double n_mean);

/// Binary-symmetric-channel mutual information 1 - H₂(p_e) in bits.
double mutual_information(double p_error);

}  // namespace gaussdisc
