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

#include "gaussdisc/bounds.hpp"

#include <cmath>
#include <string>

#include "gaussdisc/errors.hpp"
#include "gaussdisc/numerics.hpp"

namespace gaussdisc {
namespace {

void require_snr(double snr, const char* who) {
  if (!(snr >= 0.0)) {
    throw ArgumentError(std::string(who) + ": snr must be >= 0");
  }
}

}  // namespace

double homodyne_error(double snr) {
  require_snr(snr, "homodyne_error");
  return 0.5 * numerics::erfc(std::sqrt(0.5 * snr));
}

double helstrom_error(double snr) {
  require_snr(snr, "helstrom_error");
  const double overlap = std::exp(-snr);
  // ½(1 - √(1-u)) rewritten without the cancellation at small u.
  return 0.5 * overlap / (1.0 + std::sqrt(1.0 - overlap));
}

BoundSet bound_set(double n_mean) {
  if (!(n_mean >= 0.0)) throw ArgumentError("bound_set: n_mean must be >= 0");
  const double snr_coherent = 4.0 * n_mean;
  const double snr_squeezed = 4.0 * (n_mean * n_mean + n_mean);
  return {n_mean, homodyne_error(snr_coherent), helstrom_error(snr_coherent),
          homodyne_error(snr_squeezed), helstrom_error(snr_squeezed)};
}

double crossover_gap(double n_mean) {
  const auto b = bound_set(n_mean);
  return b.p_gaussian_limit - b.p_helstrom_coherent;
}

double crossover_photon_number() {
  return numerics::find_root(crossover_gap, 0.1, 2.0, 1e-6);
}

double mutual_information(double p_error) {
  if (!(p_error >= 0.0 && p_error <= 1.0)) {
    throw ArgumentError("mutual_information: p_error must lie in [0, 1]");
  }
  auto plogp = [](double p) { return p > 0.0 ? p * std::log2(p) : 0.0; };
  return 1.0 + plogp(p_error) + plogp(1.0 - p_error);
}

}  // namespace gaussdisc
