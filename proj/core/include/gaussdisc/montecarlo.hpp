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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gaussdisc/channel_model.hpp"
#include "gaussdisc/gaussian_state.hpp"
#include "gaussdisc/multiformat.hpp"
#include "gaussdisc/random_stream.hpp"

namespace gaussdisc {

enum class Alphabet { kBpsk, kAsk3, kPsk3, kPsk4 };

std::string_view alphabet_name(Alphabet a);
/// Accepts "bpsk", "ask3", "psk3", "psk4". Throws ArgumentError otherwise.
Alphabet parse_alphabet(std::string_view name);
int alphabet_size(Alphabet a);

/// Jeffreys-prior posterior Beta(k + ½, n - k + ½) for k errors in n trials.
struct ErrorEstimate {
  std::uint64_t errors = 0;
  std::uint64_t trials = 0;
  double posterior_alpha = 0.5;
  double posterior_beta = 0.5;
  double mean = 0.5;
  double std = 0.0;

  static ErrorEstimate from_counts(std::uint64_t errors, std::uint64_t trials);
  friend bool operator==(const ErrorEstimate&, const ErrorEstimate&) = default;
};

struct TrialBatch {
  std::uint64_t n_samples = 1;  // per symbol
  std::uint64_t seed = 0;
  Alphabet format = Alphabet::kBpsk;
  ExperimentParams params;
  EnergyBudget budget;

  void validate() const;
};

/// Received single-homodyne BPSK outcome law: mean ±2β√(1-L), variance
/// e^{-2r} v_th (1-L) + L + v_en, with β and r from params_for_budget.
struct BpskReceiver {
  double mean = 0.0;
  double variance = 1.0;

  static BpskReceiver from(const ExperimentParams& p, const EnergyBudget& budget);
  double sample(int symbol, RandomStream& stream) const;
};

double sample_bpsk_outcome(int symbol, const ExperimentParams& p,
                           const EnergyBudget& budget, RandomStream& stream);

/// Sign rule: outcomes >= 0 decode to symbol 0.
inline int decide_bpsk(double outcome) { return outcome >= 0.0 ? 0 : 1; }

/// ASK-3 in X = a + a† units: symbols 0, 1, 2 carry means -2a, 0, +2a with
/// a = α√(1-L); thresholds at ±a, ties to the lower index.
struct Ask3Receiver {
  double half_spacing = 0.0;
  double variance = 1.0;

  static Ask3Receiver from(const ExperimentParams& p, const EnergyBudget& budget);
  double sample(int symbol, RandomStream& stream) const;
  int decide(double outcome) const;
};

/// M-PSK with dual homodyne. Symbol k is the k = 0 density rotated by
/// offset + 2πk/M; decoding picks the nearest constellation angle.
struct PskReceiver {
  int symbols = 3;
  double offset = 0.0;
  DualHomodyneDistribution outcome;

  static PskReceiver from(Alphabet format, const ExperimentParams& p,
                          const EnergyBudget& budget);
  void sample(int symbol, RandomStream& stream, double& x, double& p) const;
  int decide(double x, double p) const;
};

/// Monte Carlo error estimate with equal priors. Work is split into fixed
/// shards of kShardSize samples, each with its own stream, so the result
/// depends on (seed, n_samples) only and not on `workers` (0 = all cores).
ErrorEstimate run_batch(const TrialBatch& batch, unsigned workers = 0);

inline constexpr std::uint64_t kShardSize = std::uint64_t{1} << 16;

/// Stream index of the given (symbol, shard) pair.
inline std::uint64_t shard_stream_index(int symbol, std::uint64_t shard) {
  return (shard << 8) | static_cast<std::uint64_t>(symbol);
}

/// The raw BPSK outcomes run_batch draws for `symbol`, in shard order.
std::vector<double> draw_bpsk_samples(const TrialBatch& batch, int symbol);

/// Pooled threshold-at-0 error estimate from recorded outcomes of symbol 0
/// (positive mean) and symbol 1. Throws ArgumentError on empty input.
ErrorEstimate estimate_from_samples(std::span<const double> samples_0,
                                    std::span<const double> samples_1);

/// Model error matching the sampling law of each alphabet: lossy homodyne
/// homodyne error for BPSK, the ASK-3 channel form, and wedge quadrature
/// for PSK-3/PSK-4.
double analytic_error(Alphabet format, const ExperimentParams& p,
                      const EnergyBudget& budget);

}  // namespace gaussdisc
