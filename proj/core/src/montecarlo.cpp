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

#include "gaussdisc/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "gaussdisc/errors.hpp"

namespace gaussdisc {
namespace {

using numerics::kPi;

std::uint64_t shard_count(std::uint64_t n) {
  return (n + kShardSize - 1) / kShardSize;
}

std::uint64_t shard_length(std::uint64_t n, std::uint64_t shard) {
  return std::min(kShardSize, n - shard * kShardSize);
}

std::uint64_t count_errors(Alphabet format, const TrialBatch& batch, int symbol,
                           std::uint64_t shard) {
  RandomStream stream(batch.seed, shard_stream_index(symbol, shard));
  const std::uint64_t n = shard_length(batch.n_samples, shard);
  std::uint64_t errors = 0;
  switch (format) {
    case Alphabet::kBpsk: {
      const auto rx = BpskReceiver::from(batch.params, batch.budget);
      for (std::uint64_t i = 0; i < n; ++i) {
        errors += decide_bpsk(rx.sample(symbol, stream)) != symbol;
      }
      break;
    }
    case Alphabet::kAsk3: {
      const auto rx = Ask3Receiver::from(batch.params, batch.budget);
      for (std::uint64_t i = 0; i < n; ++i) {
        errors += rx.decide(rx.sample(symbol, stream)) != symbol;
      }
      break;
    }
    case Alphabet::kPsk3:
    case Alphabet::kPsk4: {
      const auto rx = PskReceiver::from(format, batch.params, batch.budget);
      double x = 0.0;
      double p = 0.0;
      for (std::uint64_t i = 0; i < n; ++i) {
        rx.sample(symbol, stream, x, p);
        errors += rx.decide(x, p) != symbol;
      }
      break;
    }
  }
  return errors;
}

}  // namespace

std::string_view alphabet_name(Alphabet a) {
  switch (a) {
    case Alphabet::kBpsk: return "bpsk";
    case Alphabet::kAsk3: return "ask3";
    case Alphabet::kPsk3: return "psk3";
    case Alphabet::kPsk4: return "psk4";
  }
  return "?";
}

Alphabet parse_alphabet(std::string_view name) {
  for (auto a : {Alphabet::kBpsk, Alphabet::kAsk3, Alphabet::kPsk3,
                 Alphabet::kPsk4}) {
    if (alphabet_name(a) == name) return a;
  }
  throw ArgumentError("unknown alphabet '" + std::string(name) +
                      "' (expected bpsk, ask3, psk3 or psk4)");
}

int alphabet_size(Alphabet a) {
  switch (a) {
    case Alphabet::kBpsk: return 2;
    case Alphabet::kAsk3:
    case Alphabet::kPsk3: return 3;
    case Alphabet::kPsk4: return 4;
  }
  return 0;
}

ErrorEstimate ErrorEstimate::from_counts(std::uint64_t errors,
                                         std::uint64_t trials) {
  if (errors > trials) {
    throw ArgumentError("ErrorEstimate: more errors than trials");
  }
  ErrorEstimate e;
  e.errors = errors;
  e.trials = trials;
  e.posterior_alpha = static_cast<double>(errors) + 0.5;
  e.posterior_beta = static_cast<double>(trials - errors) + 0.5;
  const double total = e.posterior_alpha + e.posterior_beta;
  e.mean = e.posterior_alpha / total;
  e.std = std::sqrt(e.posterior_alpha * e.posterior_beta /
                    (total * total * (total + 1.0)));
  return e;
}

void TrialBatch::validate() const {
  if (n_samples < 1) throw ArgumentError("TrialBatch: n_samples must be >= 1");
  params.validate();
  budget.validate();
}

BpskReceiver BpskReceiver::from(const ExperimentParams& p,
                                const EnergyBudget& budget) {
  p.validate();
  const ExperimentParams q = params_for_budget(p, budget);
  return {2.0 * q.beta * std::sqrt(1.0 - p.loss), received_variance(q)};
}

double BpskReceiver::sample(int symbol, RandomStream& stream) const {
  return sample_normal(stream, symbol == 0 ? mean : -mean, variance);
}

double sample_bpsk_outcome(int symbol, const ExperimentParams& p,
                           const EnergyBudget& budget, RandomStream& stream) {
  if (symbol != 0 && symbol != 1) {
    throw ArgumentError("sample_bpsk_outcome: symbol must be 0 or 1");
  }
  return BpskReceiver::from(p, budget).sample(symbol, stream);
}

Ask3Receiver Ask3Receiver::from(const ExperimentParams& p,
                                const EnergyBudget& budget) {
  p.validate();
  const ExperimentParams q = params_for_budget(p, budget);
  // n̄V² = (2/3)α² + sinh²r + (v_th-1)/2, so α² = 3/2 of the signal power.
  const double alpha = std::sqrt(1.5) * q.beta;
  return {alpha * std::sqrt(1.0 - p.loss), received_variance(q)};
}

double Ask3Receiver::sample(int symbol, RandomStream& stream) const {
  return sample_normal(stream, 2.0 * (symbol - 1) * half_spacing, variance);
}

int Ask3Receiver::decide(double outcome) const {
  if (outcome <= -half_spacing) return 0;
  if (outcome <= half_spacing) return 1;
  return 2;
}

PskReceiver PskReceiver::from(Alphabet format, const ExperimentParams& p,
                              const EnergyBudget& budget) {
  PskReceiver rx;
  if (format == Alphabet::kPsk3) {
    rx.symbols = 3;
    rx.offset = 0.0;
  } else if (format == Alphabet::kPsk4) {
    rx.symbols = 4;
    rx.offset = kPi / 4.0;
  } else {
    throw ArgumentError("PskReceiver: alphabet must be psk3 or psk4");
  }
  rx.outcome = DualHomodyneDistribution::through_channel(p, budget);
  return rx;
}

void PskReceiver::sample(int symbol, RandomStream& stream, double& x,
                         double& p) const {
  const double x0 = sample_normal(stream, outcome.mu_x, outcome.sigma2_x);
  const double p0 = sample_normal(stream, 0.0, outcome.sigma2_p);
  const double angle = offset + 2.0 * kPi * symbol / symbols;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  x = c * x0 - s * p0;
  p = s * x0 + c * p0;
}

int PskReceiver::decide(double x, double p) const {
  const double sector = 2.0 * kPi / symbols;
  const double k = std::floor((std::atan2(p, x) - offset) / sector + 0.5);
  const int idx = static_cast<int>(k) % symbols;
  return idx < 0 ? idx + symbols : idx;
}

ErrorEstimate run_batch(const TrialBatch& batch, unsigned workers) {
  batch.validate();
  const int symbols = alphabet_size(batch.format);
  const std::uint64_t shards = shard_count(batch.n_samples);
  const std::uint64_t tasks = shards * static_cast<std::uint64_t>(symbols);

  // Surface infeasible budgets before spawning threads.
  if (batch.format == Alphabet::kBpsk || batch.format == Alphabet::kAsk3) {
    params_for_budget(batch.params, batch.budget);
  } else {
    PskReceiver::from(batch.format, batch.params, batch.budget);
  }

  std::vector<std::uint64_t> errors(tasks, 0);
  auto run_task = [&](std::uint64_t t) {
    const int symbol = static_cast<int>(t % symbols);
    errors[t] = count_errors(batch.format, batch, symbol, t / symbols);
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, tasks));
  if (workers <= 1) {
    for (std::uint64_t t = 0; t < tasks; ++t) run_task(t);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (auto t = next.fetch_add(1); t < tasks; t = next.fetch_add(1)) {
          run_task(t);
        }
      });
    }
  }

  std::uint64_t total = 0;
  for (auto e : errors) total += e;
  return ErrorEstimate::from_counts(total, batch.n_samples * symbols);
}

std::vector<double> draw_bpsk_samples(const TrialBatch& batch, int symbol) {
  batch.validate();
  if (batch.format != Alphabet::kBpsk) {
    throw ArgumentError("draw_bpsk_samples: batch format must be bpsk");
  }
  if (symbol != 0 && symbol != 1) {
    throw ArgumentError("draw_bpsk_samples: symbol must be 0 or 1");
  }
  const auto rx = BpskReceiver::from(batch.params, batch.budget);
  std::vector<double> out;
  out.reserve(batch.n_samples);
  for (std::uint64_t shard = 0; shard < shard_count(batch.n_samples); ++shard) {
    RandomStream stream(batch.seed, shard_stream_index(symbol, shard));
    const auto n = shard_length(batch.n_samples, shard);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(rx.sample(symbol, stream));
  }
  return out;
}

ErrorEstimate estimate_from_samples(std::span<const double> samples_0,
                                    std::span<const double> samples_1) {
  if (samples_0.empty() || samples_1.empty()) {
    throw ArgumentError("estimate_from_samples: both sample sets must be non-empty");
  }
  std::uint64_t errors = 0;
  for (double x : samples_0) errors += decide_bpsk(x) != 0;
  for (double x : samples_1) errors += decide_bpsk(x) != 1;
  return ErrorEstimate::from_counts(errors, samples_0.size() + samples_1.size());
}

double analytic_error(Alphabet format, const ExperimentParams& p,
                      const EnergyBudget& budget) {
  switch (format) {
    case Alphabet::kBpsk:
      return predicted_error_lossy(params_for_budget(p, budget), budget.n_mean);
    case Alphabet::kAsk3:
      return ask3_error_channel(p, budget);
    case Alphabet::kPsk3:
      return mpsk_error_quadrature(
          DualHomodyneDistribution::through_channel(p, budget), 3);
    case Alphabet::kPsk4:
      return mpsk_error_quadrature(
          DualHomodyneDistribution::through_channel(p, budget), 4);
  }
  throw ArgumentError("analytic_error: unknown alphabet");
}

}  // namespace gaussdisc
