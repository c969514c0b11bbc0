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

#include "gaussdisc/channel_model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "gaussdisc/errors.hpp"
#include "gaussdisc/numerics.hpp"

namespace gaussdisc {
namespace {

constexpr double kLn10 = 2.30258509299404568402;

double sinh_sq(double r) {
  const double s = std::sinh(r);
  return s * s;
}

void require_feasible(double power, double n_mean) {
  if (power < 0.0) {
    std::ostringstream msg;
    msg << "infeasible budget: n_mean=" << n_mean
        << " leaves negative signal power " << power
        << " after squeezing and thermal noise";
    throw InfeasibleBudget(msg.str(), power);
  }
}

double erfc_half_sqrt(double arg_sq) { return 0.5 * numerics::erfc(std::sqrt(arg_sq)); }

}  // namespace

void ExperimentParams::validate() const {
  if (!std::isfinite(beta) || !std::isfinite(r)) {
    throw ArgumentError("ExperimentParams: beta and r must be finite");
  }
  if (!(v_th >= 1.0) || !std::isfinite(v_th)) {
    throw ArgumentError("ExperimentParams: v_th must be >= 1");
  }
  if (!(v_en >= 0.0) || !std::isfinite(v_en)) {
    throw ArgumentError("ExperimentParams: v_en must be >= 0");
  }
  if (!(visibility > 0.0 && visibility <= 1.0)) {
    throw ArgumentError("ExperimentParams: visibility must lie in (0, 1]");
  }
  if (!(loss >= 0.0 && loss <= 1.0)) {
    throw ArgumentError("ExperimentParams: loss must lie in [0, 1]");
  }
}

double squeezing_from_db(double db) { return db * kLn10 / 20.0; }
double db_from_squeezing(double r) { return r * 20.0 / kLn10; }

double mean_photon_estimate(const ExperimentParams& p, EnergyMode mode) {
  p.validate();
  double energy = p.beta * p.beta + sinh_sq(p.r) + 0.5 * (p.v_th - 1.0);
  if (mode == EnergyMode::kExact) energy += (p.v_th - 1.0) * sinh_sq(p.r);
  return energy / (p.visibility * p.visibility);
}

double signal_power(const ExperimentParams& p, double n_mean) {
  return n_mean * p.visibility * p.visibility - sinh_sq(p.r) -
         0.5 * (p.v_th - 1.0);
}

double received_variance(const ExperimentParams& p) {
  return std::exp(-2.0 * p.r) * p.v_th * (1.0 - p.loss) + p.loss + p.v_en;
}

double predicted_error(const ExperimentParams& p, double n_mean) {
  p.validate();
  const double power = signal_power(p, n_mean);
  require_feasible(power, n_mean);
  return erfc_half_sqrt(2.0 * power / (std::exp(-2.0 * p.r) * p.v_th + p.v_en));
}

double lossy_erfc_argument_sq(const ExperimentParams& p, double n_mean) {
  return 2.0 * signal_power(p, n_mean) * (1.0 - p.loss) / received_variance(p);
}

double predicted_error_lossy(const ExperimentParams& p, double n_mean) {
  p.validate();
  require_feasible(signal_power(p, n_mean), n_mean);
  return erfc_half_sqrt(lossy_erfc_argument_sq(p, n_mean));
}

ExperimentParams params_for_budget(const ExperimentParams& p,
                                   const EnergyBudget& budget) {
  budget.validate();
  ExperimentParams out = p;
  const double v2 = p.visibility * p.visibility;
  out.r = std::asinh(std::sqrt(budget.gamma * budget.n_mean * v2));
  const double power = signal_power(out, budget.n_mean);
  require_feasible(power, budget.n_mean);
  out.beta = std::sqrt(power);
  return out;
}

double optimal_gamma_lossy(double n_mean, const ExperimentParams& p) {
  p.validate();
  if (!(n_mean > 0.0)) {
    throw ArgumentError("optimal_gamma_lossy: n_mean must be > 0");
  }
  const double v2 = p.visibility * p.visibility;
  // Error is decreasing in the erfc argument, so maximize that instead; it
  // keeps full precision where the error itself underflows.
  auto objective = [&](double gamma) {
    ExperimentParams q = p;
    q.r = std::asinh(std::sqrt(gamma * n_mean * v2));
    return lossy_erfc_argument_sq(q, n_mean);
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
  // The interior optimum may sit on the boundary.
  if (best == 0 && objective(0.0) >= objective(gamma)) return 0.0;
  return gamma;
}

}  // namespace gaussdisc
