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

#include "gaussdisc_cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "gaussdisc/bounds.hpp"
#include "gaussdisc/channel_model.hpp"
#include "gaussdisc/errors.hpp"
#include "gaussdisc/gaussian_state.hpp"
#include "gaussdisc/montecarlo.hpp"
#include "gaussdisc/multiformat.hpp"
#include "gaussdisc/numerics.hpp"

namespace gaussdisc::cli {
namespace {

using json = nlohmann::json;

double parse_number(std::string_view text) {
  const std::string s(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(value)) {
    throw UsageError("not a finite number: '" + s + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void require_monotone(const std::vector<double>& grid, const char* what) {
  if (grid.empty()) throw UsageError(std::string(what) + " grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw UsageError(std::string(what) + " grid must be strictly increasing");
    }
  }
}

void require_range(const std::vector<double>& grid, double lo, double hi,
                   bool hi_open, const char* what) {
  for (double v : grid) {
    if (v < lo || v > hi || (hi_open && v == hi)) {
      std::ostringstream msg;
      msg << what << " value " << v << " outside [" << lo << ", " << hi
          << (hi_open ? ")" : "]");
      throw UsageError(msg.str());
    }
  }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// --- output ---------------------------------------------------------------

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

 private:
  std::ostream& out_;
};

// Collects output in memory and writes it at the end, so a failed run never
// leaves a truncated file behind.
class Sink {
 public:
  Sink(const Settings& s, std::ostream& fallback)
      : path_(s.out), fallback_(fallback) {}
  std::ostream& stream() { return buffer_; }
  void commit() {
    if (!path_) {
      fallback_ << buffer_.str();
      return;
    }
    std::ofstream file(*path_, std::ios::binary | std::ios::trunc);
    if (!file) throw UsageError("cannot open output file '" + *path_ + "'");
    file << buffer_.str();
    if (!file) throw UsageError("failed writing output file '" + *path_ + "'");
  }

 private:
  std::optional<std::string> path_;
  std::ostream& fallback_;
  std::ostringstream buffer_;
};

// --- shared parameter handling ---------------------------------------------

ExperimentParams channel_params(const Settings& s) {
  ExperimentParams p;
  p.visibility = s.visibility.value_or(1.0);
  p.v_th = s.vth.value_or(1.0);
  p.v_en = s.ven.value_or(0.0);
  if (s.squeezing_db && s.squeezing_r) {
    throw UsageError("--squeezing-db and --squeezing-r are mutually exclusive");
  }
  if (s.squeezing_db) p.r = squeezing_from_db(*s.squeezing_db);
  if (s.squeezing_r) p.r = *s.squeezing_r;
  try {
    p.validate();
  } catch (const ArgumentError& e) {
    throw UsageError(e.what());
  }
  return p;
}

std::vector<double> nbar_grid(const Settings& s, std::vector<double> fallback) {
  if (!s.nbar && fallback.empty()) throw UsageError("--nbar is required");
  auto grid = s.nbar.value_or(std::move(fallback));
  require_monotone(grid, "--nbar");
  for (double v : grid) {
    if (v < 0.0) throw UsageError("--nbar values must be >= 0");
  }
  return grid;
}

std::vector<double> loss_grid(const Settings& s, bool required) {
  if (!s.loss) {
    if (required) {
      throw UsageError("--loss is required (channel loss values are not assumed)");
    }
    return {0.0};
  }
  require_monotone(*s.loss, "--loss");
  require_range(*s.loss, 0.0, 1.0, false, "--loss");
  return *s.loss;
}

double snr_of(Alphabet format, const ExperimentParams& p,
              const EnergyBudget& budget) {
  switch (format) {
    case Alphabet::kBpsk: {
      const auto rx = BpskReceiver::from(p, budget);
      return rx.mean * rx.mean / rx.variance;
    }
    case Alphabet::kAsk3: {
      const auto rx = Ask3Receiver::from(p, budget);
      return 4.0 * rx.half_spacing * rx.half_spacing / rx.variance;
    }
    case Alphabet::kPsk3: {
      const auto d = DualHomodyneDistribution::through_channel(p, budget);
      return d.mu_x * d.mu_x / d.sigma2_x;
    }
    case Alphabet::kPsk4: {
      const auto d = DualHomodyneDistribution::through_channel(p, budget);
      return d.mu_x * d.mu_x / (d.sigma2_x + d.sigma2_p);
    }
  }
  return 0.0;
}

double optimal_gamma_for(Alphabet format, double n_mean,
                         const ExperimentParams& p) {
  if (n_mean == 0.0) return 0.0;
  switch (format) {
    case Alphabet::kBpsk: return optimal_gamma_lossy(n_mean, p);
    case Alphabet::kAsk3: return ask3_optimal_gamma(n_mean, p);
    case Alphabet::kPsk3:
    case Alphabet::kPsk4: {
      // No closed form; coarse grid then golden refinement on -error.
      auto score = [&](double g) {
        try {
          return -analytic_error(format, p, {n_mean, g});
        } catch (const InfeasibleBudget&) {
          return -1.0;
        }
      };
      constexpr int kGrid = 50;
      constexpr double kTop = 0.99;
      int best = 0;
      double best_score = score(0.0);
      for (int i = 1; i <= kGrid; ++i) {
        const double v = score(kTop * i / kGrid);
        if (v > best_score) {
          best_score = v;
          best = i;
        }
      }
      if (best == 0) return 0.0;
      return numerics::maximize_golden(score, kTop * (best - 1) / kGrid,
                                       kTop * std::min(best + 1, kGrid) / kGrid,
                                       1e-6);
    }
  }
  return 0.0;
}

// --- ResultRow --------------------------------------------------------------

const std::vector<std::string> kResultHeader = {
    "n_mean",  "gamma",     "loss",      "snr",         "p_sql",
    "p_hel_coherent", "p_gauss", "p_hel_squeezed", "p_model", "p_mc_mean",
    "p_mc_std", "mutual_info"};

constexpr const char* kInfeasible = "infeasible";

struct SweepPlan {
  Alphabet format = Alphabet::kBpsk;
  std::vector<double> nbar;
  std::vector<double> loss;
  GammaSpec gamma;
  bool fixed_squeezing = false;
  ExperimentParams params;
  bool mc = false;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

std::vector<std::string> result_row(const SweepPlan& plan, double n_mean,
                                    std::optional<double> gamma_value,
                                    double loss, std::uint64_t point_index) {
  ExperimentParams p = plan.params;
  p.loss = loss;
  const auto bounds = bound_set(n_mean);

  double gamma = 0.0;
  bool feasible = true;
  if (plan.fixed_squeezing) {
    const double s = std::sinh(p.r);
    const double budget = n_mean * p.visibility * p.visibility;
    gamma = budget > 0.0 ? s * s / budget : (p.r == 0.0 ? 0.0 : 1.0);
    feasible = gamma < 1.0;
  } else if (gamma_value) {
    gamma = *gamma_value;
  } else {
    gamma = optimal_gamma_for(plan.format, n_mean, p);
  }

  std::vector<std::string> row = {format_number(n_mean), format_number(gamma),
                                   format_number(loss)};
  std::string snr, model, mc_mean, mc_std, mi;
  if (feasible) {
    const EnergyBudget budget{n_mean, gamma};
    try {
      const double p_model = analytic_error(plan.format, p, budget);
      snr = format_number(snr_of(plan.format, p, budget));
      model = format_number(p_model);
      if (plan.format == Alphabet::kBpsk) {
        // Derived from the printed value so the CSV re-derives exactly.
        mi = format_number(mutual_information(std::stod(model)));
      }
      if (plan.mc) {
        TrialBatch batch{plan.samples, derive_seed(plan.seed, point_index),
                         plan.format, p, budget};
        const auto est = run_batch(batch, plan.threads);
        mc_mean = format_number(est.mean);
        mc_std = format_number(est.std);
      }
    } catch (const InfeasibleBudget&) {
      feasible = false;
    }
  }
  if (!feasible) {
    snr.clear();
    model = kInfeasible;
    mi = plan.format == Alphabet::kBpsk ? kInfeasible : "";
    mc_mean.clear();
    mc_std.clear();
  }
  row.insert(row.end(),
             {snr, format_number(bounds.p_sql),
              format_number(bounds.p_helstrom_coherent),
              format_number(bounds.p_gaussian_limit),
              format_number(bounds.p_helstrom_squeezed), model, mc_mean,
              mc_std, mi});
  return row;
}

SweepPlan make_plan(const Settings& s, bool mc_command) {
  SweepPlan plan;
  try {
    plan.format = parse_alphabet(s.format.value_or("bpsk"));
  } catch (const ArgumentError& e) {
    throw UsageError(e.what());
  }
  plan.params = channel_params(s);
  plan.fixed_squeezing = s.squeezing_db.has_value() || s.squeezing_r.has_value();
  if (plan.fixed_squeezing && s.gamma) {
    throw UsageError("--gamma cannot be combined with a fixed squeezing level");
  }
  plan.gamma = s.gamma.value_or(GammaSpec{false, {0.0}});
  if (!plan.gamma.optimal) {
    require_monotone(plan.gamma.values, "--gamma");
    require_range(plan.gamma.values, 0.0, 1.0, true, "--gamma");
  }
  if (mc_command) {
    plan.nbar = nbar_grid(s, {1.0});
    plan.loss = loss_grid(s, false);
    plan.mc = true;
    plan.samples = s.samples.value_or(5'000'000);
  } else {
    plan.nbar = nbar_grid(s, {});
    plan.loss = loss_grid(s, true);
    plan.mc = s.samples.has_value();
    plan.samples = s.samples.value_or(0);
  }
  if (plan.mc && plan.samples < 1) throw UsageError("--samples must be >= 1");
  plan.seed = s.seed.value_or(1);
  plan.threads = s.threads.value_or(0);
  return plan;
}

void emit_sweep(const SweepPlan& plan, std::ostream& out) {
  CsvWriter csv(out);
  csv.row(kResultHeader);
  std::uint64_t index = 0;
  std::vector<std::optional<double>> gammas;
  if (plan.fixed_squeezing || plan.gamma.optimal) {
    gammas.push_back(std::nullopt);
  } else {
    for (double g : plan.gamma.values) gammas.emplace_back(g);
  }
  for (double loss : plan.loss) {
    for (const auto& g : gammas) {
      for (double n : plan.nbar) {
        csv.row(result_row(plan, n, g, loss, index++));
      }
    }
  }
}

// --- subcommands -------------------------------------------------------------

void cmd_bounds(const Settings& s, std::ostream& out) {
  std::vector<double> fallback;
  for (int i = 0; i <= 50; ++i) fallback.push_back(0.1 * i);
  const auto grid = nbar_grid(s, fallback);
  CsvWriter csv(out);
  csv.row({"n_mean", "p_sql", "p_hel_coherent", "p_gauss", "p_hel_squeezed",
           "mi_sql", "mi_hel_coherent", "mi_gauss", "mi_hel_squeezed"});
  for (double n : grid) {
    const auto b = bound_set(n);
    std::vector<std::string> row = {format_number(n)};
    const double ps[] = {b.p_sql, b.p_helstrom_coherent, b.p_gaussian_limit,
                         b.p_helstrom_squeezed};
    for (double p : ps) row.push_back(format_number(p));
    for (std::size_t i = 1; i <= 4; ++i) {
      row.push_back(format_number(mutual_information(std::stod(row[i]))));
    }
    csv.row(row);
  }
}

void cmd_crossover(std::ostream& out) {
  const double n = crossover_photon_number();
  const auto b = bound_set(n);
  CsvWriter csv(out);
  csv.row({"n_mean", "p_gauss", "p_hel_coherent"});
  csv.row({format_number(n), format_number(b.p_gaussian_limit),
           format_number(b.p_helstrom_coherent)});
}

void cmd_psk3(const Settings& s, std::ostream& out) {
  const auto nbar = nbar_grid(s, {1.0});
  std::vector<double> gammas;
  if (s.gamma) {
    if (s.gamma->optimal) throw UsageError("psk3 takes a --gamma grid, not 'optimal'");
    gammas = s.gamma->values;
  } else {
    for (int i = 0; i < 20; ++i) gammas.push_back(0.05 * i);
  }
  require_monotone(gammas, "--gamma");
  require_range(gammas, 0.0, 1.0, true, "--gamma");

  const auto methods =
      s.methods.value_or(std::vector<std::string>{"quadrature", "phase"});
  bool quad = false, phase = false, mc = false;
  for (const auto& m : methods) {
    if (m == "quadrature") quad = true;
    else if (m == "phase") phase = true;
    else if (m == "mc") mc = true;
    else throw UsageError("unknown psk3 method '" + m + "'");
  }
  const std::uint64_t samples = s.samples.value_or(1'000'000);
  const std::uint64_t seed = s.seed.value_or(1);

  CsvWriter csv(out);
  csv.row({"n_mean", "gamma", "p_quadrature", "p_phase", "p_mc_mean",
           "p_mc_std", "p_coherent"});
  std::uint64_t index = 0;
  for (double n : nbar) {
    const double coherent = psk3_error_quadrature(n, 0.0);
    for (double g : gammas) {
      std::vector<std::string> row = {format_number(n), format_number(g)};
      row.push_back(quad ? format_number(psk3_error_quadrature(n, g)) : "");
      row.push_back(phase ? format_number(psk3_error_phase(n, g)) : "");
      if (mc) {
        TrialBatch batch{samples, derive_seed(seed, index), Alphabet::kPsk3,
                         ExperimentParams{}, {n, g}};
        const auto est = run_batch(batch, s.threads.value_or(0));
        row.push_back(format_number(est.mean));
        row.push_back(format_number(est.std));
      } else {
        row.insert(row.end(), {"", ""});
      }
      row.push_back(format_number(coherent));
      csv.row(row);
      ++index;
    }
  }
}

void cmd_ask3(const Settings& s, std::ostream& out) {
  const auto nbar = nbar_grid(s, {0.5, 1.0, 2.0});
  const auto loss = loss_grid(s, false);
  const auto params = channel_params(s);
  const GammaSpec gamma = s.gamma.value_or(GammaSpec{true, {}});
  if (!gamma.optimal) {
    require_monotone(gamma.values, "--gamma");
    require_range(gamma.values, 0.0, 1.0, true, "--gamma");
  }
  CsvWriter csv(out);
  csv.row({"n_mean", "gamma", "loss", "p_coherent", "p_model",
           "p_optimal_closed_form"});
  for (double l : loss) {
    ExperimentParams p = params;
    p.loss = l;
    for (double n : nbar) {
      const std::vector<double> gs =
          gamma.optimal ? std::vector<double>{n > 0.0 ? ask3_optimal_gamma(n, p) : 0.0}
                        : gamma.values;
      for (double g : gs) {
        std::string coherent, model;
        try {
          coherent = format_number(ask3_error_channel(p, {n, 0.0}));
        } catch (const InfeasibleBudget&) {
          coherent = kInfeasible;
        }
        try {
          model = format_number(ask3_error_channel(p, {n, g}));
        } catch (const InfeasibleBudget&) {
          model = kInfeasible;
        }
        const double closed =
            2.0 / 3.0 * numerics::erfc(std::sqrt(3.0 * (n * n + n)) / 2.0);
        csv.row({format_number(n), format_number(g), format_number(l), coherent,
                 model, format_number(closed)});
      }
    }
  }
}

void cmd_psk4(const Settings& s, std::ostream& out) {
  const auto nbar = nbar_grid(s, {1.0});
  std::vector<double> gammas;
  if (s.gamma) {
    if (s.gamma->optimal) throw UsageError("psk4 takes a --gamma grid, not 'optimal'");
    gammas = s.gamma->values;
  } else {
    for (int i = 0; i < 10; ++i) gammas.push_back(0.1 * i);
  }
  require_monotone(gammas, "--gamma");
  require_range(gammas, 0.0, 1.0, true, "--gamma");
  const bool mc = s.samples.has_value();
  const std::uint64_t seed = s.seed.value_or(1);

  CsvWriter csv(out);
  csv.row({"n_mean", "gamma", "r", "snr", "variance", "p_quadrature",
           "p_mc_mean", "p_mc_std"});
  std::uint64_t index = 0;
  for (double n : nbar) {
    for (double g : gammas) {
      const EnergyBudget budget{n, g};
      const double r = budget.squeezing();
      std::vector<std::string> row = {
          format_number(n), format_number(g), format_number(r),
          format_number(psk4_snr(n, g)), format_number(psk4_variance(r)),
          format_number(psk4_error_quadrature(n, g))};
      if (mc) {
        TrialBatch batch{*s.samples, derive_seed(seed, index), Alphabet::kPsk4,
                         ExperimentParams{}, budget};
        const auto est = run_batch(batch, s.threads.value_or(0));
        row.push_back(format_number(est.mean));
        row.push_back(format_number(est.std));
      } else {
        row.insert(row.end(), {"", ""});
      }
      csv.row(row);
      ++index;
    }
  }
}

void write_samples(const std::string& path, const std::vector<double>& xs) {
  std::ofstream file(path, std::ios::trunc);
  if (!file) throw UsageError("cannot open sample file '" + path + "'");
  char buf[40];
  for (double x : xs) {
    std::snprintf(buf, sizeof buf, "%.17g\n", x);
    file << buf;
  }
  if (!file) throw UsageError("failed writing sample file '" + path + "'");
}

void cmd_mc(const Settings& s, std::ostream& out) {
  const SweepPlan plan = make_plan(s, true);
  if (s.dump_samples) {
    if (plan.format != Alphabet::kBpsk) {
      throw UsageError("--dump-samples is only available for bpsk");
    }
    const bool single = plan.nbar.size() == 1 && plan.loss.size() == 1 &&
                        (plan.fixed_squeezing || plan.gamma.optimal ||
                         plan.gamma.values.size() == 1);
    if (!single) throw UsageError("--dump-samples needs a single grid point");
  }
  emit_sweep(plan, out);
  if (s.dump_samples) {
    ExperimentParams p = plan.params;
    p.loss = plan.loss.front();
    const double n = plan.nbar.front();
    double gamma;
    if (plan.fixed_squeezing) {
      const double sh = std::sinh(p.r);
      gamma = sh * sh / (n * p.visibility * p.visibility);
    } else if (plan.gamma.optimal) {
      gamma = optimal_gamma_for(plan.format, n, p);
    } else {
      gamma = plan.gamma.values.front();
    }
    const TrialBatch batch{plan.samples, derive_seed(plan.seed, 0), plan.format,
                           p, {n, gamma}};
    write_samples(*s.dump_samples + "_0.txt", draw_bpsk_samples(batch, 0));
    write_samples(*s.dump_samples + "_1.txt", draw_bpsk_samples(batch, 1));
  }
}

std::vector<double> read_samples(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw UsageError("cannot read sample file '" + path + "'");
  std::vector<double> xs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty()) continue;
    try {
      xs.push_back(parse_number(t));
    } catch (const UsageError&) {
      throw UsageError("'" + path + "' line " + std::to_string(line_no) +
                       ": not a number");
    }
  }
  if (file.bad()) throw UsageError("error reading sample file '" + path + "'");
  if (xs.empty()) throw UsageError("sample file '" + path + "' is empty");
  return xs;
}

void cmd_analyze(const std::string& file_0, const std::string& file_1,
                 std::ostream& out) {
  const auto s0 = read_samples(file_0);
  const auto s1 = read_samples(file_1);
  const auto est = estimate_from_samples(s0, s1);
  CsvWriter csv(out);
  csv.row({"errors", "trials", "posterior_alpha", "posterior_beta", "mean",
           "std", "mutual_info"});
  const std::string mean = format_number(est.mean);
  csv.row({std::to_string(est.errors), std::to_string(est.trials),
           format_number(est.posterior_alpha), format_number(est.posterior_beta),
           mean, format_number(est.std),
           format_number(mutual_information(std::stod(mean)))});
}

// --- flag plumbing -------------------------------------------------------------

struct RawFlags {
  std::string config, format, nbar, gamma, loss, out, methods, dump;
  double squeezing_db = 0, squeezing_r = 0, visibility = 1, vth = 1, ven = 0;
  std::uint64_t samples = 0, seed = 0;
  unsigned threads = 0;
  std::map<std::string, CLI::Option*> opts;
};

enum Flag : unsigned {
  kFormat = 1u << 0,
  kNbar = 1u << 1,
  kGamma = 1u << 2,
  kLoss = 1u << 3,
  kChannel = 1u << 4,  // squeezing, visibility, vth, ven
  kMc = 1u << 5,       // samples, seed, threads
  kMethods = 1u << 6,
  kDump = 1u << 7,
};

void add_flags(CLI::App* sub, RawFlags& raw, unsigned which) {
  auto& o = raw.opts;
  o[sub->get_name() + "config"] =
      sub->add_option("--config", raw.config, "JSON config file");
  o[sub->get_name() + "out"] =
      sub->add_option("--out", raw.out, "write CSV here instead of stdout");
  if (which & kFormat)
    o[sub->get_name() + "format"] =
        sub->add_option("--format", raw.format, "bpsk | ask3 | psk3 | psk4");
  if (which & kNbar)
    o[sub->get_name() + "nbar"] = sub->add_option(
        "--nbar", raw.nbar, "mean photon numbers: v1,v2,... or start:stop:count");
  if (which & kGamma)
    o[sub->get_name() + "gamma"] =
        sub->add_option("--gamma", raw.gamma, "squeezing fraction(s) or 'optimal'");
  if (which & kLoss)
    o[sub->get_name() + "loss"] =
        sub->add_option("--loss", raw.loss, "channel loss value(s) in [0,1]");
  if (which & kChannel) {
    auto* db = sub->add_option("--squeezing-db", raw.squeezing_db,
                               "fixed squeezing level in dB");
    auto* r = sub->add_option("--squeezing-r", raw.squeezing_r,
                              "fixed squeezing parameter r");
    db->excludes(r);
    o[sub->get_name() + "squeezing_db"] = db;
    o[sub->get_name() + "squeezing_r"] = r;
    o[sub->get_name() + "visibility"] =
        sub->add_option("--visibility", raw.visibility, "homodyne visibility V");
    o[sub->get_name() + "vth"] =
        sub->add_option("--vth", raw.vth, "thermal noise factor v_th >= 1");
    o[sub->get_name() + "ven"] =
        sub->add_option("--ven", raw.ven, "electronic noise v_en >= 0");
  }
  if (which & kMc) {
    o[sub->get_name() + "samples"] =
        sub->add_option("--samples", raw.samples, "Monte Carlo samples per symbol");
    o[sub->get_name() + "seed"] = sub->add_option("--seed", raw.seed, "master seed");
    o[sub->get_name() + "threads"] = sub->add_option(
        "--threads", raw.threads, "worker threads, 0 = all cores (output unaffected)");
  }
  if (which & kMethods)
    o[sub->get_name() + "methods"] = sub->add_option(
        "--methods", raw.methods, "comma list of quadrature, phase, mc");
  if (which & kDump)
    o[sub->get_name() + "dump"] = sub->add_option(
        "--dump-samples", raw.dump, "bpsk only: write <prefix>_0.txt and <prefix>_1.txt");
}

Settings flags_to_settings(const std::string& sub, const RawFlags& raw) {
  auto given = [&](const std::string& key) {
    const auto it = raw.opts.find(sub + key);
    return it != raw.opts.end() && it->second->count() > 0;
  };
  Settings s;
  if (given("format")) s.format = raw.format;
  if (given("nbar")) s.nbar = parse_grid(raw.nbar);
  if (given("gamma")) s.gamma = parse_gamma(raw.gamma);
  if (given("loss")) s.loss = parse_grid(raw.loss);
  if (given("squeezing_db")) s.squeezing_db = raw.squeezing_db;
  if (given("squeezing_r")) s.squeezing_r = raw.squeezing_r;
  if (given("visibility")) s.visibility = raw.visibility;
  if (given("vth")) s.vth = raw.vth;
  if (given("ven")) s.ven = raw.ven;
  if (given("samples")) s.samples = raw.samples;
  if (given("seed")) s.seed = raw.seed;
  if (given("threads")) s.threads = raw.threads;
  if (given("out")) s.out = raw.out;
  if (given("dump")) s.dump_samples = raw.dump;
  if (given("methods")) {
    std::vector<std::string> ms;
    for (auto part : split(raw.methods, ',')) ms.emplace_back(trim(part));
    s.methods = ms;
  }
  return s;
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> values;
  for (auto part : split(text, ',')) {
    part = trim(part);
    if (part.empty()) throw UsageError("empty entry in grid '" + std::string(text) + "'");
    const auto fields = split(part, ':');
    if (fields.size() == 1) {
      values.push_back(parse_number(part));
    } else if (fields.size() == 3) {
      const double start = parse_number(trim(fields[0]));
      const double stop = parse_number(trim(fields[1]));
      const double count_d = parse_number(trim(fields[2]));
      if (count_d < 1 || count_d != std::floor(count_d) || count_d > 1e7) {
        throw UsageError("grid count must be a positive integer in '" +
                         std::string(part) + "'");
      }
      const auto count = static_cast<long>(count_d);
      if (count == 1) {
        values.push_back(start);
      } else {
        for (long i = 0; i < count; ++i) {
          values.push_back(start + (stop - start) * static_cast<double>(i) /
                                       static_cast<double>(count - 1));
        }
      }
    } else {
      throw UsageError("grid entry '" + std::string(part) +
                       "' is neither a value nor start:stop:count");
    }
  }
  return values;
}

GammaSpec parse_gamma(std::string_view text) {
  if (trim(text) == "optimal") return {true, {}};
  return {false, parse_grid(text)};
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

Settings parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("config must be a JSON object");
  if (!doc.contains("schema_version") ||
      doc["schema_version"] != kConfigSchemaVersion) {
    throw UsageError("config schema_version must be " +
                     std::to_string(kConfigSchemaVersion));
  }

  auto grid_of = [](const json& v, const std::string& key) {
    if (v.is_number()) return std::vector<double>{v.get<double>()};
    if (v.is_string()) return parse_grid(v.get<std::string>());
    if (v.is_array()) {
      std::vector<double> out;
      for (const auto& x : v) {
        if (!x.is_number()) throw UsageError("config '" + key + "' must hold numbers");
        out.push_back(x.get<double>());
      }
      return out;
    }
    throw UsageError("config '" + key + "' must be a number, list or grid string");
  };

  Settings s;
  try {
    for (const auto& [key, v] : doc.items()) {
      if (key == "schema_version") continue;
      if (key == "format") s.format = v.get<std::string>();
      else if (key == "nbar") s.nbar = grid_of(v, key);
      else if (key == "loss") s.loss = grid_of(v, key);
      else if (key == "gamma") {
        if (v.is_string()) s.gamma = parse_gamma(v.get<std::string>());
        else s.gamma = GammaSpec{false, grid_of(v, key)};
      } else if (key == "squeezing_db") s.squeezing_db = v.get<double>();
      else if (key == "squeezing_r") s.squeezing_r = v.get<double>();
      else if (key == "visibility") s.visibility = v.get<double>();
      else if (key == "vth") s.vth = v.get<double>();
      else if (key == "ven") s.ven = v.get<double>();
      else if (key == "samples") s.samples = v.get<std::uint64_t>();
      else if (key == "seed") s.seed = v.get<std::uint64_t>();
      else if (key == "threads") s.threads = v.get<unsigned>();
      else if (key == "out") s.out = v.get<std::string>();
      else if (key == "dump_samples") s.dump_samples = v.get<std::string>();
      else if (key == "methods") s.methods = v.get<std::vector<std::string>>();
      else throw UsageError("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("config has a value of the wrong type: ") + e.what());
  }
  return s;
}

Settings load_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw UsageError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << file.rdbuf();
  return parse_config(text.str());
}

Settings merge(Settings base, const Settings& flags) {
  auto over = [](auto& dst, const auto& src) {
    if (src) dst = src;
  };
  over(base.format, flags.format);
  over(base.nbar, flags.nbar);
  over(base.gamma, flags.gamma);
  over(base.loss, flags.loss);
  // A squeezing flag replaces either squeezing key from the config.
  if (flags.squeezing_db || flags.squeezing_r) {
    base.squeezing_db = flags.squeezing_db;
    base.squeezing_r = flags.squeezing_r;
  }
  over(base.visibility, flags.visibility);
  over(base.vth, flags.vth);
  over(base.ven, flags.ven);
  over(base.samples, flags.samples);
  over(base.seed, flags.seed);
  over(base.out, flags.out);
  over(base.methods, flags.methods);
  over(base.threads, flags.threads);
  over(base.dump_samples, flags.dump_samples);
  return base;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Error limits and Monte Carlo for Gaussian-state PSK/ASK discrimination",
               "gaussdisc"};
  app.require_subcommand(1, 1);

  RawFlags raw;
  auto* bounds = app.add_subcommand("bounds", "SQL, Helstrom and Gaussian BPSK limits");
  add_flags(bounds, raw, kNbar);
  auto* sweep = app.add_subcommand("sweep", "model error over (loss, gamma, nbar) grids");
  add_flags(sweep, raw, kFormat | kNbar | kGamma | kLoss | kChannel | kMc);
  auto* psk3 = app.add_subcommand("psk3", "PSK-3 dual-homodyne error against gamma");
  add_flags(psk3, raw, kNbar | kGamma | kMc | kMethods);
  auto* ask3 = app.add_subcommand("ask3", "ASK-3 homodyne error");
  add_flags(ask3, raw, kNbar | kGamma | kLoss | kChannel);
  auto* psk4 = app.add_subcommand("psk4", "PSK-4 SNR, variance and error");
  add_flags(psk4, raw, kNbar | kGamma | kMc);
  auto* mc = app.add_subcommand("mc", "Monte Carlo receiver simulation");
  add_flags(mc, raw, kFormat | kNbar | kGamma | kLoss | kChannel | kMc | kDump);
  auto* analyze = app.add_subcommand("analyze", "error estimate from recorded outcomes");
  std::string file_0, file_1;
  analyze->add_option("file0", file_0, "outcomes recorded for symbol 0")->required();
  analyze->add_option("file1", file_1, "outcomes recorded for symbol 1")->required();
  add_flags(analyze, raw, 0);
  auto* crossover = app.add_subcommand(
      "crossover", "n̄ where the Gaussian limit meets the coherent Helstrom bound");
  add_flags(crossover, raw, 0);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  Settings settings;
  try {
    Settings flags = flags_to_settings(name, raw);
    const auto cfg = raw.opts.at(name + "config");
    settings = cfg->count() ? merge(load_config(raw.config), flags) : flags;
  } catch (const UsageError& e) {
    err << "gaussdisc " << name << ": " << e.what() << '\n';
    return kUsageError;
  }

  try {
    Sink sink(settings, out);
    if (name == "bounds") cmd_bounds(settings, sink.stream());
    else if (name == "sweep") emit_sweep(make_plan(settings, false), sink.stream());
    else if (name == "psk3") cmd_psk3(settings, sink.stream());
    else if (name == "ask3") cmd_ask3(settings, sink.stream());
    else if (name == "psk4") cmd_psk4(settings, sink.stream());
    else if (name == "mc") cmd_mc(settings, sink.stream());
    else if (name == "analyze") cmd_analyze(file_0, file_1, sink.stream());
    else if (name == "crossover") cmd_crossover(sink.stream());
    sink.commit();
  } catch (const UsageError& e) {
    err << "gaussdisc " << name << ": " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "gaussdisc " << name << ": computation failed: " << e.what() << '\n';
    return kComputationError;
  }
  return kSuccess;
}

}  // namespace gaussdisc::cli
