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
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gaussdisc::cli {

enum ExitCode : int { kSuccess = 0, kComputationError = 1, kUsageError = 2 };

/// Bad flags, bad config or unreadable/unwritable files.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "a,b,c" or "start:stop:count" (inclusive, evenly spaced), or a mix of
/// both separated by commas. Throws UsageError.
std::vector<double> parse_grid(std::string_view text);

/// γ is either a list of values or the literal "optimal".
struct GammaSpec {
  bool optimal = false;
  std::vector<double> values;
};
GammaSpec parse_gamma(std::string_view text);

/// Every option a subcommand may read. Config-file values are loaded first
/// and command-line flags override them key by key.
struct Settings {
  std::optional<std::string> format;
  std::optional<std::vector<double>> nbar;
  std::optional<GammaSpec> gamma;
  std::optional<std::vector<double>> loss;
  std::optional<double> squeezing_db;
  std::optional<double> squeezing_r;
  std::optional<double> visibility;
  std::optional<double> vth;
  std::optional<double> ven;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::vector<std::string>> methods;
  std::optional<unsigned> threads;
  std::optional<std::string> dump_samples;
};

inline constexpr int kConfigSchemaVersion = 1;

/// Reads a JSON config document. Requires "schema_version": 1 and rejects
/// unknown keys.
Settings load_config(const std::string& path);
Settings parse_config(std::string_view json_text);

/// Overlay: fields set in `flags` win.
Settings merge(Settings base, const Settings& flags);

/// Probability formatting used by every CSV writer (10 significant digits).
std::string format_number(double value);

/// Entry point shared by the executable and the tests. args[0] is the
/// program name. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace gaussdisc::cli
