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

#include <array>
#include <cstdint>
#include <limits>
#include <optional>

namespace gaussdisc {

namespace detail {
/// One Philox4x32 block with 10 rounds.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);
}  // namespace detail

/// Counter-based random stream (Philox4x32-10).
///
/// The key is the master seed and the upper half of the 128-bit counter is
/// the stream index, so every (master_seed, stream_index) pair addresses a
/// disjoint region of one keyed permutation. Equal pairs replay equal
/// sequences; instances are cheap to create and must not be shared across
/// threads.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const noexcept { return seed_; }
  std::uint64_t stream_index() const noexcept { return index_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()();

  /// Uniform on (0, 1].
  double uniform();

  /// Standard normal via Box-Muller; the second variate of each pair is kept.
  double standard_normal();

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t index_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int next_word_ = 4;
  std::optional<double> spare_;
};

/// Draw from N(mean, variance). variance == 0 returns mean exactly.
double sample_normal(RandomStream& stream, double mean, double variance);

}  // namespace gaussdisc
