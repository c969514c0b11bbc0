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

#include <doctest.h>

#include <cmath>
#include <array>
#include <cstring>
#include <set>
#include <vector>

#include "gaussdisc/errors.hpp"
#include "gaussdisc/random_stream.hpp"

using gaussdisc::RandomStream;
using gaussdisc::sample_normal;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using gaussdisc::detail::philox4x32_10;
  using Block = std::array<std::uint32_t, 4>;
  // Random123 kat_vectors.
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
        Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({~0u, ~0u, ~0u, ~0u}, {~0u, ~0u}) ==
        Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                      {0xa4093822, 0x299f31d0}) ==
        Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});

  // The stream packs (block, index) into the counter and the seed into the key.
  RandomStream zero(0, 0);
  CHECK(zero() == 0xe169c58d6627e8d5ull);
  CHECK(zero() == 0x9b00dbd8bc57ac4cull);
}

TEST_CASE("equal (seed, index) pairs replay byte-identical sequences") {
  RandomStream a(42, 7);
  RandomStream b(42, 7);
  std::vector<double> xa, xb;
  for (int i = 0; i < 10000; ++i) {
    xa.push_back(a.standard_normal());
    xb.push_back(b.standard_normal());
  }
  CHECK(std::memcmp(xa.data(), xb.data(), xa.size() * sizeof(double)) == 0);
}

TEST_CASE("distinct streams differ and are uncorrelated") {
  RandomStream a(42, 0);
  RandomStream b(42, 1);
  RandomStream c(43, 0);
  const int n = 200000;
  double sab = 0.0, sac = 0.0;
  int equal = 0;
  for (int i = 0; i < n; ++i) {
    const double x = a.standard_normal();
    const double y = b.standard_normal();
    const double z = c.standard_normal();
    equal += (x == y) + (x == z);
    sab += x * y;
    sac += x * z;
  }
  CHECK(equal == 0);
  CHECK(std::abs(sab / n) < 5.0 / std::sqrt(n));
  CHECK(std::abs(sac / n) < 5.0 / std::sqrt(n));
}

TEST_CASE("uniform stays in (0, 1]") {
  RandomStream s(1, 2);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  CHECK(lo > 0.0);
  CHECK(hi <= 1.0);
  CHECK(std::abs(sum / n - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST_CASE("sample_normal moments and edge cases") {
  RandomStream s(2026, 0);
  CHECK(sample_normal(s, 1.25, 0.0) == 1.25);
  CHECK_THROWS_AS(sample_normal(s, 0.0, -1.0), gaussdisc::ArgumentError);

  const int n = 1000000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sample_normal(s, 0.0, 1.0);
    sum += x;
    sum_sq += x * x;
  }
  CHECK(std::abs(sum / n) < 5.0 / std::sqrt(n));
  CHECK(std::abs(sum_sq / n - 1.0) < 5.0 * std::sqrt(2.0 / n));

  RandomStream t(2026, 1);
  double shifted = 0.0;
  for (int i = 0; i < n; ++i) shifted += sample_normal(t, 3.0, 4.0);
  CHECK(std::abs(shifted / n - 3.0) < 5.0 * 2.0 / std::sqrt(n));
}
