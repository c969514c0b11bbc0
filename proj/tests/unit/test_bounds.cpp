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

#include <chrono>
#include <cmath>

#include "gaussdisc/bounds.hpp"
#include "gaussdisc/errors.hpp"
#include "oracles.hpp"

using namespace gaussdisc;

TEST_CASE("homodyne_error") {
  CHECK(homodyne_error(0) == 0.5);
  CHECK(homodyne_error(4) == doctest::Approx(oracle::kSql1).epsilon(1e-13));
  CHECK(homodyne_error(8) == doctest::Approx(oracle::kGauss1).epsilon(1e-13));
  CHECK_THROWS_AS(homodyne_error(-1e-9), ArgumentError);
}

TEST_CASE("helstrom_error") {
  CHECK(helstrom_error(0) == 0.5);
  CHECK(helstrom_error(4) == doctest::Approx(oracle::kHelCoherent1).epsilon(1e-12));
  CHECK(helstrom_error(8) == doctest::Approx(oracle::kHelSqueezed1).epsilon(1e-10));
  CHECK_THROWS_AS(helstrom_error(-1), ArgumentError);
  // Far tail: ½(1 - √(1-u)) → u/4 without cancelling to zero.
  CHECK(helstrom_error(60) == doctest::Approx(0.25 * std::exp(-60.0)).epsilon(1e-14));
  CHECK(helstrom_error(25) == doctest::Approx(0.25 * std::exp(-25.0)).epsilon(1e-10));
  CHECK(helstrom_error(700) > 0.0);
}

TEST_CASE("bound_set") {
  const auto zero = bound_set(0);
  CHECK(zero.p_sql == 0.5);
  CHECK(zero.p_helstrom_coherent == 0.5);
  CHECK(zero.p_gaussian_limit == 0.5);
  CHECK(zero.p_helstrom_squeezed == 0.5);

  const auto one = bound_set(1);
  CHECK(one.p_sql == doctest::Approx(oracle::kSql1).epsilon(1e-13));
  CHECK(one.p_helstrom_coherent == doctest::Approx(oracle::kHelCoherent1).epsilon(1e-12));
  CHECK(one.p_gaussian_limit == doctest::Approx(oracle::kGauss1).epsilon(1e-13));
  CHECK(one.p_helstrom_squeezed == doctest::Approx(oracle::kHelSqueezed1).epsilon(1e-10));

  // Sampled points of the limit curves at n̄ = 2.15 (mpmath).
  const auto b = bound_set(2.15);
  CHECK(b.p_sql == doctest::Approx(0.00168081501570616).epsilon(1e-12));
  CHECK(b.p_helstrom_coherent == doctest::Approx(4.60285670458791e-5).epsilon(1e-10));
  CHECK(b.p_gaussian_limit == doctest::Approx(9.70999640115126e-8).epsilon(1e-12));
  CHECK(b.p_helstrom_squeezed == doctest::Approx(4.29439999762934e-13).epsilon(1e-3));
  CHECK_THROWS_AS(bound_set(-0.1), ArgumentError);
}

TEST_CASE("crossover between the Gaussian limit and the coherent Helstrom bound") {
  CHECK(crossover_gap(0.5) > 0.0);
  CHECK(crossover_gap(1.0) < 0.0);
  const auto start = std::chrono::steady_clock::now();
  const double n = crossover_photon_number();
  const auto elapsed = std::chrono::steady_clock::now() - start;
  CHECK(std::abs(n - oracle::kCrossover) < 1e-6);
  CHECK(elapsed < std::chrono::seconds(1));
}

TEST_CASE("bound orderings on a dense grid") {
  const double cross = crossover_photon_number();
  int violations = 0;
  for (int i = 1; i <= 2000; ++i) {
    const double n = 5.0 * i / 2000;
    const auto b = bound_set(n);
    violations += !(b.p_helstrom_squeezed < b.p_helstrom_coherent);
    violations += !(b.p_helstrom_coherent < b.p_sql);
    violations += !(b.p_helstrom_squeezed < b.p_gaussian_limit);
    violations += !(b.p_gaussian_limit < b.p_sql);
    if (n > cross + 1e-6) violations += !(b.p_gaussian_limit < b.p_helstrom_coherent);
    if (n < cross - 1e-6) violations += !(b.p_gaussian_limit > b.p_helstrom_coherent);
    for (double p : {b.p_sql, b.p_helstrom_coherent, b.p_gaussian_limit, b.p_helstrom_squeezed}) {
      violations += !(p >= 0.0 && p <= 0.5);
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("error functions decrease in SNR and Helstrom stays below homodyne") {
  double prev_hom = homodyne_error(0.0);
  double prev_hel = helstrom_error(0.0);
  for (int i = 1; i <= 4000; ++i) {
    const double s = 0.01 * i;
    const double hom = homodyne_error(s);
    const double hel = helstrom_error(s);
    CHECK(hom < prev_hom);
    CHECK(hel < prev_hel);
    CHECK(hel <= hom + 1e-12);
    prev_hom = hom;
    prev_hel = hel;
  }
}

TEST_CASE("mutual_information") {
  CHECK(mutual_information(0.0) == 1.0);
  CHECK(mutual_information(1.0) == 1.0);
  CHECK(mutual_information(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(mutual_information(0.02275) == doctest::Approx(0.843385629665393).epsilon(1e-12));
  CHECK_THROWS_AS(mutual_information(-0.01), ArgumentError);
  CHECK_THROWS_AS(mutual_information(1.01), ArgumentError);
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    CHECK(mutual_information(p) == doctest::Approx(mutual_information(1 - p)).epsilon(1e-12));
  }
}
