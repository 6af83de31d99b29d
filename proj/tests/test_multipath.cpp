// Copyright 2026 The wpduality Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "support/random_states.hpp"
#include "wpd/multipath.hpp"

using namespace wpd;
using wpd::testing::Rng;

namespace {

InterferometerState hundred_twenty_degrees() {
  const double h = std::sqrt(3.0) / 2.0;
  std::vector<DetectorState> d;
  for (const auto& [x, y] : std::vector<std::pair<double, double>>{{1, 0}, {0.5, h}, {0.5, -h}}) {
    Vector v(2);
    v << x, y;
    d.emplace_back(v);
  }
  const double a = 1.0 / std::sqrt(3.0);
  return build_pure_state(std::vector<Complex>{a, a, a}, d);
}

// Brute force over ordered pairs i != j, straight from the definitions.
std::pair<double, double> oracle(const InterferometerState& s) {
  const auto n = s.size();
  double c = 0.0;
  double d = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double g = std::abs(s.gram()(i, j));
      c += std::abs(s.rho()(i, j)) * g;
      d += std::sqrt(s.rho()(i, i).real() * s.rho()(j, j).real()) * g;
    }
  }
  const double k = 1.0 / static_cast<double>(n - 1);
  return {k * c, 1.0 - k * d};
}

}  // namespace

TEST_CASE("path_pairs") {
  const auto p = path_pairs(4);
  REQUIRE(p.size() == 6);
  CHECK(p.front() == PathPair{0, 1});
  CHECK(p.back() == PathPair{2, 3});
}

TEST_CASE("three symmetric paths with overlap magnitude 1/2") {
  const auto s = hundred_twenty_degrees();
  CHECK(is_symmetric(s));
  CHECK(std::abs(coherence(s) - 0.5) < 1e-15);
  CHECK(std::abs(distinguishability(s) - 0.5) < 1e-15);
  const auto r = duality_report(s);
  CHECK(std::abs(r.duality_margin) < 1e-15);
  REQUIRE(r.symmetric_sum_lhs.has_value());
  CHECK(std::abs(*r.symmetric_sum_lhs - 1.0) < 1e-15);
  CHECK(r.pairwise.size() == 3);
  CHECK(r.gram_rank == 2);
  CHECK(r.is_pure);
}

TEST_CASE("asymmetric populations use the weighted reduction") {
  const std::vector<Complex> c{std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2)};
  const auto s = build_pure_state(c, DetectorGram::identical(3));
  const double expected_c = std::sqrt(0.15) + std::sqrt(0.10) + std::sqrt(0.06);
  CHECK_FALSE(is_symmetric(s));
  CHECK(std::abs(coherence(s) - expected_c) < 1e-15);
  CHECK(std::abs(distinguishability(s) - (1.0 - expected_c)) < 1e-15);
  CHECK(std::abs(coherence_from_pair_visibilities(s) - expected_c) < 1e-15);
  CHECK(std::abs(distinguishability_from_pairs(s) - (1.0 - expected_c)) < 1e-15);
  const auto r = duality_report(s);
  CHECK_FALSE(r.symmetric_sum_lhs.has_value());
  CHECK(std::abs(r.weighted_sum_lhs - 1.0) < 1e-15);
}

TEST_CASE("maximally mixed with identical detectors has margin one") {
  for (Eigen::Index n = 2; n <= 6; ++n) {
    const auto s = build_mixed_state(Matrix::Identity(n, n) / static_cast<double>(n),
                                     Matrix::Ones(n, n));
    const auto r = duality_report(s);
    CHECK(r.coherence == 0.0);
    CHECK(std::abs(r.distinguishability) < 1e-15);
    CHECK(std::abs(r.duality_margin - 1.0) < 1e-15);
  }
}

TEST_CASE("dark pairs are listed and skipped") {
  const std::vector<Complex> c{std::sqrt(0.5), std::sqrt(0.5), 0.0, 0.0};
  const auto s = build_pure_state(c, DetectorGram::identical(4));
  const auto r = duality_report(s);
  REQUIRE(r.dark_pairs.size() == 1);
  CHECK(r.dark_pairs[0] == PathPair{2, 3});
  CHECK(r.pairwise.size() == 5);
  CHECK(std::abs(r.coherence - 1.0 / 3.0) < 1e-15);
  CHECK(std::abs(r.coherence_from_pairs - r.coherence) < 1e-12);
}

TEST_CASE("property: n-path duality against the brute-force oracle") {
  Rng rng(606);
  for (int t = 0; t < 3000; ++t) {
    const Eigen::Index n = wpd::testing::uniform_int(rng, 2, 7);
    const auto s = t % 3 == 0 ? wpd::testing::random_pure_state(rng, n)
                 : t % 3 == 1 ? wpd::testing::random_mixed_state(rng, n)
                              : wpd::testing::random_symmetric_state(rng, n, t % 2 == 0);
    const auto r = duality_report(s);
    const auto [c, d] = oracle(s);
    REQUIRE(std::abs(r.coherence - c) <= 1e-12);
    REQUIRE(std::abs(r.distinguishability - d) <= 1e-12);
    REQUIRE(r.coherence >= 0.0);
    REQUIRE(r.coherence <= 1.0 + 1e-12);
    REQUIRE(r.distinguishability >= -1e-12);
    REQUIRE(r.distinguishability <= 1.0 + 1e-12);
    REQUIRE(r.coherence + r.distinguishability <= 1.0 + 1e-10);
    if (s.is_pure()) REQUIRE(std::abs(r.duality_margin) <= 1e-10);
    REQUIRE(std::abs(r.coherence_from_pairs - r.coherence) <= 1e-10);
    REQUIRE(std::abs(r.distinguishability_from_pairs - r.distinguishability) <= 1e-10);
    if (r.is_symmetric) {
      REQUIRE(r.symmetric_sum_lhs.has_value());
      REQUIRE(*r.symmetric_sum_lhs <= 1.0 + 1e-10);
    }
    REQUIRE(r.weighted_sum_lhs <= 1.0 + 1e-10);
  }
}

TEST_CASE("property: relative phases do not change C or D_Q") {
  Rng rng(707);
  for (int t = 0; t < 1000; ++t) {
    const Eigen::Index n = wpd::testing::uniform_int(rng, 2, 6);
    auto c = wpd::testing::random_amplitudes(rng, n);
    const auto d = wpd::testing::random_detectors(rng, n);
    const auto a = build_pure_state(c, d);
    for (auto& z : c)
      z *= std::polar(1.0, wpd::testing::uniform_real(rng, 0, 2 * std::numbers::pi));
    const auto b = build_pure_state(c, d);
    REQUIRE(std::abs(coherence(a) - coherence(b)) <= 1e-12);
    REQUIRE(std::abs(distinguishability(a) - distinguishability(b)) <= 1e-12);
  }
}

TEST_CASE("property: scaling the detector overlaps") {
  // gamma(t) = t gamma + (1 - t) I scales every off-diagonal |gamma_ij| by t.
  Rng rng(818);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index n = wpd::testing::uniform_int(rng, 2, 6);
    const Matrix rho = wpd::testing::random_density(rng, n);
    const Matrix gram = wpd::testing::random_gram(rng, n).matrix();
    double prev_c = -1.0;
    double prev_d = 2.0;
    for (int k = 0; k <= 10; ++k) {
      const double x = k / 10.0;
      const Matrix g = x * gram + (1 - x) * Matrix::Identity(n, n);
      const auto s = build_mixed_state(rho, g);
      const double c = coherence(s);
      const double d = distinguishability(s);
      REQUIRE(c >= prev_c - 1e-12);
      REQUIRE(d <= prev_d + 1e-12);
      prev_c = c;
      prev_d = d;
    }
    REQUIRE(prev_c == doctest::Approx(coherence(build_mixed_state(rho, gram))).epsilon(1e-12));
  }
}

TEST_CASE("property: mixing toward the dephased state") {
  // rho(t) = t rho + (1 - t) diag(rho): C grows linearly in t, D_Q only
  // sees the populations and stays put.
  Rng rng(808);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index n = wpd::testing::uniform_int(rng, 2, 6);
    const Matrix rho = wpd::testing::random_density(rng, n);
    const Matrix dephased = Matrix(rho.diagonal().asDiagonal());
    const auto gram = wpd::testing::random_gram(rng, n);
    double prev_c = -1.0;
    double prev_d = 2.0;
    for (int k = 0; k <= 10; ++k) {
      const double x = k / 10.0;
      const auto s = build_mixed_state(QuantonDensityMatrix(x * rho + (1 - x) * dephased), gram);
      const double c = coherence(s);
      const double d = distinguishability(s);
      REQUIRE(c >= prev_c - 1e-12);
      REQUIRE(d <= prev_d + 1e-12);
      prev_c = c;
      prev_d = d;
    }
  }
}

TEST_CASE("property: symmetric reduction is the plain pair average") {
  Rng rng(909);
  for (int t = 0; t < 1000; ++t) {
    const Eigen::Index n = wpd::testing::uniform_int(rng, 2, 7);
    const auto s = wpd::testing::random_symmetric_state(rng, n, t % 2 == 0);
    REQUIRE(is_symmetric(s));
    const auto r = duality_report(s);
    double v = 0.0;
    double d = 0.0;
    for (const auto& m : r.pairwise) {
      v += m.visibility;
      d += m.distinguishability;
    }
    const double k = 2.0 / static_cast<double>(n * (n - 1));
    REQUIRE(std::abs(k * v - r.coherence) <= 1e-12);
    REQUIRE(std::abs(k * d - r.distinguishability) <= 1e-12);
    REQUIRE(std::abs(*r.symmetric_sum_lhs - (r.coherence + r.distinguishability)) <= 1e-12);
  }
}
