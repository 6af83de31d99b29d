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
#include <vector>

#include "doctest.h"
#include "support/random_states.hpp"
#include "wpd/errors.hpp"
#include "wpd/pairwise.hpp"

using namespace wpd;
using wpd::testing::Rng;

namespace {

Vector vec2(Complex a, Complex b) {
  Vector v(2);
  v << a, b;
  return v;
}

InterferometerState equal_three_path(const DetectorGram& gram) {
  const double a = 1.0 / std::sqrt(3.0);
  const std::vector<Complex> c{a, a, a};
  return build_pure_state(c, gram);
}

// rho_00 = 0.4, rho_11 = 0.1, rho_22 = 0.5: the (0, 1) pair is 0.8 / 0.2.
InterferometerState unbalanced_pair_state() {
  const std::vector<Complex> c{std::sqrt(0.4), std::sqrt(0.1), std::sqrt(0.5)};
  return build_pure_state(c, DetectorGram::identical(3));
}

InterferometerState hundred_twenty_degrees() {
  const double h = std::sqrt(3.0) / 2.0;
  const std::vector<DetectorState> d{DetectorState(vec2(1, 0)), DetectorState(vec2(0.5, h)),
                                     DetectorState(vec2(0.5, -h))};
  const double a = 1.0 / std::sqrt(3.0);
  const std::vector<Complex> c{a, a, a};
  return build_pure_state(c, d);
}

bool close(const Matrix2& a, const Matrix2& b, double tol) {
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

TEST_CASE("open_pair") {
  Matrix2 expected;
  SUBCASE("equal amplitudes, identical detectors") {
    expected << 0.5, 0.5, 0.5, 0.5;
    CHECK(close(open_pair(equal_three_path(DetectorGram::identical(3)), 0, 1), expected, 1e-15));
  }
  SUBCASE("decohered pair") {
    const std::vector<DetectorState> d{DetectorState(vec2(1, 0)), DetectorState(vec2(0, 1)),
                                       DetectorState(vec2(1, 0))};
    expected << 0.5, 0.0, 0.0, 0.5;
    CHECK(close(open_pair(equal_three_path(DetectorGram::from_detectors(d)), 0, 1), expected,
                1e-15));
  }
  SUBCASE("0.8 / 0.2 renormalization") {
    expected << 0.8, 0.4, 0.4, 0.2;
    CHECK(close(open_pair(unbalanced_pair_state(), 0, 1), expected, 1e-15));
  }
  SUBCASE("dark pair") {
    const std::vector<Complex> c{1.0, 0.0, 0.0};
    const auto s = build_pure_state(c, DetectorGram::identical(3));
    CHECK_THROWS_AS(open_pair(s, 1, 2), DarkPairError);
    CHECK_NOTHROW(open_pair(s, 0, 2));
  }
  SUBCASE("bad indices") {
    const auto s = unbalanced_pair_state();
    CHECK_THROWS_AS(open_pair(s, 1, 1), ArgumentError);
    CHECK_THROWS_AS(open_pair(s, 0, 3), ArgumentError);
  }
}

TEST_CASE("pair_visibility") {
  CHECK(pair_visibility(equal_three_path(DetectorGram::identical(3)), 0, 2) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pair_visibility(equal_three_path(DetectorGram::orthogonal(3)), 0, 2) == 0.0);
  // 2 (1/3)(0.5) / (2/3)
  CHECK(std::abs(pair_visibility(hundred_twenty_degrees(), 1, 2) - 0.5) < 1e-15);
  // 2 sqrt(0.16) / 1
  CHECK(std::abs(pair_visibility(unbalanced_pair_state(), 0, 1) - 0.8) < 1e-15);
}

TEST_CASE("pair_distinguishability") {
  CHECK(pair_distinguishability(equal_three_path(DetectorGram::orthogonal(3)), 0, 1) == 1.0);
  CHECK(std::abs(pair_distinguishability(equal_three_path(DetectorGram::identical(3)), 0, 1)) <
        1e-15);
  CHECK(std::abs(pair_distinguishability(unbalanced_pair_state(), 0, 1) - 0.2) < 1e-15);
}

TEST_CASE("pair_metrics") {
  SUBCASE("pure state saturates") {
    const auto m = pair_metrics(hundred_twenty_degrees(), 0, 1);
    CHECK(std::abs(m.slack) < 1e-15);
    CHECK(std::abs(m.visibility + m.distinguishability - 1.0) < 1e-15);
    CHECK(std::abs(m.pair_weight - 2.0 / 3.0) < 1e-15);
  }
  SUBCASE("maximally mixed with overlap 0.7") {
    Matrix gram(2, 2);
    gram << 1.0, 0.7, 0.7, 1.0;
    const auto s = build_mixed_state(Matrix::Identity(2, 2) * 0.5, gram);
    const auto m = pair_metrics(s, 0, 1);
    CHECK(m.visibility == 0.0);
    CHECK(std::abs(m.distinguishability - 0.3) < 1e-15);
    CHECK(std::abs(m.slack - 0.7) < 1e-15);
  }
  SUBCASE("orthogonal detectors") {
    Rng rng(7);
    const auto s = build_mixed_state(QuantonDensityMatrix(wpd::testing::random_density(rng, 4)),
                                     DetectorGram::orthogonal(4));
    const auto m = pair_metrics(s, 1, 3);
    CHECK(m.visibility == 0.0);
    CHECK(m.distinguishability == 1.0);
    CHECK(m.slack == 0.0);
  }
}

TEST_CASE("property: two-path duality over random mixed states") {
  Rng rng(404);
  int pairs = 0;
  for (int t = 0; t < 10000; ++t) {
    const Eigen::Index n = wpd::testing::uniform_int(rng, 2, 6);
    const auto s = wpd::testing::random_mixed_state(rng, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const auto m = pair_metrics(s, i, j);
        const auto r = pair_metrics(s, j, i);
        ++pairs;
        REQUIRE(m.visibility >= 0.0);
        REQUIRE(m.visibility <= 1.0 + 1e-12);
        REQUIRE(m.distinguishability >= -1e-12);
        REQUIRE(m.distinguishability <= 1.0);
        REQUIRE(m.visibility + m.distinguishability <= 1.0 + 1e-10);
        REQUIRE(std::abs(m.visibility + m.distinguishability + m.slack - 1.0) <= 1e-10);
        REQUIRE(m.slack >= -1e-12);
        REQUIRE(m.visibility == r.visibility);
        REQUIRE(m.distinguishability == r.distinguishability);
        REQUIRE(m.slack == r.slack);
        REQUIRE(m.pair_weight == r.pair_weight);
        REQUIRE(m.reduced(0, 0) == r.reduced(1, 1));
        REQUIRE(m.reduced(0, 1) == r.reduced(1, 0));
      }
    }
  }
  CHECK(pairs > 10000);
}

TEST_CASE("property: pure states saturate every pair") {
  Rng rng(505);
  for (int t = 0; t < 5000; ++t) {
    const Eigen::Index n = wpd::testing::uniform_int(rng, 2, 6);
    const auto s = wpd::testing::random_pure_state(rng, n, false);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const auto m = pair_metrics(s, i, j);
        REQUIRE(std::abs(m.visibility + m.distinguishability - 1.0) <= 1e-10);
        REQUIRE(m.slack <= 1e-10);
      }
    }
  }
}
