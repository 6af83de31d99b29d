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
#include "wpd/core_state.hpp"
#include "wpd/errors.hpp"

using namespace wpd;
using wpd::testing::Rng;

namespace {

Vector vec(std::initializer_list<Complex> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (const auto& x : xs) v(k++) = x;
  return v;
}

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

TEST_CASE("build_pure_state with identical detectors") {
  const std::vector<Complex> c{kInvSqrt2, kInvSqrt2};
  const std::vector<DetectorState> d{DetectorState(vec({1, 0})), DetectorState(vec({1, 0}))};
  const auto s = build_pure_state(c, d);
  CHECK(s.is_pure());
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      CHECK(std::abs(s.rho()(i, j) - 0.5) < 1e-15);
      CHECK(std::abs(s.gram()(i, j) - 1.0) < 1e-15);
    }
  }
}

TEST_CASE("build_pure_state with orthogonal detectors") {
  const std::vector<Complex> c{kInvSqrt2, kInvSqrt2};
  const std::vector<DetectorState> d{DetectorState(vec({1, 0})), DetectorState(vec({0, 1}))};
  const auto s = build_pure_state(c, d);
  CHECK(std::abs(s.gram()(0, 1)) == 0.0);
  CHECK(std::abs(s.gram()(1, 0)) == 0.0);
}

TEST_CASE("three detectors at 120 degrees") {
  // <d2|d1> = 1/2, <d3|d1> = 1/2, <d3|d2> = 1/4 - 3/4 = -1/2 by hand.
  const double h = std::sqrt(3.0) / 2.0;
  const double a = 1.0 / std::sqrt(3.0);
  const std::vector<Complex> c{a, a, a};
  const std::vector<DetectorState> d{DetectorState(vec({1, 0})), DetectorState(vec({0.5, h})),
                                     DetectorState(vec({0.5, -h}))};
  const auto s = build_pure_state(c, d);
  CHECK(std::abs(s.gram()(1, 0) - 0.5) < 1e-15);
  CHECK(std::abs(s.gram()(2, 0) - 0.5) < 1e-15);
  CHECK(std::abs(s.gram()(2, 1) + 0.5) < 1e-15);
  CHECK(std::abs(std::abs(s.gram()(1, 2)) - 0.5) < 1e-15);
}

TEST_CASE("gram convention stores <d_j|d_i> at (i, j)") {
  const Complex i1(0.0, 1.0);
  const std::vector<DetectorState> d{DetectorState(vec({1, 0})),
                                     DetectorState(vec({i1 * kInvSqrt2, kInvSqrt2}))};
  const auto g = DetectorGram::from_detectors(d);
  // <d_1|d_0> = conj(i/sqrt2) * 1 = -i/sqrt2.
  CHECK(std::abs(g(0, 1) - Complex(0.0, -kInvSqrt2)) < 1e-15);
  CHECK(std::abs(g(1, 0) - Complex(0.0, kInvSqrt2)) < 1e-15);
}

TEST_CASE("build_pure_state errors") {
  const std::vector<DetectorState> d{DetectorState(vec({1, 0})), DetectorState(vec({0, 1}))};
  const std::vector<Complex> not_normalized{1.0, 1.0};
  CHECK_THROWS_AS(build_pure_state(not_normalized, d), NormalizationError);

  const std::vector<DetectorState> mixed_dims{DetectorState(vec({1, 0})),
                                              DetectorState(vec({1, 0, 0}))};
  const std::vector<Complex> c{kInvSqrt2, kInvSqrt2};
  CHECK_THROWS_AS(build_pure_state(c, mixed_dims), DimensionError);

  const std::vector<Complex> one{1.0};
  const std::vector<DetectorState> d1{DetectorState(vec({1}))};
  CHECK_THROWS_AS(build_pure_state(one, d1), DimensionError);

  CHECK_THROWS_AS(DetectorState(vec({1, 1})), ValidationError);
  CHECK_NOTHROW(DetectorState::normalized(vec({1, 1})));
}

TEST_CASE("build_mixed_state") {
  SUBCASE("maximally mixed is valid and not pure") {
    const auto s = build_mixed_state(Matrix::Identity(2, 2) * 0.5, Matrix::Ones(2, 2));
    CHECK_FALSE(s.is_pure());
  }
  SUBCASE("rank one is detected as pure") {
    const auto s = build_mixed_state(mat2(0.5, 0.5, 0.5, 0.5), Matrix::Ones(2, 2));
    CHECK(s.is_pure());
  }
  SUBCASE("trace 0.9") {
    CHECK_THROWS_AS(build_mixed_state(mat2(0.45, 0, 0, 0.45), Matrix::Ones(2, 2)),
                    NormalizationError);
  }
  SUBCASE("not PSD") {
    try {
      build_mixed_state(mat2(0.5, 0.6, 0.6, 0.5), Matrix::Ones(2, 2));
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(e.check() == "psd");
    }
  }
  SUBCASE("not Hermitian") {
    try {
      build_mixed_state(mat2(0.5, 0.1, 0.2, 0.5), Matrix::Ones(2, 2));
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(e.check() == "hermitian");
    }
  }
  SUBCASE("gram without unit diagonal") {
    try {
      build_mixed_state(Matrix::Identity(2, 2) * 0.5, mat2(0.9, 0, 0, 1));
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(e.check() == "unit_diagonal");
    }
  }
  SUBCASE("gram not PSD") {
    CHECK_THROWS_AS(build_mixed_state(Matrix::Identity(2, 2) * 0.5, mat2(1, 1.2, 1.2, 1)),
                    ValidationError);
  }
  SUBCASE("size mismatch") {
    CHECK_THROWS_AS(build_mixed_state(Matrix::Identity(2, 2) * 0.5, Matrix::Ones(3, 3)),
                    DimensionError);
  }
}

TEST_CASE("effective_density") {
  const Matrix rho = mat2(0.5, 0.5, 0.5, 0.5);
  SUBCASE("identical detectors leave rho unchanged") {
    const auto r = effective_density(build_mixed_state(rho, Matrix::Ones(2, 2)));
    CHECK((r.matrix() - rho).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("orthogonal detectors keep only the diagonal") {
    const auto r = effective_density(build_mixed_state(rho, Matrix::Identity(2, 2)));
    CHECK((r.matrix() - Matrix(rho.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("partial overlap 0.3") {
    const auto r = effective_density(build_mixed_state(rho, mat2(1, 0.3, 0.3, 1)));
    CHECK(std::abs(r(0, 1) - 0.15) < 1e-15);
    CHECK(std::abs(r(1, 0) - 0.15) < 1e-15);
    CHECK(std::abs(r(0, 0) - 0.5) < 1e-15);
  }
}

TEST_CASE("validate reports instead of throwing") {
  const auto bad_trace = validate(mat2(0.45, 0, 0, 0.45), Matrix::Ones(2, 2));
  CHECK_FALSE(bad_trace.ok());
  CHECK(bad_trace.first_failure()->name == "rho.trace");
  CHECK(std::abs(bad_trace.rho_trace_defect - 0.1) < 1e-15);

  const auto not_psd = validate(mat2(0.5, 0.6, 0.6, 0.5), Matrix::Ones(2, 2));
  CHECK_FALSE(not_psd.ok());
  CHECK(std::abs(not_psd.rho_min_eigenvalue + 0.1) < 1e-14);

  const auto good = validate(Matrix::Identity(2, 2) * 0.5, Matrix::Ones(2, 2));
  CHECK(good.ok());
  CHECK(good.gram_rank == 1);
  CHECK(std::abs(good.rho_max_eigenvalue - 0.5) < 1e-15);

  const auto shape = validate(Matrix::Identity(2, 3), Matrix::Ones(2, 2));
  CHECK_FALSE(shape.ok());
}

TEST_CASE("property: pure states are rank one with unit trace") {
  Rng rng(101);
  for (int t = 0; t < 500; ++t) {
    const Eigen::Index n = wpd::testing::uniform_int(rng, 2, 8);
    const auto s = wpd::testing::random_pure_state(rng, n);
    const Eigen::VectorXd ev = hermitian_eigenvalues(s.rho().matrix());
    CHECK(std::abs(ev(n - 1) - 1.0) <= 1e-10);
    CHECK(std::abs(s.rho().matrix().trace() - 1.0) <= 1e-12);
  }
}

TEST_CASE("property: Gram matrices of unit vectors are PSD with unit diagonal") {
  Rng rng(202);
  for (int t = 0; t < 500; ++t) {
    const Eigen::Index n = wpd::testing::uniform_int(rng, 2, 8);
    const auto g = wpd::testing::random_gram(rng, n);
    CHECK(hermitian_eigenvalues(g.matrix())(0) >= -1e-10);
    for (Eigen::Index k = 0; k < n; ++k) CHECK(std::abs(g(k, k) - 1.0) <= 1e-12);
  }
}

TEST_CASE("property: effective density is PSD with unit trace") {
  Rng rng(303);
  for (int t = 0; t < 1000; ++t) {
    const Eigen::Index n = wpd::testing::uniform_int(rng, 2, 6);
    const auto s = t % 2 ? wpd::testing::random_mixed_state(rng, n)
                         : wpd::testing::random_pure_state(rng, n);
    const auto r = effective_density(s);  // throws if invalid
    CHECK(hermitian_eigenvalues(r.matrix())(0) >= -1e-10);
    CHECK(std::abs(r.matrix().trace() - 1.0) <= 1e-12);
    CHECK(validate(s).ok());
  }
}
