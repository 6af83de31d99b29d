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

#include "wpd/uqsd.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <string>
#include <utility>

#include "wpd/errors.hpp"

namespace wpd {
namespace {

void check_priors(double p1, double p2) {
  if (!(p1 >= 0.0 && p2 >= 0.0 && p1 <= 1.0 && p2 <= 1.0)) {
    throw ArgumentError("priors must lie in [0, 1]");
  }
  if (std::abs(p1 + p2 - 1.0) > tolerance::kEquality) {
    throw ArgumentError("priors must sum to 1, got " + std::to_string(p1 + p2));
  }
}

// s <= sqrt(p1/p2) and s <= sqrt(p2/p1), written without division so that
// a zero prior only admits s = 0.
bool optimal_regime(double p1, double p2, double s) {
  const double s2 = s * s;
  return s2 * p2 <= p1 * (1.0 + tolerance::kEquality) &&
         s2 * p1 <= p2 * (1.0 + tolerance::kEquality);
}

// Failure probability of state 1 under the optimal measurement.
double failure_given(double p_self, double p_other, double s) {
  if (s == 0.0) return 0.0;
  return std::min(1.0, s * std::sqrt(p_other / p_self));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// 53 random bits to [0, 1); independent of the standard library's
// distribution implementations.
double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct OutcomeTable {
  // probability[k][m]: state k (0, 1), outcome m (0 = "1", 1 = "2").
  double probability[2][2];
};

OutcomeTable outcome_table(const UqsdPovm& povm) {
  OutcomeTable t{};
  const Eigen::Vector2cd* states[2] = {&povm.d1, &povm.d2};
  const Eigen::Matrix2cd* elements[2] = {&povm.e1, &povm.e2};
  for (int k = 0; k < 2; ++k)
    for (int m = 0; m < 2; ++m)
      t.probability[k][m] = std::clamp(UqsdPovm::expectation(*elements[m], *states[k]), 0.0, 1.0);
  return t;
}

SimulationRecord run_shard(double p1, const OutcomeTable& table, SimulationShard shard) {
  std::mt19937_64 rng(shard.seed);
  SimulationRecord r;
  for (std::uint64_t t = 0; t < shard.trials; ++t) {
    const int k = unit_interval(rng) < p1 ? 0 : 1;
    const double u = unit_interval(rng);
    const double* p = table.probability[k];
    if (u < p[0]) {
      (k == 0 ? r.correct_1 : r.wrong) += 1;
    } else if (u < p[0] + p[1]) {
      (k == 1 ? r.correct_2 : r.wrong) += 1;
    } else {
      r.failed += 1;
    }
  }
  return r;
}

}  // namespace

SuccessProbability success_probability(double p1, double p2, double overlap_magnitude) {
  check_priors(p1, p2);
  if (!(overlap_magnitude >= 0.0 && overlap_magnitude <= 1.0)) {
    throw ArgumentError("overlap magnitude must lie in [0, 1]");
  }
  return {1.0 - 2.0 * std::sqrt(p1 * p2) * overlap_magnitude,
          optimal_regime(p1, p2, overlap_magnitude)};
}

UqsdProblem::UqsdProblem(DetectorState d1, DetectorState d2, double p1, double p2)
    : d1_(std::move(d1)), d2_(std::move(d2)), p1_(p1), p2_(p2) {
  if (d1_.dimension() != d2_.dimension()) {
    throw DimensionError("detector states have different dimensions");
  }
  check_priors(p1_, p2_);
  if (overlap_magnitude() >= 1.0 - tolerance::kEquality) {
    throw ValidationError("distinguishable",
                          "identical detector states cannot be discriminated");
  }
}

UqsdProblem::UqsdProblem(DetectorState d1, DetectorState d2, double p1)
    : UqsdProblem(std::move(d1), std::move(d2), p1, 1.0 - p1) {}

double UqsdProblem::overlap_magnitude() const {
  return std::min(1.0, std::abs(d1_.overlap_with(d2_)));
}

double UqsdPovm::expectation(const Eigen::Matrix2cd& e, const Eigen::Vector2cd& d) {
  return d.dot(e * d).real();
}

double UqsdPovm::success_probability(double p1, double p2) const {
  return p1 * expectation(e1, d1) + p2 * expectation(e2, d2);
}

UqsdPovm build_povm(const UqsdProblem& problem) {
  const double p1 = problem.p1();
  const double p2 = problem.p2();
  const double s = problem.overlap_magnitude();
  if (!optimal_regime(p1, p2, s)) {
    throw RegimeError("overlap " + std::to_string(s) + " exceeds min(sqrt(p1/p2), sqrt(p2/p1)) " +
                      "for priors (" + std::to_string(p1) + ", " + std::to_string(p2) + ")");
  }

  UqsdPovm povm;
  // Gram-Schmidt: basis[0] = d1, basis[1] = normalized part of d2 orthogonal
  // to d1. Then d1 = (1, 0) and d2 = (a, b) with b = sqrt(1 - s^2) real.
  const Vector& v1 = problem.d1().components();
  const Vector& v2 = problem.d2().components();
  const Complex a = v1.dot(v2);
  Vector residual = v2 - a * v1;
  const double b = std::sqrt(std::max(0.0, 1.0 - std::norm(a)));
  povm.basis = {v1, b > 0.0 ? Vector(residual / residual.norm()) : residual};
  povm.d1 << 1.0, 0.0;
  povm.d2 << a, b;

  // E1 lives on the vector orthogonal to d2, E2 on the one orthogonal to d1.
  Eigen::Vector2cd perp_d2;
  perp_d2 << b, -std::conj(a);
  Eigen::Vector2cd perp_d1;
  perp_d1 << 0.0, 1.0;

  const double q1 = failure_given(p1, p2, s);
  const double q2 = failure_given(p2, p1, s);
  const double norm = 1.0 - s * s;  // > 0: identical states are rejected
  povm.e1 = (1.0 - q1) / norm * (perp_d2 * perp_d2.adjoint());
  povm.e2 = (1.0 - q2) / norm * (perp_d1 * perp_d1.adjoint());
  povm.e_fail = Eigen::Matrix2cd::Identity() - povm.e1 - povm.e2;
  povm.in_optimal_regime = true;
  return povm;
}

bool PovmDiagnostics::ok() const {
  return min_eigenvalue >= -tolerance::kSpectral && completeness_defect <= tolerance::kSpectral &&
         wrong_1 <= tolerance::kSpectral && wrong_2 <= tolerance::kSpectral;
}

PovmDiagnostics check_povm(const UqsdPovm& povm) {
  PovmDiagnostics d;
  d.min_eigenvalue = std::min({hermitian_eigenvalues(povm.e1)(0),
                               hermitian_eigenvalues(povm.e2)(0),
                               hermitian_eigenvalues(povm.e_fail)(0)});
  d.completeness_defect =
      (povm.e1 + povm.e2 + povm.e_fail - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  d.wrong_1 = UqsdPovm::expectation(povm.e1, povm.d2);
  d.wrong_2 = UqsdPovm::expectation(povm.e2, povm.d1);
  return d;
}

double SimulationRecord::freq_correct_1() const { return static_cast<double>(correct_1) / trials; }
double SimulationRecord::freq_correct_2() const { return static_cast<double>(correct_2) / trials; }
double SimulationRecord::freq_fail() const { return static_cast<double>(failed) / trials; }
double SimulationRecord::freq_wrong() const { return static_cast<double>(wrong) / trials; }

SimulationRecord simulate(const UqsdProblem& problem, const UqsdPovm& povm, std::uint64_t trials,
                          std::uint64_t seed, unsigned shards) {
  if (trials == 0) throw ArgumentError("trials must be positive");
  if (shards == 0) throw ArgumentError("shards must be positive");

  SimulationRecord record;
  record.seed = seed;
  record.trials = trials;
  for (unsigned k = 0; k < shards; ++k) {
    const std::uint64_t extra = k < trials % shards ? 1 : 0;
    record.shards.push_back({splitmix64(seed ^ (0x9E3779B97F4A7C15ULL * (k + 1))),
                             trials / shards + extra});
  }

  const OutcomeTable table = outcome_table(povm);
  std::vector<std::future<SimulationRecord>> parts;
  parts.reserve(shards);
  for (const auto& shard : record.shards) {
    parts.push_back(std::async(shards == 1 ? std::launch::deferred : std::launch::async,
                               run_shard, problem.p1(), table, shard));
  }
  for (auto& part : parts) {
    const SimulationRecord r = part.get();
    record.correct_1 += r.correct_1;
    record.correct_2 += r.correct_2;
    record.failed += r.failed;
    record.wrong += r.wrong;
  }
  return record;
}

}  // namespace wpd
