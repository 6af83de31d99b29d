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

// Optimal unambiguous discrimination of two pure detector states.
//
// For priors p1, p2 and overlap s = |<d1|d2>| the optimal three-outcome
// measurement fails with probability 2 sqrt(p1 p2) s, provided
// s <= min(sqrt(p1/p2), sqrt(p2/p1)). Outside that region the optimum is a
// two-outcome projective measurement, which this module does not build.

#ifndef WPD_UQSD_HPP
#define WPD_UQSD_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "wpd/core_state.hpp"

namespace wpd {

struct SuccessProbability {
  /// 1 - 2 sqrt(p1 p2) s, evaluated regardless of regime.
  double value = 0.0;
  bool in_optimal_regime = false;
};

/// Throws ArgumentError if p1 + p2 != 1 (1e-12) or overlap is outside [0, 1].
SuccessProbability success_probability(double p1, double p2, double overlap_magnitude);

class UqsdProblem {
 public:
  /// Throws DimensionError for mismatched detector dimensions,
  /// ArgumentError for bad priors, and ValidationError("distinguishable")
  /// when |<d1|d2>| is 1 within 1e-12.
  UqsdProblem(DetectorState d1, DetectorState d2, double p1, double p2);
  UqsdProblem(DetectorState d1, DetectorState d2, double p1);

  const DetectorState& d1() const noexcept { return d1_; }
  const DetectorState& d2() const noexcept { return d2_; }
  double p1() const noexcept { return p1_; }
  double p2() const noexcept { return p2_; }
  double overlap_magnitude() const;

 private:
  DetectorState d1_;
  DetectorState d2_;
  double p1_;
  double p2_;
};

/// POVM on span{d1, d2}, written in the orthonormal basis {basis[0],
/// basis[1]} obtained by Gram-Schmidt from (d1, d2).
struct UqsdPovm {
  Eigen::Matrix2cd e1 = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd e2 = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd e_fail = Eigen::Matrix2cd::Zero();
  /// Ambient-space basis vectors.
  std::vector<Vector> basis;
  /// Coordinates of d1 and d2 in that basis.
  Eigen::Vector2cd d1;
  Eigen::Vector2cd d2;
  bool in_optimal_regime = true;

  /// <d|E|d> for a vector given in basis coordinates.
  static double expectation(const Eigen::Matrix2cd& e, const Eigen::Vector2cd& d);
  /// p1 <d1|E1|d1> + p2 <d2|E2|d2>
  double success_probability(double p1, double p2) const;
};

/// Throws RegimeError outside the optimal regime.
UqsdPovm build_povm(const UqsdProblem& problem);

struct PovmDiagnostics {
  double min_eigenvalue = 0.0;        // over e1, e2, e_fail
  double completeness_defect = 0.0;   // max |E1 + E2 + E_fail - I|
  double wrong_1 = 0.0;               // <d2|E1|d2>
  double wrong_2 = 0.0;               // <d1|E2|d1>
  bool ok() const;
};

PovmDiagnostics check_povm(const UqsdPovm& povm);

struct SimulationShard {
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
};

struct SimulationRecord {
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::vector<SimulationShard> shards;
  std::uint64_t correct_1 = 0;
  std::uint64_t correct_2 = 0;
  std::uint64_t failed = 0;
  std::uint64_t wrong = 0;

  double freq_correct_1() const;
  double freq_correct_2() const;
  double freq_fail() const;
  double freq_wrong() const;
};

/// Draws the state label with its prior, then a POVM outcome with Born
/// probabilities. Deterministic for a given (seed, trials, shards): shard k
/// runs trials/shards (+1 for the first trials % shards shards) on a stream
/// seeded by splitmix64(seed ^ k-th golden-ratio increment). Shards run
/// concurrently; counts are combined in shard order. Throws ArgumentError
/// if trials or shards is zero.
SimulationRecord simulate(const UqsdProblem& problem, const UqsdPovm& povm, std::uint64_t trials,
                          std::uint64_t seed, unsigned shards = 1);

}  // namespace wpd

#endif  // WPD_UQSD_HPP
