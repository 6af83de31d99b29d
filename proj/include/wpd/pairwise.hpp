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

// Two-path quantities obtained by blocking every path except i and j.
//
// With w = rho_ii + rho_jj and g = |gamma_ij|:
//   V_ij     = 2 |rho_ij| g / w
//   D_ij     = 1 - 2 sqrt(rho_ii rho_jj) g / w
//   slack_ij = 2 (sqrt(rho_ii rho_jj) - |rho_ij|) g / w
// so V_ij + D_ij + slack_ij = 1 identically and slack_ij >= 0 by positivity
// of rho. Paths are 0-based in this API.

#ifndef WPD_PAIRWISE_HPP
#define WPD_PAIRWISE_HPP

#include <Eigen/Dense>

#include "wpd/core_state.hpp"

namespace wpd {

using Matrix2 = Eigen::Matrix2cd;

struct PairMetrics {
  Eigen::Index i = 0;
  Eigen::Index j = 0;
  double visibility = 0.0;
  double distinguishability = 0.0;
  double slack = 0.0;
  /// rho_ii + rho_jj
  double pair_weight = 0.0;
  /// Renormalized two-path state including the detector overlaps.
  Matrix2 reduced = Matrix2::Zero();
};

/// Two-path state with all other paths blocked:
///   [[rho_ii, rho_ij g_ij], [rho_ji g_ji, rho_jj]] / (rho_ii + rho_jj).
/// Throws ArgumentError on bad indices, DarkPairError if the pair weight is
/// at most 1e-14.
Matrix2 open_pair(const InterferometerState& state, Eigen::Index i, Eigen::Index j);

double pair_visibility(const InterferometerState& state, Eigen::Index i, Eigen::Index j);

/// Optimal unambiguous-discrimination success probability for the two
/// detector states, with priors rho_ii/w and rho_jj/w.
double pair_distinguishability(const InterferometerState& state, Eigen::Index i, Eigen::Index j);

/// All of the above for one pair. Throws InvariantError if the identity
/// V + D + slack = 1 fails by more than 1e-10 or slack < -1e-12.
PairMetrics pair_metrics(const InterferometerState& state, Eigen::Index i, Eigen::Index j);

}  // namespace wpd

#endif  // WPD_PAIRWISE_HPP
