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

// n-path coherence and path distinguishability.
//
//   C   = 1/(n-1) * sum_{i != j} |rho_ij| |gamma_ij|
//   D_Q = 1 - 1/(n-1) * sum_{i != j} sqrt(rho_ii rho_jj) |gamma_ij|
//
// Both are also recoverable from two-path experiments alone. For equal path
// populations C (D_Q) is the plain average of V_ij (D_ij) over the
// n(n-1)/2 pairs; in general each pair is weighted by (rho_ii + rho_jj) and
// the sum is divided by n - 1. Either way C + D_Q <= 1, with equality for a
// pure quanton.

#ifndef WPD_MULTIPATH_HPP
#define WPD_MULTIPATH_HPP

#include <optional>
#include <utility>
#include <vector>

#include "wpd/core_state.hpp"
#include "wpd/pairwise.hpp"

namespace wpd {

using PathPair = std::pair<Eigen::Index, Eigen::Index>;

/// All (i, j) with i < j, in lexicographic order.
std::vector<PathPair> path_pairs(Eigen::Index n);

/// All populations equal 1/n within 1e-10.
bool is_symmetric(const InterferometerState& state);

double coherence(const InterferometerState& state);
double distinguishability(const InterferometerState& state);

/// Plain pair average for symmetric states (throws DarkPairError only there,
/// which cannot happen for populations 1/n); weighted sum otherwise, where
/// dark pairs contribute zero.
double coherence_from_pair_visibilities(const InterferometerState& state);
double distinguishability_from_pairs(const InterferometerState& state);

struct DualityReport {
  Eigen::Index n = 0;
  double coherence = 0.0;
  double distinguishability = 0.0;
  double coherence_from_pairs = 0.0;
  double distinguishability_from_pairs = 0.0;
  /// Every non-dark pair, ordered by (i, j).
  std::vector<PairMetrics> pairwise;
  /// Pairs skipped because rho_ii + rho_jj <= 1e-14.
  std::vector<PathPair> dark_pairs;
  /// 2/(n(n-1)) * sum_pairs (D_ij + V_ij); present only for symmetric states.
  std::optional<double> symmetric_sum_lhs;
  /// 1/(n-1) * sum_pairs (rho_ii + rho_jj)(D_ij + V_ij).
  double weighted_sum_lhs = 0.0;
  /// 1 - (C + D_Q)
  double duality_margin = 0.0;
  bool is_symmetric = false;
  bool is_pure = false;
  /// Numerical rank of gamma (eigenvalues above 1e-10).
  int gram_rank = 0;
};

/// Computes both routes and cross-checks them; throws InvariantError if
/// C + D_Q > 1 + 1e-10 or the routes disagree by more than 1e-10.
DualityReport duality_report(const InterferometerState& state);

}  // namespace wpd

#endif  // WPD_MULTIPATH_HPP
