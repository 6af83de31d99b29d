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

#include "wpd/pairwise.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wpd/errors.hpp"

namespace wpd {
namespace {

struct PairInputs {
  double rho_ii;
  double rho_jj;
  double weight;
  double coherence;  // |rho_ij|
  double overlap;    // |gamma_ij|
};

PairInputs pair_inputs(const InterferometerState& state, Eigen::Index i, Eigen::Index j) {
  const Eigen::Index n = state.size();
  if (i < 0 || j < 0 || i >= n || j >= n) {
    throw ArgumentError("path pair (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") out of range for n = " + std::to_string(n));
  }
  if (i == j) throw ArgumentError("a path pair needs two distinct paths");
  // Populations of a PSD matrix are >= -1e-10; clamp the rounding noise.
  const double rii = std::max(0.0, state.rho().population(i));
  const double rjj = std::max(0.0, state.rho().population(j));
  const double w = rii + rjj;
  if (w <= tolerance::kDarkPair) {
    throw DarkPairError("paths " + std::to_string(i) + " and " + std::to_string(j) +
                        " carry no probability");
  }
  // Read the upper triangle so (i, j) and (j, i) give bit-identical results.
  const Eigen::Index lo = std::min(i, j);
  const Eigen::Index hi = std::max(i, j);
  return {rii, rjj, w, std::abs(state.rho()(lo, hi)), std::abs(state.gram()(lo, hi))};
}

double visibility_of(const PairInputs& p) { return 2.0 * p.coherence * p.overlap / p.weight; }

double distinguishability_of(const PairInputs& p) {
  return 1.0 - 2.0 * std::sqrt(p.rho_ii * p.rho_jj) * p.overlap / p.weight;
}

}  // namespace

Matrix2 open_pair(const InterferometerState& state, Eigen::Index i, Eigen::Index j) {
  const PairInputs p = pair_inputs(state, i, j);
  Matrix2 m;
  m(0, 0) = p.rho_ii;
  m(1, 1) = p.rho_jj;
  m(0, 1) = state.rho()(i, j) * state.gram()(i, j);
  m(1, 0) = state.rho()(j, i) * state.gram()(j, i);
  return m / p.weight;
}

double pair_visibility(const InterferometerState& state, Eigen::Index i, Eigen::Index j) {
  return visibility_of(pair_inputs(state, i, j));
}

double pair_distinguishability(const InterferometerState& state, Eigen::Index i,
                               Eigen::Index j) {
  return distinguishability_of(pair_inputs(state, i, j));
}

PairMetrics pair_metrics(const InterferometerState& state, Eigen::Index i, Eigen::Index j) {
  const PairInputs p = pair_inputs(state, i, j);
  PairMetrics m;
  m.i = i;
  m.j = j;
  m.pair_weight = p.weight;
  m.visibility = visibility_of(p);
  m.distinguishability = distinguishability_of(p);
  m.slack = 2.0 * (std::sqrt(p.rho_ii * p.rho_jj) - p.coherence) * p.overlap / p.weight;
  m.reduced = open_pair(state, i, j);

  const double identity = m.visibility + m.distinguishability + m.slack - 1.0;
  if (std::abs(identity) > tolerance::kSpectral || m.slack < -tolerance::kEquality) {
    throw InvariantError("pair (" + std::to_string(i) + ", " + std::to_string(j) +
                         "): V + D + slack - 1 = " + std::to_string(identity) +
                         ", slack = " + std::to_string(m.slack));
  }
  return m;
}

}  // namespace wpd
