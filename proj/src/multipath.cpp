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

#include "wpd/multipath.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wpd/errors.hpp"

namespace wpd {
namespace {

double population(const InterferometerState& s, Eigen::Index i) {
  return std::max(0.0, s.rho().population(i));
}

double pair_weight(const InterferometerState& s, Eigen::Index i, Eigen::Index j) {
  return population(s, i) + population(s, j);
}

// Sum over pairs of f(i, j), each pair visited once in (i, j) order.
template <typename F>
double sum_over_pairs(Eigen::Index n, F&& f) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) total += f(i, j);
  return total;
}

template <typename PairValue>
double aggregate(const InterferometerState& state, PairValue&& value) {
  const Eigen::Index n = state.size();
  const double nn = static_cast<double>(n);
  if (is_symmetric(state)) {
    return 2.0 / (nn * (nn - 1.0)) *
           sum_over_pairs(n, [&](Eigen::Index i, Eigen::Index j) { return value(i, j); });
  }
  return 1.0 / (nn - 1.0) * sum_over_pairs(n, [&](Eigen::Index i, Eigen::Index j) {
           const double w = pair_weight(state, i, j);
           return w <= tolerance::kDarkPair ? 0.0 : w * value(i, j);
         });
}

}  // namespace

std::vector<PathPair> path_pairs(Eigen::Index n) {
  std::vector<PathPair> pairs;
  if (n >= 2) pairs.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  return pairs;
}

bool is_symmetric(const InterferometerState& state) {
  const double target = 1.0 / static_cast<double>(state.size());
  for (Eigen::Index i = 0; i < state.size(); ++i)
    if (std::abs(state.rho().population(i) - target) > tolerance::kSpectral) return false;
  return true;
}

double coherence(const InterferometerState& state) {
  const Eigen::Index n = state.size();
  const double s = sum_over_pairs(n, [&](Eigen::Index i, Eigen::Index j) {
    return std::abs(state.rho()(i, j)) * std::abs(state.gram()(i, j));
  });
  return 2.0 * s / static_cast<double>(n - 1);
}

double distinguishability(const InterferometerState& state) {
  const Eigen::Index n = state.size();
  const double s = sum_over_pairs(n, [&](Eigen::Index i, Eigen::Index j) {
    return std::sqrt(population(state, i) * population(state, j)) *
           std::abs(state.gram()(i, j));
  });
  return 1.0 - 2.0 * s / static_cast<double>(n - 1);
}

double coherence_from_pair_visibilities(const InterferometerState& state) {
  return aggregate(state,
                   [&](Eigen::Index i, Eigen::Index j) { return pair_visibility(state, i, j); });
}

double distinguishability_from_pairs(const InterferometerState& state) {
  return aggregate(state, [&](Eigen::Index i, Eigen::Index j) {
    return pair_distinguishability(state, i, j);
  });
}

DualityReport duality_report(const InterferometerState& state) {
  DualityReport r;
  r.n = state.size();
  r.is_symmetric = is_symmetric(state);
  r.is_pure = state.is_pure();
  r.gram_rank = numerical_rank(state.gram().matrix());
  r.coherence = coherence(state);
  r.distinguishability = distinguishability(state);
  r.coherence_from_pairs = coherence_from_pair_visibilities(state);
  r.distinguishability_from_pairs = distinguishability_from_pairs(state);
  r.duality_margin = 1.0 - (r.coherence + r.distinguishability);

  const double nn = static_cast<double>(r.n);
  double plain = 0.0;
  double weighted = 0.0;
  for (const auto& [i, j] : path_pairs(r.n)) {
    if (pair_weight(state, i, j) <= tolerance::kDarkPair) {
      r.dark_pairs.emplace_back(i, j);
      continue;
    }
    PairMetrics m = pair_metrics(state, i, j);
    plain += m.distinguishability + m.visibility;
    weighted += m.pair_weight * (m.distinguishability + m.visibility);
    r.pairwise.push_back(std::move(m));
  }
  r.weighted_sum_lhs = weighted / (nn - 1.0);
  if (r.is_symmetric) r.symmetric_sum_lhs = 2.0 / (nn * (nn - 1.0)) * plain;

  const double dc = std::abs(r.coherence_from_pairs - r.coherence);
  const double dd = std::abs(r.distinguishability_from_pairs - r.distinguishability);
  if (r.duality_margin < -tolerance::kSpectral || dc > tolerance::kSpectral ||
      dd > tolerance::kSpectral) {
    std::ostringstream os;
    os.precision(17);
    os << "duality report inconsistent: margin " << r.duality_margin << ", |dC| " << dc
       << ", |dD| " << dd;
    throw InvariantError(os.str());
  }
  return r;
}

}  // namespace wpd
