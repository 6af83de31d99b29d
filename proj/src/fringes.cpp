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

#include "wpd/fringes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "wpd/errors.hpp"
#include "wpd/multipath.hpp"
#include "wpd/pairwise.hpp"

namespace wpd {
namespace {

struct Extrema {
  double i_max;
  double i_min;
};

// Vertex value of the parabola through (-1, ym), (0, y0), (1, yp).
double parabola_vertex(double ym, double y0, double yp) {
  const double curvature = ym - 2.0 * y0 + yp;
  if (curvature == 0.0) return y0;
  return y0 - (yp - ym) * (yp - ym) / (8.0 * curvature);
}

Extrema refined_extrema(const std::vector<double>& y) {
  const std::size_t n = y.size();
  if (n < 3) throw ArgumentError("need at least three intensity samples");
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  const auto prev = [&](std::size_t k) { return y[(k + n - 1) % n]; };
  const auto next = [&](std::size_t k) { return y[(k + 1) % n]; };
  const auto kmax = static_cast<std::size_t>(hi - y.begin());
  const auto kmin = static_cast<std::size_t>(lo - y.begin());

  double i_max = parabola_vertex(prev(kmax), y[kmax], next(kmax));
  double i_min = parabola_vertex(prev(kmin), y[kmin], next(kmin));
  // The fit can only move an extremum outward.
  i_max = std::max(i_max, y[kmax]);
  i_min = std::min(i_min, y[kmin]);
  if (y[kmin] >= 0.0) i_min = std::max(i_min, 0.0);
  return {i_max, i_min};
}

void finish(FringeProfile& p) {
  const Extrema e = refined_extrema(p.intensity);
  const double total = e.i_max + e.i_min;
  if (!(total > tolerance::kDarkPair)) throw DarkPatternError("fringe pattern has no intensity");
  p.i_max = e.i_max;
  p.i_min = e.i_min;
  p.visibility = (e.i_max - e.i_min) / total;
}

// Samples sum_{j,k} R_jk e^{i(j-k) delta}. Grouping by harmonic m = k - j,
// I = A_0 + 2 Re sum_{m>0} A_m e^{-i m delta} with A_m = sum_j R_{j,j+m}.
FringeProfile sample_pattern(const Matrix& r, int steps) {
  if (steps < SlitGeometry::kMinPhaseSteps) {
    throw ArgumentError("phase_step_count must be >= " +
                        std::to_string(SlitGeometry::kMinPhaseSteps));
  }
  const Eigen::Index n = r.rows();
  std::vector<Complex> harmonic(static_cast<std::size_t>(n), Complex(0.0, 0.0));
  for (Eigen::Index m = 0; m < n; ++m)
    for (Eigen::Index j = 0; j + m < n; ++j) harmonic[static_cast<std::size_t>(m)] += r(j, j + m);

  FringeProfile p;
  p.delta.resize(static_cast<std::size_t>(steps));
  p.intensity.resize(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    const double delta = 2.0 * std::numbers::pi * k / steps;
    double value = harmonic[0].real();
    for (Eigen::Index m = 1; m < n; ++m) {
      value += 2.0 * (harmonic[static_cast<std::size_t>(m)] *
                      std::polar(1.0, -static_cast<double>(m) * delta))
                         .real();
    }
    p.delta[static_cast<std::size_t>(k)] = delta;
    p.intensity[static_cast<std::size_t>(k)] = value;
  }
  finish(p);
  return p;
}

void check_config(const MeiWeitzConfig& c) {
  if (c.n < 3) throw ArgumentError("phase-flip scan needs n >= 3 paths");
  if (c.flipped_path < 0 || c.flipped_path >= c.n) {
    throw ArgumentError("flipped_path " + std::to_string(c.flipped_path) +
                        " out of range for n = " +
                        std::to_string(c.n));
  }
  if (c.decohered_paths.empty()) throw ArgumentError("decohered_paths must be non-empty");
  std::set<Eigen::Index> seen;
  for (const auto p : c.decohered_paths) {
    if (p < 0 || p >= c.n) {
      throw ArgumentError("decohered path " + std::to_string(p) + " out of range for n = " +
                          std::to_string(c.n));
    }
    if (!seen.insert(p).second) {
      throw ArgumentError("decohered path " + std::to_string(p) + " listed twice");
    }
  }
}

}  // namespace

FringeProfile intensity_profile(const InterferometerState& state, const SlitGeometry& geometry) {
  if (geometry.n != state.size()) {
    throw DimensionError("geometry has " + std::to_string(geometry.n) + " slits but state has " +
                         std::to_string(state.size()) + " paths");
  }
  return sample_pattern(effective_density(state).matrix(), geometry.phase_step_count);
}

double extract_visibility(const FringeProfile& profile) {
  FringeProfile copy;
  copy.intensity = profile.intensity;
  finish(copy);
  return copy.visibility;
}

FringeProfile two_slit_pattern(const InterferometerState& state, Eigen::Index i, Eigen::Index j,
                               const SlitGeometry& geometry) {
  return sample_pattern(open_pair(state, i, j), geometry.phase_step_count);
}

InterferometerState mei_weitz_state(const MeiWeitzConfig& config, double g, bool flip) {
  check_config(config);
  if (!(g >= 0.0 && g <= 1.0)) {
    throw ArgumentError("overlap g = " + std::to_string(g) + " outside [0, 1]");
  }
  const Eigen::Index n = config.n;
  std::vector<bool> decohered(static_cast<std::size_t>(n), false);
  for (const auto p : config.decohered_paths) decohered[static_cast<std::size_t>(p)] = true;

  Matrix gram = Matrix::Ones(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k)
      if (decohered[static_cast<std::size_t>(i)] != decohered[static_cast<std::size_t>(k)])
        gram(i, k) = g;

  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Complex> amplitudes(static_cast<std::size_t>(n), Complex(a, 0.0));
  if (flip) amplitudes[static_cast<std::size_t>(config.flipped_path)] = Complex(-a, 0.0);
  return build_pure_state(amplitudes, DetectorGram(std::move(gram)));
}

MeiWeitzScan mei_weitz_scan(const MeiWeitzConfig& config, const std::vector<double>& gamma_grid,
                            const SlitGeometry& geometry) {
  check_config(config);
  for (const double g : gamma_grid) {
    if (!(g >= 0.0 && g <= 1.0)) {
      throw ArgumentError("gamma_grid value " + std::to_string(g) + " outside [0, 1]");
    }
  }
  SlitGeometry geom = geometry;
  geom.n = config.n;

  MeiWeitzScan scan;
  scan.config = config;
  for (const double g : gamma_grid) {
    try {
      const InterferometerState state = mei_weitz_state(config, g);
      const FringeProfile profile = intensity_profile(state, geom);
      scan.gamma_grid.push_back(g);
      scan.visibilities.push_back(profile.visibility);
      scan.coherences.push_back(coherence(state));
      scan.distinguishabilities.push_back(distinguishability(state));
    } catch (const ValidationError& e) {
      scan.skipped.push_back({g, e.what()});
    }
  }
  return scan;
}

std::vector<double> uniform_gamma_grid(int points) {
  if (points < 2) throw ArgumentError("a gamma grid needs at least two points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k)
    grid[static_cast<std::size_t>(k)] = static_cast<double>(k) / (points - 1);
  return grid;
}

}  // namespace wpd
