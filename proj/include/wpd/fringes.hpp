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

// Far-field fringe patterns of equally spaced slits.
//
// Slit j contributes phase j * delta at screen parameter delta, with no
// single-slit envelope, so
//
//   I(delta) = sum_{j,k} R_jk exp(i (j - k) delta),   R = rho o gamma,
//
// is a real trigonometric polynomial of degree n - 1 with period 2 pi and
// mean tr(R) = 1. Visibility is Michelson's contrast over one period.

#ifndef WPD_FRINGES_HPP
#define WPD_FRINGES_HPP

#include <string>
#include <vector>

#include "wpd/core_state.hpp"

namespace wpd {

struct SlitGeometry {
  static constexpr int kMinPhaseSteps = 64;
  static constexpr int kDefaultPhaseSteps = 2048;

  Eigen::Index n = 2;
  /// Samples per fringe period, uniformly spaced on [0, 2 pi).
  int phase_step_count = kDefaultPhaseSteps;
};

struct FringeProfile {
  std::vector<double> delta;
  std::vector<double> intensity;
  double i_max = 0.0;
  double i_min = 0.0;
  double visibility = 0.0;
};

/// Throws DimensionError if geometry.n differs from the state, ArgumentError
/// if phase_step_count < 64.
FringeProfile intensity_profile(const InterferometerState& state, const SlitGeometry& geometry);

/// Michelson contrast of uniformly sampled periodic intensity data. Each
/// extremum is refined by a parabola through the extremal sample and its
/// two (cyclic) neighbours. Throws DarkPatternError if I_max + I_min is
/// (numerically) zero, ArgumentError on fewer than three samples.
double extract_visibility(const FringeProfile& profile);

/// Pattern with only paths i and j open, placed at slit positions 0 and 1.
/// Only geometry.phase_step_count is used. Throws DarkPairError for a dark
/// pair.
FringeProfile two_slit_pattern(const InterferometerState& state, Eigen::Index i,
                               Eigen::Index j, const SlitGeometry& geometry);

/// Selective-decoherence experiment with one phase-flipped path.
struct MeiWeitzConfig {
  Eigen::Index n = 4;
  Eigen::Index flipped_path = 3;
  std::vector<Eigen::Index> decohered_paths{3};
};

/// Pure symmetric state with amplitude -1/sqrt(n) on the flipped path (when
/// `flip` is set) and +1/sqrt(n) elsewhere; gamma_ik = g for every pair with
/// exactly one index in the decohered set, 1 otherwise. Throws
/// ArgumentError on a bad config or g outside [0, 1], ValidationError if the
/// resulting gamma is not PSD.
InterferometerState mei_weitz_state(const MeiWeitzConfig& config, double g, bool flip = true);

struct MeiWeitzScan {
  MeiWeitzConfig config;
  std::vector<double> gamma_grid;
  std::vector<double> visibilities;
  std::vector<double> coherences;
  std::vector<double> distinguishabilities;

  struct Skipped {
    double g;
    std::string reason;
  };
  /// Grid points whose gamma failed validation; absent from the vectors
  /// above.
  std::vector<Skipped> skipped;
};

/// Full-pattern visibility, C and D_Q at each grid point, in grid order.
MeiWeitzScan mei_weitz_scan(const MeiWeitzConfig& config, const std::vector<double>& gamma_grid,
                            const SlitGeometry& geometry);

/// `points` values evenly spaced on [0, 1], points >= 2.
std::vector<double> uniform_gamma_grid(int points);

}  // namespace wpd

#endif  // WPD_FRINGES_HPP
