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

// Quanton/detector states for an n-path interferometer.
//
// A state is the pair (rho, gamma): rho is the n x n density matrix of the
// quanton in the (orthonormal) path basis, and gamma is the Gram matrix of
// the which-path detector states, gamma(i, j) = <d_j|d_i>. Only |gamma(i, j)|
// enters the duality quantities, and |<d_j|d_i>| = |<d_i|d_j>|, so every
// magnitude-based formula is insensitive to the bra-ket ordering. The
// physical reduced state of the quanton is the entrywise product rho o gamma.

#ifndef WPD_CORE_STATE_HPP
#define WPD_CORE_STATE_HPP

#include <span>
#include <string>
#include <vector>

#include "wpd/linalg.hpp"

namespace wpd {

/// Normalized state of the path detector, dimension m >= 1.
class DetectorState {
 public:
  /// Throws ValidationError unless finite with unit norm (within 1e-12).
  explicit DetectorState(Vector components);

  /// Scales `components` to unit norm first. Throws on a zero vector.
  static DetectorState normalized(Vector components);

  const Vector& components() const noexcept { return components_; }
  Eigen::Index dimension() const noexcept { return components_.size(); }

  /// <other|this>
  Complex overlap_with(const DetectorState& other) const;

 private:
  Vector components_;
};

/// Hermitian, unit-trace, positive semi-definite n x n matrix, n >= 2.
class QuantonDensityMatrix {
 public:
  explicit QuantonDensityMatrix(Matrix entries);

  const Matrix& matrix() const noexcept { return entries_; }
  Eigen::Index size() const noexcept { return entries_.rows(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }
  /// rho(i, i) as a real number.
  double population(Eigen::Index i) const { return entries_(i, i).real(); }

 private:
  Matrix entries_;
};

/// Hermitian positive semi-definite n x n matrix with unit diagonal,
/// gamma(i, j) = <d_j|d_i>.
class DetectorGram {
 public:
  explicit DetectorGram(Matrix entries);

  /// Builds gamma from explicit detector vectors of a common dimension.
  static DetectorGram from_detectors(std::span<const DetectorState> detectors);
  /// No which-path information: every detector state is the same.
  static DetectorGram identical(Eigen::Index n);
  /// Full which-path information: mutually orthogonal detector states.
  static DetectorGram orthogonal(Eigen::Index n);

  const Matrix& matrix() const noexcept { return entries_; }
  Eigen::Index size() const noexcept { return entries_.rows(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

 private:
  Matrix entries_;
};

class InterferometerState {
 public:
  InterferometerState(QuantonDensityMatrix rho, DetectorGram gram, bool pure);

  const QuantonDensityMatrix& rho() const noexcept { return rho_; }
  const DetectorGram& gram() const noexcept { return gram_; }
  /// True iff rho is rank one (built from amplitudes, or detected as such).
  bool is_pure() const noexcept { return pure_; }
  Eigen::Index size() const noexcept { return rho_.size(); }

 private:
  QuantonDensityMatrix rho_;
  DetectorGram gram_;
  bool pure_;
};

/// rho(i, j) = c_i conj(c_j) and gamma(i, j) = <d_j|d_i>.
///
/// Throws NormalizationError if sum |c_k|^2 differs from 1 by more than
/// 1e-10, DimensionError if the counts disagree, n < 2, or the detector
/// vectors differ in length.
InterferometerState build_pure_state(std::span<const Complex> amplitudes,
                                     std::span<const DetectorState> detectors);

/// Same as above with the detector Gram matrix given directly.
InterferometerState build_pure_state(std::span<const Complex> amplitudes,
                                     const DetectorGram& gram);

/// Stores the pair as given; the state is flagged pure iff the largest
/// eigenvalue of rho is 1 within 1e-10.
InterferometerState build_mixed_state(QuantonDensityMatrix rho, DetectorGram gram);

/// Validates raw matrices, then forwards to the overload above.
InterferometerState build_mixed_state(const Matrix& rho, const Matrix& gram);

/// R(i, j) = rho(i, j) * gamma(i, j), the quanton state after tracing out
/// the detector.
QuantonDensityMatrix effective_density(const InterferometerState& state);

struct InvariantCheck {
  std::string name;
  bool passed = false;
  /// Measured defect (or the minimum eigenvalue for "*.psd" checks).
  double residual = 0.0;
  double tolerance = 0.0;
};

struct StateDiagnostics {
  std::vector<InvariantCheck> checks;
  double rho_hermiticity_defect = 0.0;
  double rho_trace_defect = 0.0;
  double rho_min_eigenvalue = 0.0;
  double rho_max_eigenvalue = 0.0;
  double gram_hermiticity_defect = 0.0;
  double gram_diagonal_defect = 0.0;
  double gram_min_eigenvalue = 0.0;
  int gram_rank = 0;
  double effective_min_eigenvalue = 0.0;

  bool ok() const;
  /// First failed check, or nullptr.
  const InvariantCheck* first_failure() const;
};

/// Evaluates every invariant on raw matrices and reports rather than throws.
/// Spectral quantities are only computed once the matrices are square,
/// finite and of matching size.
StateDiagnostics validate(const Matrix& rho, const Matrix& gram);
StateDiagnostics validate(const InterferometerState& state);

}  // namespace wpd

#endif  // WPD_CORE_STATE_HPP
