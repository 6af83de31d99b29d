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

#ifndef WPD_LINALG_HPP
#define WPD_LINALG_HPP

#include <complex>

#include <Eigen/Dense>

namespace wpd {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace tolerance {
/// Equality-type checks: Hermiticity, trace, unit diagonal, unit norm.
inline constexpr double kEquality = 1e-12;
/// Spectral checks: eigenvalue lower bounds, rank-one detection.
inline constexpr double kSpectral = 1e-10;
/// Sum of squared amplitude moduli.
inline constexpr double kAmplitudeNorm = 1e-10;
/// Below this the pair weight rho_ii + rho_jj is treated as zero.
inline constexpr double kDarkPair = 1e-14;
}  // namespace tolerance

/// Largest entrywise modulus of M - M^dagger. Requires a square matrix.
double hermiticity_defect(const Matrix& m);

/// Eigenvalues of the Hermitian part (M + M^dagger)/2, ascending.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);

/// Number of eigenvalues of the Hermitian part exceeding `threshold`.
int numerical_rank(const Matrix& m, double threshold = tolerance::kSpectral);

bool all_finite(const Matrix& m);

}  // namespace wpd

#endif  // WPD_LINALG_HPP
