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

#include "wpd/core_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "wpd/errors.hpp"

namespace wpd {
namespace {

std::string describe(const char* what, double value, double tol) {
  std::ostringstream os;
  os.precision(6);
  os << what << " (measured " << value << ", tolerance " << tol << ")";
  return os.str();
}

void require_square(const Matrix& m, const char* name) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(name) + " must be square, got " + std::to_string(m.rows()) +
                         "x" + std::to_string(m.cols()));
  }
  if (m.rows() < 2) {
    throw DimensionError(std::string(name) +
                         " must have dimension n >= 2; interference needs two paths");
  }
}

double trace_defect(const Matrix& m) { return std::abs(m.trace() - Complex(1.0, 0.0)); }

double diagonal_defect(const Matrix& m) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) worst = std::max(worst, std::abs(m(i, i) - 1.0));
  return worst;
}

}  // namespace

DetectorState::DetectorState(Vector components) : components_(std::move(components)) {
  if (components_.size() < 1) throw DimensionError("detector state needs dimension >= 1");
  if (!all_finite(components_)) throw ValidationError("finite", "detector state has NaN/Inf");
  const double defect = std::abs(components_.norm() - 1.0);
  if (defect > tolerance::kEquality) {
    throw ValidationError(
        "unit_norm", describe("detector state is not unit norm", defect, tolerance::kEquality));
  }
}

DetectorState DetectorState::normalized(Vector components) {
  const double norm = components.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw ValidationError("unit_norm", "cannot normalize a zero or non-finite detector vector");
  }
  components /= norm;
  return DetectorState(std::move(components));
}

Complex DetectorState::overlap_with(const DetectorState& other) const {
  if (other.dimension() != dimension()) {
    throw DimensionError("detector states have different dimensions");
  }
  // Eigen's dot() conjugates its left operand.
  return other.components_.dot(components_);
}

QuantonDensityMatrix::QuantonDensityMatrix(Matrix entries) : entries_(std::move(entries)) {
  require_square(entries_, "density matrix");
  if (!all_finite(entries_)) throw ValidationError("finite", "density matrix has NaN/Inf");
  const double herm = hermiticity_defect(entries_);
  if (herm > tolerance::kEquality) {
    throw ValidationError("hermitian",
                          describe("density matrix is not Hermitian", herm, tolerance::kEquality));
  }
  const double tr = trace_defect(entries_);
  if (tr > tolerance::kEquality) {
    throw NormalizationError(describe("density matrix trace is not 1", tr, tolerance::kEquality));
  }
  const double min_ev = hermitian_eigenvalues(entries_)(0);
  if (min_ev < -tolerance::kSpectral) {
    throw ValidationError("psd", describe("density matrix is not positive semi-definite",
                                          min_ev, tolerance::kSpectral));
  }
}

DetectorGram::DetectorGram(Matrix entries) : entries_(std::move(entries)) {
  require_square(entries_, "detector Gram matrix");
  if (!all_finite(entries_)) throw ValidationError("finite", "detector Gram matrix has NaN/Inf");
  const double herm = hermiticity_defect(entries_);
  if (herm > tolerance::kEquality) {
    throw ValidationError("hermitian", describe("detector Gram matrix is not Hermitian", herm,
                                                tolerance::kEquality));
  }
  const double diag = diagonal_defect(entries_);
  if (diag > tolerance::kEquality) {
    throw ValidationError("unit_diagonal", describe("detector Gram matrix diagonal is not 1",
                                                    diag, tolerance::kEquality));
  }
  const double min_ev = hermitian_eigenvalues(entries_)(0);
  if (min_ev < -tolerance::kSpectral) {
    throw ValidationError("psd", describe("detector Gram matrix is not positive semi-definite",
                                          min_ev, tolerance::kSpectral));
  }
}

DetectorGram DetectorGram::from_detectors(std::span<const DetectorState> detectors) {
  const auto n = static_cast<Eigen::Index>(detectors.size());
  if (n < 2) throw DimensionError("need at least two detector states");
  const Eigen::Index m = detectors[0].dimension();
  for (const auto& d : detectors) {
    if (d.dimension() != m) {
      throw DimensionError("detector states must share one dimension (" + std::to_string(m) +
                           " vs " + std::to_string(d.dimension()) + ")");
    }
  }
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    g(i, i) = 1.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      g(i, j) = detectors[i].overlap_with(detectors[j]);
      g(j, i) = std::conj(g(i, j));
    }
  }
  return DetectorGram(std::move(g));
}

DetectorGram DetectorGram::identical(Eigen::Index n) {
  return DetectorGram(Matrix::Ones(n, n));
}

DetectorGram DetectorGram::orthogonal(Eigen::Index n) {
  return DetectorGram(Matrix::Identity(n, n));
}

InterferometerState::InterferometerState(QuantonDensityMatrix rho, DetectorGram gram, bool pure)
    : rho_(std::move(rho)), gram_(std::move(gram)), pure_(pure) {
  if (rho_.size() != gram_.size()) {
    throw DimensionError("density matrix is " + std::to_string(rho_.size()) +
                         " paths but detector Gram matrix is " + std::to_string(gram_.size()));
  }
}

InterferometerState build_pure_state(std::span<const Complex> amplitudes,
                                     const DetectorGram& gram) {
  const auto n = static_cast<Eigen::Index>(amplitudes.size());
  if (n < 2) throw DimensionError("need at least two path amplitudes");
  if (n != gram.size()) {
    throw DimensionError(std::to_string(n) + " amplitudes but " + std::to_string(gram.size()) +
                         " detector states");
  }
  double norm2 = 0.0;
  for (const auto& c : amplitudes) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw ValidationError("finite", "amplitude has NaN/Inf");
    }
    norm2 += std::norm(c);
  }
  if (std::abs(norm2 - 1.0) > tolerance::kAmplitudeNorm) {
    throw NormalizationError(describe("sum of |c_k|^2 is not 1", std::abs(norm2 - 1.0),
                                      tolerance::kAmplitudeNorm));
  }
  const Eigen::Map<const Vector> c(amplitudes.data(), n);
  Matrix rho = c * c.adjoint();
  // Absorb the (<= 1e-10) norm defect so the trace invariant holds at 1e-12.
  rho /= norm2;
  return InterferometerState(QuantonDensityMatrix(std::move(rho)), gram, true);
}

InterferometerState build_pure_state(std::span<const Complex> amplitudes,
                                     std::span<const DetectorState> detectors) {
  if (amplitudes.size() != detectors.size()) {
    throw DimensionError(std::to_string(amplitudes.size()) + " amplitudes but " +
                         std::to_string(detectors.size()) + " detector states");
  }
  return build_pure_state(amplitudes, DetectorGram::from_detectors(detectors));
}

InterferometerState build_mixed_state(QuantonDensityMatrix rho, DetectorGram gram) {
  const double largest = hermitian_eigenvalues(rho.matrix()).maxCoeff();
  const bool pure = std::abs(largest - 1.0) <= tolerance::kSpectral;
  return InterferometerState(std::move(rho), std::move(gram), pure);
}

InterferometerState build_mixed_state(const Matrix& rho, const Matrix& gram) {
  return build_mixed_state(QuantonDensityMatrix(rho), DetectorGram(gram));
}

QuantonDensityMatrix effective_density(const InterferometerState& state) {
  return QuantonDensityMatrix(state.rho().matrix().cwiseProduct(state.gram().matrix()));
}

bool StateDiagnostics::ok() const { return first_failure() == nullptr; }

const InvariantCheck* StateDiagnostics::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return &c;
  return nullptr;
}

StateDiagnostics validate(const Matrix& rho, const Matrix& gram) {
  StateDiagnostics d;
  auto add = [&d](std::string name, bool passed, double residual, double tol) {
    d.checks.push_back({std::move(name), passed, residual, tol});
  };

  const bool rho_shape = rho.rows() == rho.cols() && rho.rows() >= 2;
  const bool gram_shape = gram.rows() == gram.cols() && gram.rows() >= 2;
  add("rho.shape", rho_shape, static_cast<double>(rho.rows()), 2.0);
  add("gram.shape", gram_shape, static_cast<double>(gram.rows()), 2.0);
  add("shape.match", rho.rows() == gram.rows() && rho.cols() == gram.cols(),
      static_cast<double>(rho.rows() - gram.rows()), 0.0);
  const bool rho_finite = all_finite(rho);
  const bool gram_finite = all_finite(gram);
  add("rho.finite", rho_finite, 0.0, 0.0);
  add("gram.finite", gram_finite, 0.0, 0.0);

  if (rho_shape && rho_finite) {
    d.rho_hermiticity_defect = hermiticity_defect(rho);
    d.rho_trace_defect = trace_defect(rho);
    const Eigen::VectorXd ev = hermitian_eigenvalues(rho);
    d.rho_min_eigenvalue = ev(0);
    d.rho_max_eigenvalue = ev(ev.size() - 1);
    add("rho.hermitian", d.rho_hermiticity_defect <= tolerance::kEquality,
        d.rho_hermiticity_defect, tolerance::kEquality);
    add("rho.trace", d.rho_trace_defect <= tolerance::kEquality, d.rho_trace_defect,
        tolerance::kEquality);
    add("rho.psd", d.rho_min_eigenvalue >= -tolerance::kSpectral, d.rho_min_eigenvalue,
        tolerance::kSpectral);
  }
  if (gram_shape && gram_finite) {
    d.gram_hermiticity_defect = hermiticity_defect(gram);
    d.gram_diagonal_defect = diagonal_defect(gram);
    const Eigen::VectorXd ev = hermitian_eigenvalues(gram);
    d.gram_min_eigenvalue = ev(0);
    d.gram_rank = static_cast<int>((ev.array() > tolerance::kSpectral).count());
    add("gram.hermitian", d.gram_hermiticity_defect <= tolerance::kEquality,
        d.gram_hermiticity_defect, tolerance::kEquality);
    add("gram.unit_diagonal", d.gram_diagonal_defect <= tolerance::kEquality,
        d.gram_diagonal_defect, tolerance::kEquality);
    add("gram.psd", d.gram_min_eigenvalue >= -tolerance::kSpectral, d.gram_min_eigenvalue,
        tolerance::kSpectral);
  }
  if (rho_shape && gram_shape && rho_finite && gram_finite && rho.rows() == gram.rows()) {
    const Matrix r = rho.cwiseProduct(gram);
    d.effective_min_eigenvalue = hermitian_eigenvalues(r)(0);
    const double herm = hermiticity_defect(r);
    const double tr = trace_defect(r);
    add("effective.hermitian", herm <= tolerance::kEquality, herm, tolerance::kEquality);
    add("effective.trace", tr <= tolerance::kEquality, tr, tolerance::kEquality);
    add("effective.psd", d.effective_min_eigenvalue >= -tolerance::kSpectral,
        d.effective_min_eigenvalue, tolerance::kSpectral);
  }
  return d;
}

StateDiagnostics validate(const InterferometerState& state) {
  return validate(state.rho().matrix(), state.gram().matrix());
}

}  // namespace wpd
