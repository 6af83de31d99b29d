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

#ifndef WPD_ERRORS_HPP
#define WPD_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace wpd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix or vector failed one of its type invariants. `check()` names the
/// failed invariant ("hermitian", "trace", "psd", "unit_diagonal", ...).
class ValidationError : public Error {
 public:
  ValidationError(std::string check, const std::string& what)
      : Error(what), check_(std::move(check)) {}
  const std::string& check() const noexcept { return check_; }

 private:
  std::string check_;
};

/// Probabilities (amplitude norms or a trace) do not sum to one.
class NormalizationError : public ValidationError {
 public:
  explicit NormalizationError(const std::string& what)
      : ValidationError("normalization", what) {}
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Both paths of a requested pair carry (numerically) zero probability.
class DarkPairError : public Error {
 public:
  using Error::Error;
};

/// A fringe profile with no intensity has no defined contrast.
class DarkPatternError : public Error {
 public:
  using Error::Error;
};

/// Priors and overlap lie outside the region where the optimal unambiguous
/// discrimination measurement has the three-outcome form.
class RegimeError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Indicates a bug or a numerically
/// broken input, never a user error.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace wpd

#endif  // WPD_ERRORS_HPP
