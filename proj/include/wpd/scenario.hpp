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

// JSON scenario files and the artifacts the command-line tool writes.

#ifndef WPD_SCENARIO_HPP
#define WPD_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "wpd/core_state.hpp"
#include "wpd/errors.hpp"
#include "wpd/fringes.hpp"
#include "wpd/multipath.hpp"
#include "wpd/uqsd.hpp"

namespace wpd {

std::string_view tool_version();

enum class Mode { kReport, kPairs, kFringes, kMeiWeitz, kUqsd };

std::string_view mode_name(Mode mode);
std::optional<Mode> parse_mode(std::string_view name);

enum class OutputFormat { kJson, kCsv };

/// JSON for report/uqsd, CSV for the tabular modes.
OutputFormat artifact_format(Mode mode);

/// Amplitudes with explicit detector vectors or a raw Gram matrix, or a
/// density matrix with a Gram matrix.
struct AmplitudeStateSpec {
  std::vector<Complex> amplitudes;
  std::optional<std::vector<Vector>> detectors;
  std::optional<Matrix> gram;
};

struct MatrixStateSpec {
  Matrix rho;
  Matrix gram;
};

using StateSpec = std::variant<AmplitudeStateSpec, MatrixStateSpec>;

struct MeiWeitzSpec {
  MeiWeitzConfig config;
  std::vector<double> gamma_grid;
};

struct UqsdSpec {
  Vector d1;
  Vector d2;
  double p1 = 0.5;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  unsigned shards = 1;
};

struct OutputSpec {
  OutputFormat format = OutputFormat::kJson;
  std::optional<std::string> path;
};

struct ScenarioConfig {
  Mode mode = Mode::kReport;
  std::optional<StateSpec> state;
  int phase_step_count = SlitGeometry::kDefaultPhaseSteps;
  /// fringes mode: simulate only this pair instead of the full pattern.
  std::optional<PathPair> fringe_pair;
  std::optional<MeiWeitzSpec> meiweitz;
  std::optional<UqsdSpec> uqsd;
  OutputSpec output;
  /// The parsed document, echoed into reports.
  nlohmann::json source;
};

/// Malformed or semantically invalid scenario. Carries every problem found,
/// each prefixed with its JSON location (e.g. "/meiweitz/flipped_path").
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const noexcept { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// Parses and validates a scenario document. `mode`, when given (the CLI
/// subcommand), must agree with the document's "mode" field if present.
/// Syntax errors report line and column; semantic errors are aggregated.
ScenarioConfig parse_config(std::string_view text, std::optional<Mode> mode = std::nullopt);

/// A module raised while running a scenario. `location` is the config
/// section being evaluated; `exit_code` follows the CLI convention.
class ScenarioError : public Error {
 public:
  ScenarioError(std::string location, int exit_code, const std::string& message);
  const std::string& location() const noexcept { return location_; }
  int exit_code() const noexcept { return exit_code_; }

 private:
  std::string location_;
  int exit_code_;
};

namespace exit_code {
inline constexpr int kSuccess = 0;
inline constexpr int kConfig = 2;
inline constexpr int kValidation = 3;
inline constexpr int kRuntime = 4;
}  // namespace exit_code

/// Builds the state described by `config.state`. Throws ScenarioError.
InterferometerState build_state(const ScenarioConfig& config);

struct ReportDocument {
  nlohmann::json input;
  StateDiagnostics diagnostics;
  DualityReport report;
  std::string tool_version;
  std::optional<std::string> timestamp;
};

nlohmann::json to_json(const ReportDocument& doc);
ReportDocument report_document_from_json(const nlohmann::json& j);
bool operator==(const ReportDocument& a, const ReportDocument& b);

/// Output of one scenario run.
struct Artifact {
  std::string content;
  /// Human-readable lines for the terminal (pairs are 1-based here).
  std::string summary;
};

struct RunOptions {
  /// Recorded as the report timestamp; omitted when empty.
  std::optional<std::string> timestamp;
};

/// Runs the scenario and renders its artifact. Throws ScenarioError.
Artifact run(const ScenarioConfig& config, const RunOptions& options = {});

/// Checks that every section of the scenario can be constructed without
/// running it; returns a human-readable diagnostics listing.
Artifact validate_only(const ScenarioConfig& config);

/// Writes via a temporary file in the same directory plus rename.
void write_atomically(const std::string& path, std::string_view content);

/// printf-style %.17g: enough digits to round-trip any double.
std::string format_number(double value);

}  // namespace wpd

#endif  // WPD_SCENARIO_HPP
