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

// wpduality <mode> --config scenario.json [--output path] [--validate-only]
//
// Exit codes: 0 success, 2 config error, 3 validation error, 4 runtime error.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "wpd/errors.hpp"
#include "wpd/scenario.hpp"

namespace {

struct Options {
  std::string config;
  std::string output;
  bool validate_only = false;
  bool stamp = false;
};

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int execute(wpd::Mode mode, const Options& opts) {
  std::ifstream in(opts.config, std::ios::binary);
  if (!in) {
    std::cerr << opts.config << ": cannot read config file\n";
    return wpd::exit_code::kConfig;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  try {
    wpd::ScenarioConfig cfg = wpd::parse_config(buffer.str(), mode);
    if (!opts.output.empty()) cfg.output.path = opts.output;

    if (opts.validate_only) {
      std::cout << wpd::validate_only(cfg).summary;
      return wpd::exit_code::kSuccess;
    }

    wpd::RunOptions run_opts;
    if (opts.stamp) run_opts.timestamp = utc_now();
    const wpd::Artifact artifact = wpd::run(cfg, run_opts);
    if (cfg.output.path) {
      wpd::write_atomically(*cfg.output.path, artifact.content);
      std::cout << artifact.summary;
    } else {
      std::cout << artifact.content;
      std::cerr << artifact.summary;
    }
    return wpd::exit_code::kSuccess;
  } catch (const wpd::ConfigError& e) {
    for (const auto& line : e.errors()) std::cerr << opts.config << ": " << line << "\n";
    return wpd::exit_code::kConfig;
  } catch (const wpd::ScenarioError& e) {
    std::cerr << opts.config << ": " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << opts.config << ": " << e.what() << "\n";
    return wpd::exit_code::kRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wave-particle duality laboratory for n-path interference"};
  app.set_version_flag("--version", std::string(wpd::tool_version()));
  app.require_subcommand(1);

  Options opts;
  struct Entry {
    wpd::Mode mode;
    const char* help;
    CLI::App* cmd = nullptr;
  };
  Entry entries[] = {
      {wpd::Mode::kReport, "Coherence, distinguishability and pairwise tables (JSON)"},
      {wpd::Mode::kPairs, "Per-pair visibility, distinguishability and slack (CSV)"},
      {wpd::Mode::kFringes, "Simulated fringe pattern and its Michelson visibility (CSV)"},
      {wpd::Mode::kMeiWeitz, "Phase-flip selective-decoherence scan (CSV)"},
      {wpd::Mode::kUqsd, "Unambiguous discrimination POVM and Monte Carlo check (JSON)"},
  };
  for (auto& e : entries) {
    e.cmd = app.add_subcommand(std::string(wpd::mode_name(e.mode)), e.help);
    e.cmd->add_option("-c,--config", opts.config, "Scenario JSON file")->required();
    e.cmd->add_option("-o,--output", opts.output, "Output path (overrides output.path)");
    e.cmd->add_flag("--validate-only", opts.validate_only,
                    "Parse and validate the scenario without running it");
    e.cmd->add_flag("--stamp", opts.stamp, "Record the current UTC time in JSON reports");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : wpd::exit_code::kConfig;
  }

  for (const auto& e : entries)
    if (e.cmd->parsed()) return execute(e.mode, opts);
  return wpd::exit_code::kConfig;
}
