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

#include "wpd/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>
#include <utility>

#include "wpd/errors.hpp"
#include "wpd/pairwise.hpp"

#ifndef WPD_VERSION
#define WPD_VERSION "0.0.0"
#endif

namespace wpd {

using nlohmann::json;

std::string_view tool_version() { return WPD_VERSION; }

std::string_view mode_name(Mode mode) {
  switch (mode) {
    case Mode::kReport: return "report";
    case Mode::kPairs: return "pairs";
    case Mode::kFringes: return "fringes";
    case Mode::kMeiWeitz: return "meiweitz";
    case Mode::kUqsd: return "uqsd";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view name) {
  for (const Mode m : {Mode::kReport, Mode::kPairs, Mode::kFringes, Mode::kMeiWeitz, Mode::kUqsd})
    if (mode_name(m) == name) return m;
  return std::nullopt;
}

OutputFormat artifact_format(Mode mode) {
  return mode == Mode::kReport || mode == Mode::kUqsd ? OutputFormat::kJson : OutputFormat::kCsv;
}

namespace {

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    if (k) out += "\n";
    out += lines[k];
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : Error(join(errors)), errors_(std::move(errors)) {}

ScenarioError::ScenarioError(std::string location, int exit_code, const std::string& message)
    : Error(location + ": " + message), location_(std::move(location)), exit_code_(exit_code) {}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

// ---------------------------------------------------------------------------
// Config parsing

namespace {

class Reader {
 public:
  void error(const std::string& where, const std::string& what) {
    errors_.push_back(where + ": " + what);
  }
  std::vector<std::string>& errors() { return errors_; }

  std::optional<Complex> complex(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
      error(where, "expected a complex number as [re, im]");
      return std::nullopt;
    }
    return Complex(j[0].get<double>(), j[1].get<double>());
  }

  std::optional<Vector> vector(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) {
      error(where, "expected a non-empty list of [re, im] pairs");
      return std::nullopt;
    }
    Vector v(static_cast<Eigen::Index>(j.size()));
    bool ok = true;
    for (std::size_t k = 0; k < j.size(); ++k) {
      const auto c = complex(j[k], where + "/" + std::to_string(k));
      if (c) v(static_cast<Eigen::Index>(k)) = *c;
      else ok = false;
    }
    return ok ? std::optional<Vector>(std::move(v)) : std::nullopt;
  }

  std::optional<Matrix> matrix(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) {
      error(where, "expected a non-empty list of rows");
      return std::nullopt;
    }
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
    bool ok = true;
    for (std::size_t r = 0; r < j.size(); ++r) {
      const std::string row_where = where + "/" + std::to_string(r);
      if (!j[r].is_array() || j[r].size() != cols) {
        error(row_where, "rows must all have " + std::to_string(cols) + " entries");
        ok = false;
        continue;
      }
      for (std::size_t c = 0; c < cols; ++c) {
        const auto z = complex(j[r][c], row_where + "/" + std::to_string(c));
        if (z) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = *z;
        else ok = false;
      }
    }
    return ok && cols > 0 ? std::optional<Matrix>(std::move(m)) : std::nullopt;
  }

  std::optional<std::int64_t> integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) {
      error(where, "expected an integer");
      return std::nullopt;
    }
    return j.get<std::int64_t>();
  }

  std::optional<double> number(const json& j, const std::string& where) {
    if (!j.is_number()) {
      error(where, "expected a number");
      return std::nullopt;
    }
    return j.get<double>();
  }

  void allowed_keys(const json& obj, const std::string& where,
                    std::initializer_list<std::string_view> keys) {
    for (const auto& [key, _] : obj.items()) {
      bool known = false;
      for (const auto k : keys) known = known || k == key;
      if (!known) error(where + "/" + key, "unknown key");
    }
  }

  bool object(const json& j, const std::string& where) {
    if (j.is_object()) return true;
    error(where, "expected an object");
    return false;
  }

 private:
  std::vector<std::string> errors_;
};

std::string syntax_message(std::string_view text, const json::parse_error& e) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
  for (std::size_t k = 0; k < end; ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  std::string detail = e.what();
  // Drop nlohmann's "[json.exception.parse_error.101] " prefix.
  if (const auto pos = detail.find("] "); pos != std::string::npos) detail = detail.substr(pos + 2);
  return "syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) +
         ": " + detail;
}

std::optional<StateSpec> parse_state(Reader& rd, const json& j) {
  if (!rd.object(j, "/state")) return std::nullopt;
  rd.allowed_keys(j, "/state", {"amplitudes", "detectors", "rho", "gram"});
  const bool has_amp = j.contains("amplitudes");
  const bool has_rho = j.contains("rho");
  if (has_amp == has_rho) {
    rd.error("/state", "exactly one state spec is required: {amplitudes, detectors|gram} or "
                       "{rho, gram}");
    return std::nullopt;
  }
  if (has_amp) {
    AmplitudeStateSpec spec;
    const bool has_det = j.contains("detectors");
    const bool has_gram = j.contains("gram");
    if (has_det == has_gram) {
      rd.error("/state", "amplitudes need exactly one of detectors or gram");
      return std::nullopt;
    }
    const auto amps = rd.vector(j["amplitudes"], "/state/amplitudes");
    if (amps) spec.amplitudes.assign(amps->data(), amps->data() + amps->size());
    bool ok = amps.has_value();
    if (has_det) {
      const json& dets = j["detectors"];
      if (!dets.is_array()) {
        rd.error("/state/detectors", "expected a list of detector vectors");
        return std::nullopt;
      }
      std::vector<Vector> vs;
      for (std::size_t k = 0; k < dets.size(); ++k) {
        auto v = rd.vector(dets[k], "/state/detectors/" + std::to_string(k));
        if (v) vs.push_back(std::move(*v));
        else ok = false;
      }
      if (ok && vs.size() != spec.amplitudes.size()) {
        rd.error("/state/detectors", std::to_string(vs.size()) + " detector vectors for " +
                                         std::to_string(spec.amplitudes.size()) + " amplitudes");
        ok = false;
      }
      spec.detectors = std::move(vs);
    } else {
      spec.gram = rd.matrix(j["gram"], "/state/gram");
      ok = ok && spec.gram.has_value();
    }
    return ok ? std::optional<StateSpec>(std::move(spec)) : std::nullopt;
  }
  if (!j.contains("gram")) {
    rd.error("/state", "rho needs a gram matrix");
    return std::nullopt;
  }
  auto rho = rd.matrix(j["rho"], "/state/rho");
  auto gram = rd.matrix(j["gram"], "/state/gram");
  if (!rho || !gram) return std::nullopt;
  return MatrixStateSpec{std::move(*rho), std::move(*gram)};
}

Eigen::Index path_count(const StateSpec& spec) {
  if (const auto* a = std::get_if<AmplitudeStateSpec>(&spec))
    return static_cast<Eigen::Index>(a->amplitudes.size());
  return std::get<MatrixStateSpec>(spec).rho.rows();
}

std::optional<MeiWeitzSpec> parse_meiweitz(Reader& rd, const json& j) {
  const std::string at = "/meiweitz";
  if (!rd.object(j, at)) return std::nullopt;
  rd.allowed_keys(j, at, {"n", "flipped_path", "decohered_paths", "gamma_grid", "gamma_points"});
  MeiWeitzSpec spec;
  bool ok = true;
  if (j.contains("n")) {
    const auto n = rd.integer(j["n"], at + "/n");
    if (n && *n < 3) {
      rd.error(at + "/n", "needs n >= 3 paths");
      ok = false;
    }
    if (n) spec.config.n = *n;
    else ok = false;
  }
  const Eigen::Index n = spec.config.n;
  if (j.contains("flipped_path")) {
    const auto f = rd.integer(j["flipped_path"], at + "/flipped_path");
    if (f) spec.config.flipped_path = *f;
    else ok = false;
  }
  if (spec.config.flipped_path < 0 || spec.config.flipped_path >= n) {
    rd.error(at + "/flipped_path", "index " + std::to_string(spec.config.flipped_path) +
                                       " out of range for n = " + std::to_string(n));
    ok = false;
  }
  if (j.contains("decohered_paths")) {
    const json& d = j["decohered_paths"];
    spec.config.decohered_paths.clear();
    if (!d.is_array() || d.empty()) {
      rd.error(at + "/decohered_paths", "expected a non-empty list of path indices");
      ok = false;
    } else {
      std::set<Eigen::Index> seen;
      for (std::size_t k = 0; k < d.size(); ++k) {
        const std::string where = at + "/decohered_paths/" + std::to_string(k);
        const auto p = rd.integer(d[k], where);
        if (!p) {
          ok = false;
          continue;
        }
        if (*p < 0 || *p >= n) {
          rd.error(where, "index " + std::to_string(*p) + " out of range for n = " +
                              std::to_string(n));
          ok = false;
        } else if (!seen.insert(*p).second) {
          rd.error(where, "path " + std::to_string(*p) + " listed twice");
          ok = false;
        }
        spec.config.decohered_paths.push_back(*p);
      }
    }
  }
  if (j.contains("gamma_grid") && j.contains("gamma_points")) {
    rd.error(at, "give gamma_grid or gamma_points, not both");
    ok = false;
  } else if (j.contains("gamma_grid")) {
    const json& g = j["gamma_grid"];
    if (!g.is_array() || g.empty()) {
      rd.error(at + "/gamma_grid", "expected a non-empty list of overlaps");
      ok = false;
    } else {
      for (std::size_t k = 0; k < g.size(); ++k) {
        const std::string where = at + "/gamma_grid/" + std::to_string(k);
        const auto v = rd.number(g[k], where);
        if (v && !(*v >= 0.0 && *v <= 1.0)) {
          rd.error(where, "overlap must lie in [0, 1]");
          ok = false;
        }
        if (v) spec.gamma_grid.push_back(*v);
        else ok = false;
      }
    }
  } else {
    int points = 11;
    if (j.contains("gamma_points")) {
      const auto p = rd.integer(j["gamma_points"], at + "/gamma_points");
      if (p && *p < 2) {
        rd.error(at + "/gamma_points", "need at least two grid points");
        ok = false;
      } else if (p) {
        points = static_cast<int>(*p);
      } else {
        ok = false;
      }
    }
    if (ok) spec.gamma_grid = uniform_gamma_grid(points);
  }
  return ok ? std::optional<MeiWeitzSpec>(std::move(spec)) : std::nullopt;
}

std::optional<UqsdSpec> parse_uqsd(Reader& rd, const json& j) {
  const std::string at = "/uqsd";
  if (!rd.object(j, at)) return std::nullopt;
  rd.allowed_keys(j, at, {"d1", "d2", "p1", "trials", "seed", "shards"});
  UqsdSpec spec;
  bool ok = true;
  for (const char* key : {"d1", "d2"}) {
    if (!j.contains(key)) {
      rd.error(at + "/" + key, "required");
      ok = false;
      continue;
    }
    auto v = rd.vector(j[key], at + "/" + key);
    if (!v) {
      ok = false;
      continue;
    }
    (std::string_view(key) == "d1" ? spec.d1 : spec.d2) = std::move(*v);
  }
  if (ok && spec.d1.size() != spec.d2.size()) {
    rd.error(at + "/d2", "d1 and d2 must have the same dimension");
    ok = false;
  }
  if (j.contains("p1")) {
    const auto p = rd.number(j["p1"], at + "/p1");
    if (p && !(*p >= 0.0 && *p <= 1.0)) {
      rd.error(at + "/p1", "prior must lie in [0, 1]");
      ok = false;
    }
    if (p) spec.p1 = *p;
    else ok = false;
  }
  auto positive = [&](const char* key, std::uint64_t& out) {
    if (!j.contains(key)) return;
    const json& v = j[key];
    const bool valid = v.is_number_unsigned()  ? v.get<std::uint64_t>() >= 1
                       : v.is_number_integer() ? v.get<std::int64_t>() >= 1
                                               : false;
    if (!valid) {
      rd.error(at + "/" + key, "expected a positive integer");
      ok = false;
      return;
    }
    out = v.get<std::uint64_t>();
  };
  positive("trials", spec.trials);
  std::uint64_t shards = spec.shards;
  positive("shards", shards);
  if (shards > 256) {
    rd.error(at + "/shards", "at most 256 shards");
    ok = false;
  }
  spec.shards = static_cast<unsigned>(shards);
  if (j.contains("seed")) {
    const json& s = j["seed"];
    if (!s.is_number_integer() || (!s.is_number_unsigned() && s.get<std::int64_t>() < 0)) {
      rd.error(at + "/seed", "expected a non-negative 64-bit integer");
      ok = false;
    } else {
      spec.seed = s.get<std::uint64_t>();
    }
  }
  return ok ? std::optional<UqsdSpec>(std::move(spec)) : std::nullopt;
}

}  // namespace

ScenarioConfig parse_config(std::string_view text, std::optional<Mode> mode) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError({syntax_message(text, e)});
  }

  Reader rd;
  ScenarioConfig cfg;
  if (!doc.is_object()) throw ConfigError({"/: expected a JSON object"});
  rd.allowed_keys(doc, "", {"mode", "description", "state", "geometry", "fringes", "meiweitz",
                            "uqsd", "output"});

  std::optional<Mode> declared;
  if (doc.contains("mode")) {
    if (doc["mode"].is_string()) declared = parse_mode(doc["mode"].get<std::string>());
    if (!declared) rd.error("/mode", "expected one of report, pairs, fringes, meiweitz, uqsd");
  }
  if (mode && declared && *mode != *declared) {
    rd.error("/mode", "document declares '" + std::string(mode_name(*declared)) +
                          "' but was run as '" + std::string(mode_name(*mode)) + "'");
  }
  if (!mode && !declared && !doc.contains("mode")) rd.error("/mode", "required");
  cfg.mode = mode ? *mode : declared.value_or(Mode::kReport);

  const bool needs_state =
      cfg.mode == Mode::kReport || cfg.mode == Mode::kPairs || cfg.mode == Mode::kFringes;
  if (doc.contains("state")) {
    if (needs_state) cfg.state = parse_state(rd, doc["state"]);
    else rd.error("/state", "not used by mode " + std::string(mode_name(cfg.mode)));
  } else if (needs_state) {
    rd.error("/state", "required for mode " + std::string(mode_name(cfg.mode)));
  }

  if (doc.contains("geometry")) {
    const json& g = doc["geometry"];
    if (rd.object(g, "/geometry")) {
      rd.allowed_keys(g, "/geometry", {"phase_step_count"});
      if (g.contains("phase_step_count")) {
        const auto steps = rd.integer(g["phase_step_count"], "/geometry/phase_step_count");
        if (steps && (*steps < SlitGeometry::kMinPhaseSteps || *steps > (1 << 24))) {
          rd.error("/geometry/phase_step_count",
                   "must be between " + std::to_string(SlitGeometry::kMinPhaseSteps) +
                       " and 16777216");
        } else if (steps) {
          cfg.phase_step_count = static_cast<int>(*steps);
        }
      }
    }
  }

  if (doc.contains("fringes")) {
    const json& f = doc["fringes"];
    if (cfg.mode != Mode::kFringes) {
      rd.error("/fringes", "only used by mode fringes");
    } else if (rd.object(f, "/fringes")) {
      rd.allowed_keys(f, "/fringes", {"pair"});
      if (f.contains("pair")) {
        const json& p = f["pair"];
        if (!p.is_array() || p.size() != 2) {
          rd.error("/fringes/pair", "expected [i, j]");
        } else {
          const auto i = rd.integer(p[0], "/fringes/pair/0");
          const auto k = rd.integer(p[1], "/fringes/pair/1");
          if (i && k) {
            const Eigen::Index n = cfg.state ? path_count(*cfg.state) : 0;
            bool ok = true;
            for (int idx = 0; idx < 2; ++idx) {
              const std::int64_t v = idx == 0 ? *i : *k;
              if (cfg.state && (v < 0 || v >= n)) {
                rd.error("/fringes/pair/" + std::to_string(idx),
                         "index " + std::to_string(v) + " out of range for n = " +
                             std::to_string(n));
                ok = false;
              }
            }
            if (*i == *k) {
              rd.error("/fringes/pair", "the two paths must differ");
              ok = false;
            }
            if (ok) cfg.fringe_pair = PathPair{*i, *k};
          }
        }
      }
    }
  }

  if (cfg.mode == Mode::kMeiWeitz) {
    cfg.meiweitz = parse_meiweitz(rd, doc.value("meiweitz", json::object()));
  } else if (doc.contains("meiweitz")) {
    rd.error("/meiweitz", "only used by mode meiweitz");
  }

  if (cfg.mode == Mode::kUqsd) {
    if (doc.contains("uqsd")) cfg.uqsd = parse_uqsd(rd, doc["uqsd"]);
    else rd.error("/uqsd", "required for mode uqsd");
  } else if (doc.contains("uqsd")) {
    rd.error("/uqsd", "only used by mode uqsd");
  }

  cfg.output.format = artifact_format(cfg.mode);
  if (doc.contains("output")) {
    const json& o = doc["output"];
    if (rd.object(o, "/output")) {
      rd.allowed_keys(o, "/output", {"format", "path"});
      if (o.contains("format")) {
        const json& f = o["format"];
        const std::string expected = cfg.output.format == OutputFormat::kJson ? "json" : "csv";
        if (!f.is_string() || (f != "json" && f != "csv")) {
          rd.error("/output/format", "expected json or csv");
        } else if (f.get<std::string>() != expected) {
          rd.error("/output/format", "mode " + std::string(mode_name(cfg.mode)) + " writes " +
                                         expected);
        }
      }
      if (o.contains("path")) {
        if (o["path"].is_string() && !o["path"].get<std::string>().empty()) {
          cfg.output.path = o["path"].get<std::string>();
        } else {
          rd.error("/output/path", "expected a non-empty string");
        }
      }
    }
  }

  if (!rd.errors().empty()) throw ConfigError(std::move(rd.errors()));
  cfg.source = std::move(doc);
  return cfg;
}

// ---------------------------------------------------------------------------
// Running

namespace {

template <typename F>
auto guarded(const std::string& location, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ScenarioError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ScenarioError(location, exit_code::kValidation, e.what());
  } catch (const DimensionError& e) {
    throw ScenarioError(location, exit_code::kValidation, e.what());
  } catch (const Error& e) {
    throw ScenarioError(location, exit_code::kRuntime, e.what());
  } catch (const InvariantError& e) {
    throw ScenarioError(location, exit_code::kRuntime, e.what());
  }
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

template <typename M>
json matrix_json(const M& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename M>
void matrix_from(const json& j, M& m) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
  m.resize(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = complex_from(j.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c)));
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(complex_json(v(k)));
  return out;
}

json diagnostics_json(const StateDiagnostics& d) {
  json checks = json::array();
  for (const auto& c : d.checks) {
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"residual", c.residual},
                      {"tolerance", c.tolerance}});
  }
  return {{"ok", d.ok()},
          {"checks", std::move(checks)},
          {"rho_hermiticity_defect", d.rho_hermiticity_defect},
          {"rho_trace_defect", d.rho_trace_defect},
          {"rho_min_eigenvalue", d.rho_min_eigenvalue},
          {"rho_max_eigenvalue", d.rho_max_eigenvalue},
          {"gram_hermiticity_defect", d.gram_hermiticity_defect},
          {"gram_diagonal_defect", d.gram_diagonal_defect},
          {"gram_min_eigenvalue", d.gram_min_eigenvalue},
          {"gram_rank", d.gram_rank},
          {"effective_min_eigenvalue", d.effective_min_eigenvalue}};
}

StateDiagnostics diagnostics_from(const json& j) {
  StateDiagnostics d;
  for (const auto& c : j.at("checks")) {
    d.checks.push_back({c.at("name").get<std::string>(), c.at("passed").get<bool>(),
                        c.at("residual").get<double>(), c.at("tolerance").get<double>()});
  }
  d.rho_hermiticity_defect = j.at("rho_hermiticity_defect").get<double>();
  d.rho_trace_defect = j.at("rho_trace_defect").get<double>();
  d.rho_min_eigenvalue = j.at("rho_min_eigenvalue").get<double>();
  d.rho_max_eigenvalue = j.at("rho_max_eigenvalue").get<double>();
  d.gram_hermiticity_defect = j.at("gram_hermiticity_defect").get<double>();
  d.gram_diagonal_defect = j.at("gram_diagonal_defect").get<double>();
  d.gram_min_eigenvalue = j.at("gram_min_eigenvalue").get<double>();
  d.gram_rank = j.at("gram_rank").get<int>();
  d.effective_min_eigenvalue = j.at("effective_min_eigenvalue").get<double>();
  return d;
}

json pair_json(const PairMetrics& m) {
  return {{"i", m.i},
          {"j", m.j},
          {"pair_weight", m.pair_weight},
          {"visibility", m.visibility},
          {"distinguishability", m.distinguishability},
          {"slack", m.slack},
          {"reduced", matrix_json(m.reduced)}};
}

PairMetrics pair_from(const json& j) {
  PairMetrics m;
  m.i = j.at("i").get<Eigen::Index>();
  m.j = j.at("j").get<Eigen::Index>();
  m.pair_weight = j.at("pair_weight").get<double>();
  m.visibility = j.at("visibility").get<double>();
  m.distinguishability = j.at("distinguishability").get<double>();
  m.slack = j.at("slack").get<double>();
  matrix_from(j.at("reduced"), m.reduced);
  return m;
}

json report_json(const DualityReport& r) {
  json pairs = json::array();
  for (const auto& m : r.pairwise) pairs.push_back(pair_json(m));
  json dark = json::array();
  for (const auto& [i, j] : r.dark_pairs) dark.push_back({i, j});
  return {{"n", r.n},
          {"coherence", r.coherence},
          {"distinguishability", r.distinguishability},
          {"coherence_from_pairs", r.coherence_from_pairs},
          {"distinguishability_from_pairs", r.distinguishability_from_pairs},
          {"pairwise", std::move(pairs)},
          {"dark_pairs", std::move(dark)},
          {"symmetric_sum_lhs", r.symmetric_sum_lhs ? json(*r.symmetric_sum_lhs) : json()},
          {"weighted_sum_lhs", r.weighted_sum_lhs},
          {"duality_margin", r.duality_margin},
          {"is_symmetric", r.is_symmetric},
          {"is_pure", r.is_pure},
          {"gram_rank", r.gram_rank}};
}

DualityReport report_from(const json& j) {
  DualityReport r;
  r.n = j.at("n").get<Eigen::Index>();
  r.coherence = j.at("coherence").get<double>();
  r.distinguishability = j.at("distinguishability").get<double>();
  r.coherence_from_pairs = j.at("coherence_from_pairs").get<double>();
  r.distinguishability_from_pairs = j.at("distinguishability_from_pairs").get<double>();
  for (const auto& p : j.at("pairwise")) r.pairwise.push_back(pair_from(p));
  for (const auto& p : j.at("dark_pairs"))
    r.dark_pairs.emplace_back(p.at(0).get<Eigen::Index>(), p.at(1).get<Eigen::Index>());
  if (!j.at("symmetric_sum_lhs").is_null())
    r.symmetric_sum_lhs = j.at("symmetric_sum_lhs").get<double>();
  r.weighted_sum_lhs = j.at("weighted_sum_lhs").get<double>();
  r.duality_margin = j.at("duality_margin").get<double>();
  r.is_symmetric = j.at("is_symmetric").get<bool>();
  r.is_pure = j.at("is_pure").get<bool>();
  r.gram_rank = j.at("gram_rank").get<int>();
  return r;
}

bool same_checks(const StateDiagnostics& a, const StateDiagnostics& b) {
  if (a.checks.size() != b.checks.size()) return false;
  for (std::size_t k = 0; k < a.checks.size(); ++k) {
    const auto& x = a.checks[k];
    const auto& y = b.checks[k];
    if (x.name != y.name || x.passed != y.passed || x.residual != y.residual ||
        x.tolerance != y.tolerance)
      return false;
  }
  return true;
}

bool same_report(const DualityReport& a, const DualityReport& b) {
  if (a.pairwise.size() != b.pairwise.size()) return false;
  for (std::size_t k = 0; k < a.pairwise.size(); ++k) {
    const auto& x = a.pairwise[k];
    const auto& y = b.pairwise[k];
    if (x.i != y.i || x.j != y.j || x.visibility != y.visibility ||
        x.distinguishability != y.distinguishability || x.slack != y.slack ||
        x.pair_weight != y.pair_weight || x.reduced != y.reduced)
      return false;
  }
  return a.n == b.n && a.coherence == b.coherence && a.distinguishability == b.distinguishability &&
         a.coherence_from_pairs == b.coherence_from_pairs &&
         a.distinguishability_from_pairs == b.distinguishability_from_pairs &&
         a.dark_pairs == b.dark_pairs && a.symmetric_sum_lhs == b.symmetric_sum_lhs &&
         a.weighted_sum_lhs == b.weighted_sum_lhs && a.duality_margin == b.duality_margin &&
         a.is_symmetric == b.is_symmetric && a.is_pure == b.is_pure && a.gram_rank == b.gram_rank;
}

std::string csv(std::initializer_list<std::string> header,
                const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  bool first = true;
  for (const auto& h : header) {
    out += first ? "" : ",";
    out += h;
    first = false;
  }
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ",";
      out += row[k];
    }
    out += "\n";
  }
  return out;
}

std::string pair_label(Eigen::Index i, Eigen::Index j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

Artifact render_report(const ScenarioConfig& cfg, const RunOptions& opts) {
  const InterferometerState state = build_state(cfg);
  ReportDocument doc;
  doc.input = cfg.source;
  doc.diagnostics = validate(state);
  doc.report = guarded("/state", [&] { return duality_report(state); });
  doc.tool_version = std::string(tool_version());
  doc.timestamp = opts.timestamp;

  std::ostringstream s;
  const DualityReport& r = doc.report;
  s << "paths n = " << r.n << (r.is_pure ? " (pure)" : " (mixed)")
    << (r.is_symmetric ? ", symmetric" : ", asymmetric") << ", rank(gamma) = " << r.gram_rank
    << "\n";
  s << "coherence C = " << format_number(r.coherence)
    << "  (from pairs " << format_number(r.coherence_from_pairs) << ")\n";
  s << "distinguishability D_Q = " << format_number(r.distinguishability) << "  (from pairs "
    << format_number(r.distinguishability_from_pairs) << ")\n";
  s << "duality margin 1 - (C + D_Q) = " << format_number(r.duality_margin) << "\n";
  for (const auto& m : r.pairwise) {
    s << "  pair " << pair_label(m.i, m.j) << ": V = " << format_number(m.visibility)
      << ", D = " << format_number(m.distinguishability) << ", slack = " << format_number(m.slack)
      << "\n";
  }
  return {to_json(doc).dump(2) + "\n", s.str()};
}

Artifact render_pairs(const ScenarioConfig& cfg) {
  const InterferometerState state = build_state(cfg);
  std::vector<std::vector<std::string>> rows;
  std::ostringstream s;
  s << "pair      weight  V  D  slack\n";
  for (const auto& [i, j] : path_pairs(state.size())) {
    const double w = state.rho().population(i) + state.rho().population(j);
    if (w <= tolerance::kDarkPair) {
      s << "  " << pair_label(i, j) << " dark, skipped\n";
      continue;
    }
    const PairMetrics m = guarded("/state", [&] { return pair_metrics(state, i, j); });
    rows.push_back({std::to_string(i), std::to_string(j), format_number(m.pair_weight),
                    format_number(m.visibility), format_number(m.distinguishability),
                    format_number(m.slack)});
    s << "  " << pair_label(i, j) << " " << format_number(m.pair_weight) << " "
      << format_number(m.visibility) << " " << format_number(m.distinguishability) << " "
      << format_number(m.slack) << "\n";
  }
  return {csv({"i", "j", "weight", "visibility", "distinguishability", "slack"}, rows), s.str()};
}

Artifact render_fringes(const ScenarioConfig& cfg) {
  const InterferometerState state = build_state(cfg);
  const SlitGeometry geometry{state.size(), cfg.phase_step_count};
  const FringeProfile p = guarded("/fringes", [&] {
    return cfg.fringe_pair ? two_slit_pattern(state, cfg.fringe_pair->first,
                                              cfg.fringe_pair->second, geometry)
                           : intensity_profile(state, geometry);
  });
  std::vector<std::vector<std::string>> rows;
  rows.reserve(p.delta.size());
  for (std::size_t k = 0; k < p.delta.size(); ++k)
    rows.push_back({format_number(p.delta[k]), format_number(p.intensity[k])});
  std::string summary = "visibility = " + format_number(p.visibility) +
                        " (i_max = " + format_number(p.i_max) +
                        ", i_min = " + format_number(p.i_min) + ")";
  if (cfg.fringe_pair) {
    summary += " for pair " + pair_label(cfg.fringe_pair->first, cfg.fringe_pair->second);
  }
  return {csv({"delta", "intensity"}, rows), summary + "\n"};
}

Artifact render_meiweitz(const ScenarioConfig& cfg) {
  const MeiWeitzSpec& spec = *cfg.meiweitz;
  const SlitGeometry geometry{spec.config.n, cfg.phase_step_count};
  const MeiWeitzScan scan =
      guarded("/meiweitz", [&] { return mei_weitz_scan(spec.config, spec.gamma_grid, geometry); });
  std::vector<std::vector<std::string>> rows;
  std::ostringstream s;
  s << "g  visibility  C  D_Q\n";
  for (std::size_t k = 0; k < scan.gamma_grid.size(); ++k) {
    rows.push_back({format_number(scan.gamma_grid[k]), format_number(scan.visibilities[k]),
                    format_number(scan.coherences[k]),
                    format_number(scan.distinguishabilities[k])});
    s << "  " << format_number(scan.gamma_grid[k]) << " " << format_number(scan.visibilities[k])
      << " " << format_number(scan.coherences[k]) << " "
      << format_number(scan.distinguishabilities[k]) << "\n";
  }
  for (const auto& skipped : scan.skipped)
    s << "  skipped g = " << format_number(skipped.g) << ": " << skipped.reason << "\n";
  return {csv({"g", "visibility", "coherence", "distinguishability"}, rows), s.str()};
}

Artifact render_uqsd(const ScenarioConfig& cfg) {
  const UqsdSpec& spec = *cfg.uqsd;
  const UqsdProblem problem = guarded("/uqsd", [&] {
    return UqsdProblem(DetectorState(spec.d1), DetectorState(spec.d2), spec.p1);
  });
  const double s = problem.overlap_magnitude();
  const SuccessProbability analytic =
      guarded("/uqsd", [&] { return success_probability(problem.p1(), problem.p2(), s); });
  const UqsdPovm povm = guarded("/uqsd", [&] { return build_povm(problem); });
  const PovmDiagnostics diag = check_povm(povm);
  const SimulationRecord sim = guarded(
      "/uqsd", [&] { return simulate(problem, povm, spec.trials, spec.seed, spec.shards); });

  const double p = analytic.value;
  const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(sim.trials));
  const double empirical = sim.freq_correct_1() + sim.freq_correct_2();

  json shards = json::array();
  for (const auto& sh : sim.shards) shards.push_back({{"seed", sh.seed}, {"trials", sh.trials}});
  json out = {
      {"input", cfg.source},
      {"tool_version", std::string(tool_version())},
      {"problem", {{"p1", problem.p1()}, {"p2", problem.p2()}, {"overlap_magnitude", s}}},
      {"analytic",
       {{"success_probability", p},
        {"failure_probability", 1.0 - p},
        {"in_optimal_regime", analytic.in_optimal_regime},
        {"povm_success_probability", povm.success_probability(problem.p1(), problem.p2())}}},
      {"povm",
       {{"e1", matrix_json(povm.e1)},
        {"e2", matrix_json(povm.e2)},
        {"e_fail", matrix_json(povm.e_fail)},
        {"basis", json::array({vector_json(povm.basis[0]), vector_json(povm.basis[1])})},
        {"min_eigenvalue", diag.min_eigenvalue},
        {"completeness_defect", diag.completeness_defect},
        {"wrong_1", diag.wrong_1},
        {"wrong_2", diag.wrong_2}}},
      {"empirical",
       {{"seed", sim.seed},
        {"trials", sim.trials},
        {"shards", std::move(shards)},
        {"count_correct_1", sim.correct_1},
        {"count_correct_2", sim.correct_2},
        {"count_fail", sim.failed},
        {"count_wrong", sim.wrong},
        {"freq_correct_1", sim.freq_correct_1()},
        {"freq_correct_2", sim.freq_correct_2()},
        {"freq_fail", sim.freq_fail()},
        {"freq_wrong", sim.freq_wrong()},
        {"success_frequency", empirical},
        {"binomial_sigma", sigma},
        {"deviation_in_sigma", sigma > 0.0 ? (empirical - p) / sigma : 0.0}}}};

  std::ostringstream summary;
  summary << "analytic success probability = " << format_number(p)
          << (analytic.in_optimal_regime ? "" : " (outside optimal regime)") << "\n"
          << "empirical success frequency  = " << format_number(empirical) << " over "
          << sim.trials << " trials (seed " << sim.seed << ")\n"
          << "wrong identifications = " << sim.wrong << "\n";
  return {out.dump(2) + "\n", summary.str()};
}

}  // namespace

InterferometerState build_state(const ScenarioConfig& config) {
  if (!config.state) throw ScenarioError("/state", exit_code::kConfig, "no state given");
  return guarded("/state", [&]() -> InterferometerState {
    if (const auto* a = std::get_if<AmplitudeStateSpec>(&*config.state)) {
      if (a->detectors) {
        std::vector<DetectorState> dets;
        dets.reserve(a->detectors->size());
        for (const auto& v : *a->detectors) dets.emplace_back(v);
        return build_pure_state(a->amplitudes, dets);
      }
      return build_pure_state(a->amplitudes, DetectorGram(*a->gram));
    }
    const auto& m = std::get<MatrixStateSpec>(*config.state);
    return build_mixed_state(m.rho, m.gram);
  });
}

nlohmann::json to_json(const ReportDocument& doc) {
  return {{"input", doc.input},
          {"diagnostics", diagnostics_json(doc.diagnostics)},
          {"report", report_json(doc.report)},
          {"tool_version", doc.tool_version},
          {"timestamp", doc.timestamp ? json(*doc.timestamp) : json()}};
}

ReportDocument report_document_from_json(const nlohmann::json& j) {
  ReportDocument doc;
  doc.input = j.at("input");
  doc.diagnostics = diagnostics_from(j.at("diagnostics"));
  doc.report = report_from(j.at("report"));
  doc.tool_version = j.at("tool_version").get<std::string>();
  if (!j.at("timestamp").is_null()) doc.timestamp = j.at("timestamp").get<std::string>();
  return doc;
}

bool operator==(const ReportDocument& a, const ReportDocument& b) {
  return a.input == b.input && same_checks(a.diagnostics, b.diagnostics) &&
         a.diagnostics.rho_hermiticity_defect == b.diagnostics.rho_hermiticity_defect &&
         a.diagnostics.rho_trace_defect == b.diagnostics.rho_trace_defect &&
         a.diagnostics.rho_min_eigenvalue == b.diagnostics.rho_min_eigenvalue &&
         a.diagnostics.rho_max_eigenvalue == b.diagnostics.rho_max_eigenvalue &&
         a.diagnostics.gram_hermiticity_defect == b.diagnostics.gram_hermiticity_defect &&
         a.diagnostics.gram_diagonal_defect == b.diagnostics.gram_diagonal_defect &&
         a.diagnostics.gram_min_eigenvalue == b.diagnostics.gram_min_eigenvalue &&
         a.diagnostics.gram_rank == b.diagnostics.gram_rank &&
         a.diagnostics.effective_min_eigenvalue == b.diagnostics.effective_min_eigenvalue &&
         same_report(a.report, b.report) && a.tool_version == b.tool_version &&
         a.timestamp == b.timestamp;
}

Artifact run(const ScenarioConfig& config, const RunOptions& options) {
  switch (config.mode) {
    case Mode::kReport: return render_report(config, options);
    case Mode::kPairs: return render_pairs(config);
    case Mode::kFringes: return render_fringes(config);
    case Mode::kMeiWeitz: return render_meiweitz(config);
    case Mode::kUqsd: return render_uqsd(config);
  }
  throw ScenarioError("/mode", exit_code::kConfig, "unknown mode");
}

Artifact validate_only(const ScenarioConfig& config) {
  std::ostringstream s;
  s << "mode " << mode_name(config.mode) << ": config ok\n";
  if (config.state) {
    const auto* m = std::get_if<MatrixStateSpec>(&*config.state);
    const StateDiagnostics d = m ? validate(m->rho, m->gram) : validate(build_state(config));
    for (const auto& c : d.checks) {
      s << "  " << (c.passed ? "pass " : "FAIL ") << c.name << "  residual "
        << format_number(c.residual) << "\n";
    }
    if (!d.ok()) {
      throw ScenarioError("/state", exit_code::kValidation,
                          "invariant " + d.first_failure()->name + " failed\n" + s.str());
    }
  }
  if (config.meiweitz) {
    for (const double g : config.meiweitz->gamma_grid)
      guarded("/meiweitz", [&] { return mei_weitz_state(config.meiweitz->config, g); });
    s << "  meiweitz: " << config.meiweitz->gamma_grid.size() << " grid points ok\n";
  }
  if (config.uqsd) {
    const UqsdProblem problem = guarded("/uqsd", [&] {
      return UqsdProblem(DetectorState(config.uqsd->d1), DetectorState(config.uqsd->d2),
                         config.uqsd->p1);
    });
    guarded("/uqsd", [&] { return build_povm(problem); });
    s << "  uqsd: problem in optimal regime\n";
  }
  return {"", s.str()};
}

void write_atomically(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("cannot rename onto " + target.string());
  }
}

}  // namespace wpd
