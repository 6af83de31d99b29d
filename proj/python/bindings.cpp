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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wpd/core_state.hpp"
#include "wpd/errors.hpp"
#include "wpd/fringes.hpp"
#include "wpd/multipath.hpp"
#include "wpd/pairwise.hpp"
#include "wpd/scenario.hpp"
#include "wpd/uqsd.hpp"

namespace py = pybind11;
using namespace wpd;

namespace {

std::vector<DetectorState> detectors_from(const std::vector<Vector>& vs) {
  std::vector<DetectorState> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.emplace_back(v);
  return out;
}

}  // namespace

PYBIND11_MODULE(_wpduality, m) {
  m.doc() = "n-path interference, coherence and two-state unambiguous discrimination";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto validation = py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<NormalizationError>(m, "NormalizationError", validation.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<DarkPairError>(m, "DarkPairError", base.ptr());
  py::register_exception<DarkPatternError>(m, "DarkPatternError", base.ptr());
  py::register_exception<RegimeError>(m, "RegimeError", base.ptr());
  py::register_exception<ArgumentError>(m, "ArgumentError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ScenarioError>(m, "ScenarioError", base.ptr());

  // core_state
  py::class_<InterferometerState>(m, "InterferometerState")
      .def_property_readonly("rho", [](const InterferometerState& s) { return s.rho().matrix(); })
      .def_property_readonly("gram", [](const InterferometerState& s) { return s.gram().matrix(); })
      .def_property_readonly("is_pure", &InterferometerState::is_pure)
      .def_property_readonly("n", &InterferometerState::size);

  m.def(
      "build_pure_state",
      [](const std::vector<Complex>& amplitudes, const std::vector<Vector>& detectors) {
        return build_pure_state(amplitudes, detectors_from(detectors));
      },
      py::arg("amplitudes"), py::arg("detectors"));
  m.def(
      "build_pure_state_from_gram",
      [](const std::vector<Complex>& amplitudes, const Matrix& gram) {
        return build_pure_state(amplitudes, DetectorGram(gram));
      },
      py::arg("amplitudes"), py::arg("gram"));
  m.def(
      "build_mixed_state",
      [](const Matrix& rho, const Matrix& gram) { return build_mixed_state(rho, gram); },
      py::arg("rho"), py::arg("gram"));
  m.def(
      "detector_gram",
      [](const std::vector<Vector>& detectors) {
        return DetectorGram::from_detectors(detectors_from(detectors)).matrix();
      },
      py::arg("detectors"));
  m.def(
      "effective_density",
      [](const InterferometerState& s) { return effective_density(s).matrix(); }, py::arg("state"));

  py::class_<InvariantCheck>(m, "InvariantCheck")
      .def_readonly("name", &InvariantCheck::name)
      .def_readonly("passed", &InvariantCheck::passed)
      .def_readonly("residual", &InvariantCheck::residual)
      .def_readonly("tolerance", &InvariantCheck::tolerance);
  py::class_<StateDiagnostics>(m, "StateDiagnostics")
      .def_readonly("checks", &StateDiagnostics::checks)
      .def_readonly("rho_hermiticity_defect", &StateDiagnostics::rho_hermiticity_defect)
      .def_readonly("rho_trace_defect", &StateDiagnostics::rho_trace_defect)
      .def_readonly("rho_min_eigenvalue", &StateDiagnostics::rho_min_eigenvalue)
      .def_readonly("gram_min_eigenvalue", &StateDiagnostics::gram_min_eigenvalue)
      .def_readonly("gram_rank", &StateDiagnostics::gram_rank)
      .def_readonly("effective_min_eigenvalue", &StateDiagnostics::effective_min_eigenvalue)
      .def_property_readonly("ok", &StateDiagnostics::ok);
  m.def("validate", py::overload_cast<const InterferometerState&>(&validate), py::arg("state"));
  m.def("validate_matrices", py::overload_cast<const Matrix&, const Matrix&>(&validate),
        py::arg("rho"), py::arg("gram"));

  // pairwise
  py::class_<PairMetrics>(m, "PairMetrics")
      .def_readonly("i", &PairMetrics::i)
      .def_readonly("j", &PairMetrics::j)
      .def_readonly("visibility", &PairMetrics::visibility)
      .def_readonly("distinguishability", &PairMetrics::distinguishability)
      .def_readonly("slack", &PairMetrics::slack)
      .def_readonly("pair_weight", &PairMetrics::pair_weight)
      .def_readonly("reduced", &PairMetrics::reduced);
  m.def("open_pair", &open_pair, py::arg("state"), py::arg("i"), py::arg("j"));
  m.def("pair_visibility", &pair_visibility, py::arg("state"), py::arg("i"), py::arg("j"));
  m.def("pair_distinguishability", &pair_distinguishability, py::arg("state"), py::arg("i"),
        py::arg("j"));
  m.def("pair_metrics", &pair_metrics, py::arg("state"), py::arg("i"), py::arg("j"));

  // multipath
  m.def("coherence", &coherence, py::arg("state"));
  m.def("distinguishability", &distinguishability, py::arg("state"));
  m.def("coherence_from_pair_visibilities", &coherence_from_pair_visibilities, py::arg("state"));
  m.def("distinguishability_from_pairs", &distinguishability_from_pairs, py::arg("state"));
  py::class_<DualityReport>(m, "DualityReport")
      .def_readonly("n", &DualityReport::n)
      .def_readonly("coherence", &DualityReport::coherence)
      .def_readonly("distinguishability", &DualityReport::distinguishability)
      .def_readonly("coherence_from_pairs", &DualityReport::coherence_from_pairs)
      .def_readonly("distinguishability_from_pairs", &DualityReport::distinguishability_from_pairs)
      .def_readonly("pairwise", &DualityReport::pairwise)
      .def_readonly("dark_pairs", &DualityReport::dark_pairs)
      .def_readonly("symmetric_sum_lhs", &DualityReport::symmetric_sum_lhs)
      .def_readonly("weighted_sum_lhs", &DualityReport::weighted_sum_lhs)
      .def_readonly("duality_margin", &DualityReport::duality_margin)
      .def_readonly("is_symmetric", &DualityReport::is_symmetric)
      .def_readonly("is_pure", &DualityReport::is_pure)
      .def_readonly("gram_rank", &DualityReport::gram_rank);
  m.def("duality_report", &duality_report, py::arg("state"));

  // fringes
  py::class_<SlitGeometry>(m, "SlitGeometry")
      .def(py::init([](Eigen::Index n, int steps) { return SlitGeometry{n, steps}; }),
           py::arg("n"), py::arg("phase_step_count") = SlitGeometry::kDefaultPhaseSteps)
      .def_readwrite("n", &SlitGeometry::n)
      .def_readwrite("phase_step_count", &SlitGeometry::phase_step_count);
  py::class_<FringeProfile>(m, "FringeProfile")
      .def(py::init([](std::vector<double> intensity) {
             FringeProfile p;
             p.intensity = std::move(intensity);
             return p;
           }),
           py::arg("intensity"))
      .def_readonly("delta", &FringeProfile::delta)
      .def_readonly("intensity", &FringeProfile::intensity)
      .def_readonly("i_max", &FringeProfile::i_max)
      .def_readonly("i_min", &FringeProfile::i_min)
      .def_readonly("visibility", &FringeProfile::visibility);
  m.def("intensity_profile", &intensity_profile, py::arg("state"), py::arg("geometry"));
  m.def("extract_visibility", &extract_visibility, py::arg("profile"));
  m.def("two_slit_pattern", &two_slit_pattern, py::arg("state"), py::arg("i"), py::arg("j"),
        py::arg("geometry"));
  py::class_<MeiWeitzConfig>(m, "MeiWeitzConfig")
      .def(py::init([](Eigen::Index n, Eigen::Index flipped, std::vector<Eigen::Index> decohered) {
             return MeiWeitzConfig{n, flipped, std::move(decohered)};
           }),
           py::arg("n") = 4, py::arg("flipped_path") = 3,
           py::arg("decohered_paths") = std::vector<Eigen::Index>{3})
      .def_readwrite("n", &MeiWeitzConfig::n)
      .def_readwrite("flipped_path", &MeiWeitzConfig::flipped_path)
      .def_readwrite("decohered_paths", &MeiWeitzConfig::decohered_paths);
  py::class_<MeiWeitzScan>(m, "MeiWeitzScan")
      .def_readonly("config", &MeiWeitzScan::config)
      .def_readonly("gamma_grid", &MeiWeitzScan::gamma_grid)
      .def_readonly("visibilities", &MeiWeitzScan::visibilities)
      .def_readonly("coherences", &MeiWeitzScan::coherences)
      .def_readonly("distinguishabilities", &MeiWeitzScan::distinguishabilities);
  m.def("mei_weitz_state", &mei_weitz_state, py::arg("config"), py::arg("g"),
        py::arg("flip") = true);
  m.def("mei_weitz_scan", &mei_weitz_scan, py::arg("config"), py::arg("gamma_grid"),
        py::arg("geometry"));
  m.def("uniform_gamma_grid", &uniform_gamma_grid, py::arg("points"));

  // uqsd
  py::class_<SuccessProbability>(m, "SuccessProbability")
      .def_readonly("value", &SuccessProbability::value)
      .def_readonly("in_optimal_regime", &SuccessProbability::in_optimal_regime);
  m.def("success_probability", &success_probability, py::arg("p1"), py::arg("p2"),
        py::arg("overlap_magnitude"));
  py::class_<UqsdProblem>(m, "UqsdProblem")
      .def(py::init([](const Vector& d1, const Vector& d2, double p1) {
             return UqsdProblem(DetectorState(d1), DetectorState(d2), p1);
           }),
           py::arg("d1"), py::arg("d2"), py::arg("p1") = 0.5)
      .def_property_readonly("p1", &UqsdProblem::p1)
      .def_property_readonly("p2", &UqsdProblem::p2)
      .def_property_readonly("overlap_magnitude", &UqsdProblem::overlap_magnitude);
  py::class_<UqsdPovm>(m, "UqsdPovm")
      .def_readonly("e1", &UqsdPovm::e1)
      .def_readonly("e2", &UqsdPovm::e2)
      .def_readonly("e_fail", &UqsdPovm::e_fail)
      .def_readonly("basis", &UqsdPovm::basis)
      .def_readonly("in_optimal_regime", &UqsdPovm::in_optimal_regime)
      .def("success_probability", &UqsdPovm::success_probability, py::arg("p1"), py::arg("p2"));
  py::class_<PovmDiagnostics>(m, "PovmDiagnostics")
      .def_readonly("min_eigenvalue", &PovmDiagnostics::min_eigenvalue)
      .def_readonly("completeness_defect", &PovmDiagnostics::completeness_defect)
      .def_readonly("wrong_1", &PovmDiagnostics::wrong_1)
      .def_readonly("wrong_2", &PovmDiagnostics::wrong_2)
      .def_property_readonly("ok", &PovmDiagnostics::ok);
  m.def("build_povm", &build_povm, py::arg("problem"));
  m.def("check_povm", &check_povm, py::arg("povm"));
  py::class_<SimulationRecord>(m, "SimulationRecord")
      .def_readonly("seed", &SimulationRecord::seed)
      .def_readonly("trials", &SimulationRecord::trials)
      .def_readonly("wrong", &SimulationRecord::wrong)
      .def_property_readonly("freq_correct_1", &SimulationRecord::freq_correct_1)
      .def_property_readonly("freq_correct_2", &SimulationRecord::freq_correct_2)
      .def_property_readonly("freq_fail", &SimulationRecord::freq_fail)
      .def_property_readonly("freq_wrong", &SimulationRecord::freq_wrong);
  m.def("simulate", &simulate, py::arg("problem"), py::arg("povm"), py::arg("trials"),
        py::arg("seed"), py::arg("shards") = 1, py::call_guard<py::gil_scoped_release>());

  // scenarios
  m.def(
      "run_scenario",
      [](const std::string& text, std::optional<std::string> mode) {
        std::optional<Mode> parsed;
        if (mode) {
          parsed = parse_mode(*mode);
          if (!parsed) throw ArgumentError("unknown mode " + *mode);
        }
        const Artifact a = run(parse_config(text, parsed));
        return py::make_tuple(a.content, a.summary);
      },
      py::arg("config_text"), py::arg("mode") = py::none(),
      "Runs a JSON scenario and returns (artifact, summary).");

  m.attr("__version__") = std::string(tool_version());
}
