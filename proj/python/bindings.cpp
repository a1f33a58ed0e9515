// Copyright 2026 The Chronobell Authors
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
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "chronobell/chronology.hpp"
#include "chronobell/cli.hpp"
#include "chronobell/errors.hpp"
#include "chronobell/flash.hpp"
#include "chronobell/lambda_store.hpp"
#include "chronobell/nogo.hpp"
#include "chronobell/quantum.hpp"
#include "chronobell/report.hpp"

namespace py = pybind11;
using namespace chronobell;

namespace {

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

std::vector<BlochSetting> settings(const std::vector<std::array<double, 3>>& dirs, Party party) {
    std::vector<BlochSetting> out;
    for (const auto& d : dirs) out.push_back(BlochSetting::along({d[0], d[1], d[2]}, party));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Chronology-ordered Bell simulation, no-go search and toy flash process";

    auto base_error = py::register_exception<Error>(m, "ChronobellError", PyExc_RuntimeError);
    py::register_exception<StreamExhaustedError>(m, "StreamExhaustedError", base_error.ptr());

    py::enum_<Party>(m, "Party").value("A", Party::A).value("B", Party::B);
    py::enum_<Outcome>(m, "Outcome").value("Plus", Outcome::Plus).value("Minus", Outcome::Minus);
    py::enum_<Chronology>(m, "Chronology").value("AB", Chronology::AB).value("BA", Chronology::BA);

    py::class_<TwoQubitState>(m, "TwoQubitState")
        .def(py::init<std::array<Amplitude, 4>>())
        .def_static("normalized", &TwoQubitState::normalized)
        .def_property_readonly("amplitudes", &TwoQubitState::amplitudes)
        .def("squared_norm", &TwoQubitState::squared_norm);

    py::class_<BlochSetting>(m, "BlochSetting")
        .def(py::init([](std::array<double, 3> d, Party p) { return BlochSetting({d[0], d[1], d[2]}, p); }))
        .def_static("along", [](std::array<double, 3> d, Party p) { return BlochSetting::along({d[0], d[1], d[2]}, p); })
        .def_static("in_xz_plane", &BlochSetting::in_xz_plane)
        .def_property_readonly("direction",
                               [](const BlochSetting& s) {
                                   const auto& d = s.direction();
                                   return std::array<double, 3>{d.x, d.y, d.z};
                               })
        .def_property_readonly("party", &BlochSetting::party);

    m.def("make_singlet", &make_singlet);
    m.def("make_basis_state", &make_basis_state, py::arg("a_bit"), py::arg("b_bit"));
    m.def("born_marginal", &born_marginal);
    m.def("collapse", &collapse);
    m.def(
        "joint_distribution",
        [](const TwoQubitState& s, const BlochSetting& a, const BlochSetting& b, Chronology c) {
            return joint_distribution(s, a, b, c).p;
        },
        "P(++), P(+-), P(-+), P(--)");
    m.def("chsh_value", &chsh_value);

    m.def(
        "covariance_report",
        [](const TwoQubitState& s, const std::vector<std::array<double, 3>>& a_dirs,
           const std::vector<std::array<double, 3>>& b_dirs, std::uint64_t trials, std::uint64_t seed,
           unsigned workers) {
            auto as = settings(a_dirs, Party::A);
            auto bs = settings(b_dirs, Party::B);
            return to_python(to_json(covariance_report(s, as, bs, trials, LambdaStream::from_seed(seed), {workers})));
        },
        py::arg("state"), py::arg("a_directions"), py::arg("b_directions"), py::arg("trials"), py::arg("seed"),
        py::arg("workers") = 1);

    m.def("word_to_unit", &word_to_unit);
    m.def("counter_word", &counter_word);
    m.def(
        "generate_lambda_file",
        [](std::uint64_t seed, std::uint64_t count, const std::string& path) {
            generate_lambda_file(seed, count).write(path);
        },
        py::arg("seed"), py::arg("count"), py::arg("path"));
    m.def("read_lambda_words", [](const std::string& path) {
        auto f = LambdaFile::read(path);
        return std::vector<std::uint64_t>(f.words().begin(), f.words().end());
    });

    m.def(
        "quantum_behavior",
        [](const TwoQubitState& s, const BlochSetting& a0, const BlochSetting& a1, const BlochSetting& b0,
           const BlochSetting& b1) { return quantum_behavior(s, a0, a1, b0, b1); });
    m.def("enumerate_deterministic_strategies", &enumerate_deterministic_strategies);
    m.def("max_chsh", &max_chsh);
    m.def(
        "chsh_facet_check",
        [](const BehaviorVector& p, double tol) { return to_python(to_json(chsh_facet_check(p, tol))); },
        py::arg("behavior"), py::arg("tolerance") = kAccumulatedTolerance);
    m.def(
        "local_membership_lp",
        [](const BehaviorVector& p, double tol) { return to_python(to_json(local_membership_lp(p, tol))); },
        py::arg("behavior"), py::arg("tolerance") = kAccumulatedTolerance);
    m.def(
        "exhaustive_nogo_search",
        [](std::size_t alphabet, const BehaviorVector& target, double tol, unsigned workers) {
            return to_python(to_json(exhaustive_nogo_search(alphabet, target, tol, workers)));
        },
        py::arg("alphabet"), py::arg("target"), py::arg("tolerance") = 1e-6, py::arg("workers") = 1);

    py::class_<GridWavefunction>(m, "GridWavefunction")
        .def_static("normalized", &GridWavefunction::normalized, py::arg("sites"), py::arg("particles"),
                    py::arg("amplitudes"), py::arg("spacing") = 1.0)
        .def_static("localized", &GridWavefunction::localized, py::arg("sites"), py::arg("site"),
                    py::arg("spacing") = 1.0)
        .def_static("uniform", &GridWavefunction::uniform, py::arg("sites"), py::arg("spacing") = 1.0)
        .def_static("antisymmetric_pair", &GridWavefunction::antisymmetric_pair, py::arg("sites"), py::arg("j"),
                    py::arg("k"), py::arg("spacing") = 1.0)
        .def_static("product", &GridWavefunction::product)
        .def_property_readonly("sites", &GridWavefunction::sites)
        .def_property_readonly("particles", &GridWavefunction::particles)
        .def_property_readonly("amplitudes", &GridWavefunction::amplitudes);

    py::class_<HitKernel>(m, "HitKernel")
        .def_property_readonly("sites", &HitKernel::sites)
        .def_property_readonly("sigma", &HitKernel::sigma)
        .def("weight", &HitKernel::weight);
    m.def("make_hit_kernel", &make_hit_kernel, py::arg("sites"), py::arg("sigma"), py::arg("spacing") = 1.0);
    m.def("flash_distribution", &flash_distribution);
    m.def("apply_hit", &apply_hit);
    m.def(
        "ordering_invariance_exact",
        [](const GridWavefunction& psi, const HitKernel& k) { return to_python(to_json(ordering_invariance_exact(psi, k))); });
    m.def(
        "flash_hit_counts",
        [](const GridWavefunction& psi, const HitKernel& k, double rate, double duration, std::uint64_t runs,
           std::uint64_t seed, unsigned workers) {
            auto hs = run_flash_ensemble(psi, k, {rate, duration}, runs, LambdaStream::from_seed(seed), {workers});
            std::vector<std::size_t> counts;
            counts.reserve(hs.size());
            for (const auto& h : hs) counts.push_back(h.flashes.size());
            return counts;
        },
        py::arg("psi"), py::arg("kernel"), py::arg("rate"), py::arg("duration"), py::arg("runs"), py::arg("seed"),
        py::arg("workers") = 1);

    m.def(
        "run_cli",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "chronobell");
            std::ostringstream out, err;
            int status;
            {
                py::gil_scoped_release release;
                status = cli::run(args, out, err);
            }
            return py::make_tuple(status, out.str(), err.str());
        },
        "Run the command line interface in-process; returns (status, stdout, stderr).");
}
