// Copyright 2026 xzzxsim Contributors
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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "xzzx/experiment.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace xzzx;

namespace {

LatticeGeometry make_geometry(const std::string& type, int a, int b) {
    if (type == "periodic") return Periodic{a, b};
    if (type == "open") return OpenRectangular{a, b};
    throw std::invalid_argument("geometry type must be 'periodic' or 'open'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "XZZX surface code simulation toolkit";

    py::class_<PauliOperator>(m, "PauliOperator")
        .def(py::init([](std::size_t n, const std::string& s) {
                 return PauliOperator::from_string(n, s);
             }),
             "num_qubits"_a, "support"_a = "",
             "n-qubit Pauli from a support string such as 'X0 Z3 Y5'")
        .def_property_readonly("num_qubits", &PauliOperator::num_qubits)
        .def("weight", &PauliOperator::weight)
        .def("commutes_with", &PauliOperator::commutes_with)
        .def("__mul__", &PauliOperator::operator*)
        .def("__eq__", [](const PauliOperator& a, const PauliOperator& b) { return a == b; })
        .def("__str__", &PauliOperator::to_string)
        .def("__repr__",
             [](const PauliOperator& p) { return "PauliOperator('" + p.to_string() + "')"; });

    py::class_<StabilizerCode>(m, "StabilizerCode")
        .def_readonly("n", &StabilizerCode::n)
        .def_readonly("k", &StabilizerCode::k)
        .def_property_readonly("num_stabilizers",
                               [](const StabilizerCode& c) { return c.stabilizers.size(); })
        .def_property_readonly("stabilizers",
                               [](const StabilizerCode& c) { return c.stabilizers; })
        .def_property_readonly("logical_z",
                               [](const StabilizerCode& c) { return c.logical_z_reps; })
        .def_property_readonly("logical_x",
                               [](const StabilizerCode& c) { return c.logical_x_reps; })
        .def("describe_json", [](const StabilizerCode& c) { return describe_json(c); });

    m.def(
        "build_code",
        [](const std::string& type, int a, int b) { return build_xzzx_code(make_geometry(type, a, b)); },
        "type"_a, "a"_a, "b"_a,
        "Builds the XZZX code: ('periodic', rows, cols) or ('open', d_x, d_z).");

    m.def(
        "syndrome",
        [](const StabilizerCode& code, const PauliOperator& error) {
            auto s = syndrome(code, error);
            std::vector<int> out;
            for (auto f : s.face_indices()) out.push_back(f);
            return out;
        },
        "code"_a, "error"_a, "Defect face indices of an error.");

    m.def(
        "logical_class",
        [](const StabilizerCode& code, const PauliOperator& residual) {
            return logical_class(code, residual);
        },
        "code"_a, "residual"_a);

    m.def("min_logical_weight",
          [](const StabilizerCode& code, const std::string& restrict) {
              LogicalRestrict r = restrict == "z"   ? LogicalRestrict::ZOnly
                                  : restrict == "x" ? LogicalRestrict::XOnly
                                                    : LogicalRestrict::Any;
              return min_logical_weight(code, r);
          },
          "code"_a, "restrict"_a = "z");

    m.def(
        "decode",
        [](const StabilizerCode& code, const std::vector<int>& defects, double p, double eta,
           const std::string& decoder) {
            Syndrome s;
            s.defects = BitVec(code.num_faces());
            for (int f : defects) s.defects.set(f, true);
            Correction corr;
            double e = eta < 0 ? kInfiniteBias : eta;
            if (decoder == "mwpm")
                corr = decode_2d(code, s, BiasSpec{p, e, Pauli::Z});
            else if (decoder == "infinite-bias")
                corr = decode_infinite_bias(code, s);
            else if (decoder == "ml")
                corr = ml_decode(code, s, bias_to_channel(BiasSpec{p, e, Pauli::Z}));
            else
                throw std::invalid_argument("decoder must be mwpm, infinite-bias or ml");
            return corr.pauli;
        },
        "code"_a, "defects"_a, "p"_a, "eta"_a, "decoder"_a = "mwpm",
        "Decodes a defect set and returns the correction operator. eta < 0 means infinite bias.");

    m.def("hashing_bound",
          [](double rx, double ry, double rz) { return hashing_bound(rx, ry, rz); },
          "r_x"_a, "r_y"_a, "r_z"_a);
    m.def(
        "hashing_bound_biased",
        [](double eta) {
            return hashing_bound(bias_to_channel(BiasSpec{0.1, eta < 0 ? kInfiniteBias : eta}));
        },
        "eta"_a, "Zero-rate hashing bound of the Z-biased channel family.");

    m.def(
        "bias_to_channel",
        [](double p, double eta) {
            auto c = bias_to_channel(BiasSpec{p, eta < 0 ? kInfiniteBias : eta});
            return py::dict("p"_a = c.p, "r_x"_a = c.r_x, "r_y"_a = c.r_y, "r_z"_a = c.r_z);
        },
        "p"_a, "eta"_a);

    m.def("aspect_ratio_optimum", &aspect_ratio_optimum, "p"_a, "eta"_a);

    m.def(
        "run_batch",
        [](const std::string& geometry, int a, int b, const std::string& decoder, double p,
           double eta, bool fault_tolerant, int rounds, uint64_t trials, uint64_t seed,
           int workers) {
            BatchParams params;
            params.geometry = make_geometry(geometry, a, b);
            params.decoder = decoder_id_from_string(decoder);
            params.fault_tolerant = fault_tolerant;
            params.p = p;
            params.eta = eta < 0 ? kInfiniteBias : eta;
            params.rounds = rounds;
            TrialBatch batch = run_batch(params, trials, seed, workers);
            return py::dict("trials"_a = batch.trials,
                            "failures_logical"_a = batch.failures_logical,
                            "failures_temporal"_a = batch.failures_temporal,
                            "failure_rate"_a = batch.failure_rate(),
                            "std_error"_a = batch.std_error());
        },
        "geometry"_a, "a"_a, "b"_a, "decoder"_a, "p"_a, "eta"_a, "fault_tolerant"_a = false,
        "rounds"_a = 1, "trials"_a = 1000, "seed"_a = 0, "workers"_a = 1,
        "Monte Carlo batch; deterministic given the seed. eta < 0 means infinite bias.");

    m.def(
        "fit_threshold",
        [](const std::vector<std::tuple<int, double, uint64_t, uint64_t>>& points,
           std::optional<std::pair<double, double>> window) {
            std::vector<ThresholdPoint> pts;
            for (const auto& [d, p, trials, failures] : points)
                pts.push_back({d, p, trials, failures});
            ThresholdFitOptions opt;
            opt.window = window;
            auto fit = fit_threshold(pts, opt);
            return py::dict("p_c"_a = fit.p_c, "p_c_err"_a = fit.p_c_err, "nu"_a = fit.nu,
                            "nu_err"_a = fit.nu_err, "chi2"_a = fit.chi2, "dof"_a = fit.dof);
        },
        "points"_a, "window"_a = py::none(),
        "Critical-exponent threshold fit over (d, p, trials, failures) tuples.");

    m.def(
        "rare_event_estimate",
        [](const std::string& geometry, int a, int b, const std::string& decoder, double p,
           double eta, int max_weight, uint64_t samples_per_stratum, uint64_t seed, int workers) {
            BatchParams params;
            params.geometry = make_geometry(geometry, a, b);
            params.decoder = decoder_id_from_string(decoder);
            params.p = p;
            params.eta = eta < 0 ? kInfiniteBias : eta;
            auto est = rare_event_estimate(params, max_weight, samples_per_stratum, seed, workers);
            return py::dict("value"_a = est.value, "sigma"_a = est.sigma,
                            "truncation_bound"_a = est.truncation_bound,
                            "warnings"_a = est.warnings);
        },
        "geometry"_a, "a"_a, "b"_a, "decoder"_a, "p"_a, "eta"_a, "max_weight"_a = 10,
        "samples_per_stratum"_a = 10000, "seed"_a = 0, "workers"_a = 1,
        "Weight-stratified importance-sampled logical failure estimate.");

    m.def("verify", []() {
        std::ostringstream report;
        bool ok = run_verification_suite(report);
        return py::make_tuple(ok, report.str());
    });
}
