// Copyright 2026 The su2design Authors
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

#include "su2design/multiphoton.hpp"
#include "su2design/polyalg.hpp"
#include "su2design/rng.hpp"
#include "su2design/su2core.hpp"
#include "su2design/tables.hpp"
#include "su2design/virtlab.hpp"

namespace py = pybind11;
using namespace su2design;

namespace {

using MatrixEntries = std::array<std::array<Complex, 2>, 2>;

MatrixEntries entries(const UnitaryMat2& u) {
    return {{{u.u11, u.u12}, {u.u21, u.u22}}};
}

UnitaryMat2 matrix_from_entries(const MatrixEntries& m) {
    return {m[0][0], m[0][1], m[1][0], m[1][1]};
}

py::dict poly_as_dict(const PolynomialR4& f) {
    py::dict d;
    for (const auto& [e, c] : f.terms()) {
        d[py::make_tuple(e.x1, e.y1, e.x2, e.y2)] = c;
    }
    return d;
}

PolynomialR4 poly_from_dict(const py::dict& d) {
    PolynomialR4 f;
    for (const auto& item : d) {
        const auto key = item.first.cast<std::array<int, 4>>();
        f.add_term({key[0], key[1], key[2], key[3]}, item.second.cast<double>());
    }
    return f;
}

}  // namespace

PYBIND11_MODULE(_su2design, m) {
    m.doc() = "Two-mode unitary designs: SU(2) optics, multiphoton statistics, design tests";

    py::class_<Su2Params>(m, "Su2Params")
        .def(py::init<double, double, double, double>(), py::arg("x1"), py::arg("y1"),
             py::arg("x2"), py::arg("y2"))
        .def_static("normalized", &Su2Params::normalized)
        .def_readonly("x1", &Su2Params::x1)
        .def_readonly("y1", &Su2Params::y1)
        .def_readonly("x2", &Su2Params::x2)
        .def_readonly("y2", &Su2Params::y2)
        .def("__iter__",
             [](const Su2Params& p) {
                 return py::iter(py::make_tuple(p.x1, p.y1, p.x2, p.y2));
             })
        .def("__repr__", [](const Su2Params& p) {
            return "Su2Params(" + std::to_string(p.x1) + ", " + std::to_string(p.y1) + ", " +
                   std::to_string(p.x2) + ", " + std::to_string(p.y2) + ")";
        });

    py::class_<UnitaryMat2>(m, "UnitaryMat2")
        .def(py::init([](const MatrixEntries& e) { return matrix_from_entries(e); }),
             py::arg("entries"))
        .def_static("identity", &UnitaryMat2::identity)
        .def_property_readonly("entries", &entries)
        .def("det", &UnitaryMat2::det)
        .def("adjoint", &UnitaryMat2::adjoint)
        .def("__matmul__",
             [](const UnitaryMat2& a, const UnitaryMat2& b) { return a * b; })
        .def("__repr__", [](const UnitaryMat2& u) {
            auto f = [](Complex c) {
                return "(" + std::to_string(c.real()) + (c.imag() < 0 ? "-" : "+") +
                       std::to_string(std::abs(c.imag())) + "j)";
            };
            return "UnitaryMat2([[" + f(u.u11) + ", " + f(u.u12) + "], [" + f(u.u21) + ", " +
                   f(u.u22) + "]])";
        });

    py::class_<Ensemble>(m, "Ensemble")
        .def_readonly("label", &Ensemble::label)
        .def_readonly("elements", &Ensemble::elements)
        .def("weight", &Ensemble::weight)
        .def("__len__", &Ensemble::size);

    py::class_<RandomStream>(m, "RandomStream")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("uniform", &RandomStream::uniform)
        .def("normal", &RandomStream::normal)
        .def("poisson", &RandomStream::poisson);

    m.def("su2_from_params", &su2_from_params);
    m.def("params_from_unitary", &params_from_unitary);
    m.def("hwp", &hwp, py::arg("angle_deg"));
    m.def("qwp", &qwp, py::arg("angle_deg"));
    m.def(
        "process_from_plates",
        [](double t1, double t2, double t3) {
            return process_from_plates({t1, t2, t3});
        },
        py::arg("theta1"), py::arg("theta2"), py::arg("theta3"));
    m.def(
        "compose_interferometer",
        [](double w1, double w2, double w3, double w4, const UnitaryMat2& u) {
            return compose_interferometer({w1, w2, w3, w4}, u);
        },
        py::arg("omega1"), py::arg("omega2"), py::arg("omega3"), py::arg("omega4"), py::arg("u"));
    m.def("haar_sample", &haar_sample, py::arg("rng"));
    m.def("ensemble_d1", &ensemble_d1);
    m.def("ensemble_d2", &ensemble_d2);
    m.def("ensemble_haar", &ensemble_haar, py::arg("k"), py::arg("rng"));
    m.def("equal_up_to_phase", &equal_up_to_phase, py::arg("a"), py::arg("b"), py::arg("tol"));

    py::class_<OutcomeDistribution>(m, "OutcomeDistribution")
        .def(py::init<int, std::vector<double>>(), py::arg("total"), py::arg("probs"))
        .def_property_readonly("total", &OutcomeDistribution::total)
        .def("prob", &OutcomeDistribution::prob, py::arg("k"))
        .def_property_readonly("probs", &OutcomeDistribution::probs)
        .def("__repr__", [](const OutcomeDistribution& d) {
            std::string s = "OutcomeDistribution(n=" + std::to_string(d.total()) + ", [";
            for (std::size_t i = 0; i < d.size(); ++i) {
                s += (i ? ", " : "") + std::to_string(d.probs()[i]);
            }
            return s + "])";
        });

    m.def(
        "permanent",
        [](const std::vector<std::vector<Complex>>& rows) {
            const std::size_t n = rows.size();
            ComplexMatrix mat(n, n == 0 ? 0 : rows[0].size());
            for (std::size_t r = 0; r < n; ++r) {
                if (rows[r].size() != mat.cols()) {
                    throw std::invalid_argument("dimension: ragged matrix");
                }
                for (std::size_t c = 0; c < rows[r].size(); ++c) {
                    mat.at(r, c) = rows[r][c];
                }
            }
            return permanent(mat);
        },
        py::arg("matrix"));
    m.def(
        "transition_probability",
        [](const UnitaryMat2& t, int n_h, int n_v, int k_out) {
            return transition_probability(t, FockInput(n_h, n_v), k_out);
        },
        py::arg("t"), py::arg("n_h"), py::arg("n_v"), py::arg("k_out"));
    m.def(
        "outcome_distribution",
        [](const UnitaryMat2& t, int n_h, int n_v) {
            return outcome_distribution(t, FockInput(n_h, n_v));
        },
        py::arg("t"), py::arg("n_h"), py::arg("n_v"));
    m.def("hom_coincidence", &hom_coincidence, py::arg("t"));
    m.def(
        "distribution_with_mismatch_2",
        [](const UnitaryMat2& t, double theta) {
            return distribution_with_mismatch_2(t, MismatchModel(theta));
        },
        py::arg("t"), py::arg("theta"));
    m.def(
        "distribution_with_mismatch_3",
        [](const UnitaryMat2& t, double theta) {
            return distribution_with_mismatch_3(t, MismatchModel(theta));
        },
        py::arg("t"), py::arg("theta"));
    m.def("visibility_to_mismatch", &visibility_to_mismatch, py::arg("v"));
    m.def("mismatch_to_visibility", &mismatch_to_visibility, py::arg("theta"));

    m.def(
        "expand_probe_polynomial",
        [](const std::string& label, const std::string& kind) {
            const ProbeSetting* setting = find_probe(builtin_tables(), label);
            if (setting == nullptr) {
                throw std::invalid_argument("unknown setting label '" + label + "'");
            }
            const ProbeKind k =
                kind == "1photon" ? ProbeKind::one_photon : ProbeKind::two_photon;
            return poly_as_dict(expand_probe_polynomial(setting->angles, k));
        },
        py::arg("label"), py::arg("kind"));
    m.def(
        "haar_moment",
        [](int a, int b, int c, int d) {
            return haar_moment({a, b, c, d});
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"));
    m.def(
        "haar_average",
        [](const py::dict& poly) { return haar_average(poly_from_dict(poly)); },
        py::arg("poly"));
    m.def(
        "ensemble_average",
        [](const py::dict& poly, const Ensemble& e) {
            return ensemble_average(poly_from_dict(poly), e);
        },
        py::arg("poly"), py::arg("ensemble"));
    m.def(
        "evaluate_polynomial",
        [](const py::dict& poly, const Su2Params& p) {
            return poly_from_dict(poly).evaluate(p);
        },
        py::arg("poly"), py::arg("params"));
    m.def("polynomial_to_json",
          [](const py::dict& poly) { return polynomial_to_json(poly_from_dict(poly)); });

    py::class_<DesignTestReport>(m, "DesignTestReport")
        .def_readonly("t", &DesignTestReport::t)
        .def_readonly("tolerance", &DesignTestReport::tolerance)
        .def_readonly("exact", &DesignTestReport::exact)
        .def_readonly("passed", &DesignTestReport::passed)
        .def_readonly("max_deviation", &DesignTestReport::max_deviation)
        .def_property_readonly("witness",
                               [](const DesignTestReport& r) {
                                   return py::make_tuple(r.witness.x1, r.witness.y1, r.witness.x2,
                                                         r.witness.y2);
                               })
        .def_property_readonly("witness_str", [](const DesignTestReport& r) {
            return monomial_str(r.witness);
        });

    m.def("design_test", &design_test, py::arg("ensemble"), py::arg("t"), py::arg("tolerance"));

    m.def(
        "basis_rank",
        [](const std::string& which) {
            const TableSet& tables = builtin_tables();
            const auto& group = which == "p" ? tables.p : tables.q;
            const ProbeKind kind =
                which == "p" ? ProbeKind::one_photon : ProbeKind::two_photon;
            std::vector<ProbeAngles> settings;
            for (const auto& s : group) {
                settings.push_back(s.angles);
            }
            return basis_matrix(settings, kind).rank;
        },
        py::arg("table"));

    m.def(
        "statistical_fidelity",
        [](const OutcomeDistribution& p, const OutcomeDistribution& q) {
            return statistical_fidelity(p, q);
        },
        py::arg("p"), py::arg("q"));
    m.def(
        "calibrate_loss",
        [](std::int64_t c20, std::int64_t c02) {
            CountRecord rec;
            rec.total_photons = 2;
            rec.counts = {c02, 0, c20};
            const LossCalibration cal = calibrate_loss(rec);
            return py::make_tuple(cal.eps3, cal.std_error);
        },
        py::arg("c20"), py::arg("c02"));
    m.def("corrected_haar_outcome", &corrected_haar_outcome, py::arg("photons"), py::arg("k_out"),
          py::arg("theta"));

    py::class_<LossModel>(m, "LossModel")
        .def(py::init<>())
        .def(py::init<double, std::vector<double>>(), py::arg("eps3"),
             py::arg("detector_efficiency") = std::vector<double>{})
        .def_readonly("eps3", &LossModel::eps3)
        .def_readonly("detector_efficiency", &LossModel::detector_efficiency);

    py::class_<ExperimentPlan>(m, "ExperimentPlan")
        .def(py::init<>())
        .def_readwrite("ensemble", &ExperimentPlan::ensemble)
        .def_readwrite("settings", &ExperimentPlan::settings)
        .def_readwrite("photons", &ExperimentPlan::photons)
        .def_readwrite("theta", &ExperimentPlan::theta)
        .def_readwrite("loss", &ExperimentPlan::loss)
        .def_readwrite("counts_per_element", &ExperimentPlan::counts_per_element)
        .def_readwrite("seed", &ExperimentPlan::seed);

    m.def("parse_plan", &parse_plan, py::arg("text"));
    m.def("serialize_plan", &serialize_plan, py::arg("plan"));
    m.def(
        "run_plan",
        [](const ExperimentPlan& plan) {
            const PlanResult result = run_plan(plan);
            py::dict out;
            out["element_labels"] = result.element_labels;
            py::list settings;
            for (const auto& sr : result.settings) {
                py::dict s;
                s["label"] = sr.label;
                s["statistic"] = sr.statistic;
                s["average"] = sr.average.probs();
                py::list elements;
                for (const auto& d : sr.element_distributions) {
                    elements.append(d.probs());
                }
                s["elements"] = elements;
                settings.append(s);
            }
            out["settings"] = settings;
            return out;
        },
        py::arg("plan"));
    m.def(
        "reproduce_figure",
        [](const std::string& figure, const std::string& out_dir, std::uint64_t seed,
           double theta, double counts_per_element) {
            FigureConfig config;
            config.out_dir = out_dir;
            config.seed = seed;
            config.theta = theta;
            config.counts_per_element = counts_per_element;
            return reproduce_figure(figure_id_from_string(figure), config);
        },
        py::arg("figure"), py::arg("out_dir"), py::arg("seed") = 12345,
        py::arg("theta") = 0.244, py::arg("counts_per_element") = 10000.0);

#ifdef VERSION_INFO
#define SU2D_STR_IMPL(x) #x
#define SU2D_STR(x) SU2D_STR_IMPL(x)
    m.attr("__version__") = SU2D_STR(VERSION_INFO);
#else
    m.attr("__version__") = "0.1.0";
#endif
}
