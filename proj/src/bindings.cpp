#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qpufsim/bounds.hpp"
#include "qpufsim/experiments.hpp"
#include "qpufsim/ideal.hpp"
#include "qpufsim/pe.hpp"
#include "qpufsim/selftest.hpp"

#include <sstream>

namespace py = pybind11;
using namespace qpufsim;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Simulator for quantum PUFs built from Haar-random measurements "
              "and their phase-estimation approximation.";

    py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
    py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_RuntimeError);

    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("master_seed"),
             py::arg("stream_index") = 0)
        .def("substream", &RngStream::substream)
        .def("uniform", &RngStream::uniform)
        .def("gaussian", &RngStream::gaussian);

    py::enum_<Basis>(m, "Basis")
        .value("STANDARD", Basis::Standard)
        .value("EIGENBASIS_OF_U", Basis::EigenbasisOfU);

    py::class_<UnitaryMatrix>(m, "UnitaryMatrix")
        .def(py::init<Matrix>())
        .def_property_readonly("matrix", &UnitaryMatrix::matrix)
        .def_property_readonly("dim", &UnitaryMatrix::dim)
        .def_property_readonly("unitarity_defect", &UnitaryMatrix::unitarity_defect);

    py::class_<PureState>(m, "PureState")
        .def(py::init<Vector, Basis>(), py::arg("amplitudes"),
             py::arg("basis") = Basis::Standard)
        .def_static("basis_state", &PureState::basis_state, py::arg("dim"),
                    py::arg("k"), py::arg("basis") = Basis::Standard)
        .def_property_readonly("amplitudes", &PureState::amplitudes)
        .def_property_readonly("basis", &PureState::basis);

    py::class_<EigenSystem>(m, "EigenSystem")
        .def_readonly("dim_D", &EigenSystem::dim_D)
        .def_readonly("ancilla_dim_d", &EigenSystem::ancilla_dim_d)
        .def_readonly("phases", &EigenSystem::phases)
        .def_readonly("eigenvectors", &EigenSystem::eigenvectors);

    m.def("haar_unitary", &haar_unitary, py::arg("dim_D"), py::arg("rng"));
    m.def("haar_unitary_gram_schmidt", &haar_unitary_gram_schmidt);
    m.def("random_pure_state", &random_pure_state);
    m.def("trace_distance_pure", &trace_distance_pure);
    m.def("eigensystem_unitary", &eigensystem_unitary);

    py::class_<IdealQpuf>(m, "IdealQpuf")
        .def(py::init<UnitaryMatrix>())
        .def_property_readonly("dim", &IdealQpuf::dim)
        .def_property_readonly("unitary", &IdealQpuf::unitary);

    py::class_<QueryRecord>(m, "QueryRecord")
        .def_readonly("input_state", &QueryRecord::input_state)
        .def_readonly("outcome", &QueryRecord::outcome)
        .def_readonly("token_state", &QueryRecord::token_state);

    m.def("ideal_outcome_distribution",
          py::overload_cast<const IdealQpuf&, const PureState&>(&outcome_distribution));
    m.def("ideal_measure",
          py::overload_cast<const IdealQpuf&, const PureState&, RngStream&>(&measure));
    m.def("generate_token", &generate_token);
    m.def("verify_token", &verify_token);
    m.def("serialize_query_record", [](const QueryRecord& r) {
        return py::bytes(serialize_query_record(r));
    });
    m.def("deserialize_query_record", [](const py::bytes& b, int dim) {
        return deserialize_query_record(std::string(b), dim);
    });
    m.def("rcnot_measure", &rcnot_measure);
    m.def("rcnot_distribution", &rcnot_distribution);

    py::class_<VerificationResult>(m, "VerificationResult")
        .def_readonly("measured_outcome", &VerificationResult::measured_outcome)
        .def_readonly("passed", &VerificationResult::passed)
        .def_readonly("refreshed_token", &VerificationResult::refreshed_token);

    py::class_<SinsKernel>(m, "SinsKernel")
        .def(py::init<int, double>(), py::arg("d"), py::arg("epsilon") = 1e-12)
        .def("__call__", &SinsKernel::operator());

    py::class_<PeToken>(m, "PeToken")
        .def_readonly("verifier_value", &PeToken::verifier_value)
        .def_readonly("state_eig", &PeToken::state_eig);

    py::class_<PeVerification>(m, "PeVerification")
        .def_readonly("measured_outcome", &PeVerification::measured_outcome)
        .def_readonly("passed", &PeVerification::passed)
        .def_readonly("refreshed", &PeVerification::refreshed);

    py::class_<PeQpuf>(m, "PeQpuf")
        .def_static("from_unitary", &PeQpuf::from_unitary, py::arg("u"),
                    py::arg("ancilla_dim_d"), py::arg("delta"))
        .def_property_readonly("dim", &PeQpuf::dim)
        .def_property_readonly("ancilla_dim", &PeQpuf::ancilla_dim)
        .def_property_readonly("delta", &PeQpuf::delta)
        .def("to_eigenbasis", &PeQpuf::to_eigenbasis)
        .def("to_standard", &PeQpuf::to_standard);

    m.def("kraus_diag", &kraus_diag);
    m.def("pe_outcome_distribution",
          py::overload_cast<const PeQpuf&, const PureState&>(&outcome_distribution));
    m.def("pe_measure",
          py::overload_cast<const PeQpuf&, const PureState&, RngStream&>(&measure));
    m.def("window_weight", &window_weight);
    m.def("window_projector_weight", &window_projector_weight);
    m.def("pe_generate", &generate);
    m.def("pe_verify", &verify);
    m.def("full_circuit_measure", &full_circuit_measure);
    m.def("full_circuit_distribution", &full_circuit_distribution);
    m.def("circular_distance_d", &circular_distance_d);

    m.def("lemma1_lower", &bounds::lemma1_lower);
    m.def("lemma2_upper", &bounds::lemma2_upper);
    m.def("f_delta", &bounds::f_delta);
    m.def("verification_lower_bound", &bounds::verification_lower_bound);
    m.def("ideal_forgery_bound", &bounds::ideal_forgery_bound);
    m.def("pe_forgery_bound", &bounds::pe_forgery_bound);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("experiment_id", &ExperimentConfig::experiment_id)
        .def_readwrite("ancilla_dim_d", &ExperimentConfig::ancilla_dim_d)
        .def_readwrite("dim_D", &ExperimentConfig::dim_D)
        .def_readwrite("delta_values", &ExperimentConfig::delta_values)
        .def_readwrite("num_states", &ExperimentConfig::num_states)
        .def_readwrite("num_iterations", &ExperimentConfig::num_iterations)
        .def_readwrite("trials", &ExperimentConfig::trials)
        .def_readwrite("q_size", &ExperimentConfig::q_size)
        .def_readwrite("chain_length", &ExperimentConfig::chain_length)
        .def_readwrite("master_seed", &ExperimentConfig::master_seed)
        .def_readwrite("output_path", &ExperimentConfig::output_path)
        .def_readwrite("workers", &ExperimentConfig::workers);

    py::class_<HistogramRow>(m, "HistogramRow")
        .def_readonly("diff", &HistogramRow::diff)
        .def_readonly("count", &HistogramRow::count);

    py::class_<RateRow>(m, "RateRow")
        .def_readonly("delta", &RateRow::delta)
        .def_readonly("iteration", &RateRow::iteration)
        .def_readonly("v_rate", &RateRow::v_rate)
        .def_readonly("bound", &RateRow::bound)
        .def_readonly("num_states", &RateRow::num_states);

    py::class_<ForgeryRow>(m, "ForgeryRow")
        .def_readonly("experiment_id", &ForgeryRow::experiment_id)
        .def_readonly("mean_p", &ForgeryRow::mean_p)
        .def_readonly("stderr_p", &ForgeryRow::stderr_p)
        .def_readonly("bound", &ForgeryRow::bound);

    py::class_<ExperimentReport>(m, "ExperimentReport")
        .def_readonly("histogram_rows", &ExperimentReport::histogram_rows)
        .def_readonly("rate_rows", &ExperimentReport::rate_rows)
        .def_readonly("forgery_rows", &ExperimentReport::forgery_rows)
        .def_readonly("wall_clock_s", &ExperimentReport::wall_clock_s);

    py::enum_<AdversaryStrategy>(m, "AdversaryStrategy")
        .value("COMPLEMENT", AdversaryStrategy::Complement)
        .value("UNIFORM", AdversaryStrategy::Uniform)
        .value("SPAN", AdversaryStrategy::Span);

    m.def("run_outcome_histogram", &run_outcome_histogram,
          py::call_guard<py::gil_scoped_release>());
    m.def("run_verification_rate", &run_verification_rate,
          py::call_guard<py::gil_scoped_release>());
    m.def("run_forge_ideal", &run_forge_ideal, py::arg("config"),
          py::arg("strategy") = AdversaryStrategy::Complement,
          py::call_guard<py::gil_scoped_release>());
    m.def("run_forge_pe", &run_forge_pe, py::call_guard<py::gil_scoped_release>());
    m.def("run_reuse_chain", &run_reuse_chain, py::call_guard<py::gil_scoped_release>());
    m.def("write_report", &write_report);
    m.def("report_csv", &report_csv);

    m.def("selftest", [](std::uint64_t seed) {
        std::ostringstream os;
        bool ok = selftest(os, seed);
        return py::make_tuple(ok, os.str());
    }, py::arg("seed") = 12345);
}
