#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qle/errors.hpp"
#include "qle/langevin.hpp"
#include "qle/network.hpp"
#include "qle/scattering.hpp"
#include "qle/thermo.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace qle;

PYBIND11_MODULE(_qle, m) {
    m.doc() = "Quantum Langevin resonator, scattering and bath-network toolkit";

    py::register_exception<Error>(m, "QleError", PyExc_RuntimeError);

    // ---- langevin
    using namespace langevin;
    py::class_<ResonatorModel>(m, "ResonatorModel")
        .def(py::init([](double tau, std::vector<double> gamma, std::vector<double> kappa, std::vector<double> phi,
                         double omega0) {
                 ResonatorModel r{omega0, tau, std::move(gamma), std::move(kappa), std::move(phi)};
                 validate(r);
                 return r;
             }),
             "tau"_a, "gamma"_a, "kappa"_a = std::vector<double>{}, "phi"_a = std::vector<double>{},
             "omega0"_a = 0.0)
        .def_readonly("omega0", &ResonatorModel::omega0)
        .def_readonly("tau", &ResonatorModel::tau)
        .def_readonly("gamma", &ResonatorModel::gamma)
        .def_readonly("kappa", &ResonatorModel::kappa)
        .def_readonly("phi", &ResonatorModel::phi)
        .def_property_readonly("is_passive", &ResonatorModel::is_passive);

    py::class_<MomentState>(m, "MomentState")
        .def(py::init<>())
        .def_readwrite("t", &MomentState::t)
        .def_readwrite("mean", &MomentState::mean)
        .def_readwrite("number", &MomentState::number)
        .def_readwrite("anomalous", &MomentState::anomalous)
        .def_readwrite("commutator", &MomentState::commutator);

    py::class_<TbpReport>(m, "TbpReport")
        .def_readonly("tbp", &TbpReport::tbp)
        .def_readonly("total_gamma", &TbpReport::total_gamma)
        .def_readonly("total_kappa", &TbpReport::total_kappa)
        .def_readonly("constraint_residual", &TbpReport::constraint_residual)
        .def_property_readonly("classification", [](const TbpReport& r) { return to_string(r.classification); });

    m.def("tbp_report", &tbp_report, "model"_a);
    m.def("commutator_analytic", &commutator_analytic, "model"_a, "t"_a);
    m.def("ase_penalty", &ase_penalty, "model"_a);
    m.def("qmfs_check", &qmfs_check, "model"_a);
    m.def(
        "propagate_moments",
        [](const ResonatorModel& model, double dt, double t_end, std::vector<Complex> drive,
           std::optional<MomentState> state0) {
            return propagate_moments(model, {std::move(drive), dt}, state0.value_or(MomentState::vacuum()), t_end);
        },
        "model"_a, "dt"_a, "t_end"_a, "drive"_a = std::vector<Complex>{}, "state0"_a = py::none());
    m.def(
        "integrate_classical",
        [](const ResonatorModel& model, double dt, std::vector<Complex> drive, Complex alpha0) {
            return integrate_classical(model, {std::move(drive), dt}, alpha0);
        },
        "model"_a, "dt"_a, "drive"_a, "alpha0"_a = Complex{});
    m.def("discrete_mode_oracle", &discrete_mode_oracle, "model"_a, "dt"_a, "t_end"_a,
          "mode_cap"_a = kDefaultOracleModeCap);

    // ---- network
    py::class_<network::GaugeSolution>(m, "GaugeSolution")
        .def_readonly("exists", &network::GaugeSolution::exists)
        .def_readonly("phases", &network::GaugeSolution::phases)
        .def_readonly("worst_cycle_defect", &network::GaugeSolution::worst_cycle_defect);
    py::class_<network::ReservoirDecomposition>(m, "ReservoirDecomposition")
        .def_readonly("detuning", &network::ReservoirDecomposition::detuning)
        .def_readonly("eta", &network::ReservoirDecomposition::eta)
        .def_readonly("reservoir_frequencies", &network::ReservoirDecomposition::reservoir_frequencies)
        .def_readonly("transform", &network::ReservoirDecomposition::transform);
    m.def(
        "solve_gauge", [](const CMatrix& g) { return network::solve_gauge(network::validate_coupling(g)); },
        "coupling"_a);
    m.def(
        "decompose_reservoir",
        [](const CMatrix& g) { return network::decompose_reservoir(network::validate_coupling(g)); }, "coupling"_a);

    // ---- scattering
    py::class_<scattering::Classification>(m, "Classification")
        .def_readonly("unitary", &scattering::Classification::unitary)
        .def_readonly("reciprocal", &scattering::Classification::reciprocal)
        .def_readonly("passive", &scattering::Classification::passive);
    m.def(
        "classify", [](const CMatrix& s) { return scattering::classify(scattering::ScatteringMatrix(s)); },
        "s"_a);
    m.def(
        "dilate_to_unitary",
        [](const CMatrix& s) { return scattering::dilate_to_unitary(scattering::ScatteringMatrix(s)).entries(); },
        "s"_a);
    m.def(
        "two_port_closure_check",
        [](const CMatrix& s, Eigen::Index closed_port, double phase) {
            return scattering::two_port_closure_check(scattering::ScatteringMatrix(s), closed_port, phase).entries();
        },
        "s3"_a, "closed_port"_a, "phase"_a);

    // ---- thermo
    using namespace thermo;
    py::enum_<LinkMode>(m, "LinkMode").value("OneWay", LinkMode::OneWay).value("Reciprocal", LinkMode::Reciprocal);
    py::class_<Violation>(m, "Violation")
        .def_readonly("violated", &Violation::violated)
        .def_readonly("first_violation_time", &Violation::first_violation_time)
        .def_readonly("max_entropy_deficit", &Violation::max_entropy_deficit);
    py::class_<BathSystem>(m, "BathSystem")
        .def(py::init([](const std::vector<std::pair<double, double>>& baths,
                         const std::vector<std::tuple<std::size_t, std::size_t, double, LinkMode>>& links) {
                 std::vector<Bath> b;
                 for (auto [t, c] : baths) b.push_back({t, c});
                 std::vector<Link> l;
                 for (auto [from, to, g, mode] : links) l.push_back({from, to, g, mode});
                 return BathSystem(std::move(b), std::move(l));
             }),
             "baths"_a, "links"_a)
        .def_property_readonly("time", &BathSystem::time)
        .def_property_readonly("energy", &BathSystem::energy)
        .def_property_readonly("entropy", &BathSystem::entropy)
        .def_property_readonly("entropy_initial", &BathSystem::entropy_initial)
        .def_property_readonly("temperatures",
                               [](const BathSystem& s) {
                                   std::vector<double> t;
                                   for (const auto& b : s.baths()) t.push_back(b.temperature);
                                   return t;
                               })
        .def("ledger_csv", &ledger_csv);
    m.def("run_baths", &run, "system"_a, "dt"_a, "horizon"_a);
    m.def("default_step", &default_step, "system"_a);
    m.def("detect_violation", &detect_violation, "system"_a);
    m.def(
        "three_bath",
        [](double g_forward, double g_third, double horizon) {
            return three_bath_restore(g_forward, g_third, horizon, {.bisect = false}).violation;
        },
        "g_forward"_a, "g_third"_a, "horizon"_a);
}
