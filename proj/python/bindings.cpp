#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ampcoh/ampcoh.hpp"

namespace py = pybind11;
using namespace ampcoh;

namespace {

py::dict trajectory_to_dict(const std::vector<TrajectoryPoint>& traj) {
    const auto len = static_cast<py::ssize_t>(traj.size());
    py::array_t<std::size_t> t(len);
    py::array_t<double> p(len);
    py::list states;
    py::list c1;
    py::list cg;
    py::list cl1;
    auto tv = t.mutable_unchecked<1>();
    auto pv = p.mutable_unchecked<1>();
    auto opt = [](const std::optional<double>& v) -> py::object {
        return v ? py::object(py::float_(*v)) : py::object(py::none());
    };
    for (py::ssize_t i = 0; i < len; ++i) {
        const auto& pt = traj[static_cast<std::size_t>(i)];
        tv(i) = pt.t;
        pv(i) = pt.p_suc;
        if (const auto* psi = std::get_if<PureState>(&pt.state)) {
            states.append(py::cast(CVector(psi->amplitudes())));
        } else {
            states.append(py::cast(CMatrix(std::get<DensityMatrix>(pt.state).matrix())));
        }
        c1.append(opt(pt.c1));
        cg.append(opt(pt.cg));
        cl1.append(opt(pt.cl1));
    }
    py::dict out;
    out["t"] = t;
    out["p_suc"] = p;
    out["c1"] = c1;
    out["cg"] = cg;
    out["cl1"] = cl1;
    out["states"] = states;
    return out;
}

py::dict curve_to_dict(const ScenarioCurve& c) {
    py::dict out;
    out["t"] = py::array(py::cast(c.t));
    out["p_suc"] = py::array(py::cast(c.p_suc));
    out["c1"] = py::array(py::cast(c.c1));
    out["c1_lower"] = py::array(py::cast(c.c1_lower));
    out["c1_upper"] = py::array(py::cast(c.c1_upper));
    out["cg"] = py::array(py::cast(c.cg));
    out["cg_lower"] = py::array(py::cast(c.cg_lower));
    out["cg_upper"] = py::array(py::cast(c.cg_upper));
    py::list branch;
    for (auto b : c.omega_branch) branch.append(to_string(b));
    out["omega_branch"] = branch;
    if (c.optimal_times) {
        py::dict ot;
        ot["floor"] = c.optimal_times->floor_time;
        ot["ceil"] = c.optimal_times->ceil_time;
        ot["best"] = c.optimal_times->best;
        ot["continuous"] = c.optimal_times->continuous;
        out["optimal_times"] = ot;
    } else {
        out["optimal_times"] = py::none();
    }
    out["max_incoherent_overlap"] =
        c.max_incoherent_overlap ? py::object(py::float_(*c.max_incoherent_overlap)) : py::object(py::none());
    return out;
}

ObservableFlags flags(bool c1, bool cg, bool cl1) { return ObservableFlags{c1, cl1, cg, {}}; }

}  // namespace

PYBIND11_MODULE(_ampcoh, m) {
    m.doc() = "Generalized amplitude amplification, coherence quantifiers and their bounds";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<InvalidScenario>(m, "InvalidScenario", PyExc_ValueError);
    py::register_exception<ClosedFormUnavailable>(m, "ClosedFormUnavailable", base.ptr());

    // ---- states ----
    py::class_<PureState>(m, "PureState")
        .def(py::init<CVector>(), py::arg("amplitudes"))
        .def_static("uniform", &PureState::uniform, py::arg("n"))
        .def_static("basis", &PureState::basis, py::arg("n"), py::arg("index"))
        .def_static("normalized", &PureState::normalized, py::arg("v"))
        .def_property_readonly("dim", &PureState::dim)
        .def_property_readonly("amplitudes", [](const PureState& s) { return CVector(s.amplitudes()); })
        .def("probabilities", &PureState::probabilities)
        .def("projector", &PureState::projector)
        .def("__len__", &PureState::dim);

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init<CMatrix>(), py::arg("matrix"))
        .def_static("maximally_mixed", &DensityMatrix::maximally_mixed, py::arg("n"))
        .def_static("from_diagonal",
                    [](const std::vector<double>& w) { return DensityMatrix::from_diagonal(w); },
                    py::arg("weights"))
        .def_property_readonly("dim", &DensityMatrix::dim)
        .def_property_readonly("matrix", [](const DensityMatrix& d) { return CMatrix(d.matrix()); })
        .def_property_readonly("eigenvalues", [](const DensityMatrix& d) { return RVector(d.eigenvalues()); })
        .def("diagonal", &DensityMatrix::diagonal)
        .def("dephased", &DensityMatrix::dephased);

    py::class_<MarkedSet>(m, "MarkedSet")
        .def(py::init<std::size_t, std::vector<std::size_t>>(), py::arg("n"), py::arg("marked"))
        .def_static("first", &MarkedSet::first, py::arg("n"), py::arg("m"))
        .def_property_readonly("dim", &MarkedSet::dim)
        .def_property_readonly("marked", &MarkedSet::marked)
        .def_property_readonly("unmarked", &MarkedSet::unmarked)
        .def("__len__", &MarkedSet::count)
        .def("__contains__", [](const MarkedSet& ms, std::size_t x) { return x < ms.dim() && ms.contains(x); })
        .def("complement", &MarkedSet::complement);

    m.def("von_neumann_entropy", &von_neumann_entropy, py::arg("rho"));
    m.def("shannon_entropy_diag", &shannon_entropy_diag, py::arg("rho"));
    m.def(
        "quantum_relative_entropy",
        [](const DensityMatrix& rho, const DensityMatrix& sigma) {
            const auto r = quantum_relative_entropy(rho, sigma);
            return r.infinite ? std::numeric_limits<double>::infinity() : r.nats;
        },
        py::arg("rho"), py::arg("sigma"));
    m.def("fidelity", &fidelity, py::arg("rho"), py::arg("sigma"));
    m.def("index_of_coincidence", &index_of_coincidence, py::arg("rho"));
    m.def("purity", &purity, py::arg("rho"));
    m.def("success_probability", py::overload_cast<const PureState&, const MarkedSet&>(&success_probability),
          py::arg("state"), py::arg("marked"));
    m.def("success_probability", py::overload_cast<const DensityMatrix&, const MarkedSet&>(&success_probability),
          py::arg("state"), py::arg("marked"));

    // ---- coherence ----
    py::class_<GeometricCoherenceResult>(m, "GeometricCoherenceResult")
        .def_readonly("value", &GeometricCoherenceResult::value)
        .def_readonly("max_fidelity", &GeometricCoherenceResult::max_fidelity)
        .def_readonly("iterations", &GeometricCoherenceResult::iterations)
        .def_readonly("converged", &GeometricCoherenceResult::converged)
        .def_property_readonly("optimizer",
                               [](const GeometricCoherenceResult& r) { return RVector(r.optimizer.weights()); });

    m.def("relative_entropy_of_coherence",
          py::overload_cast<const PureState&>(&relative_entropy_of_coherence), py::arg("state"));
    m.def("relative_entropy_of_coherence",
          py::overload_cast<const DensityMatrix&>(&relative_entropy_of_coherence), py::arg("state"));
    m.def("l1_coherence", py::overload_cast<const PureState&>(&l1_coherence), py::arg("state"));
    m.def("l1_coherence", py::overload_cast<const DensityMatrix&>(&l1_coherence), py::arg("state"));
    m.def("geometric_coherence_pure", &geometric_coherence_pure, py::arg("psi"));
    m.def(
        "geometric_coherence_mixed",
        [](const DensityMatrix& rho, double tolerance, int max_iterations) {
            return geometric_coherence_mixed(rho, GeometricOptions{tolerance, max_iterations});
        },
        py::arg("rho"), py::arg("tolerance") = 1e-8, py::arg("max_iterations") = 10000);
    m.def("geometric_coherence_lower_bound", &geometric_coherence_lower_bound, py::arg("rho"));

    // ---- engine ----
    py::class_<GroverConfig>(m, "GroverConfig")
        .def(py::init([](MarkedSet marked, double beta, double gamma, PureState eta, PureState initial) {
                 GroverConfig cfg{std::move(marked), beta, gamma, std::move(eta), std::move(initial)};
                 cfg.validate();
                 return cfg;
             }),
             py::arg("marked"), py::arg("beta"), py::arg("gamma"), py::arg("eta"), py::arg("initial"))
        .def_static("original", &GroverConfig::original, py::arg("n"), py::arg("marked"))
        .def_readonly("marked", &GroverConfig::marked)
        .def_readonly("beta", &GroverConfig::beta)
        .def_readonly("gamma", &GroverConfig::gamma)
        .def_readonly("eta", &GroverConfig::eta)
        .def_readonly("initial", &GroverConfig::initial)
        .def_property_readonly("dim", &GroverConfig::dim);

    m.def("oracle_phase_operator", &oracle_phase_operator, py::arg("marked"), py::arg("gamma"));
    m.def("eta_reflection_operator", &eta_reflection_operator, py::arg("eta"), py::arg("beta"));
    m.def("grover_iteration", &grover_iteration, py::arg("config"));
    m.def(
        "run_pure",
        [](const GroverConfig& cfg, std::size_t t_max, bool c1, bool cg, bool cl1) {
            return trajectory_to_dict(run_pure(cfg, t_max, flags(c1, cg, cl1)));
        },
        py::arg("config"), py::arg("t_max"), py::arg("c1") = true, py::arg("cg") = true, py::arg("cl1") = true,
        "Trajectory G^t|initial> as a dict of per-step columns and state vectors.");
    m.def(
        "run_density",
        [](const DensityMatrix& rho0, const GroverConfig& cfg, std::size_t t_max, bool c1, bool cg, bool cl1) {
            return trajectory_to_dict(run_density(rho0, cfg, t_max, flags(c1, cg, cl1)));
        },
        py::arg("rho0"), py::arg("config"), py::arg("t_max"), py::arg("c1") = true, py::arg("cg") = false,
        py::arg("cl1") = true);

    // ---- closed form ----
    py::class_<ClosedFormSolution>(m, "ClosedFormSolution")
        .def_readonly("omega", &ClosedFormSolution::omega)
        .def_readonly("omega_plus", &ClosedFormSolution::omega_plus)
        .def_readonly("omega_minus", &ClosedFormSolution::omega_minus)
        .def_readonly("lambda_plus", &ClosedFormSolution::lambda_plus)
        .def_readonly("lambda_minus", &ClosedFormSolution::lambda_minus)
        .def_readonly("a", &ClosedFormSolution::a)
        .def_readonly("b", &ClosedFormSolution::b)
        .def_readonly("xi1", &ClosedFormSolution::xi1)
        .def_readonly("xi2", &ClosedFormSolution::xi2)
        .def_readonly("xi3", &ClosedFormSolution::xi3)
        .def_readonly("xi4", &ClosedFormSolution::xi4)
        .def_readonly("wk", &ClosedFormSolution::wk)
        .def_readonly("wl", &ClosedFormSolution::wl)
        .def_readonly("kbar0", &ClosedFormSolution::kbar0)
        .def_readonly("lbar0", &ClosedFormSolution::lbar0)
        .def_property_readonly("delta_k", [](const ClosedFormSolution& s) { return CVector(s.delta_k); })
        .def_property_readonly("delta_l", [](const ClosedFormSolution& s) { return CVector(s.delta_l); });

    m.def("solve", &solve, py::arg("config"));
    m.def("state_vector_at", &state_vector_at, py::arg("solution"), py::arg("t"));
    m.def("success_probability_at", &success_probability_at, py::arg("solution"), py::arg("t"));

    // ---- bounds ----
    py::class_<BoundReport>(m, "BoundReport")
        .def_property_readonly("quantity", [](const BoundReport& r) { return to_string(r.quantity); })
        .def_readonly("value", &BoundReport::value)
        .def_readonly("lower", &BoundReport::lower)
        .def_readonly("upper", &BoundReport::upper)
        .def_readonly("lower_active", &BoundReport::lower_active)
        .def_property_readonly("omega_branch", [](const BoundReport& r) { return to_string(r.omega_branch); })
        .def_readonly("lower_binary", &BoundReport::lower_binary)
        .def_readonly("lower_omega", &BoundReport::lower_omega)
        .def_readonly("slack_lower", &BoundReport::slack_lower)
        .def_readonly("slack_upper", &BoundReport::slack_upper);

    py::class_<FidelityBoundCheck>(m, "FidelityBoundCheck")
        .def_readonly("holds", &FidelityBoundCheck::holds)
        .def_readonly("slack", &FidelityBoundCheck::slack)
        .def_readonly("max_fidelity", &FidelityBoundCheck::max_fidelity);

    m.def("prop1_bounds", py::overload_cast<const PureState&, const MarkedSet&>(&prop1_bounds), py::arg("state"),
          py::arg("marked"));
    m.def(
        "prop1_bounds",
        [](const DensityMatrix& rho, const MarkedSet& ms, std::optional<double> cg) {
            return prop1_bounds(rho, ms, cg);
        },
        py::arg("state"), py::arg("marked"), py::arg("cg") = py::none());
    m.def("prop2_bounds", py::overload_cast<const PureState&, const MarkedSet&>(&prop2_bounds), py::arg("state"),
          py::arg("marked"));
    m.def("prop2_bounds", py::overload_cast<const DensityMatrix&, const MarkedSet&>(&prop2_bounds),
          py::arg("state"), py::arg("marked"));
    m.def("fidelity_success_bound",
          py::overload_cast<const PureState&, const MarkedSet&>(&fidelity_success_bound), py::arg("state"),
          py::arg("marked"));
    m.def(
        "fidelity_success_bound",
        [](const DensityMatrix& rho, const MarkedSet& ms) { return fidelity_success_bound(rho, ms); },
        py::arg("state"), py::arg("marked"));
    m.def("l1_boxcar", &l1_boxcar, py::arg("p_suc"), py::arg("m"), py::arg("n"));

    // ---- scenarios ----
    m.def(
        "scenario_curve",
        [](const std::string& kind, std::size_t n, std::size_t m_count, double m_eta, double alpha, double theta,
           std::size_t t_max) {
            ScenarioSpec spec;
            spec.kind = scenario_kind_from_string(kind);
            spec.n = n;
            spec.m = m_count;
            spec.m_eta = m_eta;
            spec.alpha = alpha;
            spec.theta = theta;
            spec.t_max = t_max;
            return curve_to_dict(scenario_curve(spec));
        },
        py::arg("kind"), py::arg("n") = 16, py::arg("m") = 2, py::arg("m_eta") = 0.0, py::arg("alpha") = 0.0,
        py::arg("theta") = 0.0, py::arg("t_max") = 40);
    m.def("consistent_eta", &consistent_eta, py::arg("n"), py::arg("m"), py::arg("m_eta"));
    m.def("inconsistent_eta", &inconsistent_eta, py::arg("n"), py::arg("m"), py::arg("alpha"));
    m.def("fixed_point_state", &fixed_point_state, py::arg("n"), py::arg("m"), py::arg("theta"));

    // ---- random inputs ----
    m.def(
        "random_pure_state", [](std::size_t n, std::uint64_t seed) {
            Rng rng(seed);
            return random_pure_state(n, rng);
        },
        py::arg("n"), py::arg("seed"));
    m.def(
        "random_density_matrix", [](std::size_t n, std::size_t rank, std::uint64_t seed) {
            Rng rng(seed);
            return random_density_matrix(n, rank, rng);
        },
        py::arg("n"), py::arg("rank"), py::arg("seed"));
}
