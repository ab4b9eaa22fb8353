#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fracflow/adaptive.hpp"
#include "fracflow/caputo.hpp"
#include "fracflow/estimate.hpp"
#include "fracflow/quadform.hpp"
#include "fracflow/special.hpp"

namespace py = pybind11;
using namespace fracflow;

namespace {

Eigen::MatrixXd stack_states(const std::vector<Eigen::VectorXd>& xs) {
    if (xs.empty()) return Eigen::MatrixXd(0, 0);
    Eigen::MatrixXd out(static_cast<Eigen::Index>(xs.size()), xs.front().size());
    for (std::size_t i = 0; i < xs.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = xs[i];
    return out;
}

std::vector<Eigen::VectorXd> unstack_states(const Eigen::MatrixXd& m) {
    std::vector<Eigen::VectorXd> out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) out[static_cast<std::size_t>(i)] = m.row(i);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Solvers and a posteriori estimators for time-fractional gradient flows "
              "on non-uniform time partitions.";

    py::register_exception<FlowError>(m, "FlowError");

    py::class_<Partition>(m, "Partition")
        .def_readonly("nodes", &Partition::nodes)
        .def_readonly("tau", &Partition::tau)
        .def_readonly("T", &Partition::T)
        .def_readonly("N", &Partition::N)
        .def_readonly("tau_max", &Partition::tau_max)
        .def("locate",
             [](const Partition& p, double t) {
                 const auto loc = p.locate(t);
                 return py::make_tuple(loc.n, loc.floor, loc.ceil);
             },
             py::arg("t"), "Index n with t in (nodes[n-1], nodes[n]], plus floor/ceil values.");

    m.def("make_partition", &make_partition, py::arg("nodes"));
    m.def("uniform_partition", &uniform_partition, py::arg("T"), py::arg("N"));

    m.def("gamma_fn", &gamma_fn, py::arg("x"));
    m.def("mittag_leffler", py::overload_cast<double, double>(&mittag_leffler), py::arg("alpha"),
          py::arg("z"));
    m.def("frac_integral_pc", &frac_integral_pc, py::arg("partition"), py::arg("alpha"),
          py::arg("g"), py::arg("t"));
    m.def(
        "lp_alpha_norm",
        [](const Partition& P, double alpha, double p, const Eigen::MatrixXd& g, int m_) {
            return lp_alpha_norm(P, alpha, p, unstack_states(g), m_);
        },
        py::arg("partition"), py::arg("alpha"), py::arg("p"), py::arg("g"), py::arg("m") = 16,
        "Sampled sup of the weighted norm; g holds one row per interval.");

    py::class_<KernelDiagnostics>(m, "KernelDiagnostics")
        .def_readonly("violations", &KernelDiagnostics::violations)
        .def("ok", &KernelDiagnostics::ok);

    py::class_<CaputoKernel>(m, "CaputoKernel")
        .def(py::init<Partition, double>(), py::arg("partition"), py::arg("alpha"))
        .def("invert", &CaputoKernel::invert)
        .def("inverted", &CaputoKernel::inverted)
        .def_property_readonly("alpha", &CaputoKernel::alpha)
        .def_property_readonly("partition", &CaputoKernel::partition)
        .def("k", &CaputoKernel::k, py::arg("n"), py::arg("i"))
        .def("kinv", &CaputoKernel::kinv, py::arg("n"), py::arg("i"))
        .def("kinv_col0", &CaputoKernel::kinv_col0, py::arg("n"))
        .def("append_node", &CaputoKernel::append_node, py::arg("t_next"))
        .def("replace_last_node", &CaputoKernel::replace_last_node, py::arg("t_new"))
        .def("override_kinv_entry", &CaputoKernel::override_kinv_entry, py::arg("n"), py::arg("i"),
             py::arg("value"));

    m.def(
        "discrete_caputo",
        [](const CaputoKernel& kern, const Eigen::VectorXd& U0, const Eigen::MatrixXd& U) {
            return stack_states(discrete_caputo(kern, U0, unstack_states(U)));
        },
        py::arg("kernel"), py::arg("U0"), py::arg("U"));
    m.def(
        "reconstruct",
        [](const CaputoKernel& kern, const Eigen::VectorXd& U0, const Eigen::MatrixXd& V) {
            return stack_states(reconstruct(kern, U0, unstack_states(V)));
        },
        py::arg("kernel"), py::arg("U0"), py::arg("V"));
    m.def("basis_eval", &basis_eval, py::arg("kernel"), py::arg("i"), py::arg("t"));
    m.def(
        "interpolant_eval",
        [](const CaputoKernel& kern, const Eigen::VectorXd& U0, const Eigen::MatrixXd& U,
           double t) { return interpolant_eval(kern, U0, unstack_states(U), t); },
        py::arg("kernel"), py::arg("U0"), py::arg("U"), py::arg("t"));
    m.def("check_kernel_properties", &check_kernel_properties, py::arg("kernel"));

    py::enum_<EnergyKind>(m, "EnergyKind")
        .value("Quadratic", EnergyKind::Quadratic)
        .value("QuadraticForm", EnergyKind::QuadraticForm)
        .value("PowerP", EnergyKind::PowerP)
        .value("Entropy", EnergyKind::Entropy)
        .value("Circle", EnergyKind::Circle)
        .value("Custom", EnergyKind::Custom);

    py::class_<ProxConfig>(m, "ProxConfig")
        .def(py::init<>())
        .def_readwrite("tol", &ProxConfig::tol)
        .def_readwrite("max_iter", &ProxConfig::max_iter)
        .def_readwrite("init_floor", &ProxConfig::init_floor);

    py::class_<ProxResult>(m, "ProxResult")
        .def_readonly("w", &ProxResult::w)
        .def_readonly("residual", &ProxResult::residual)
        .def_readonly("iterations", &ProxResult::iterations);

    py::class_<Energy>(m, "Energy")
        .def_static("quadratic", &Energy::quadratic, py::arg("lam"))
        .def_static("quadratic_form", &Energy::quadratic_form, py::arg("A"))
        .def_static("power_p", &Energy::power_p, py::arg("lam"), py::arg("p"))
        .def_static("entropy", &Energy::entropy, py::arg("lam"))
        .def_static("circle", &Energy::circle, py::arg("lam"))
        .def_static("custom", &Energy::custom, py::arg("value"), py::arg("prox"),
                    py::arg("grad") = nullptr)
        .def_property_readonly("kind", &Energy::kind)
        .def("value", &Energy::value, py::arg("w"))
        .def("gradient", &Energy::gradient, py::arg("w"))
        .def("differentiable_at", &Energy::differentiable_at, py::arg("w"));

    py::class_<Perturbation>(m, "Perturbation")
        .def(py::init([](std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> psi,
                         double lipschitz, bool time_dependent) {
                 Perturbation out;
                 out.psi = std::move(psi);
                 out.lipschitz = lipschitz;
                 out.time_dependent = time_dependent;
                 return out;
             }),
             py::arg("psi"), py::arg("lipschitz"), py::arg("time_dependent") = true)
        .def_readonly("lipschitz", &Perturbation::lipschitz)
        .def_readonly("time_dependent", &Perturbation::time_dependent);

    m.def("phi_value", &phi_value, py::arg("energy"), py::arg("w"));
    m.def(
        "prox",
        [](const Energy& e, double c, const Eigen::VectorXd& r,
           std::optional<Energy::PsiMap> psi, double psi_lipschitz, const ProxConfig& cfg) {
            return prox(e, c, r, psi ? &*psi : nullptr, psi_lipschitz, cfg);
        },
        py::arg("energy"), py::arg("c"), py::arg("r"), py::arg("psi_avg") = std::nullopt,
        py::arg("psi_lipschitz") = 0.0, py::arg("cfg") = ProxConfig{});
    m.def("sigma", &sigma, py::arg("energy"), py::arg("w1"), py::arg("w2"));
    m.def("perturbation_avg", &perturbation_avg, py::arg("psi"), py::arg("n"),
          py::arg("partition"), py::arg("w"), py::arg("q") = 4);

    py::class_<Forcing>(m, "Forcing")
        .def_static("zero", &Forcing::zero)
        .def_static("function", &Forcing::function, py::arg("f"))
        .def_static(
            "piecewise_constant",
            [](const Eigen::MatrixXd& vals) { return Forcing::piecewise_constant(unstack_states(vals)); },
            py::arg("values"));

    py::class_<FlowProblem>(m, "FlowProblem")
        .def(py::init<>())
        .def_readwrite("alpha", &FlowProblem::alpha)
        .def_readwrite("energy", &FlowProblem::energy)
        .def_readwrite("perturbation", &FlowProblem::perturbation)
        .def_readwrite("forcing", &FlowProblem::forcing)
        .def_readwrite("u0", &FlowProblem::u0)
        .def_readwrite("quadrature_points", &FlowProblem::quadrature_points)
        .def_readwrite("U0_override", &FlowProblem::U0_override);

    py::class_<FlowResult>(m, "FlowResult")
        .def_readonly("alpha", &FlowResult::alpha)
        .def_readonly("partition", &FlowResult::partition)
        .def_readonly("energy", &FlowResult::energy)
        .def_readonly("U0", &FlowResult::U0)
        .def_property_readonly("U", [](const FlowResult& r) { return stack_states(r.U); })
        .def_property_readonly("V", [](const FlowResult& r) { return stack_states(r.V); })
        .def_property_readonly("F", [](const FlowResult& r) { return stack_states(r.F); })
        .def_readonly("prox_residuals", &FlowResult::prox_residuals)
        .def_readonly("phi_trace", &FlowResult::phi_trace)
        .def_readonly("phi_u0", &FlowResult::phi_u0)
        .def_readonly("wall_time_s", &FlowResult::wall_time_s);

    m.def(
        "average_forcing",
        [](const Forcing& f, const Partition& P, int q) {
            return stack_states(average_forcing(f, P, q));
        },
        py::arg("forcing"), py::arg("partition"), py::arg("q") = 4);
    m.def("solve_flow", &solve_flow, py::arg("problem"), py::arg("partition"),
          py::arg("cfg") = ProxConfig{});
    m.def("interpolate_result", &interpolate_result, py::arg("result"), py::arg("t"));

    m.def("estimator_tilde", &estimator_tilde, py::arg("result"));
    m.def("estimator_pointwise", &estimator_pointwise, py::arg("result"), py::arg("t"));
    m.def("estimator_D", &estimator_D, py::arg("result"), py::arg("m") = 8);

    py::class_<BoundBreakdown>(m, "BoundBreakdown")
        .def_readonly("u0_gap", &BoundBreakdown::u0_gap)
        .def_readonly("l1_alpha_estimator", &BoundBreakdown::l1_alpha_estimator)
        .def_readonly("forcing_gap", &BoundBreakdown::forcing_gap)
        .def_readonly("interp_gap", &BoundBreakdown::interp_gap)
        .def_readonly("ml_factor", &BoundBreakdown::ml_factor)
        .def_readonly("bound", &BoundBreakdown::bound);
    m.def("aposteriori_bound", &aposteriori_bound, py::arg("result"), py::arg("u0_gap") = 0.0,
          py::arg("m") = 8);

    py::class_<ErrorVsReference>(m, "ErrorVsReference")
        .def_readonly("e_h", &ErrorVsReference::e_h)
        .def_readonly("e_sigma", &ErrorVsReference::e_sigma);
    m.def("error_vs_reference", &error_vs_reference, py::arg("result"), py::arg("ref"),
          py::arg("interior_samples") = 1, py::arg("want_sigma") = false);

    py::class_<AdaptiveConfig>(m, "AdaptiveConfig")
        .def(py::init<>())
        .def_readwrite("epsilon", &AdaptiveConfig::epsilon)
        .def_readwrite("tau_init", &AdaptiveConfig::tau_init)
        .def_readwrite("tau_min", &AdaptiveConfig::tau_min)
        .def_readwrite("tau_max", &AdaptiveConfig::tau_max)
        .def_readwrite("growth", &AdaptiveConfig::growth)
        .def_readwrite("shrink", &AdaptiveConfig::shrink)
        .def_readwrite("slack", &AdaptiveConfig::slack)
        .def_readwrite("max_steps", &AdaptiveConfig::max_steps);

    py::class_<StepRecord>(m, "StepRecord")
        .def_readonly("t", &StepRecord::t)
        .def_readonly("tau", &StepRecord::tau)
        .def_readonly("tilde", &StepRecord::tilde)
        .def_readonly("rejections", &StepRecord::rejections);

    py::class_<AdaptiveReport>(m, "AdaptiveReport")
        .def_readonly("steps", &AdaptiveReport::steps)
        .def_readonly("total_rejections", &AdaptiveReport::total_rejections);

    m.def("adaptive_solve", &adaptive_solve, py::arg("problem"), py::arg("T"), py::arg("cfg"),
          py::arg("prox_cfg") = ProxConfig{});

    py::class_<QuadFormProblem>(m, "QuadFormProblem")
        .def(py::init<>())
        .def_readwrite("A", &QuadFormProblem::A)
        .def_readwrite("u0", &QuadFormProblem::u0)
        .def_readwrite("forcing", &QuadFormProblem::forcing)
        .def_readwrite("T", &QuadFormProblem::T);

    py::class_<QuadFormRow>(m, "QuadFormRow")
        .def_readonly("tau", &QuadFormRow::tau)
        .def_readonly("e_h", &QuadFormRow::e_h)
        .def_readonly("rate", &QuadFormRow::rate);

    py::class_<QuadFormReport>(m, "QuadFormReport")
        .def_readonly("rows", &QuadFormReport::rows)
        .def_readonly("observed_order", &QuadFormReport::observed_order)
        .def_readonly("eigen_crosscheck_max_diff", &QuadFormReport::eigen_crosscheck_max_diff);

    m.def("run_quadform_rate", &run_quadform_rate, py::arg("problem"), py::arg("alpha"),
          py::arg("ladder"), py::arg("ref_refine") = 4, py::arg("prox_cfg") = ProxConfig{});
    m.def("quadform_eigen_solution", &quadform_eigen_solution, py::arg("A"), py::arg("u0"),
          py::arg("alpha"), py::arg("t"));
}
