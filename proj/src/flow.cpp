#include "fracflow/flow.hpp"

#include <chrono>
#include <cmath>

#include "fracflow/caputo.hpp"
#include "fracflow/errors.hpp"
#include "fracflow/special.hpp"

namespace fracflow {

std::vector<Eigen::VectorXd> average_forcing(const Forcing& f, const Partition& P, int q) {
    if (q < 1) throw FlowError(ErrorCode::BadExponent, "q must be >= 1");
    std::vector<Eigen::VectorXd> F(P.N);
    switch (f.kind) {
        case Forcing::Kind::Zero:
            for (auto& v : F) v = Eigen::VectorXd::Zero(0);  // dimension patched by caller
            break;
        case Forcing::Kind::PiecewiseConstant:
            if (f.values.size() != P.N) {
                throw FlowError(ErrorCode::DimensionMismatch,
                                "piecewise-constant forcing needs one value per interval");
            }
            F = f.values;
            break;
        case Forcing::Kind::Function: {
            const GaussRule& rule = gauss_legendre(q);
            for (std::size_t n = 1; n <= P.N; ++n) {
                const double a = P.nodes[n - 1], b = P.nodes[n];
                Eigen::VectorXd acc;
                for (int j = 0; j < q; ++j) {
                    const double t = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[j];
                    Eigen::VectorXd v = f.fn(t);
                    if (j == 0) {
                        acc = rule.weights[j] * v;
                    } else {
                        acc += rule.weights[j] * v;
                    }
                }
                F[n - 1] = 0.5 * acc;
            }
            break;
        }
    }
    return F;
}

FlowResult solve_flow(const FlowProblem& problem, const Partition& P, const ProxConfig& cfg) {
    const auto t_start = std::chrono::steady_clock::now();
    const double alpha = problem.alpha;
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw FlowError(ErrorCode::BadOrder, "alpha must lie in (0, 1)");
    }
    const double g1a = gamma_fn(alpha + 1.0);
    if (problem.perturbation) {
        if (!(problem.perturbation->lipschitz * std::pow(P.tau_max, alpha) < g1a)) {
            throw FlowError(ErrorCode::StepConditionViolated,
                            "need L * tau_max^alpha < Gamma(alpha + 1)");
        }
    }
    const Eigen::VectorXd U0 = problem.U0_override ? *problem.U0_override : problem.u0;
    const Eigen::Index d = U0.size();
    if (!std::isfinite(problem.energy.value(U0))) {
        throw FlowError(ErrorCode::DomainEscape, "U_0 must lie in the domain of Phi");
    }

    FlowResult out;
    out.alpha = alpha;
    out.partition = P;
    out.energy = problem.energy;
    out.perturbation = problem.perturbation;
    out.forcing = problem.forcing;
    out.quadrature_points = problem.quadrature_points;
    out.U0 = U0;
    out.phi_u0 = problem.energy.value(U0);

    std::vector<Eigen::VectorXd> F = average_forcing(problem.forcing, P, problem.quadrature_points);
    for (auto& fn : F) {
        if (fn.size() == 0) fn = Eigen::VectorXd::Zero(d);
        if (fn.size() != d) {
            throw FlowError(ErrorCode::DimensionMismatch, "forcing dimension mismatch");
        }
    }

    const std::size_t N = P.N;
    out.U.resize(N);
    out.V.resize(N);
    out.F = std::move(F);
    out.prox_residuals.resize(N);
    out.phi_trace.resize(N);

    for (std::size_t n = 1; n <= N; ++n) {
        const double tn = P.nodes[n];
        // history S_n = sum_{i<n} K_{ni} V_i with the exact telescoped weights
        Eigen::VectorXd S = Eigen::VectorXd::Zero(d);
        double right = std::pow(tn - P.nodes[0], alpha);
        for (std::size_t i = 1; i < n; ++i) {
            const double next = std::pow(tn - P.nodes[i], alpha);
            S += ((right - next) / g1a) * out.V[i - 1];
            right = next;
        }
        const double knn = std::pow(P.tau[n - 1], alpha) / g1a;
        const double cn = g1a * std::pow(P.tau[n - 1], -alpha);

        Energy::PsiMap psi_n;
        const Energy::PsiMap* psi_ptr = nullptr;
        double lipschitz = 0.0;
        if (problem.perturbation) {
            const Perturbation& psi = *problem.perturbation;
            const int q = problem.quadrature_points;
            psi_n = [&psi, n, &P, q](const Eigen::VectorXd& w) {
                return perturbation_avg(psi, n, P, w, q);
            };
            psi_ptr = &psi_n;
            lipschitz = psi.lipschitz;
        }

        const Eigen::VectorXd r = out.F[n - 1] + cn * (U0 + S);
        ProxResult px;
        try {
            px = prox(problem.energy, cn, r, psi_ptr, lipschitz, cfg);
        } catch (const FlowError& err) {
            if (err.code() == ErrorCode::NoConvergence) {
                throw FlowError(ErrorCode::ProxFailure,
                                "prox failed at step " + std::to_string(n) + ": " + err.what());
            }
            throw;
        }
        out.U[n - 1] = px.w;
        out.V[n - 1] = (px.w - U0 - S) / knn;
        out.prox_residuals[n - 1] = px.residual;
        out.phi_trace[n - 1] = problem.energy.value(px.w);
        if (!std::isfinite(out.phi_trace[n - 1])) {
            throw FlowError(ErrorCode::ProxFailure,
                            "prox left the domain of Phi at step " + std::to_string(n));
        }
    }

    out.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return out;
}

Eigen::VectorXd interpolate_result(const FlowResult& result, double t) {
    return pc_interpolant_eval(result.partition, result.alpha, result.U0, result.V, t);
}

}  // namespace fracflow
