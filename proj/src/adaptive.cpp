#include "fracflow/adaptive.hpp"

#include <chrono>
#include <cmath>

#include "fracflow/errors.hpp"
#include "fracflow/special.hpp"

namespace fracflow {

std::pair<FlowResult, AdaptiveReport> adaptive_solve(const FlowProblem& problem, double T,
                                                     const AdaptiveConfig& cfg,
                                                     const ProxConfig& prox_cfg) {
    const auto t_start = std::chrono::steady_clock::now();
    if (!(T > 0.0)) throw FlowError(ErrorCode::BadHorizon, "T must be positive");
    if (!(cfg.epsilon > 0.0) || !(cfg.shrink > 0.0 && cfg.shrink < 1.0) || !(cfg.growth > 1.0) ||
        !(cfg.tau_min > 0.0) || !(cfg.tau_init > 0.0)) {
        throw FlowError(ErrorCode::ConfigError, "invalid AdaptiveConfig");
    }
    const double alpha = problem.alpha;
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw FlowError(ErrorCode::BadOrder, "alpha must lie in (0, 1)");
    }
    const double g1a = gamma_fn(alpha + 1.0);
    const double tau_cap = (cfg.tau_max > 0.0) ? cfg.tau_max : T;
    if (!(cfg.tau_min < tau_cap)) {
        throw FlowError(ErrorCode::ConfigError, "tau_min must be below tau_max");
    }
    const double crit_scale = 2.0 * std::pow(T, alpha) / g1a;
    const double eps2 = cfg.epsilon * cfg.epsilon;

    const Eigen::VectorXd U0 = problem.U0_override ? *problem.U0_override : problem.u0;
    const Eigen::Index d = U0.size();
    const double phi_u0 = problem.energy.value(U0);
    if (!std::isfinite(phi_u0)) {
        throw FlowError(ErrorCode::DomainEscape, "U_0 must lie in the domain of Phi");
    }

    std::vector<double> nodes{0.0};
    std::vector<Eigen::VectorXd> U, V, F;
    std::vector<double> residuals, phis;
    AdaptiveReport report;

    double tau = std::min(cfg.tau_init, tau_cap);
    std::size_t trials = 0;
    std::size_t rejections_here = 0;
    double phi_prev = phi_u0;
    Eigen::VectorXd u_prev = U0;

    while (nodes.back() < T) {
        tau = std::max(tau, cfg.tau_min);
        bool clipped = false;
        if (nodes.back() + tau >= T || T - (nodes.back() + tau) < cfg.tau_min) {
            tau = T - nodes.back();
            clipped = true;
        }
        const double tn = nodes.back() + tau;
        const std::size_t n = U.size() + 1;

        if (++trials > cfg.max_steps) {
            throw FlowError(ErrorCode::StepBudget, "max_steps exceeded");
        }
        if (problem.perturbation &&
            !(problem.perturbation->lipschitz * std::pow(tau, alpha) < g1a)) {
            throw FlowError(ErrorCode::StepConditionViolated,
                            "need L * tau^alpha < Gamma(alpha + 1)");
        }

        // trial step: only the trailing kernel row depends on the trial node
        Eigen::VectorXd S = Eigen::VectorXd::Zero(d);
        double right = std::pow(tn - nodes[0], alpha);
        for (std::size_t i = 1; i < n; ++i) {
            const double next = std::pow(tn - nodes[i], alpha);
            S += ((right - next) / g1a) * V[i - 1];
            right = next;
        }
        const double knn = std::pow(tau, alpha) / g1a;
        const double cn = g1a * std::pow(tau, -alpha);

        Eigen::VectorXd Fn = Eigen::VectorXd::Zero(d);
        if (problem.forcing.kind == Forcing::Kind::Function) {
            const GaussRule& rule = gauss_legendre(problem.quadrature_points);
            Fn.setZero();
            for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
                const double t = 0.5 * (nodes.back() + tn) + 0.5 * tau * rule.nodes[j];
                Fn += rule.weights[j] * problem.forcing.fn(t);
            }
            Fn *= 0.5;
        } else if (problem.forcing.kind == Forcing::Kind::PiecewiseConstant) {
            throw FlowError(ErrorCode::Unsupported,
                            "piecewise-constant forcing is tied to a fixed partition");
        }

        Energy::PsiMap psi_n;
        const Energy::PsiMap* psi_ptr = nullptr;
        double lipschitz = 0.0;
        if (problem.perturbation) {
            const Perturbation& psi = *problem.perturbation;
            const double a = nodes.back(), b = tn;
            const int q = problem.quadrature_points;
            psi_n = [&psi, a, b, q](const Eigen::VectorXd& w) -> Eigen::VectorXd {
                if (!psi.time_dependent) return psi.psi(a, w);
                const GaussRule& rule = gauss_legendre(q);
                Eigen::VectorXd acc = Eigen::VectorXd::Zero(w.size());
                for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
                    acc += rule.weights[j] * psi.psi(0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[j], w);
                }
                return 0.5 * acc;
            };
            psi_ptr = &psi_n;
            lipschitz = psi.lipschitz;
        }

        const Eigen::VectorXd r = Fn + cn * (U0 + S);
        ProxResult px;
        try {
            px = prox(problem.energy, cn, r, psi_ptr, lipschitz, prox_cfg);
        } catch (const FlowError& err) {
            if (err.code() == ErrorCode::NoConvergence) {
                throw FlowError(ErrorCode::ProxFailure,
                                "prox failed at t=" + std::to_string(tn) + ": " + err.what());
            }
            throw;
        }
        const Eigen::VectorXd Vn = (px.w - U0 - S) / knn;
        Eigen::VectorXd lhs = Vn - Fn;
        if (psi_ptr) lhs += psi_n(px.w);
        const double phi_n = problem.energy.value(px.w);
        const double tilde = lhs.dot(u_prev - px.w) + phi_prev - phi_n;
        const double crit = crit_scale * tilde;

        if (crit <= eps2) {
            nodes.push_back(tn);
            U.push_back(px.w);
            V.push_back(Vn);
            F.push_back(Fn);
            residuals.push_back(px.residual);
            phis.push_back(phi_n);
            report.steps.push_back({tn, tau, tilde, rejections_here});
            rejections_here = 0;
            phi_prev = phi_n;
            u_prev = px.w;
            if (!clipped && crit <= cfg.slack * eps2) {
                tau = std::min(tau * cfg.growth, tau_cap);
            }
        } else {
            if (tau <= cfg.tau_min * (1.0 + 1e-12)) {
                throw FlowError(ErrorCode::FloorReached,
                                "criterion still violated at tau_min (t=" + std::to_string(tn) + ")");
            }
            tau *= cfg.shrink;
            ++rejections_here;
            ++report.total_rejections;
        }
    }
    nodes.back() = T;  // exact final node

    FlowResult out;
    out.alpha = alpha;
    out.partition = make_partition(std::move(nodes));
    out.energy = problem.energy;
    out.perturbation = problem.perturbation;
    out.forcing = problem.forcing;
    out.quadrature_points = problem.quadrature_points;
    out.U0 = U0;
    out.U = std::move(U);
    out.V = std::move(V);
    out.F = std::move(F);
    out.prox_residuals = std::move(residuals);
    out.phi_trace = std::move(phis);
    out.phi_u0 = phi_u0;
    out.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return {std::move(out), std::move(report)};
}

}  // namespace fracflow
