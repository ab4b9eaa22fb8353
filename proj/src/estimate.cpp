#include "fracflow/estimate.hpp"

#include <cmath>

#include "fracflow/caputo.hpp"
#include "fracflow/errors.hpp"
#include "fracflow/special.hpp"

namespace fracflow {

namespace {

Eigen::VectorXd psi_avg_at(const FlowResult& r, std::size_t n, const Eigen::VectorXd& w) {
    return perturbation_avg(*r.perturbation, n, r.partition, w, r.quadrature_points);
}

double tilde_step(const FlowResult& r, std::size_t n) {
    const Eigen::VectorXd& Un = r.U[n - 1];
    const Eigen::VectorXd& Uprev = (n == 1) ? r.U0 : r.U[n - 2];
    Eigen::VectorXd lhs = r.V[n - 1] - r.F[n - 1];
    if (r.perturbation) lhs += psi_avg_at(r, n, Un);
    const double phi_prev = (n == 1) ? r.phi_u0 : r.phi_trace[n - 2];
    return lhs.dot(Uprev - Un) + phi_prev - r.phi_trace[n - 1];
}

}  // namespace

std::vector<double> estimator_tilde(const FlowResult& result) {
    std::vector<double> tilde(result.partition.N);
    for (std::size_t n = 1; n <= result.partition.N; ++n) {
        const double value = tilde_step(result, n);
        if (!std::isfinite(value)) {
            throw FlowError(ErrorCode::DomainEscape, "Phi(U_{n-1}) not finite");
        }
        tilde[n - 1] = value;
    }
    return tilde;
}

double estimator_pointwise_in_interval(const FlowResult& result, std::size_t n, double t) {
    const Partition& P = result.partition;
    if (n < 1 || n > P.N) throw FlowError(ErrorCode::BadIndex, "interval index out of range");
    if (t < P.nodes[n - 1] || t > P.nodes[n]) {
        throw FlowError(ErrorCode::OutOfRange, "t outside the requested interval");
    }
    const Eigen::VectorXd uhat = interpolate_result(result, t);
    const Eigen::VectorXd& ubar = result.U[n - 1];
    Eigen::VectorXd lhs = result.V[n - 1] - result.F[n - 1];
    if (result.perturbation) lhs += psi_avg_at(result, n, ubar);
    return lhs.dot(uhat - ubar) + result.energy.value(uhat) - result.phi_trace[n - 1];
}

double estimator_pointwise(const FlowResult& result, double t) {
    if (!(t > 0.0) || t > result.partition.T) {
        throw FlowError(ErrorCode::OutOfRange, "t must lie in (0, T]");
    }
    const std::size_t n = result.partition.locate(t).n;
    return estimator_pointwise_in_interval(result, n, t);
}

std::vector<double> estimator_D(const FlowResult& result, int m) {
    if (m < 2) throw FlowError(ErrorCode::BadExponent, "m must be >= 2");
    const Partition& P = result.partition;
    std::vector<double> out(P.N);
    for (std::size_t n = 1; n <= P.N; ++n) {
        double best = 0.0;
        for (int j = 0; j < m; ++j) {
            const double t = P.nodes[n - 1] +
                             P.tau[n - 1] * static_cast<double>(j) / static_cast<double>(m - 1);
            best = std::max(best, estimator_pointwise_in_interval(result, n, std::min(t, P.nodes[n])));
        }
        out[n - 1] = best;
    }
    return out;
}

namespace {

// m-subsampled piecewise-constant representation of a per-interval-sampled
// scalar function, with trapezoid aggregation on each sub-interval.
struct RefinedSamples {
    Partition refined;
    std::vector<double> values;
};

RefinedSamples refine_and_sample(const Partition& P, int m,
                                 const std::function<double(std::size_t, double)>& f) {
    std::vector<double> nodes;
    nodes.reserve(P.N * static_cast<std::size_t>(m) + 1);
    nodes.push_back(0.0);
    std::vector<double> vals;
    vals.reserve(P.N * static_cast<std::size_t>(m));
    for (std::size_t n = 1; n <= P.N; ++n) {
        double left_val = f(n, P.nodes[n - 1]);
        for (int j = 1; j <= m; ++j) {
            const double t = (j == m) ? P.nodes[n]
                                      : P.nodes[n - 1] + P.tau[n - 1] * static_cast<double>(j) /
                                                             static_cast<double>(m);
            const double right_val = f(n, t);
            nodes.push_back(t);
            vals.push_back(0.5 * (left_val + right_val));
            left_val = right_val;
        }
    }
    return {make_partition(std::move(nodes)), std::move(vals)};
}

}  // namespace

BoundBreakdown aposteriori_bound(const FlowResult& result, double u0_gap, int m) {
    if (m < 2) throw FlowError(ErrorCode::BadExponent, "m must be >= 2");
    const Partition& P = result.partition;
    const double alpha = result.alpha;
    const double ga = gamma_fn(alpha);

    BoundBreakdown breakdown;
    breakdown.u0_gap = u0_gap;

    RefinedSamples est = refine_and_sample(P, m, [&](std::size_t n, double t) {
        return std::max(estimator_pointwise_in_interval(result, n, t), 0.0);
    });
    breakdown.l1_alpha_estimator = lp_alpha_norm(est.refined, alpha, 1.0, est.values, 1);

    if (result.forcing.kind == Forcing::Kind::Function) {
        const GaussRule& rule = gauss_legendre(result.quadrature_points);
        // node layout reused; the values are filled by Gauss averages below
        RefinedSamples gap = refine_and_sample(P, m, [](std::size_t, double) { return 0.0; });
        // per sub-interval Gauss average of ||f - F_n||
        std::size_t idx = 0;
        for (std::size_t n = 1; n <= P.N; ++n) {
            for (int j = 0; j < m; ++j, ++idx) {
                const double a = gap.refined.nodes[idx];
                const double b = gap.refined.nodes[idx + 1];
                double acc = 0.0;
                for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
                    const double t = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[k];
                    acc += rule.weights[k] * (result.forcing.fn(t) - result.F[n - 1]).norm();
                }
                gap.values[idx] = 0.5 * acc;
            }
        }
        breakdown.forcing_gap = lp_alpha_norm(gap.refined, alpha, 1.0, gap.values, 1);
    }

    double ml = 1.0;
    if (result.perturbation && result.perturbation->lipschitz > 0.0) {
        const double L = result.perturbation->lipschitz;
        ml = mittag_leffler(alpha, 2.0 * L * std::pow(P.T, alpha));
        RefinedSamples ugap = refine_and_sample(P, m, [&](std::size_t n, double t) {
            return (interpolate_result(result, t) - result.U[n - 1]).norm();
        });
        breakdown.interp_gap = lp_alpha_norm(ugap.refined, alpha, 1.0, ugap.values, 1);
    }
    breakdown.ml_factor = ml;

    const double head =
        std::sqrt(u0_gap * u0_gap + 2.0 / ga * breakdown.l1_alpha_estimator) * std::sqrt(ml);
    double tail = 2.0 / ga * breakdown.forcing_gap;
    if (result.perturbation) {
        tail += 2.0 / ga * result.perturbation->lipschitz * breakdown.interp_gap;
    }
    breakdown.bound = head + tail * ml;
    return breakdown;
}

ErrorVsReference error_vs_reference(const FlowResult& result,
                                    const std::function<Eigen::VectorXd(double)>& ref,
                                    int interior_samples, bool want_sigma) {
    if (interior_samples < 0) {
        throw FlowError(ErrorCode::BadExponent, "interior_samples must be >= 0");
    }
    const Partition& P = result.partition;
    ErrorVsReference out;
    out.e_h = (ref(0.0) - result.U0).norm();
    std::vector<double> sigma_vals;  // per refined piece, for E_sigma
    std::vector<double> sigma_nodes;
    if (want_sigma) sigma_nodes.push_back(0.0);
    for (std::size_t n = 1; n <= P.N; ++n) {
        for (int j = 0; j <= interior_samples; ++j) {
            const double t = P.nodes[n - 1] + P.tau[n - 1] * static_cast<double>(j + 1) /
                                                  static_cast<double>(interior_samples + 1);
            const double tc = std::min(t, P.nodes[n]);
            const Eigen::VectorXd uhat = interpolate_result(result, tc);
            const Eigen::VectorXd uref = ref(tc);
            out.e_h = std::max(out.e_h, (uref - uhat).norm());
            if (want_sigma) {
                const double s =
                    sigma(result.energy, uref, uhat) + sigma(result.energy, result.U[n - 1], uref);
                sigma_vals.push_back(std::max(s, 0.0));
                sigma_nodes.push_back(tc);
            }
        }
    }
    if (want_sigma) {
        Partition sp = make_partition(std::move(sigma_nodes));
        const double ga = gamma_fn(result.alpha);
        double sup = 0.0;
        for (std::size_t k = 1; k <= sp.N; ++k) {
            sup = std::max(sup, frac_integral_pc(sp, result.alpha, sigma_vals, sp.nodes[k]));
        }
        out.e_sigma = std::sqrt(2.0 / ga * sup);
    }
    return out;
}

}  // namespace fracflow
