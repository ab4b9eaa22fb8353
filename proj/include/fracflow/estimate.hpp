#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "fracflow/flow.hpp"

namespace fracflow {

/// Sampled estimator data feeding the a posteriori bound.
struct EstimatorTrace {
    std::vector<double> tilde;                              // per-step indicators
    std::vector<std::pair<double, double>> pointwise_samples;
    double l1_alpha = 0.0;                                  // ||E_P||_{L^1_alpha} estimate
    double forcing_gap = 0.0;                               // ||f - Fbar||_{L^1_alpha} estimate
    double bound = 0.0;
};

/// Per-step indicator E~_n = <(D_P^a U)_n + Psi_n(U_n) - F_n, U_{n-1} - U_n>
/// + Phi(U_{n-1}) - Phi(U_n); the Psi term is present only for perturbed runs.
/// Nonnegative up to rounding by the subgradient inequality.
[[nodiscard]] std::vector<double> estimator_tilde(const FlowResult& result);

/// Pointwise estimator E_P(t) = <D_c^a Uhat(t) - Fbar(t), Uhat(t) - Ubar(t)>
/// + Phi(Uhat(t)) - Phi(Ubar(t)) (+ perturbation term), t in (0, T].
[[nodiscard]] double estimator_pointwise(const FlowResult& result, double t);

/// Pointwise estimator evaluated with interval n's data for t in
/// [t_{n-1}, t_n]; the left endpoint gives the right-limit value E~_n.
[[nodiscard]] double estimator_pointwise_in_interval(const FlowResult& result, std::size_t n,
                                                     double t);

/// Piecewise-constant upper envelope D_P: per interval, the max of the
/// pointwise estimator over m equispaced samples including both endpoints.
[[nodiscard]] std::vector<double> estimator_D(const FlowResult& result, int m);

struct BoundBreakdown {
    double u0_gap = 0.0;
    double l1_alpha_estimator = 0.0;  // ||E_P||_{L^1_alpha}
    double forcing_gap = 0.0;         // ||f - Fbar||_{L^1_alpha}
    double interp_gap = 0.0;          // ||Ubar - Uhat||_{L^1_alpha} (perturbed runs)
    double ml_factor = 1.0;           // E_alpha(2 L T^alpha) (perturbed runs)
    double bound = 0.0;
};

/// A posteriori bound
///   (u0_gap^2 + (2/Gamma(a)) ||E_P||)^(1/2) + (2/Gamma(a)) ||f - Fbar||,
/// with the Mittag-Leffler factors of the perturbed estimate when the run has
/// a perturbation. The weighted norms use an m-subsampled piecewise-constant
/// representation with trapezoid aggregation per sub-interval.
[[nodiscard]] BoundBreakdown aposteriori_bound(const FlowResult& result, double u0_gap, int m);

struct ErrorVsReference {
    double e_h = 0.0;
    std::optional<double> e_sigma;
};

/// E_H = max over sampled t (nodes plus `interior_samples` equispaced interior
/// points per interval) of ||ref(t) - Uhat(t)||. When want_sigma is set, also
/// the coercivity-weighted error E_sigma (differentiable energies only).
[[nodiscard]] ErrorVsReference error_vs_reference(
    const FlowResult& result, const std::function<Eigen::VectorXd(double)>& ref,
    int interior_samples, bool want_sigma = false);

}  // namespace fracflow
