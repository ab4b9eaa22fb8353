#pragma once

#include <Eigen/Core>
#include <vector>

#include "fracflow/partition.hpp"

namespace fracflow {

/// Gamma function on (0, 172) via a Lanczos approximation, |rel err| <= 1e-13.
[[nodiscard]] double gamma_fn(double x);

/// Tuning knobs for mittag_leffler. The switch between the power series and
/// the tail expansions is driven by s = |z|^(1/alpha): the series is used for
/// s <= series_cutoff, the optimally-truncated asymptotic expansion for
/// s >= asymptotic_cutoff, and a spectral-integral quadrature bridges the gap.
struct MittagLefflerParams {
    double alpha = 0.5;
    double series_cutoff = 14.0;
    double asymptotic_cutoff = 22.0;
    double tol = 1e-12;
};

/// E_alpha(z) = sum_k z^k / Gamma(alpha k + 1), alpha in (0,1], real z >= -50.
/// Absolute error <= 1e-10 on the supported range; E_alpha(0) = 1 exactly.
[[nodiscard]] double mittag_leffler(double alpha, double z);
[[nodiscard]] double mittag_leffler(const MittagLefflerParams& params, double z);

/// Exact value of int_0^t (t-s)^(alpha-1) g(s) ds for g piecewise constant on
/// P (g[k-1] is the value on (t_{k-1}, t_k]). No quadrature error beyond rounding.
[[nodiscard]] double frac_integral_pc(const Partition& P, double alpha,
                                      const std::vector<double>& g, double t);

/// Sampled sup_t ( int_0^t (t-s)^(alpha-1) ||g(s)||^p ds )^(1/p) for vector-valued
/// piecewise-constant g. The sup is taken over all partition nodes plus m-1
/// equispaced interior points per interval; the inner integral is exact.
[[nodiscard]] double lp_alpha_norm(const Partition& P, double alpha, double p,
                                   const std::vector<Eigen::VectorXd>& g, int m);

/// Scalar overload of lp_alpha_norm.
[[nodiscard]] double lp_alpha_norm(const Partition& P, double alpha, double p,
                                   const std::vector<double>& g, int m);

/// Nodes and weights of the q-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
[[nodiscard]] const GaussRule& gauss_legendre(int q);

}  // namespace fracflow
