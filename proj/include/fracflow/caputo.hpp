#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "fracflow/partition.hpp"

namespace fracflow {

/// Lower-triangular kernel matrix K of the deconvolution discretization,
/// K[n][i] = ((t_n - t_{i-1})^a - (t_n - t_i)^a) / Gamma(a+1) for 1 <= i <= n,
/// together with its (optional) explicit inverse and the derived column
/// Kinv[n][0] = -sum_j Kinv[n][j].
///
/// Rows are stored packed. The inverse is filled by invert(); after that the
/// object is immutable and shareable, except for the single-writer incremental
/// extension used by the adaptive solver (append_node / replace_last_node).
class CaputoKernel {
public:
    CaputoKernel(Partition partition, double alpha);

    /// Column-wise forward substitution, O(N^3/6). Fills Kinv and Kinv_col0.
    void invert();

    [[nodiscard]] bool inverted() const noexcept { return inverted_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] const Partition& partition() const noexcept { return partition_; }
    [[nodiscard]] std::size_t size() const noexcept { return partition_.N; }

    /// K entry, 1 <= i <= n <= N (zero above the diagonal).
    [[nodiscard]] double k(std::size_t n, std::size_t i) const;
    /// K^-1 entry, 1 <= i <= n <= N. Requires inverted().
    [[nodiscard]] double kinv(std::size_t n, std::size_t i) const;
    /// K^-1_{n0} = -sum_{j=1}^n K^-1_{nj}. Requires inverted().
    [[nodiscard]] double kinv_col0(std::size_t n) const;

    /// Extend the partition by one node t_next > T. Assembles the new K row
    /// and, when the kernel is inverted, the new K^-1 row (O(n^2)).
    void append_node(double t_next);
    /// Replace the last node (adaptive trial retry). Only the trailing row of
    /// K and K^-1 changes; earlier rows are untouched.
    void replace_last_node(double t_new);

    /// Diagnostics hook: overwrite one K^-1 entry (negative controls in the
    /// property suites). 1 <= i <= n.
    void override_kinv_entry(std::size_t n, std::size_t i, double value);

private:
    void assemble_row(std::size_t n);
    void invert_row(std::size_t n);

    Partition partition_;
    double alpha_;
    double gamma1a_;                 // Gamma(alpha + 1)
    std::vector<double> k_;          // packed rows, row n at offset (n-1)n/2
    std::vector<double> kinv_;
    std::vector<double> kinv_col0_;  // index n-1 holds K^-1_{n0}
    bool inverted_ = false;
};

/// V_n = sum_{i=1}^n K^-1_{ni} (U_i - U_0). Requires kernel.inverted().
[[nodiscard]] std::vector<Eigen::VectorXd> discrete_caputo(const CaputoKernel& kernel,
                                                           const Eigen::VectorXd& U0,
                                                           const std::vector<Eigen::VectorXd>& U);

/// U_n = U_0 + sum_{i<=n} K_{ni} V_i; exact triangular inverse of discrete_caputo.
[[nodiscard]] std::vector<Eigen::VectorXd> reconstruct(const CaputoKernel& kernel,
                                                       const Eigen::VectorXd& U0,
                                                       const std::vector<Eigen::VectorXd>& V);

/// Nonlocal interpolation basis phi_{P,i}(t), i in [0, N], t in [0, T].
/// Kronecker at the nodes, nonnegative, and a partition of unity.
[[nodiscard]] double basis_eval(const CaputoKernel& kernel, std::size_t i, double t);

/// Continuous interpolant W(t) = U_0 + (1/Gamma(a)) int_0^t (t-s)^(a-1) Vbar(s) ds
/// evaluated in closed form on the piecewise-constant Vbar = discrete Caputo
/// derivative of U. Equals sum_i phi_{P,i}(t) U_i and hits the nodes exactly.
[[nodiscard]] Eigen::VectorXd interpolant_eval(const CaputoKernel& kernel,
                                               const Eigen::VectorXd& U0,
                                               const std::vector<Eigen::VectorXd>& U, double t);

/// Same closed-form interpolant from already-known derivative values V;
/// needs no kernel inverse. Used by the flow solver and the estimators.
[[nodiscard]] Eigen::VectorXd pc_interpolant_eval(const Partition& P, double alpha,
                                                  const Eigen::VectorXd& U0,
                                                  const std::vector<Eigen::VectorXd>& V, double t);

/// Sign and monotonicity checks on K^-1 (diagonal > 0, strict sub-diagonal < 0,
/// column-0 and sub-diagonal columns strictly increasing in n). Returns a list
/// of violated relations with indices; empty on any valid partition.
struct KernelDiagnostics {
    std::vector<std::string> violations;
    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};
[[nodiscard]] KernelDiagnostics check_kernel_properties(const CaputoKernel& kernel);

}  // namespace fracflow
