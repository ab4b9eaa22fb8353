#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "fracflow/flow.hpp"

namespace fracflow {

/// Finite-dimensional quadratic-form flow D^a u + A u = f with A symmetric PSD.
struct QuadFormProblem {
    Eigen::MatrixXd A;
    Eigen::VectorXd u0;
    Forcing forcing;
    double T = 1.0;
};

struct QuadFormRow {
    double tau = 0.0;
    double e_h = 0.0;
    double rate = 0.0;  // NaN on the first row
};

struct QuadFormReport {
    std::vector<QuadFormRow> rows;
    double observed_order = 0.0;                     // least-squares slope in log2
    std::optional<double> eigen_crosscheck_max_diff; // ref vs eigen-expansion, f = 0 and d <= 16
};

/// Solve on a uniform ladder, measure E_H against a self-reference refined by
/// ref_refine, and fit the observed order. For f = 0 and d <= 16 the reference
/// is cross-checked against the per-mode Mittag-Leffler eigen-expansion.
[[nodiscard]] QuadFormReport run_quadform_rate(const QuadFormProblem& problem, double alpha,
                                               const std::vector<std::size_t>& ladder,
                                               int ref_refine = 4,
                                               const ProxConfig& prox_cfg = {});

/// Exact solution of D^a u + A u = 0 via the eigen-expansion
/// u(t) = Q diag(E_a(-mu_i t^a)) Q^T u0. Requires symmetric PSD A.
[[nodiscard]] Eigen::VectorXd quadform_eigen_solution(const Eigen::MatrixXd& A,
                                                      const Eigen::VectorXd& u0, double alpha,
                                                      double t);

}  // namespace fracflow
