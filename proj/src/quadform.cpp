#include "fracflow/quadform.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <future>

#include "fracflow/errors.hpp"
#include "fracflow/estimate.hpp"
#include "fracflow/special.hpp"

namespace fracflow {

Eigen::VectorXd quadform_eigen_solution(const Eigen::MatrixXd& A, const Eigen::VectorXd& u0,
                                        double alpha, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A);
    if (eig.info() != Eigen::Success) {
        throw FlowError(ErrorCode::IllPosed, "eigendecomposition failed");
    }
    Eigen::VectorXd coeffs = eig.eigenvectors().transpose() * u0;
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
        coeffs[i] *= mittag_leffler(alpha, -eig.eigenvalues()[i] * std::pow(t, alpha));
    }
    return eig.eigenvectors() * coeffs;
}

QuadFormReport run_quadform_rate(const QuadFormProblem& problem, double alpha,
                                 const std::vector<std::size_t>& ladder, int ref_refine,
                                 const ProxConfig& prox_cfg) {
    if (ladder.size() < 3) {
        throw FlowError(ErrorCode::ConfigError, "ladder needs at least 3 levels");
    }
    if (ref_refine < 2) {
        throw FlowError(ErrorCode::ConfigError, "ref_refine must be >= 2");
    }
    FlowProblem fp;
    fp.alpha = alpha;
    fp.energy = Energy::quadratic_form(problem.A);  // validates symmetry/PSD
    fp.forcing = problem.forcing;
    fp.u0 = problem.u0;

    const std::size_t n_max = *std::max_element(ladder.begin(), ladder.end());
    const std::size_t n_ref = n_max * static_cast<std::size_t>(ref_refine);

    // ladder levels and the reference run in parallel, results assembled in order
    std::vector<std::future<FlowResult>> runs;
    runs.reserve(ladder.size() + 1);
    for (std::size_t N : ladder) {
        runs.push_back(std::async(std::launch::async, [&, N] {
            return solve_flow(fp, uniform_partition(problem.T, N), prox_cfg);
        }));
    }
    runs.push_back(std::async(std::launch::async, [&] {
        return solve_flow(fp, uniform_partition(problem.T, n_ref), prox_cfg);
    }));

    std::vector<FlowResult> levels;
    levels.reserve(ladder.size());
    for (std::size_t k = 0; k < ladder.size(); ++k) levels.push_back(runs[k].get());
    const FlowResult ref_run = runs.back().get();

    QuadFormReport report;
    auto ref_fn = [&](double t) { return interpolate_result(ref_run, t); };
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const ErrorVsReference err = error_vs_reference(levels[k], ref_fn, 1, false);
        QuadFormRow row;
        row.tau = levels[k].partition.tau_max;
        row.e_h = err.e_h;
        row.rate = (k == 0) ? std::nan("")
                            : std::log2(report.rows[k - 1].e_h / std::max(err.e_h, 1e-300));
        report.rows.push_back(row);
    }

    // least-squares slope of log2(e_h) against log2(tau)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& row : report.rows) {
        const double x = std::log2(row.tau), y = std::log2(std::max(row.e_h, 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(report.rows.size());
    report.observed_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);

    if (problem.forcing.kind == Forcing::Kind::Zero && problem.A.rows() <= 16) {
        double worst = 0.0;
        const Partition& rp = ref_run.partition;
        const std::size_t stride = std::max<std::size_t>(1, rp.N / 64);
        for (std::size_t i = stride; i <= rp.N; i += stride) {
            const double t = rp.nodes[i];
            worst = std::max(worst, (quadform_eigen_solution(problem.A, problem.u0, alpha, t) -
                                     ref_run.U[i - 1])
                                        .norm());
        }
        report.eigen_crosscheck_max_diff = worst;
    }
    return report;
}

}  // namespace fracflow
