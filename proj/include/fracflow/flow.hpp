#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <vector>

#include "fracflow/energy.hpp"
#include "fracflow/partition.hpp"

namespace fracflow {

/// Right-hand side f. PiecewiseConstant values are interpreted on the solve
/// partition and pass through averaging exactly.
struct Forcing {
    enum class Kind { Zero, Function, PiecewiseConstant };

    Kind kind = Kind::Zero;
    std::function<Eigen::VectorXd(double)> fn;
    std::vector<Eigen::VectorXd> values;

    static Forcing zero() { return Forcing{}; }
    static Forcing function(std::function<Eigen::VectorXd(double)> f) {
        Forcing out;
        out.kind = Kind::Function;
        out.fn = std::move(f);
        return out;
    }
    static Forcing piecewise_constant(std::vector<Eigen::VectorXd> vals) {
        Forcing out;
        out.kind = Kind::PiecewiseConstant;
        out.values = std::move(vals);
        return out;
    }
};

struct FlowProblem {
    double alpha = 0.5;
    Energy energy = Energy::quadratic(0.0);
    std::optional<Perturbation> perturbation;
    Forcing forcing;
    Eigen::VectorXd u0;
    int quadrature_points = 4;                  // q for F_n and Psi_n averages
    std::optional<Eigen::VectorXd> U0_override; // discrete start, defaults to u0
};

/// Discrete trajectory of the minimizing-movements scheme. prox_residuals are
/// normalized by (1 + ||r_n||); V holds the discrete Caputo values (D_P^a U)_n.
struct FlowResult {
    double alpha = 0.5;
    Partition partition;
    Energy energy = Energy::quadratic(0.0);
    std::optional<Perturbation> perturbation;
    Forcing forcing;
    int quadrature_points = 4;
    Eigen::VectorXd U0;
    std::vector<Eigen::VectorXd> U;  // U_1..U_N
    std::vector<Eigen::VectorXd> V;
    std::vector<Eigen::VectorXd> F;
    std::vector<double> prox_residuals;
    std::vector<double> phi_trace;   // Phi(U_n)
    double phi_u0 = 0.0;
    double wall_time_s = 0.0;
};

/// Interval averages F_n of the forcing by q-point Gauss-Legendre; exact for
/// polynomials of degree <= 2q-1 and an exact passthrough for declared
/// piecewise-constant forcings.
[[nodiscard]] std::vector<Eigen::VectorXd> average_forcing(const Forcing& f, const Partition& P,
                                                           int q);

/// Run the scheme over P: at each step solve
///   c_n U_n + dPhi(U_n) + Psi_n(U_n) ∋ F_n + c_n (U_0 + sum_{i<n} K_{ni} V_i)
/// with c_n = Gamma(a+1) tau_n^-a; history sums cost O(n) per step.
[[nodiscard]] FlowResult solve_flow(const FlowProblem& problem, const Partition& P,
                                    const ProxConfig& cfg = {});

/// Continuous interpolant of the result at t in [0, T].
[[nodiscard]] Eigen::VectorXd interpolate_result(const FlowResult& result, double t);

}  // namespace fracflow
