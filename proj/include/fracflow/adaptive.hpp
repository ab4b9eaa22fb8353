#pragma once

#include <cstddef>
#include <vector>

#include "fracflow/flow.hpp"

namespace fracflow {

/// Controller settings for estimator-driven stepping. A trial step is accepted
/// when (2 T^a / Gamma(a+1)) E~_n <= epsilon^2; rejected trials shrink tau,
/// and an accepted step whose criterion value is below slack * epsilon^2
/// grows the next trial.
struct AdaptiveConfig {
    double epsilon = 1e-4;
    double tau_init = 1e-2;
    double tau_min = 1e-12;
    double tau_max = 0.0;  // 0 means "no cap below T"
    double growth = 2.0;
    double shrink = 0.5;
    double slack = 0.25;
    std::size_t max_steps = 10'000'000;
};

struct StepRecord {
    double t = 0.0;          // accepted node
    double tau = 0.0;        // accepted step
    double tilde = 0.0;      // estimator value of the accepted step
    std::size_t rejections = 0;  // trials rejected before this acceptance
};

struct AdaptiveReport {
    std::vector<StepRecord> steps;
    std::size_t total_rejections = 0;
};

/// Estimator-driven variable-step solve over [0, T]. The returned partition is
/// the accepted node set ending exactly at T; identical inputs yield identical
/// partitions.
[[nodiscard]] std::pair<FlowResult, AdaptiveReport> adaptive_solve(const FlowProblem& problem,
                                                                   double T,
                                                                   const AdaptiveConfig& cfg,
                                                                   const ProxConfig& prox_cfg = {});

}  // namespace fracflow
