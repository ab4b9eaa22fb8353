#include <doctest.h>

#include <cmath>
#include <random>

#include "fracflow/caputo.hpp"
#include "fracflow/estimate.hpp"
#include "fracflow/flow.hpp"
#include "fracflow/special.hpp"
#include "test_util.hpp"

using namespace fracflow;
using fracflow::testing::scalar;

namespace {

FlowProblem scalar_problem(double alpha, Energy e, double u0) {
    FlowProblem p;
    p.alpha = alpha;
    p.energy = std::move(e);
    p.u0 = scalar(u0);
    return p;
}

// independent trajectory oracle: history through explicit K^-1 rows, each
// scalar inclusion solved by plain bisection
std::vector<double> powerp_bisection_oracle(double alpha, double lam, double p, double u0,
                                            const Partition& part) {
    CaputoKernel kern(part, alpha);
    kern.invert();
    std::vector<double> U(part.N + 1);
    U[0] = u0;
    for (std::size_t n = 1; n <= part.N; ++n) {
        double hist = kern.kinv_col0(n) * U[0];
        for (std::size_t i = 1; i < n; ++i) hist += kern.kinv(n, i) * U[i];
        const double c = kern.kinv(n, n);
        const double rhs = -hist;  // c w + lam |w|^{p-1} sgn w = -sum_{i<n} Kinv_{ni} U_i
        double lo = 0.0, hi = std::max(rhs / c, 1e-12);
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double g = c * mid + lam * std::pow(mid, p - 1.0) - rhs;
            if (g > 0.0) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        U[n] = 0.5 * (lo + hi);
    }
    return U;
}

}  // namespace

TEST_CASE("average_forcing") {
    const Partition p2 = uniform_partition(1.0, 2);
    auto Fz = average_forcing(Forcing::zero(), p2, 4);
    CHECK(Fz.size() == 2);

    auto f_id = Forcing::function([](double t) { return scalar(t); });
    auto F = average_forcing(f_id, p2, 4);
    CHECK(F[0][0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(F[1][0] == doctest::Approx(0.75).epsilon(1e-14));

    const Partition p1 = uniform_partition(1.0, 1);
    auto f_sq = Forcing::function([](double t) { return scalar(t * t); });
    CHECK(average_forcing(f_sq, p1, 2)[0][0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    auto pc = Forcing::piecewise_constant({scalar(2.0), scalar(-1.0)});
    auto Fpc = average_forcing(pc, p2, 4);
    CHECK(Fpc[0][0] == 2.0);
    CHECK(Fpc[1][0] == -1.0);
}

TEST_CASE("lambda = 0 flow stays constant") {
    const auto res = solve_flow(scalar_problem(0.5, Energy::quadratic(0.0), 0.1),
                                uniform_partition(1.0, 8));
    for (const auto& u : res.U) CHECK(u[0] == doctest::Approx(0.1).epsilon(1e-15));
    for (const auto& v : res.V) CHECK(std::fabs(v[0]) < 1e-14);
    for (double t : {0.1, 0.55, 0.9}) {
        CHECK(interpolate_result(res, t)[0] == doctest::Approx(0.1).epsilon(1e-14));
    }
}

TEST_CASE("flow matches the independent bisection oracle on the p-power energy") {
    const double alpha = 0.5, lam = 1.0, p = 1.5, u0 = 0.1;
    const Partition part = uniform_partition(1.0, 4);
    const auto oracle = powerp_bisection_oracle(alpha, lam, p, u0, part);
    const auto res = solve_flow(scalar_problem(alpha, Energy::power_p(lam, p), u0), part);
    for (std::size_t n = 1; n <= part.N; ++n) {
        CHECK(std::fabs(res.U[n - 1][0] - oracle[n]) < 1e-10);
    }
}

TEST_CASE("flow result satisfies the kernel identity V = D_P^a U") {
    std::mt19937 rng(71);
    const Partition part = fracflow::testing::random_partition(rng, 24);
    const auto res = solve_flow(scalar_problem(0.4, Energy::power_p(0.7, 1.6), 0.8), part);
    CaputoKernel kern(part, 0.4);
    kern.invert();
    const auto V = discrete_caputo(kern, res.U0, res.U);
    for (std::size_t n = 0; n < part.N; ++n) {
        CHECK(std::fabs(V[n][0] - res.V[n][0]) < 1e-10 * (1.0 + std::fabs(V[n][0])));
    }
}

TEST_CASE("prox residuals stay within tolerance") {
    const auto res = solve_flow(scalar_problem(0.3, Energy::entropy(1e-3), 0.5),
                                uniform_partition(1.0, 64));
    for (double r : res.prox_residuals) CHECK(r <= 1e-12);
}

TEST_CASE("linear flow approaches the Mittag-Leffler solution under refinement") {
    const double alpha = 0.5, lam = 1.0;
    const double exact = mittag_leffler(alpha, -lam);
    double prev_err = 0.0;
    for (std::size_t N : {64, 128, 256}) {
        const auto res = solve_flow(scalar_problem(alpha, Energy::quadratic(lam), 1.0),
                                    uniform_partition(1.0, N));
        const double err = std::fabs(res.U.back()[0] - exact);
        CHECK(err < 2e-3);
        if (prev_err > 0.0) CHECK(err < prev_err);
        prev_err = err;
    }
}

TEST_CASE("energy decays when f = 0") {
    for (auto cfg : {std::pair<Energy, double>{Energy::quadratic(1.0), 1.0},
                     std::pair<Energy, double>{Energy::power_p(1.0, 1.5), 0.1},
                     std::pair<Energy, double>{Energy::entropy(1e-3), 0.0},
                     std::pair<Energy, double>{Energy::circle(1e-3), 0.0}}) {
        const auto res =
            solve_flow(scalar_problem(0.5, cfg.first, cfg.second), uniform_partition(1.0, 40));
        for (double phi : res.phi_trace) CHECK(phi <= res.phi_u0 + 1e-14);
        // interpolant energy bounded by the nodal max
        const double phimax =
            std::max(res.phi_u0, *std::max_element(res.phi_trace.begin(), res.phi_trace.end()));
        for (double t : {0.03, 0.41, 0.77}) {
            CHECK(phi_value(res.energy, interpolate_result(res, t)) <= phimax + 1e-12);
        }
    }
}

TEST_CASE("discrete derivative is stable in the weighted norm under refinement") {
    const double alpha = 0.5;
    double prev = 0.0;
    for (std::size_t N : {32, 64}) {
        const auto res = solve_flow(scalar_problem(alpha, Energy::quadratic(1.0), 1.0),
                                    uniform_partition(1.0, N));
        std::vector<double> vnorm(res.V.size());
        for (std::size_t k = 0; k < res.V.size(); ++k) vnorm[k] = res.V[k][0];
        const double norm = lp_alpha_norm(res.partition, alpha, 2.0, vnorm, 4);
        if (prev > 0.0) {
            CHECK(norm <= 2.0 * prev);
            CHECK(prev <= 2.0 * norm);
        }
        prev = norm;
    }
}

TEST_CASE("two-partition consistency at rate >= alpha/2") {
    for (auto cfg : {std::pair<Energy, double>{Energy::quadratic(1.0), 1.0},
                     std::pair<Energy, double>{Energy::entropy(1e-3), 0.0}}) {
        const double alpha = 0.5;
        std::vector<double> gaps;
        std::vector<FlowResult> runs;
        for (std::size_t N : {16, 32, 64, 128}) {
            runs.push_back(
                solve_flow(scalar_problem(alpha, cfg.first, cfg.second), uniform_partition(1.0, N)));
        }
        for (std::size_t k = 0; k + 1 < runs.size(); ++k) {
            double gap = 0.0;
            for (int j = 1; j <= 200; ++j) {
                const double t = j / 200.0;
                gap = std::max(gap, std::fabs(interpolate_result(runs[k], t)[0] -
                                              interpolate_result(runs[k + 1], t)[0]));
            }
            gaps.push_back(gap);
        }
        for (std::size_t k = 0; k + 1 < gaps.size(); ++k) {
            const double order = std::log2(gaps[k] / gaps[k + 1]);
            CHECK(order >= alpha / 2.0 - 0.05);
        }
    }
}

TEST_CASE("perturbation route equals folding the linear term into the energy") {
    // D^a u + lam u = 0 written once through Phi and once through Psi
    const double alpha = 0.5, lam = 0.8;
    const Partition part = uniform_partition(1.0, 32);
    const auto direct = solve_flow(scalar_problem(alpha, Energy::quadratic(lam), 1.0), part);

    FlowProblem viaPsi = scalar_problem(alpha, Energy::quadratic(0.0), 1.0);
    Perturbation psi;
    psi.psi = [lam](double, const Eigen::VectorXd& w) { return (lam * w).eval(); };
    psi.lipschitz = lam;
    psi.time_dependent = false;
    viaPsi.perturbation = psi;
    const auto perturbed = solve_flow(viaPsi, part);

    for (std::size_t n = 0; n < part.N; ++n) {
        CHECK(std::fabs(direct.U[n][0] - perturbed.U[n][0]) < 1e-10);
    }
}

TEST_CASE("perturbation step condition is enforced") {
    FlowProblem p = scalar_problem(0.5, Energy::quadratic(0.0), 1.0);
    Perturbation psi;
    psi.psi = [](double, const Eigen::VectorXd& w) { return (10.0 * w).eval(); };
    psi.lipschitz = 10.0;
    psi.time_dependent = false;
    p.perturbation = psi;
    // L tau^a = 10 > Gamma(1.5) for tau = 1
    CHECK_THROWS_WITH_AS(static_cast<void>(solve_flow(p, uniform_partition(1.0, 1))),
                         doctest::Contains("StepConditionViolated"), FlowError);
    // fine steps satisfy the condition
    const auto ok = solve_flow(p, uniform_partition(1.0, 512));
    CHECK(ok.U.back()[0] > 0.0);
}

TEST_CASE("forcing drives the flow towards its average") {
    // D^a u = f with Phi = 0: U_n = u0 + (K F)_n, check against reconstruct
    const double alpha = 0.6;
    const Partition part = uniform_partition(2.0, 12);
    FlowProblem p = scalar_problem(alpha, Energy::quadratic(0.0), 0.3);
    p.forcing = Forcing::function([](double t) { return scalar(std::sin(t)); });
    const auto res = solve_flow(p, part);
    CaputoKernel kern(part, alpha);
    const auto rebuilt = reconstruct(kern, res.U0, res.F);
    for (std::size_t n = 0; n < part.N; ++n) {
        CHECK(res.U[n][0] == doctest::Approx(rebuilt[n][0]).epsilon(1e-12));
    }
}

TEST_CASE("U0 override is honored") {
    FlowProblem p = scalar_problem(0.5, Energy::quadratic(0.0), 1.0);
    p.U0_override = scalar(0.25);
    const auto res = solve_flow(p, uniform_partition(1.0, 4));
    CHECK(res.U0[0] == 0.25);
    CHECK(res.U.back()[0] == doctest::Approx(0.25));
}

TEST_CASE("interpolate_result hits nodes and rejects out-of-range times") {
    const auto res = solve_flow(scalar_problem(0.5, Energy::quadratic(1.0), 1.0),
                                uniform_partition(1.0, 10));
    const Partition& p = res.partition;
    for (std::size_t n = 1; n <= p.N; ++n) {
        CHECK(interpolate_result(res, p.nodes[n])[0] ==
              doctest::Approx(res.U[n - 1][0]).epsilon(1e-13));
    }
    CHECK(interpolate_result(res, 0.0)[0] == 1.0);
    CHECK_THROWS_WITH_AS(static_cast<void>(interpolate_result(res, 1.5)),
                         doctest::Contains("OutOfRange"), FlowError);
}
