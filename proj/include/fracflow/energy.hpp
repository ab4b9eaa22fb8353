#pragma once

#include <Eigen/Core>
#include <functional>
#include <memory>
#include <optional>

#include "fracflow/partition.hpp"

namespace fracflow {

enum class EnergyKind { Quadratic, QuadraticForm, PowerP, Entropy, Circle, Custom };

/// Prox solver settings. When tol == 0 the default resolves by state
/// dimension: 1e-14 for scalars, 1e-12 for vectors. Residuals are measured
/// relative to (1 + ||r||).
struct ProxConfig {
    double tol = 0.0;
    int max_iter = 100;
    double init_floor = 1e-300;  // bracket start at domain boundaries

    [[nodiscard]] double resolved_tol(Eigen::Index dim) const {
        if (tol > 0.0) return tol;
        return dim == 1 ? 1e-14 : 1e-12;
    }
};

struct ProxResult {
    Eigen::VectorXd w;
    double residual = 0.0;  // ||c w + grad + psi - r|| / (1 + ||r||)
    int iterations = 0;
};

/// Convex l.s.c. energy Phi. Builtin kinds:
///   Quadratic(l):      l |w|^2 / 2
///   QuadraticForm(A):  w . A w / 2, A symmetric PSD
///   PowerP(l, p):      l |w|^p / p, p > 1
///   Entropy(l):        l (w ln w - w) componentwise on [0, inf), Phi(0) = 0
///   Circle(l):         -l sqrt(1 - (1-w)_+^2) componentwise on [0, inf)
/// Custom wraps user value/prox (and optionally gradient) callables.
class Energy {
public:
    using ValueFn = std::function<double(const Eigen::VectorXd&)>;
    using ProxFn = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;
    using GradFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
    using PsiMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

    static Energy quadratic(double lambda);
    static Energy quadratic_form(Eigen::MatrixXd A);
    static Energy power_p(double lambda, double p);
    static Energy entropy(double lambda);
    static Energy circle(double lambda);
    static Energy custom(ValueFn value, ProxFn prox, GradFn grad = nullptr);

    [[nodiscard]] EnergyKind kind() const noexcept { return kind_; }
    [[nodiscard]] double lambda() const noexcept { return lambda_; }
    [[nodiscard]] double power() const noexcept { return p_; }
    [[nodiscard]] const Eigen::MatrixXd& matrix() const { return A_; }

    /// Phi(w); +infinity outside the effective domain.
    [[nodiscard]] double value(const Eigen::VectorXd& w) const;

    [[nodiscard]] bool differentiable_at(const Eigen::VectorXd& w) const;
    /// Gradient of Phi at an interior point; throws NotDifferentiable otherwise.
    [[nodiscard]] Eigen::VectorXd gradient(const Eigen::VectorXd& w) const;

    /// Solve c w + dPhi(w) + psi(w) ∋ r, c > 0. psi (optional) must be
    /// Lipschitz with constant psi_lipschitz < c.
    [[nodiscard]] ProxResult prox(double c, const Eigen::VectorXd& r,
                                  const PsiMap* psi, double psi_lipschitz,
                                  const ProxConfig& cfg) const;

private:
    Energy() = default;

    EnergyKind kind_ = EnergyKind::Quadratic;
    double lambda_ = 0.0;
    double p_ = 2.0;
    Eigen::MatrixXd A_;
    ValueFn value_fn_;
    ProxFn prox_fn_;
    GradFn grad_fn_;

    // factorization cache for (c I + A), keyed by c
    struct FormCache;
    std::shared_ptr<FormCache> form_cache_;
};

/// Lipschitz perturbation Psi(t, w).
struct Perturbation {
    std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> psi;
    double lipschitz = 0.0;
    bool time_dependent = true;
};

/// Phi(w); +infinity outside the domain.
[[nodiscard]] double phi_value(const Energy& E, const Eigen::VectorXd& w);

/// Solve c w + dPhi(w) + psi_avg(w) ∋ r. psi_avg is an already time-averaged
/// map (see perturbation_avg). Throws IllPosed when psi_lipschitz >= c and
/// NoConvergence when the iteration budget runs out.
[[nodiscard]] ProxResult prox(const Energy& E, double c, const Eigen::VectorXd& r,
                              const Energy::PsiMap* psi_avg = nullptr,
                              double psi_lipschitz = 0.0, const ProxConfig& cfg = {});

/// Coercivity modulus sigma(w1; w2) = Phi(w2) - Phi(w1) - <grad Phi(w1), w2 - w1>.
[[nodiscard]] double sigma(const Energy& E, const Eigen::VectorXd& w1,
                           const Eigen::VectorXd& w2);

/// Interval average of Psi(., w) over (t_{n-1}, t_n] by q-point Gauss-Legendre;
/// exact passthrough when Psi does not depend on time.
[[nodiscard]] Eigen::VectorXd perturbation_avg(const Perturbation& psi, std::size_t n,
                                               const Partition& P, const Eigen::VectorXd& w,
                                               int q);

}  // namespace fracflow
