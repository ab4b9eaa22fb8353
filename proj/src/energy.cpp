#include "fracflow/energy.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "fracflow/errors.hpp"
#include "fracflow/special.hpp"

namespace fracflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// scalar derivatives of the builtin 1-d pieces
double entropy_deriv(double lambda, double w) { return lambda * std::log(w); }

double circle_deriv(double lambda, double w) {
    if (w >= 1.0) return 0.0;
    const double q = 1.0 - w;
    const double s = std::sqrt(std::max(1.0 - q * q, 0.0));
    return -lambda * q / s;
}

double circle_deriv2(double lambda, double w) {
    if (w >= 1.0) return 0.0;
    const double q = 1.0 - w;
    const double s = std::sqrt(std::max(1.0 - q * q, 1e-300));
    return lambda * (1.0 / s + q * q / (s * s * s));
}

struct ScalarProblem {
    std::function<double(double)> g;       // residual, strictly increasing
    std::function<double(double)> dg;      // derivative, > 0 on the interior
    double lo, hi;                         // bracket with g(lo) <= 0 <= g(hi)
};

struct ScalarSolution {
    double w;
    double residual;
    int iterations;
};

// Safeguarded Newton on a strictly increasing g with a maintained bracket.
// Falls back to geometric bisection while the bracket spans many decades.
ScalarSolution solve_scalar(const ScalarProblem& prob, double abs_tol, int max_iter) {
    double lo = prob.lo, hi = prob.hi;
    double w = (lo > 0.0 && hi / std::max(lo, 1e-300) > 1e4) ? std::sqrt(lo * hi)
                                                             : 0.5 * (lo + hi);
    double g = prob.g(w);
    int it = 0;
    for (; it < max_iter; ++it) {
        if (std::fabs(g) <= abs_tol) break;
        if (g > 0.0) hi = w; else lo = w;
        const double dg = prob.dg(w);
        double next = (dg > 0.0 && std::isfinite(dg)) ? w - g / dg : w;
        if (!(next > lo) || !(next < hi) || !std::isfinite(next)) {
            next = (lo > 0.0 && hi / std::max(lo, 1e-300) > 1e4) ? std::sqrt(lo * hi)
                                                                 : 0.5 * (lo + hi);
        }
        if (next == w) break;  // bracket exhausted at rounding level
        w = next;
        g = prob.g(w);
    }
    if (std::fabs(g) > abs_tol && it >= max_iter) {
        throw FlowError(ErrorCode::NoConvergence, "scalar prox solve hit max_iter");
    }
    return {w, std::fabs(g), it};
}

}  // namespace

struct Energy::FormCache {
    std::mutex mtx;
    std::map<double, Eigen::LLT<Eigen::MatrixXd>> llt;
};

Energy Energy::quadratic(double lambda) {
    if (lambda < 0.0) throw FlowError(ErrorCode::BadOrder, "quadratic needs lambda >= 0");
    Energy e;
    e.kind_ = EnergyKind::Quadratic;
    e.lambda_ = lambda;
    return e;
}

Energy Energy::quadratic_form(Eigen::MatrixXd A) {
    if (A.rows() != A.cols()) {
        throw FlowError(ErrorCode::DimensionMismatch, "quadratic_form needs a square matrix");
    }
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + A.cwiseAbs().maxCoeff())) {
        throw FlowError(ErrorCode::IllPosed, "quadratic_form needs a symmetric matrix");
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
    if (ldlt.info() != Eigen::Success ||
        ldlt.vectorD().minCoeff() < -1e-10 * (1.0 + A.cwiseAbs().maxCoeff())) {
        throw FlowError(ErrorCode::IllPosed, "quadratic_form needs a PSD matrix");
    }
    Energy e;
    e.kind_ = EnergyKind::QuadraticForm;
    e.A_ = std::move(A);
    e.form_cache_ = std::make_shared<FormCache>();
    return e;
}

Energy Energy::power_p(double lambda, double p) {
    if (lambda < 0.0 || !(p > 1.0)) {
        throw FlowError(ErrorCode::BadOrder, "power_p needs lambda >= 0 and p > 1");
    }
    Energy e;
    e.kind_ = EnergyKind::PowerP;
    e.lambda_ = lambda;
    e.p_ = p;
    return e;
}

Energy Energy::entropy(double lambda) {
    if (lambda < 0.0) throw FlowError(ErrorCode::BadOrder, "entropy needs lambda >= 0");
    Energy e;
    e.kind_ = EnergyKind::Entropy;
    e.lambda_ = lambda;
    return e;
}

Energy Energy::circle(double lambda) {
    if (lambda < 0.0) throw FlowError(ErrorCode::BadOrder, "circle needs lambda >= 0");
    Energy e;
    e.kind_ = EnergyKind::Circle;
    e.lambda_ = lambda;
    return e;
}

Energy Energy::custom(ValueFn value, ProxFn prox, GradFn grad) {
    if (!value || !prox) {
        throw FlowError(ErrorCode::IllPosed, "custom energy needs value and prox callables");
    }
    Energy e;
    e.kind_ = EnergyKind::Custom;
    e.value_fn_ = std::move(value);
    e.prox_fn_ = std::move(prox);
    e.grad_fn_ = std::move(grad);
    return e;
}

double Energy::value(const Eigen::VectorXd& w) const {
    switch (kind_) {
        case EnergyKind::Quadratic:
            return 0.5 * lambda_ * w.squaredNorm();
        case EnergyKind::QuadraticForm:
            if (w.size() != A_.rows()) {
                throw FlowError(ErrorCode::DimensionMismatch, "state/matrix dimension mismatch");
            }
            return 0.5 * w.dot(A_ * w);
        case EnergyKind::PowerP:
            return lambda_ / p_ * std::pow(w.norm(), p_);
        case EnergyKind::Entropy: {
            double acc = 0.0;
            for (Eigen::Index i = 0; i < w.size(); ++i) {
                const double x = w[i];
                if (x < 0.0) return kInf;
                if (x > 0.0) acc += lambda_ * (x * std::log(x) - x);
            }
            return acc;
        }
        case EnergyKind::Circle: {
            double acc = 0.0;
            for (Eigen::Index i = 0; i < w.size(); ++i) {
                const double x = w[i];
                if (x < 0.0) return kInf;
                const double q = std::max(1.0 - x, 0.0);
                acc -= lambda_ * std::sqrt(std::max(1.0 - q * q, 0.0));
            }
            return acc;
        }
        case EnergyKind::Custom:
            return value_fn_(w);
    }
    return kInf;
}

bool Energy::differentiable_at(const Eigen::VectorXd& w) const {
    switch (kind_) {
        case EnergyKind::Quadratic:
        case EnergyKind::QuadraticForm:
        case EnergyKind::PowerP:
            return true;
        case EnergyKind::Entropy:
        case EnergyKind::Circle:
            return (w.array() > 0.0).all();
        case EnergyKind::Custom:
            return static_cast<bool>(grad_fn_);
    }
    return false;
}

Eigen::VectorXd Energy::gradient(const Eigen::VectorXd& w) const {
    if (!differentiable_at(w)) {
        throw FlowError(ErrorCode::NotDifferentiable, "gradient undefined at this point");
    }
    switch (kind_) {
        case EnergyKind::Quadratic:
            return lambda_ * w;
        case EnergyKind::QuadraticForm:
            return A_ * w;
        case EnergyKind::PowerP: {
            const double nw = w.norm();
            if (nw == 0.0) return Eigen::VectorXd::Zero(w.size());
            return lambda_ * std::pow(nw, p_ - 2.0) * w;
        }
        case EnergyKind::Entropy: {
            Eigen::VectorXd g(w.size());
            for (Eigen::Index i = 0; i < w.size(); ++i) g[i] = entropy_deriv(lambda_, w[i]);
            return g;
        }
        case EnergyKind::Circle: {
            Eigen::VectorXd g(w.size());
            for (Eigen::Index i = 0; i < w.size(); ++i) g[i] = circle_deriv(lambda_, w[i]);
            return g;
        }
        case EnergyKind::Custom:
            return grad_fn_(w);
    }
    throw FlowError(ErrorCode::NotDifferentiable, "unreachable");
}

ProxResult Energy::prox(double c, const Eigen::VectorXd& r, const PsiMap* psi,
                        double psi_lipschitz, const ProxConfig& cfg) const {
    if (!(c > 0.0)) throw FlowError(ErrorCode::IllPosed, "prox needs c > 0");
    if (psi && !(psi_lipschitz < c)) {
        throw FlowError(ErrorCode::IllPosed, "perturbation Lipschitz constant must be < c");
    }
    const double tol = cfg.resolved_tol(r.size());
    const double abs_tol = tol * (1.0 + r.norm());

    // scalar path: fold Phi' and psi into one monotone residual
    const bool scalar = (r.size() == 1) && kind_ != EnergyKind::Custom;
    if (scalar) {
        const double rv = r[0];
        auto psi_val = [&](double w) {
            if (!psi) return 0.0;
            Eigen::VectorXd wv = Eigen::VectorXd::Constant(1, w);
            return (*psi)(wv)[0];
        };
        // Newton slope uses c + Phi''; the psi contribution is covered by the bracket
        ScalarProblem prob;
        switch (kind_) {
            case EnergyKind::Quadratic:
            case EnergyKind::QuadraticForm: {
                const double lam = (kind_ == EnergyKind::Quadratic) ? lambda_ : A_(0, 0);
                if (!psi) {
                    Eigen::VectorXd w = Eigen::VectorXd::Constant(1, rv / (c + lam));
                    const double res = std::fabs((c + lam) * w[0] - rv) / (1.0 + std::fabs(rv));
                    return {w, res, 0};
                }
                prob.g = [=](double w) { return c * w + lam * w + psi_val(w) - rv; };
                prob.dg = [=](double w) { (void)w; return c + lam; };
                const double span = (std::fabs(rv) + 1.0) / (c + lam - psi_lipschitz) + 1.0;
                prob.lo = -span;
                prob.hi = span;
                break;
            }
            case EnergyKind::PowerP: {
                const double lam = lambda_, p = p_;
                prob.g = [=](double w) {
                    const double grad =
                        (w == 0.0) ? 0.0 : lam * std::pow(std::fabs(w), p - 2.0) * w;
                    return c * w + grad + psi_val(w) - rv;
                };
                prob.dg = [=](double w) {
                    return c + ((w == 0.0) ? 0.0 : lam * (p - 1.0) * std::pow(std::fabs(w), p - 2.0));
                };
                const double span = (std::fabs(rv) + 1.0) / (c - psi_lipschitz) + 1.0;
                prob.lo = -span;
                prob.hi = span;
                break;
            }
            case EnergyKind::Entropy: {
                const double lam = lambda_;
                prob.g = [=](double w) { return c * w + entropy_deriv(lam, w) + psi_val(w) - rv; };
                prob.dg = [=](double w) { return c + lam / w; };
                prob.lo = cfg.init_floor;
                prob.hi = std::max(1.0, (std::fabs(rv) + 1.0) / (c - psi_lipschitz)) + 1.0;
                break;
            }
            case EnergyKind::Circle: {
                const double lam = lambda_;
                prob.g = [=](double w) { return c * w + circle_deriv(lam, w) + psi_val(w) - rv; };
                prob.dg = [=](double w) { return c + circle_deriv2(lam, w); };
                prob.lo = cfg.init_floor;
                prob.hi = std::max(1.0, (std::fabs(rv) + 1.0) / (c - psi_lipschitz)) + 1.0;
                break;
            }
            default:
                throw FlowError(ErrorCode::IllPosed, "unreachable");
        }
        // widen until the root is bracketed (psi can shift the residual)
        for (int k = 0; k < 200 && prob.g(prob.hi) < 0.0; ++k) prob.hi *= 2.0;
        if (kind_ == EnergyKind::Quadratic || kind_ == EnergyKind::QuadraticForm ||
            kind_ == EnergyKind::PowerP) {
            for (int k = 0; k < 200 && prob.g(prob.lo) > 0.0; ++k) prob.lo *= 2.0;
        }
        const ScalarSolution sol = solve_scalar(prob, abs_tol, cfg.max_iter);
        return {Eigen::VectorXd::Constant(1, sol.w), sol.residual / (1.0 + std::fabs(rv)),
                sol.iterations};
    }

    // vector path without perturbation
    auto plain = [&](const Eigen::VectorXd& rhs) -> Eigen::VectorXd {
        switch (kind_) {
            case EnergyKind::Quadratic:
                return rhs / (c + lambda_);
            case EnergyKind::QuadraticForm: {
                if (rhs.size() != A_.rows()) {
                    throw FlowError(ErrorCode::DimensionMismatch, "state/matrix dimension mismatch");
                }
                std::lock_guard<std::mutex> lock(form_cache_->mtx);
                auto it = form_cache_->llt.find(c);
                if (it == form_cache_->llt.end()) {
                    Eigen::MatrixXd M = A_;
                    M.diagonal().array() += c;
                    it = form_cache_->llt.emplace(c, Eigen::LLT<Eigen::MatrixXd>(M)).first;
                }
                return it->second.solve(rhs);
            }
            case EnergyKind::PowerP: {
                const double nr = rhs.norm();
                if (nr == 0.0) return Eigen::VectorXd::Zero(rhs.size());
                ScalarProblem prob;
                const double lam = lambda_, p = p_;
                prob.g = [=](double th) { return c * th + lam * std::pow(th, p - 1.0) - nr; };
                prob.dg = [=](double th) { return c + lam * (p - 1.0) * std::pow(th, p - 2.0); };
                prob.lo = 0.0;
                prob.hi = nr / c;
                const ScalarSolution sol = solve_scalar(prob, tol * (1.0 + nr), cfg.max_iter);
                return (sol.w / nr) * rhs;
            }
            case EnergyKind::Entropy:
            case EnergyKind::Circle: {
                Eigen::VectorXd w(rhs.size());
                for (Eigen::Index i = 0; i < rhs.size(); ++i) {
                    Eigen::VectorXd ri = Eigen::VectorXd::Constant(1, rhs[i]);
                    w[i] = prox(c, ri, nullptr, 0.0, cfg).w[0];
                }
                return w;
            }
            case EnergyKind::Custom:
                return prox_fn_(c, rhs);
        }
        throw FlowError(ErrorCode::IllPosed, "unreachable");
    };

    auto residual_of = [&](const Eigen::VectorXd& w) -> double {
        if (!differentiable_at(w)) return 0.0;  // boundary solutions are checked by the solver
        Eigen::VectorXd res = c * w + gradient(w) - r;
        if (psi) res += (*psi)(w);
        return res.norm() / (1.0 + r.norm());
    };

    if (!psi) {
        Eigen::VectorXd w = plain(r);
        return {w, residual_of(w), 0};
    }

    // damped fixed point w <- prox_plain(c, r - psi(w)); contraction rate L/c < 1
    Eigen::VectorXd w = plain(r);
    int it = 0;
    for (; it < cfg.max_iter; ++it) {
        Eigen::VectorXd next = plain(r - (*psi)(w));
        const double delta = (next - w).norm();
        w = std::move(next);
        if (delta * psi_lipschitz / (c - psi_lipschitz) <= abs_tol / c) break;
    }
    if (it >= cfg.max_iter) {
        throw FlowError(ErrorCode::NoConvergence, "perturbed prox fixed point hit max_iter");
    }
    return {w, residual_of(w), it};
}

double phi_value(const Energy& E, const Eigen::VectorXd& w) { return E.value(w); }

ProxResult prox(const Energy& E, double c, const Eigen::VectorXd& r,
                const Energy::PsiMap* psi_avg, double psi_lipschitz, const ProxConfig& cfg) {
    return E.prox(c, r, psi_avg, psi_lipschitz, cfg);
}

double sigma(const Energy& E, const Eigen::VectorXd& w1, const Eigen::VectorXd& w2) {
    if (!E.differentiable_at(w1)) {
        throw FlowError(ErrorCode::NotDifferentiable, "sigma needs Phi differentiable at w1");
    }
    const double v2 = E.value(w2);
    const double v1 = E.value(w1);
    return v2 - v1 - E.gradient(w1).dot(w2 - w1);
}

Eigen::VectorXd perturbation_avg(const Perturbation& psi, std::size_t n, const Partition& P,
                                 const Eigen::VectorXd& w, int q) {
    if (n < 1 || n > P.N) throw FlowError(ErrorCode::BadIndex, "interval index out of range");
    if (q < 1) throw FlowError(ErrorCode::BadExponent, "q must be >= 1");
    if (!psi.time_dependent) {
        return psi.psi(P.nodes[n - 1], w);
    }
    const GaussRule& rule = gauss_legendre(q);
    const double a = P.nodes[n - 1], b = P.nodes[n];
    Eigen::VectorXd acc;
    for (int j = 0; j < q; ++j) {
        const double t = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[j];
        Eigen::VectorXd v = psi.psi(t, w);
        if (j == 0) {
            acc = rule.weights[j] * v;
        } else {
            acc += rule.weights[j] * v;
        }
    }
    return 0.5 * acc;  // interval average: (1/(b-a)) * (b-a)/2 * sum w_j f_j
}

}  // namespace fracflow
