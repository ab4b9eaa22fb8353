#include "fracflow/caputo.hpp"

#include <cmath>

#include "fracflow/special.hpp"

namespace fracflow {

namespace {

inline std::size_t row_offset(std::size_t n) { return (n - 1) * n / 2; }

}  // namespace

CaputoKernel::CaputoKernel(Partition partition, double alpha)
    : partition_(std::move(partition)), alpha_(alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw FlowError(ErrorCode::BadOrder, "alpha must lie in (0, 1)");
    }
    gamma1a_ = gamma_fn(alpha + 1.0);
    const std::size_t N = partition_.N;
    k_.resize(row_offset(N + 1));
    for (std::size_t n = 1; n <= N; ++n) assemble_row(n);
}

void CaputoKernel::assemble_row(std::size_t n) {
    const double tn = partition_.nodes[n];
    double* row = k_.data() + row_offset(n);
    double right = std::pow(tn - partition_.nodes[0], alpha_);
    for (std::size_t i = 1; i <= n; ++i) {
        const double next = (i == n) ? 0.0 : std::pow(tn - partition_.nodes[i], alpha_);
        row[i - 1] = (right - next) / gamma1a_;
        right = next;
    }
}

void CaputoKernel::invert() {
    const std::size_t N = partition_.N;
    kinv_.assign(row_offset(N + 1), 0.0);
    kinv_col0_.assign(N, 0.0);
    // column-wise forward substitution on K x = e_j
    for (std::size_t j = 1; j <= N; ++j) {
        kinv_[row_offset(j) + (j - 1)] = 1.0 / k_[row_offset(j) + (j - 1)];
        for (std::size_t i = j + 1; i <= N; ++i) {
            const double* krow = k_.data() + row_offset(i);
            double acc = 0.0;
            for (std::size_t m = j; m < i; ++m) {
                acc += krow[m - 1] * kinv_[row_offset(m) + (j - 1)];
            }
            kinv_[row_offset(i) + (j - 1)] = -acc / krow[i - 1];
        }
    }
    for (std::size_t n = 1; n <= N; ++n) {
        long double acc = 0.0L;
        const double* row = kinv_.data() + row_offset(n);
        for (std::size_t j = 0; j < n; ++j) acc += row[j];
        kinv_col0_[n - 1] = static_cast<double>(-acc);
    }
    inverted_ = true;
}

void CaputoKernel::invert_row(std::size_t n) {
    // row n of K^-1 from rows 1..n-1: K^-1_{nn} = 1/K_{nn} and, for i < n,
    // K^-1_{ni} = -(sum_{m=i}^{n-1} K_{nm} K^-1_{mi}) / K_{nn}
    const double* krow = k_.data() + row_offset(n);
    double* irow = kinv_.data() + row_offset(n);
    const double diag = 1.0 / krow[n - 1];
    irow[n - 1] = diag;
    for (std::size_t i = n; i-- > 1;) {
        double acc = 0.0;
        for (std::size_t m = i; m < n; ++m) {
            acc += krow[m - 1] * kinv_[row_offset(m) + (i - 1)];
        }
        irow[i - 1] = -acc * diag;
    }
    long double acc = 0.0L;
    for (std::size_t j = 0; j < n; ++j) acc += irow[j];
    kinv_col0_[n - 1] = static_cast<double>(-acc);
}

double CaputoKernel::k(std::size_t n, std::size_t i) const {
    if (n < 1 || n > partition_.N || i < 1) {
        throw FlowError(ErrorCode::BadIndex, "kernel index out of range");
    }
    if (i > n) return 0.0;
    return k_[row_offset(n) + (i - 1)];
}

double CaputoKernel::kinv(std::size_t n, std::size_t i) const {
    if (!inverted_) throw FlowError(ErrorCode::BadIndex, "kernel not inverted");
    if (n < 1 || n > partition_.N || i < 1) {
        throw FlowError(ErrorCode::BadIndex, "kernel index out of range");
    }
    if (i > n) return 0.0;
    return kinv_[row_offset(n) + (i - 1)];
}

double CaputoKernel::kinv_col0(std::size_t n) const {
    if (!inverted_) throw FlowError(ErrorCode::BadIndex, "kernel not inverted");
    if (n < 1 || n > partition_.N) {
        throw FlowError(ErrorCode::BadIndex, "kernel index out of range");
    }
    return kinv_col0_[n - 1];
}

void CaputoKernel::append_node(double t_next) {
    if (!(t_next > partition_.T)) {
        throw FlowError(ErrorCode::NonMonotone, "appended node must exceed T");
    }
    std::vector<double> nodes = partition_.nodes;
    nodes.push_back(t_next);
    partition_ = make_partition(std::move(nodes));
    const std::size_t n = partition_.N;
    k_.resize(row_offset(n + 1));
    assemble_row(n);
    if (inverted_) {
        kinv_.resize(row_offset(n + 1));
        kinv_col0_.resize(n);
        invert_row(n);
    }
}

void CaputoKernel::replace_last_node(double t_new) {
    const std::size_t n = partition_.N;
    if (n < 1 || !(t_new > partition_.nodes[n - 1])) {
        throw FlowError(ErrorCode::NonMonotone, "replacement node must exceed t_{N-1}");
    }
    std::vector<double> nodes = partition_.nodes;
    nodes.back() = t_new;
    partition_ = make_partition(std::move(nodes));
    assemble_row(n);
    if (inverted_) invert_row(n);
}

void CaputoKernel::override_kinv_entry(std::size_t n, std::size_t i, double value) {
    if (!inverted_ || n < 1 || n > partition_.N || i < 1 || i > n) {
        throw FlowError(ErrorCode::BadIndex, "bad override target");
    }
    kinv_[row_offset(n) + (i - 1)] = value;
}

std::vector<Eigen::VectorXd> discrete_caputo(const CaputoKernel& kernel,
                                             const Eigen::VectorXd& U0,
                                             const std::vector<Eigen::VectorXd>& U) {
    if (!kernel.inverted()) {
        throw FlowError(ErrorCode::BadIndex, "discrete_caputo requires an inverted kernel");
    }
    const std::size_t N = kernel.size();
    if (U.size() != N) {
        throw FlowError(ErrorCode::DimensionMismatch, "U must have N states");
    }
    for (const auto& u : U) {
        if (u.size() != U0.size()) {
            throw FlowError(ErrorCode::DimensionMismatch, "inconsistent state dimension");
        }
    }
    std::vector<Eigen::VectorXd> V(N);
    for (std::size_t n = 1; n <= N; ++n) {
        Eigen::VectorXd acc = kernel.kinv_col0(n) * U0;
        for (std::size_t i = 1; i <= n; ++i) {
            acc += kernel.kinv(n, i) * U[i - 1];
        }
        V[n - 1] = std::move(acc);
    }
    return V;
}

std::vector<Eigen::VectorXd> reconstruct(const CaputoKernel& kernel,
                                         const Eigen::VectorXd& U0,
                                         const std::vector<Eigen::VectorXd>& V) {
    const std::size_t N = kernel.size();
    if (V.size() != N) {
        throw FlowError(ErrorCode::DimensionMismatch, "V must have N states");
    }
    for (const auto& v : V) {
        if (v.size() != U0.size()) {
            throw FlowError(ErrorCode::DimensionMismatch, "inconsistent state dimension");
        }
    }
    std::vector<Eigen::VectorXd> U(N);
    for (std::size_t n = 1; n <= N; ++n) {
        Eigen::VectorXd acc = U0;
        for (std::size_t i = 1; i <= n; ++i) {
            acc += kernel.k(n, i) * V[i - 1];
        }
        U[n - 1] = std::move(acc);
    }
    return U;
}

double basis_eval(const CaputoKernel& kernel, std::size_t i, double t) {
    const Partition& P = kernel.partition();
    if (i > P.N) {
        throw FlowError(ErrorCode::BadIndex, "basis index out of range");
    }
    if (t < 0.0 || t > P.T) {
        throw FlowError(ErrorCode::OutOfRange, "t outside [0, T]");
    }
    if (!kernel.inverted()) {
        throw FlowError(ErrorCode::BadIndex, "basis_eval requires an inverted kernel");
    }
    if (t == 0.0) return i == 0 ? 1.0 : 0.0;
    const std::size_t n = P.locate(t).n;
    if (i > n) return 0.0;
    const double alpha = kernel.alpha();
    const double g1a = gamma_fn(alpha + 1.0);
    auto kinv_at = [&](std::size_t row) {
        return i == 0 ? kernel.kinv_col0(row) : kernel.kinv(row, i);
    };
    // long double accumulation keeps partition-of-unity residuals near eps
    long double acc = (i == 0) ? 1.0L : 0.0L;
    const std::size_t j0 = std::max<std::size_t>(i, 1);
    double right = std::pow(t - P.nodes[j0 - 1], alpha);
    for (std::size_t j = j0; j < n; ++j) {
        const double next = std::pow(t - P.nodes[j], alpha);
        acc += static_cast<long double>((right - next) / g1a) * kinv_at(j);
        right = next;
    }
    acc += static_cast<long double>(std::pow(t - P.nodes[n - 1], alpha) / g1a) * kinv_at(n);
    return static_cast<double>(acc);
}

Eigen::VectorXd pc_interpolant_eval(const Partition& P, double alpha,
                                    const Eigen::VectorXd& U0,
                                    const std::vector<Eigen::VectorXd>& V, double t) {
    if (t < 0.0 || t > P.T) {
        throw FlowError(ErrorCode::OutOfRange, "t outside [0, T]");
    }
    if (V.size() != P.N) {
        throw FlowError(ErrorCode::DimensionMismatch, "V must have N states");
    }
    if (t == 0.0) return U0;
    const std::size_t n = P.locate(t).n;
    const double g1a = gamma_fn(alpha + 1.0);
    Eigen::VectorXd acc = U0;
    double right = std::pow(t - P.nodes[0], alpha);
    for (std::size_t j = 1; j < n; ++j) {
        const double next = std::pow(t - P.nodes[j], alpha);
        acc += (right - next) / g1a * V[j - 1];
        right = next;
    }
    acc += std::pow(t - P.nodes[n - 1], alpha) / g1a * V[n - 1];
    return acc;
}

Eigen::VectorXd interpolant_eval(const CaputoKernel& kernel, const Eigen::VectorXd& U0,
                                 const std::vector<Eigen::VectorXd>& U, double t) {
    const std::vector<Eigen::VectorXd> V = discrete_caputo(kernel, U0, U);
    return pc_interpolant_eval(kernel.partition(), kernel.alpha(), U0, V, t);
}

KernelDiagnostics check_kernel_properties(const CaputoKernel& kernel) {
    if (!kernel.inverted()) {
        throw FlowError(ErrorCode::BadIndex, "check_kernel_properties requires an inverted kernel");
    }
    KernelDiagnostics diag;
    const std::size_t N = kernel.size();
    auto report = [&](std::string msg) { diag.violations.push_back(std::move(msg)); };
    for (std::size_t n = 1; n <= N; ++n) {
        if (!(kernel.kinv(n, n) > 0.0)) {
            report("Kinv[" + std::to_string(n) + "][" + std::to_string(n) + "] not positive");
        }
        for (std::size_t i = 1; i < n; ++i) {
            if (!(kernel.kinv(n, i) < 0.0)) {
                report("Kinv[" + std::to_string(n) + "][" + std::to_string(i) + "] not negative");
            }
        }
        if (!(kernel.kinv_col0(n) < 0.0)) {
            report("Kinv[" + std::to_string(n) + "][0] not negative");
        }
    }
    for (std::size_t n = 1; n < N; ++n) {
        if (!(kernel.kinv_col0(n) < kernel.kinv_col0(n + 1))) {
            report("column 0 not increasing at n=" + std::to_string(n));
        }
        for (std::size_t i = 1; i < n; ++i) {
            if (!(kernel.kinv(n, i) < kernel.kinv(n + 1, i))) {
                report("column " + std::to_string(i) + " not increasing at n=" + std::to_string(n));
            }
        }
    }
    return diag;
}

}  // namespace fracflow
